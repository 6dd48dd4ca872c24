#include "jetcalc/layout.hpp"

#include <mutex>

#include "numeric/error.hpp"

namespace pfc {

namespace {

void compositions(int nvars, int k, int pos, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos == nvars - 1) {
    cur[pos] = k;
    out.push_back(cur);
    return;
  }
  for (int a = k; a >= 0; --a) {
    cur[pos] = a;
    compositions(nvars, k - a, pos + 1, cur, out);
  }
}

}  // namespace

JetLayout::JetLayout(int nvars, int order) : nvars_(nvars), order_(order) {
  if (nvars < 1 || order < 0) fail(ErrorCode::InvalidArgument, "bad jet shape");
  for (int k = 0; k <= order; ++k) {
    degree_begin_.push_back(alphas_.size());
    MultiIndex cur(nvars, 0);
    std::vector<MultiIndex> level;
    compositions(nvars, k, 0, cur, level);
    for (auto& a : level) {
      index_[a] = alphas_.size();
      alphas_.push_back(a);
      degree_.push_back(k);
    }
  }
  degree_begin_.push_back(alphas_.size());
  pairs_.resize(alphas_.size());
  MultiIndex sum(nvars);
  for (size_t i = 0; i < alphas_.size(); ++i) {
    for (size_t j = 0; j < alphas_.size(); ++j) {
      if (degree_[i] + degree_[j] > order) break;
      for (int v = 0; v < nvars; ++v) sum[v] = alphas_[i][v] + alphas_[j][v];
      pairs_[index_.at(sum)].emplace_back(static_cast<uint32_t>(i), static_cast<uint32_t>(j));
    }
  }
}

JetLayout::Ptr JetLayout::get(int nvars, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, Ptr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(nvars, order);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto p = std::make_shared<const JetLayout>(nvars, order);
  cache.emplace(key, p);
  return p;
}

std::optional<size_t> JetLayout::index_of(const MultiIndex& a) const {
  auto it = index_.find(a);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

size_t JetLayout::var_index(int v) const {
  if (order_ < 1) fail(ErrorCode::InvalidArgument, "order-0 jet has no linear terms");
  MultiIndex a(nvars_, 0);
  a[v] = 1;
  return index_.at(a);
}

}  // namespace pfc
