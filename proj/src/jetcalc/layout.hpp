#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace pfc {

using MultiIndex = std::vector<int>;

// Monomials t^alpha with |alpha| <= order in graded order (by total degree,
// then lexicographically descending within a degree). Shared and immutable.
class JetLayout {
 public:
  using Ptr = std::shared_ptr<const JetLayout>;
  using Pair = std::pair<uint32_t, uint32_t>;

  static Ptr get(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  size_t size() const { return alphas_.size(); }
  const MultiIndex& alpha(size_t i) const { return alphas_[i]; }
  int degree(size_t i) const { return degree_[i]; }
  size_t degree_begin(int k) const { return degree_begin_[k]; }
  std::optional<size_t> index_of(const MultiIndex& a) const;
  size_t var_index(int v) const;
  // All (i, j) with alpha_i + alpha_j = alpha_o, for output index o.
  const std::vector<Pair>& pairs(size_t o) const { return pairs_[o]; }

  JetLayout(int nvars, int order);

 private:
  int nvars_, order_;
  std::vector<MultiIndex> alphas_;
  std::vector<int> degree_;
  std::vector<size_t> degree_begin_;
  std::map<MultiIndex, size_t> index_;
  std::vector<std::vector<Pair>> pairs_;
};

}  // namespace pfc
