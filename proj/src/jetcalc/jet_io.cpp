#include "jetcalc/jet_io.hpp"

#include <algorithm>

namespace pfc {

namespace {

template <class S, class Emit>
nlohmann::json to_json_impl(const Jet<S>& j, Emit emit) {
  const JetLayout& L = *j.layout();
  std::vector<size_t> idx;
  for (size_t i = 0; i < L.size(); ++i)
    if (!ScalarOps<S>::is_zero(j[i])) idx.push_back(i);
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return L.alpha(a) < L.alpha(b); });
  nlohmann::json coeffs = nlohmann::json::array();
  for (size_t i : idx) {
    nlohmann::json row = nlohmann::json::array();
    row.push_back(L.alpha(i));
    emit(row, j[i]);
    coeffs.push_back(row);
  }
  nlohmann::json out;
  out["nvars"] = j.nvars();
  out["order"] = j.order();
  out["coeffs"] = coeffs;
  return out;
}

}  // namespace

nlohmann::json jet_to_json(const Jet<Rational>& j) {
  return to_json_impl(j, [](nlohmann::json& row, const Rational& q) {
    row.push_back(q.get_num().get_str());
    row.push_back(q.get_den().get_str());
  });
}

nlohmann::json jet_to_json(const Jet<Interval>& j) {
  return to_json_impl(j, [](nlohmann::json& row, const Interval& v) {
    Rational lo = v.lower(), hi = v.upper();
    row.push_back(lo.get_num().get_str());
    row.push_back(lo.get_den().get_str());
    row.push_back(hi.get_num().get_str());
    row.push_back(hi.get_den().get_str());
  });
}

Jet<Rational> jet_from_json(const nlohmann::json& js) {
  Jet<Rational> j(js.at("nvars").get<int>(), js.at("order").get<int>());
  for (auto& row : js.at("coeffs")) {
    MultiIndex a = row.at(0).get<MultiIndex>();
    Rational q(BigInt(row.at(1).get<std::string>()), BigInt(row.at(2).get<std::string>()));
    q.canonicalize();
    j.set(a, q);
  }
  return j;
}

}  // namespace pfc
