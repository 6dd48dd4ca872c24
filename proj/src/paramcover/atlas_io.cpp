#include "paramcover/atlas_io.hpp"

#include "fnexpr/calculus.hpp"
#include "numeric/error.hpp"

namespace pfc {

using nlohmann::json;

json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) fail(ErrorCode::Parse, "expected a rational string");
  return parse_rational(v.get<std::string>());
}

namespace {

json interval_json(const RInterval& iv) { return json::array({rational_json(iv.lo), rational_json(iv.hi)}); }

RInterval interval_from(const json& v) { return {rational_from_json(v.at(0)), rational_from_json(v.at(1))}; }

}  // namespace

json atlas_to_json(const Atlas& a) {
  json js;
  json target = json::array();
  for (Expr f : a.target) target.push_back(to_string(f));
  js["target"] = target;
  js["dim"] = a.dim;
  js["r"] = a.r;
  js["eps"] = rational_json(a.eps);
  js["partial"] = a.partial;
  js["identity_shortcut"] = a.identity_shortcut;
  json pieces = json::array();
  for (auto& p : a.pieces) {
    json pj;
    pj["domain"] = interval_json(p.domain);
    pj["dominant"] = p.dominant;
    pj["increasing"] = p.increasing;
    pj["range"] = interval_json(p.range);
    pieces.push_back(pj);
  }
  js["pieces"] = pieces;
  json charts = json::array();
  for (auto& c : a.charts) {
    json cj;
    json matrix = json::array();
    for (int i = 0; i < c.dim; ++i) {
      json row = json::array();
      for (int k = 0; k < c.dim; ++k) row.push_back(rational_json(i == k ? c.scale[static_cast<size_t>(i)] : Rational(0)));
      matrix.push_back(row);
    }
    cj["matrix"] = matrix;
    json off = json::array();
    for (auto& o : c.offset) off.push_back(rational_json(o));
    cj["offset"] = off;
    json img = json::array();
    for (auto& iv : c.image) img.push_back(interval_json(iv));
    cj["image_box"] = img;
    cj["cert_value_num"] = c.cert.value.get_num().get_str();
    cj["cert_value_den"] = c.cert.value.get_den().get_str();
    if (c.piece >= 0) cj["piece"] = c.piece;
    charts.push_back(cj);
  }
  js["charts"] = charts;
  json diag;
  diag["sign_cells"] = a.sign_cells;
  diag["rejected_charts"] = a.rejected_charts;
  diag["max_cert"] = rational_json(a.max_cert);
  diag["within_e_budget"] = a.within_e_budget;
  diag["cover_bound"] = rational_json(a.cover_bound);
  js["diagnostics"] = diag;
  return js;
}

Atlas atlas_from_json(const json& js) {
  try {
    Atlas a;
    for (auto& t : js.at("target")) a.target.push_back(parse_expr(t.get<std::string>()));
    a.dim = js.at("dim").get<int>();
    a.r = js.at("r").get<int>();
    a.eps = rational_from_json(js.at("eps"));
    a.partial = js.value("partial", false);
    a.identity_shortcut = js.value("identity_shortcut", false);
    int id = -1;
    for (size_t i = 0; i < a.target.size(); ++i)
      if (a.target[i] == ex::var(0)) id = static_cast<int>(i);
    for (auto& pj : js.value("pieces", json::array())) {
      C1Piece p;
      p.domain = interval_from(pj.at("domain"));
      p.dominant = pj.at("dominant").get<int>();
      p.increasing = pj.at("increasing").get<bool>();
      p.range = interval_from(pj.at("range"));
      if (p.dominant < 0 || p.dominant >= static_cast<int>(a.target.size()))
        fail(ErrorCode::Parse, "atlas: dominant index out of range");
      if (p.dominant == id) {
        p.composed = a.target;
      } else {
        Expr inv = ex::inverse(a.target[static_cast<size_t>(p.dominant)], 0, p.domain.lo, p.domain.hi, p.increasing,
                               ex::var(0));
        for (Expr f : a.target) p.composed.push_back(substitute(f, {inv}));
      }
      a.pieces.push_back(std::move(p));
    }
    for (auto& cj : js.at("charts")) {
      Box image;
      for (auto& iv : cj.at("image_box")) image.push_back(interval_from(iv));
      AffineChart c = AffineChart::onto(image);
      c.r = a.r;
      c.piece = cj.value("piece", -1);
      if (c.piece >= static_cast<int>(a.pieces.size())) fail(ErrorCode::Parse, "atlas: piece index out of range");
      c.cert.value = Rational(BigInt(cj.at("cert_value_num").get<std::string>()),
                              BigInt(cj.at("cert_value_den").get<std::string>()));
      c.cert.value.canonicalize();
      c.cert.order = a.r;
      c.cert.certified = true;
      a.charts.push_back(std::move(c));
    }
    if (js.contains("diagnostics")) {
      const json& d = js.at("diagnostics");
      a.sign_cells = d.value("sign_cells", size_t{0});
      a.rejected_charts = d.value("rejected_charts", size_t{0});
      if (d.contains("max_cert")) a.max_cert = rational_from_json(d.at("max_cert"));
      a.within_e_budget = d.value("within_e_budget", true);
      if (d.contains("cover_bound")) a.cover_bound = rational_from_json(d.at("cover_bound"));
    }
    return a;
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("atlas JSON: ") + e.what());
  }
}

}  // namespace pfc
