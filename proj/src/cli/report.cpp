#include "cli/report.hpp"

#include <cstdio>

#include "numeric/error.hpp"
#include "paramcover/atlas_io.hpp"

namespace pfc {

using nlohmann::json;

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  fail(ErrorCode::InvalidArgument, "unknown format '" + s + "' (expected json or csv)");
}

namespace {

json point_json(const RationalPoint& p) {
  json a = json::array();
  for (auto& q : p.coords) a.push_back(rational_json(q));
  return a;
}

json box_json(const Box& b) {
  json a = json::array();
  for (auto& iv : b) a.push_back(json::array({rational_json(iv.lo), rational_json(iv.hi)}));
  return a;
}

std::string points_csv(const std::vector<RationalPoint>& pts, size_t dim) {
  static const char* names[] = {"x", "y", "z"};
  std::string out;
  for (size_t k = 0; k < dim; ++k)
    out += std::string(k ? "," : "") + names[k] + "_num," + names[k] + "_den";
  out += "\n";
  for (auto& p : pts) {
    for (size_t k = 0; k < p.dim(); ++k)
      out += (k ? "," : "") + to_string(BigInt(p.coords[k].get_num())) + "," + to_string(BigInt(p.coords[k].get_den()));
    out += "\n";
  }
  return out;
}

}  // namespace

json polynomial_json(const CoveringPolynomial& P) {
  json j;
  j["nvars"] = P.basis.nvars();
  j["degree"] = P.basis.degree();
  json c = json::array();
  for (auto& z : P.coeffs) c.push_back(to_string(z));
  j["coeffs"] = c;
  j["N"] = to_string(P.N);
  j["provenance"] = provenance_name(P.provenance);
  j["text"] = P.str();
  return j;
}

json report_json(const CountReport& r) {
  json j;
  j["H"] = r.H;
  j["g"] = r.g;
  j["m"] = r.m;
  j["r"] = r.r;
  j["d"] = r.d;
  j["mu"] = r.mu;
  j["eps"] = rational_json(r.eps);
  j["delta"] = rational_json(r.delta);
  j["method"] = r.method;
  j["count"] = r.count;
  j["transcendental_count"] = r.transcendental_count;
  json pts = json::array();
  for (auto& p : r.points) pts.push_back(point_json(p));
  j["points"] = pts;
  json blocks = json::array();
  for (auto& b : r.blocks) {
    json bj;
    bj["kind"] = b.kind == Block::Point ? "point" : "algebraic-arc";
    bj["closure_degree"] = b.closure_degree;
    if (b.kind == Block::Point) {
      bj["point"] = point_json(b.point);
    } else {
      bj["region"] = box_json(b.region);
      bj["polynomial"] = polynomial_json(b.P);
    }
    blocks.push_back(bj);
  }
  j["blocks"] = blocks;
  json unk = json::array();
  for (auto& u : r.unknowns) {
    json uj;
    json args = json::array();
    for (auto& q : u.args) args.push_back(rational_json(q));
    uj["args"] = args;
    uj["target"] = rational_json(u.target);
    uj["precision"] = static_cast<long>(u.precision);
    unk.push_back(uj);
  }
  j["unknowns"] = unk;
  j["candidates"] = r.candidates;
  j["n_charts"] = r.n_charts;
  j["cells"] = r.cells;
  j["certified"] = r.certified;
  j["downgrades"] = r.downgrades;
  j["oracle_agreement"] = r.oracle_agreement ? json(*r.oracle_agreement) : json(nullptr);
  j["transcript"] = r.transcript;
  return j;
}

std::string emit_report(const CountReport& r, Format f) {
  if (f == Format::Json) return report_json(r).dump(2) + "\n";
  return points_csv(r.points, static_cast<size_t>(r.m + 1));
}

std::string emit_report(const Atlas& a, Format f) {
  if (f == Format::Json) return atlas_to_json(a).dump(2) + "\n";
  std::string out = a.dim == 1 ? "chart,piece,lo,hi,cert\n" : "chart,x_lo,x_hi,y_lo,y_hi,cert\n";
  for (size_t i = 0; i < a.charts.size(); ++i) {
    const AffineChart& c = a.charts[i];
    out += std::to_string(i);
    if (a.dim == 1) out += "," + std::to_string(c.piece);
    for (auto& iv : c.image) out += "," + to_string(iv.lo) + "," + to_string(iv.hi);
    out += "," + to_string(c.cert.value) + "\n";
  }
  return out;
}

std::string emit_report(const BenchTable& t, Format f) {
  if (f == Format::Json) {
    json j;
    j["fn"] = t.fn;
    j["method"] = t.method;
    json rows = json::array();
    for (auto& r : t.rows)
      rows.push_back({{"H", r.H}, {"count", r.count}, {"d", r.d}, {"r", r.r}, {"n_charts", r.n_charts},
                      {"wall_ms", r.wall_ms}});
    j["rows"] = rows;
    return j.dump(2) + "\n";
  }
  std::string out = "H,count,d,r,n_charts,wall_ms\n";
  for (auto& r : t.rows) {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.1f", r.wall_ms);
    out += std::to_string(r.H) + "," + std::to_string(r.count) + "," + std::to_string(r.d) + "," +
           std::to_string(r.r) + "," + std::to_string(r.n_charts) + "," + ms + "\n";
  }
  return out;
}

std::string emit_report(const OracleResult& o, int dim, Format f) {
  if (f == Format::Csv) return points_csv(o.members, static_cast<size_t>(dim + 1));
  json j;
  json pts = json::array();
  for (auto& p : o.members) pts.push_back(point_json(p));
  j["members"] = pts;
  j["count"] = o.members.size();
  j["candidates"] = o.candidates;
  json unk = json::array();
  for (auto& u : o.unknowns) {
    json a = json::array();
    for (auto& q : u.args) a.push_back(rational_json(q));
    unk.push_back({{"args", a}, {"target", rational_json(u.target)}, {"precision", static_cast<long>(u.precision)}});
  }
  j["unknowns"] = unk;
  return j.dump(2) + "\n";
}

}  // namespace pfc
