#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "detcount/count.hpp"
#include "paramcover/atlas.hpp"
#include "ratpoints/ratpoints.hpp"

namespace pfc {

struct BenchRow {
  uint64_t H = 0;
  size_t count = 0;
  int d = 0;
  int r = 0;
  size_t n_charts = 0;
  double wall_ms = 0;
};

struct BenchTable {
  std::string fn;
  std::string method;
  std::vector<BenchRow> rows;
};

enum class Format { Json, Csv };
Format parse_format(const std::string& s);

nlohmann::json report_json(const CountReport& r);
nlohmann::json polynomial_json(const CoveringPolynomial& P);

// Deterministic bytes: sorted keys, rationals as "p/q".
std::string emit_report(const CountReport& r, Format f);
std::string emit_report(const Atlas& a, Format f);
std::string emit_report(const BenchTable& t, Format f);
std::string emit_report(const OracleResult& o, int dim, Format f);

}  // namespace pfc
