#include "cli/run.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cli/report.hpp"
#include "fnexpr/calculus.hpp"
#include "numeric/error.hpp"
#include "numeric/parallel.hpp"
#include "paramcover/atlas_io.hpp"

namespace pfc {

namespace {

void write_output(const ProblemSpec& spec, const std::string& bytes, std::ostream& out) {
  if (spec.out.empty()) {
    out << bytes;
    return;
  }
  std::ofstream f(spec.out, std::ios::binary);
  if (!f) fail(ErrorCode::Io, "cannot open " + spec.out + " for writing");
  f << bytes;
  if (!f) fail(ErrorCode::Io, "write to " + spec.out + " failed");
}

// f on the spec domain, pulled back to the unit box.
Expr unit_pullback(const ProblemSpec& spec) {
  Expr f = parse_expr(spec.fn);
  std::vector<Expr> repl;
  for (size_t k = 0; k < spec.domain.size(); ++k) {
    const RInterval& iv = spec.domain[k];
    repl.push_back(ex::add(ex::constant(iv.lo), ex::mul(ex::constant(iv.width()), ex::var(static_cast<int>(k)))));
  }
  return substitute(f, repl);
}

int run_atlas(const ProblemSpec& spec, std::ostream& out, std::ostream& err) {
  Expr f = unit_pullback(spec);
  Atlas a = spec.dim == 1 ? build_atlas_1d(graph_tuple(f, 1), spec.r, spec.eps) : build_atlas_2d(f, spec.r, spec.eps);
  CoverReport cr = verify_cover(a, spec.eps, spec.samples, spec.seed);
  Format fmt = parse_format(spec.output_format());
  std::string bytes;
  if (fmt == Format::Json) {
    nlohmann::json j = atlas_to_json(a);
    j["verify"] = {{"samples", cr.samples},
                   {"failures", cr.failures},
                   {"max_observed_distance", rational_json(cr.max_observed_distance)}};
    bytes = j.dump(2) + "\n";
  } else {
    bytes = emit_report(a, fmt);
  }
  write_output(spec, bytes, out);
  err << a.charts.size() << " charts, " << cr.failures << " cover failures in " << cr.samples << " samples\n";
  return a.partial || cr.failures ? kExitDowngraded : kExitOk;
}

CountOptions count_options(const ProblemSpec& spec) {
  CountOptions o;
  o.method = spec.method;
  o.max_precision = spec.precision;
  return o;
}

int run_count(const ProblemSpec& spec, std::ostream& out, std::ostream& err) {
  CountReport r = count_rational_points(ExprFn(parse_expr(spec.fn), spec.domain),
                                        {spec.H, spec.g}, count_options(spec));
  write_output(spec, emit_report(r, parse_format(spec.output_format())), out);
  err << "count " << r.count << (r.certified ? " (certified)" : " (not certified)") << "\n";
  for (auto& d : r.downgrades) err << "  downgraded: " << d << "\n";
  return r.certified ? kExitOk : kExitDowngraded;
}

int run_oracle(const ProblemSpec& spec, std::ostream& out, std::ostream& err) {
  OracleResult o = oracle_count(ExprFn(parse_expr(spec.fn), spec.domain), spec.domain, {spec.H, spec.g},
                                spec.precision);
  write_output(spec, emit_report(o, spec.dim, parse_format(spec.output_format())), out);
  err << o.members.size() << " members of " << o.candidates << " candidates, " << o.unknowns.size()
      << " unknown\n";
  return o.unknowns.empty() ? kExitOk : kExitDowngraded;
}

int run_bench(const ProblemSpec& spec, std::ostream& out, std::ostream& err) {
  BenchTable t{spec.fn, method_name(spec.method), {}};
  bool all = true;
  ExprFn f(parse_expr(spec.fn), spec.domain);
  for (uint64_t H : spec.H_list) {
    auto t0 = std::chrono::steady_clock::now();
    CountReport r = count_rational_points(f, {H, spec.g}, count_options(spec));
    auto t1 = std::chrono::steady_clock::now();
    all = all && r.certified;
    t.rows.push_back({H, r.count, r.d, r.r, r.n_charts, std::chrono::duration<double, std::milli>(t1 - t0).count()});
    err << "H = " << H << ": count " << r.count << "\n";
  }
  write_output(spec, emit_report(t, parse_format(spec.output_format())), out);
  return all ? kExitOk : kExitDowngraded;
}

int run_certify(const ProblemSpec& spec, std::ostream& out, std::ostream& err) {
  std::ifstream in(spec.atlas_path);
  if (!in) fail(ErrorCode::Io, "cannot open " + spec.atlas_path);
  nlohmann::json js;
  try {
    js = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, spec.atlas_path + ": " + e.what());
  }
  Atlas a = atlas_from_json(js);
  AtlasOptions opts;
  Rational worst = recertify(a, opts);
  bool pass = worst <= 1 + opts.slack;
  CoverReport cr = verify_cover(a, a.eps, spec.samples, spec.seed);
  nlohmann::json j;
  j["charts"] = a.charts.size();
  j["max_cert"] = rational_json(worst);
  j["passes"] = pass;
  j["partial"] = a.partial;
  j["verify"] = {{"samples", cr.samples},
                 {"failures", cr.failures},
                 {"max_observed_distance", rational_json(cr.max_observed_distance)}};
  write_output(spec, j.dump(2) + "\n", out);
  err << a.charts.size() << " charts re-certified, " << (pass ? "all pass" : "some fail") << "\n";
  return pass && !a.partial && cr.failures == 0 ? kExitOk : kExitDowngraded;
}

}  // namespace

int run_spec(const ProblemSpec& spec, std::ostream& out, std::ostream& err) {
  set_thread_count(spec.threads);
  switch (spec.task) {
    case Task::Atlas:
      return run_atlas(spec, out, err);
    case Task::Count:
      return run_count(spec, out, err);
    case Task::Oracle:
      return run_oracle(spec, out, err);
    case Task::Bench:
      return run_bench(spec, out, err);
    case Task::Certify:
      return run_certify(spec, out, err);
  }
  return kExitError;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run_spec(parse_spec(args), out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace pfc
