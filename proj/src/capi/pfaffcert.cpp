#include "pfaffcert/pfaffcert.h"

#include <cstring>
#include <iostream>
#include <string>

#include "cli/report.hpp"
#include "cli/run.hpp"
#include "fnexpr/calculus.hpp"
#include "numeric/error.hpp"
#include "paramcover/atlas_io.hpp"

struct pfc_fn {
  pfc::ExprFn fn;
};

struct pfc_atlas {
  pfc::Atlas atlas;
};

struct pfc_report {
  pfc::CountReport report;
};

namespace {

thread_local std::string last_error;

pfc_status status_of(pfc::ErrorCode c) { return static_cast<pfc_status>(static_cast<int>(c)); }

template <class Fn>
pfc_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return PFC_OK;
  } catch (const pfc::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return PFC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PFC_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void need(const void* p, const char* what) {
  if (!p) pfc::fail(pfc::ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

}  // namespace

extern "C" {

const char* pfc_last_error(void) { return last_error.c_str(); }

void pfc_string_free(char* s) { std::free(s); }

pfc_status pfc_fn_parse(const char* expr, const char* const* domain, int dim, pfc_fn** out) {
  return guarded([&] {
    need(expr, "expr");
    need(domain, "domain");
    need(out, "out");
    if (dim < 1 || dim > 2) pfc::fail(pfc::ErrorCode::Dimension, "dim must be 1 or 2");
    pfc::Box box;
    for (int k = 0; k < dim; ++k) {
      need(domain[2 * k], "domain bound");
      need(domain[2 * k + 1], "domain bound");
      box.push_back({pfc::parse_rational(domain[2 * k]), pfc::parse_rational(domain[2 * k + 1])});
    }
    *out = new pfc_fn{pfc::ExprFn::parse(expr, box)};
  });
}

void pfc_fn_free(pfc_fn* f) { delete f; }

int pfc_fn_dim(const pfc_fn* f) { return f ? f->fn.arity() : 0; }

pfc_status pfc_atlas_build(const pfc_fn* f, int r, const char* eps, pfc_atlas** out) {
  return guarded([&] {
    need(f, "f");
    need(eps, "eps");
    need(out, "out");
    std::vector<pfc::Expr> repl;
    for (size_t k = 0; k < f->fn.domain().size(); ++k) {
      const pfc::RInterval& iv = f->fn.domain()[k];
      repl.push_back(pfc::ex::add(pfc::ex::constant(iv.lo),
                                  pfc::ex::mul(pfc::ex::constant(iv.width()), pfc::ex::var(static_cast<int>(k)))));
    }
    pfc::Expr g = pfc::substitute(f->fn.tree(), repl);
    pfc::Rational e = pfc::parse_rational(eps);
    pfc::Atlas a = f->fn.arity() == 1 ? pfc::build_atlas_1d(pfc::graph_tuple(g, 1), r, e)
                                      : pfc::build_atlas_2d(g, r, e);
    *out = new pfc_atlas{std::move(a)};
  });
}

void pfc_atlas_free(pfc_atlas* a) { delete a; }

size_t pfc_atlas_chart_count(const pfc_atlas* a) { return a ? a->atlas.charts.size() : 0; }

int pfc_atlas_partial(const pfc_atlas* a) { return a && a->atlas.partial ? 1 : 0; }

pfc_status pfc_atlas_max_cert(const pfc_atlas* a, char** out) {
  return guarded([&] {
    need(a, "atlas");
    need(out, "out");
    *out = dup(pfc::to_string(a->atlas.max_cert));
  });
}

pfc_status pfc_atlas_verify(const pfc_atlas* a, size_t samples, uint64_t seed, size_t* failures) {
  return guarded([&] {
    need(a, "atlas");
    need(failures, "failures");
    *failures = pfc::verify_cover(a->atlas, a->atlas.eps, samples, seed).failures;
  });
}

pfc_status pfc_atlas_to_json(const pfc_atlas* a, char** out) {
  return guarded([&] {
    need(a, "atlas");
    need(out, "out");
    *out = dup(pfc::emit_report(a->atlas, pfc::Format::Json));
  });
}

pfc_status pfc_count(const pfc_fn* f, uint64_t H, int g, const char* method, pfc_report** out) {
  return guarded([&] {
    need(f, "f");
    need(out, "out");
    pfc::CountOptions o;
    if (method) o.method = pfc::parse_method(method);
    *out = new pfc_report{pfc::count_rational_points(f->fn, {H, g}, o)};
  });
}

void pfc_report_free(pfc_report* r) { delete r; }

size_t pfc_report_count(const pfc_report* r) { return r ? r->report.count : 0; }

size_t pfc_report_transcendental_count(const pfc_report* r) { return r ? r->report.transcendental_count : 0; }

int pfc_report_certified(const pfc_report* r) { return r && r->report.certified ? 1 : 0; }

int pfc_report_oracle_agreement(const pfc_report* r) {
  if (!r || !r->report.oracle_agreement) return -1;
  return *r->report.oracle_agreement ? 1 : 0;
}

pfc_status pfc_report_emit(const pfc_report* r, const char* format, char** out) {
  return guarded([&] {
    need(r, "report");
    need(out, "out");
    *out = dup(pfc::emit_report(r->report, pfc::parse_format(format ? format : "json")));
  });
}

pfc_status pfc_oracle_count(const pfc_fn* f, uint64_t H, size_t* members, size_t* unknowns) {
  return guarded([&] {
    need(f, "f");
    need(members, "members");
    pfc::OracleResult o = pfc::oracle_count(f->fn, f->fn.domain(), {H, 1});
    *members = o.members.size();
    if (unknowns) *unknowns = o.unknowns.size();
  });
}

int pfc_cli_main(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return pfc::run_cli(args, std::cout, std::cerr);
}

}  // extern "C"
