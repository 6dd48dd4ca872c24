#include "cli/spec.hpp"

#include <CLI11.hpp>
#include <cctype>
#include <sstream>

#include "fnexpr/expr.hpp"
#include "numeric/error.hpp"

namespace pfc {

std::string task_name(Task t) {
  switch (t) {
    case Task::Atlas:
      return "atlas";
    case Task::Count:
      return "count";
    case Task::Oracle:
      return "oracle";
    case Task::Bench:
      return "bench";
    case Task::Certify:
      return "certify";
  }
  return "unknown";
}

bool ProblemSpec::operator==(const ProblemSpec& o) const {
  return task == o.task && fn == o.fn && dim == o.dim && domain == o.domain && r == o.r && eps == o.eps &&
         H == o.H && H_list == o.H_list && g == o.g && method == o.method && precision == o.precision &&
         seed == o.seed && samples == o.samples && threads == o.threads && out == o.out && format == o.format &&
         atlas_path == o.atlas_path;
}

std::string ProblemSpec::output_format() const {
  if (!format.empty()) return format;
  return task == Task::Oracle || task == Task::Bench ? "csv" : "json";
}

namespace {

struct RawFlags {
  std::string fn, domain, eps, H_list, method, out, format, atlas;
  std::optional<int> dim, r, g;
  std::optional<uint64_t> H, seed;
  std::optional<long> precision;
  std::optional<size_t> samples;
  std::optional<unsigned> threads;
};

void add_flags(CLI::App* app, RawFlags& f) {
  app->add_option("--fn", f.fn, "function expression");
  app->add_option("--domain", f.domain, "lo,hi per axis");
  app->add_option("--dim", f.dim, "1 or 2");
  app->add_option("--r", f.r, "smoothness order");
  app->add_option("--eps", f.eps, "cover radius (exact rational)");
  app->add_option("--H", f.H, "height bound");
  app->add_option("--H-list", f.H_list, "comma separated height bounds");
  app->add_option("--g", f.g, "degree of algebraic coordinates");
  app->add_option("--method", f.method, "determinant | siegel | oracle");
  app->add_option("--precision", f.precision, "precision cap in bits");
  app->add_option("--seed", f.seed, "random seed");
  app->add_option("--samples", f.samples, "cover verification samples");
  app->add_option("--threads", f.threads, "worker threads");
  app->add_option("--out", f.out, "output path");
  app->add_option("--format", f.format, "json | csv");
  app->add_option("--atlas", f.atlas, "atlas JSON to certify");
}

uint64_t parse_height(const std::string& tok) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    fail(ErrorCode::Parse, "malformed height '" + tok + "'");
  return std::stoull(tok);
}

ProblemSpec finish(Task task, const RawFlags& f) {
  ProblemSpec s;
  s.task = task;
  // whitespace is dropped so the spec survives the text form
  for (char c : f.fn)
    if (!std::isspace(static_cast<unsigned char>(c))) s.fn += c;
  bool needs_fn = task != Task::Certify;
  if (needs_fn && s.fn.empty()) fail(ErrorCode::InvalidArgument, "--fn is required for " + task_name(task));
  int arity_fn = 0;
  if (!s.fn.empty()) arity_fn = arity(parse_expr(s.fn));
  std::vector<Rational> bounds;
  if (!f.domain.empty()) {
    try {
      bounds = parse_rational_list(f.domain);
    } catch (const Error& e) {
      fail(ErrorCode::Parse, "--domain " + f.domain + ": " + e.what());
    }
    if (bounds.size() % 2 || bounds.empty())
      fail(ErrorCode::Dimension, "--domain " + f.domain + ": expected lo,hi for each axis");
  }
  if (f.dim)
    s.dim = *f.dim;
  else if (!bounds.empty())
    s.dim = static_cast<int>(bounds.size() / 2);
  else
    s.dim = std::max(1, arity_fn);
  if (s.dim != 1 && s.dim != 2) fail(ErrorCode::Dimension, "--dim " + std::to_string(s.dim) + ": must be 1 or 2");
  if (arity_fn > s.dim)
    fail(ErrorCode::Dimension, "--fn " + s.fn + " uses " + std::to_string(arity_fn) + " variables but dim is " +
                                   std::to_string(s.dim));
  if (bounds.empty()) {
    s.domain = unit_box(s.dim);
  } else {
    if (static_cast<int>(bounds.size()) != 2 * s.dim)
      fail(ErrorCode::Dimension, "--domain " + f.domain + ": " + std::to_string(bounds.size() / 2) +
                                     " axes for dim " + std::to_string(s.dim));
    for (size_t k = 0; k < bounds.size(); k += 2) {
      if (!(bounds[k] < bounds[k + 1])) fail(ErrorCode::InvalidArgument, "--domain " + f.domain + ": empty axis");
      s.domain.push_back({bounds[k], bounds[k + 1]});
    }
  }
  if (f.r) s.r = *f.r;
  if (s.r < 1) fail(ErrorCode::InvalidArgument, "--r must be at least 1");
  if (!f.eps.empty()) {
    try {
      s.eps = parse_rational(f.eps);
    } catch (const Error& e) {
      fail(ErrorCode::Parse, "--eps " + f.eps + ": " + e.what());
    }
    if (s.eps <= 0) fail(ErrorCode::InvalidArgument, "--eps must be positive");
  }
  if (f.H) s.H = *f.H;
  if (s.H < 1) fail(ErrorCode::InvalidArgument, "--H must be positive");
  if (!f.H_list.empty()) {
    std::stringstream ss(f.H_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      uint64_t h = parse_height(tok);
      if (h < 1) fail(ErrorCode::InvalidArgument, "--H-list entry '" + tok + "' must be positive");
      s.H_list.push_back(h);
    }
  }
  if (task == Task::Bench && s.H_list.empty()) fail(ErrorCode::InvalidArgument, "bench needs --H-list");
  if (f.g) s.g = *f.g;
  if (s.g < 1) fail(ErrorCode::InvalidArgument, "--g must be positive");
  if (!f.method.empty()) s.method = parse_method(f.method);
  if (f.precision) s.precision = *f.precision;
  if (s.precision < 64) fail(ErrorCode::InvalidArgument, "--precision must be at least 64");
  if (f.seed) s.seed = *f.seed;
  if (f.samples) s.samples = *f.samples;
  if (f.threads) s.threads = *f.threads;
  s.out = f.out;
  s.format = f.format;
  if (!s.format.empty() && s.format != "json" && s.format != "csv")
    fail(ErrorCode::InvalidArgument, "--format " + s.format + ": expected json or csv");
  s.atlas_path = f.atlas;
  if (task == Task::Certify && s.atlas_path.empty()) fail(ErrorCode::InvalidArgument, "certify needs --atlas");
  return s;
}

}  // namespace

ProblemSpec parse_spec(const std::vector<std::string>& args) {
  CLI::App app{"pfaffcert"};
  app.require_subcommand(1);
  RawFlags flags;
  std::vector<std::pair<Task, CLI::App*>> subs;
  for (Task t : {Task::Atlas, Task::Count, Task::Oracle, Task::Bench, Task::Certify}) {
    CLI::App* sub = app.add_subcommand(task_name(t));
    add_flags(sub, flags);
    subs.emplace_back(t, sub);
  }
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    fail(ErrorCode::Parse, e.what());
  }
  for (auto& [t, sub] : subs)
    if (sub->parsed()) return finish(t, flags);
  fail(ErrorCode::Parse, "missing subcommand");
}

ProblemSpec parse_spec_text(std::string_view text) {
  std::vector<std::string> args;
  std::stringstream ss{std::string(text)};
  std::string line;
  while (std::getline(ss, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::stringstream ls(line);
    std::string tok;
    while (ls >> tok) args.push_back(tok);
  }
  return parse_spec(args);
}

std::vector<std::string> emit_spec(const ProblemSpec& s) {
  std::vector<std::string> a{task_name(s.task)};
  // key=value keeps values such as "-1,1" from reading as flags
  auto add = [&](const std::string& k, const std::string& v) { a.push_back(k + "=" + v); };
  if (!s.fn.empty()) add("--fn", s.fn);
  add("--dim", std::to_string(s.dim));
  std::string dom;
  for (auto& iv : s.domain) dom += (dom.empty() ? "" : ",") + to_string(iv.lo) + "," + to_string(iv.hi);
  add("--domain", dom);
  add("--r", std::to_string(s.r));
  add("--eps", to_string(s.eps));
  add("--H", std::to_string(s.H));
  if (!s.H_list.empty()) {
    std::string hl;
    for (auto h : s.H_list) hl += (hl.empty() ? "" : ",") + std::to_string(h);
    add("--H-list", hl);
  }
  add("--g", std::to_string(s.g));
  add("--method", method_name(s.method));
  add("--precision", std::to_string(s.precision));
  add("--seed", std::to_string(s.seed));
  add("--samples", std::to_string(s.samples));
  add("--threads", std::to_string(s.threads));
  if (!s.out.empty()) add("--out", s.out);
  if (!s.format.empty()) add("--format", s.format);
  if (!s.atlas_path.empty()) add("--atlas", s.atlas_path);
  return a;
}

std::string emit_spec_text(const ProblemSpec& spec) {
  std::vector<std::string> a = emit_spec(spec);
  std::string text = a[0] + "\n";
  for (size_t i = 1; i < a.size(); ++i) text += a[i] + "\n";
  return text;
}

}  // namespace pfc
