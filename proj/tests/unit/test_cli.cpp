#include <gtest/gtest.h>

#include <json.hpp>
#include <random>
#include <sstream>

#include "cli/report.hpp"
#include "cli/run.hpp"
#include "cli/spec.hpp"
#include "numeric/error.hpp"

using namespace pfc;

namespace {

ProblemSpec parse(std::initializer_list<const char*> a) {
  return parse_spec(std::vector<std::string>(a.begin(), a.end()));
}

ErrorCode code_of(std::initializer_list<const char*> a) {
  try {
    parse(a);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;  // parsed: caller expects an error
}

}  // namespace

TEST(Spec, Examples) {
  ProblemSpec s = parse({"count", "--fn", "2^x", "--domain", "1,2", "--H", "4"});
  EXPECT_EQ(s.task, Task::Count);
  EXPECT_EQ(s.H, 4u);
  EXPECT_EQ(s.g, 1);
  EXPECT_EQ(s.dim, 1);
  ASSERT_EQ(s.domain.size(), 1u);
  EXPECT_EQ(s.domain[0].lo, Rational(1));
  EXPECT_EQ(s.domain[0].hi, Rational(2));

  s = parse({"atlas", "--fn", "exp(x+y-2)", "--dim", "2", "--r", "3", "--eps", "1/256"});
  EXPECT_EQ(s.task, Task::Atlas);
  EXPECT_EQ(s.dim, 2);
  EXPECT_EQ(s.r, 3);
  EXPECT_EQ(s.eps, Rational(1, 256));
  EXPECT_EQ(s.domain, unit_box(2));

  s = parse({"oracle", "--fn", "x^2", "--domain=-1,1", "--format", "json"});
  EXPECT_EQ(s.domain[0].lo, Rational(-1));
  EXPECT_EQ(s.output_format(), "json");
  EXPECT_EQ(parse({"bench", "--fn", "x", "--H-list", "4,16"}).output_format(), "csv");

  s = parse({"count", "--fn", "2^x", "--domain", "~0.5,1"});
  EXPECT_EQ(s.domain[0].lo, Rational(1, 2));

  EXPECT_EQ(code_of({"count", "--fn", "2^x", "--domain", "0,0.5"}), ErrorCode::Parse);
  EXPECT_EQ(code_of({"count", "--fn", "2^x", "--bogus", "1"}), ErrorCode::Parse);
  EXPECT_EQ(code_of({"count", "--fn", "x+y", "--dim", "1"}), ErrorCode::Dimension);
  EXPECT_EQ(code_of({"count", "--fn", "x", "--dim", "2", "--domain", "0,1"}), ErrorCode::Dimension);
  EXPECT_EQ(code_of({"count", "--fn", "x", "--domain", "0,1,2"}), ErrorCode::Dimension);
  EXPECT_EQ(code_of({"count", "--domain", "0,1"}), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of({"count", "--fn", "x", "--domain", "1,1"}), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of({"bench", "--fn", "x"}), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of({"bench", "--fn", "x", "--H-list", "4,x"}), ErrorCode::Parse);
  EXPECT_EQ(code_of({"certify"}), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of({"count", "--fn", "x", "--method", "magic"}), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of({"frobnicate"}), ErrorCode::Parse);
  EXPECT_EQ(code_of({}), ErrorCode::Parse);
}

TEST(Spec, TextFormAndComments) {
  ProblemSpec s = parse_spec_text("count  # subcommand\n--fn 2^x\n\n--domain 1,2 --H 64 # trailing\n");
  EXPECT_EQ(s.H, 64u);
  EXPECT_EQ(s.fn, "2^x");
}

TEST(Spec, RoundTripRandom) {
  std::mt19937_64 rng(7);
  const char* fns1[] = {"2^x", "exp(x)", "x^2", "sin(3*x)", "log(1+x)", "x^3-x/2"};
  const char* fns2[] = {"2^(x+y)", "exp(x+y-2)", "x*y", "x^2+y^2"};
  auto pick = [&](int n) { return static_cast<int>(rng() % n); };
  auto q = [](long a, long b) {
    Rational x(a, b);
    x.canonicalize();
    return x;
  };
  for (int it = 0; it < 1000; ++it) {
    ProblemSpec s;
    s.task = static_cast<Task>(pick(5));
    s.dim = 1 + pick(2);
    s.fn = s.dim == 1 ? fns1[pick(6)] : fns2[pick(4)];
    if (s.task == Task::Certify && pick(2)) s.fn.clear();
    for (int k = 0; k < s.dim; ++k) {
      Rational lo = q(pick(41) - 20, 1 + pick(9));
      s.domain.push_back({lo, lo + q(1 + pick(50), 1 + pick(16))});
    }
    s.r = 1 + pick(8);
    s.eps = q(1 + pick(5), 1L << pick(20));
    s.H = 1 + rng() % 100000;
    if (s.task == Task::Bench || pick(2))
      for (int k = 0, n = 1 + pick(4); k < n; ++k) s.H_list.push_back(1 + rng() % 5000);
    s.g = 1 + pick(3);
    s.method = static_cast<CountMethod>(pick(3));
    s.precision = 64 + pick(8000);
    s.seed = rng();
    s.samples = rng() % 1000000;
    s.threads = 1 + pick(16);
    if (pick(2)) s.out = "out_" + std::to_string(it) + ".json";
    if (pick(2)) s.format = pick(2) ? "json" : "csv";
    if (s.task == Task::Certify || pick(4) == 0) s.atlas_path = "atlas_" + std::to_string(it) + ".json";

    std::vector<std::string> a = emit_spec(s);
    ProblemSpec back = parse_spec(a);
    ASSERT_TRUE(back == s) << emit_spec_text(s);
    ASSERT_EQ(emit_spec(back), a);
    ASSERT_TRUE(parse_spec_text(emit_spec_text(s)) == s);
  }
}

TEST(Report, EmptyReportIsValidJson) {
  CountReport r;
  std::string bytes = emit_report(r, Format::Json);
  nlohmann::json j = nlohmann::json::parse(bytes);
  EXPECT_EQ(j["count"], 0);
  EXPECT_TRUE(j["points"].empty());
  EXPECT_EQ(emit_report(r, Format::Csv), "x_num,x_den,y_num,y_den\n");
}

TEST(Report, BenchCsvAndDeterminism) {
  ProblemSpec s = parse({"bench", "--fn", "2^x", "--domain", "1,2", "--H-list", "4,16"});
  std::ostringstream out, err;
  EXPECT_EQ(run_spec(s, out, err), kExitOk);
  std::vector<std::string> lines;
  std::stringstream ss(out.str());
  for (std::string l; std::getline(ss, l);) lines.push_back(l);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "H,count,d,r,n_charts,wall_ms");
  EXPECT_EQ(lines[1].rfind("4,2,", 0), 0u);
  EXPECT_EQ(lines[2].rfind("16,2,", 0), 0u);

  ProblemSpec c = parse({"count", "--fn", "2^x", "--domain", "1,2", "--H", "8"});
  std::ostringstream a, b;
  EXPECT_EQ(run_spec(c, a, err), kExitOk);
  EXPECT_EQ(run_spec(c, b, err), kExitOk);
  EXPECT_EQ(a.str(), b.str());
  nlohmann::json j = nlohmann::json::parse(a.str());
  EXPECT_EQ(j["count"], 2);
  EXPECT_EQ(j["certified"], true);
}

TEST(Run, ExitCodes) {
  std::ostringstream out, err;
  EXPECT_EQ(run_cli({"count", "--fn", "2^x", "--domain", "0,0.5"}, out, err), kExitError);
  EXPECT_NE(err.str().find("error:"), std::string::npos);
  EXPECT_EQ(run_cli({"oracle", "--fn", "x^2", "--domain", "0,1", "--H", "4"}, out, err), kExitOk);
  EXPECT_NE(out.str().find("1,2,1,4"), std::string::npos);
  EXPECT_EQ(run_cli({"certify", "--atlas", "/nonexistent/atlas.json"}, out, err), kExitError);
  // not enough samples to hit every chart is fine; a partial atlas is not
  EXPECT_EQ(run_cli({"atlas", "--fn", "x^2", "--r", "3", "--eps", "1/64", "--samples", "200"}, out, err), kExitOk);
}

TEST(Run, AtlasCertifyRoundTrip) {
  std::string path = ::testing::TempDir() + "pfc_atlas.json";
  std::ostringstream out, err;
  ASSERT_EQ(run_cli({"atlas", "--fn", "exp(x-1)", "--r", "2", "--eps", "1/32", "--samples", "500", "--out",
                     path.c_str()},
                    out, err),
            kExitOk);
  std::ostringstream cout_;
  EXPECT_EQ(run_cli({"certify", "--atlas", path.c_str(), "--samples", "500"}, cout_, err), kExitOk);
  nlohmann::json j = nlohmann::json::parse(cout_.str());
  EXPECT_EQ(j["passes"], true);
  EXPECT_EQ(j["verify"]["failures"], 0);
}
