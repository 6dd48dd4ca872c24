#include <gtest/gtest.h>

#include <pfaffcert/pfaffcert.h>

#include <string>

namespace {

pfc_fn* parse1(const char* expr, const char* lo, const char* hi) {
  const char* dom[] = {lo, hi};
  pfc_fn* f = nullptr;
  EXPECT_EQ(pfc_fn_parse(expr, dom, 1, &f), PFC_OK) << pfc_last_error();
  return f;
}

std::string take(char* s) {
  std::string out = s ? s : "";
  pfc_string_free(s);
  return out;
}

}  // namespace

TEST(CApi, CountAndEmit) {
  pfc_fn* f = parse1("2^x", "1", "2");
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(pfc_fn_dim(f), 1);
  pfc_report* r = nullptr;
  ASSERT_EQ(pfc_count(f, 4, 1, "determinant", &r), PFC_OK) << pfc_last_error();
  EXPECT_EQ(pfc_report_count(r), 2u);
  EXPECT_EQ(pfc_report_transcendental_count(r), 2u);
  EXPECT_EQ(pfc_report_certified(r), 1);
  EXPECT_EQ(pfc_report_oracle_agreement(r), 1);
  char* json = nullptr;
  ASSERT_EQ(pfc_report_emit(r, "json", &json), PFC_OK);
  EXPECT_NE(take(json).find("\"count\": 2"), std::string::npos);
  char* csv = nullptr;
  ASSERT_EQ(pfc_report_emit(r, "csv", &csv), PFC_OK);
  EXPECT_EQ(take(csv), "x_num,x_den,y_num,y_den\n1,1,2,1\n2,1,4,1\n");

  size_t members = 0, unknowns = 7;
  ASSERT_EQ(pfc_oracle_count(f, 4, &members, &unknowns), PFC_OK);
  EXPECT_EQ(members, 2u);
  EXPECT_EQ(unknowns, 0u);
  pfc_report_free(r);
  pfc_fn_free(f);
}

TEST(CApi, Atlas) {
  pfc_fn* f = parse1("exp(x-1)", "0", "1");
  pfc_atlas* a = nullptr;
  ASSERT_EQ(pfc_atlas_build(f, 4, "1/1024", &a), PFC_OK) << pfc_last_error();
  EXPECT_GT(pfc_atlas_chart_count(a), 0u);
  EXPECT_EQ(pfc_atlas_partial(a), 0);
  size_t failures = 1;
  ASSERT_EQ(pfc_atlas_verify(a, 1000, 0, &failures), PFC_OK);
  EXPECT_EQ(failures, 0u);
  char* cert = nullptr;
  ASSERT_EQ(pfc_atlas_max_cert(a, &cert), PFC_OK);
  EXPECT_FALSE(take(cert).empty());
  char* json = nullptr;
  ASSERT_EQ(pfc_atlas_to_json(a, &json), PFC_OK);
  EXPECT_NE(take(json).find("\"charts\""), std::string::npos);
  pfc_atlas_free(a);
  pfc_fn_free(f);
}

TEST(CApi, Errors) {
  const char* dom[] = {"0", "0.5"};
  pfc_fn* f = nullptr;
  EXPECT_EQ(pfc_fn_parse("exp(x)", dom, 1, &f), PFC_ERR_PARSE);
  EXPECT_EQ(f, nullptr);
  EXPECT_NE(std::string(pfc_last_error()).find("0.5"), std::string::npos);

  const char* ok[] = {"0", "1"};
  EXPECT_EQ(pfc_fn_parse("exp(", ok, 1, &f), PFC_ERR_PARSE);
  EXPECT_EQ(pfc_fn_parse("x+y", ok, 1, &f), PFC_ERR_DIMENSION);
  EXPECT_EQ(pfc_fn_parse("x", ok, 3, &f), PFC_ERR_DIMENSION);
  EXPECT_EQ(pfc_fn_parse(nullptr, ok, 1, &f), PFC_ERR_INVALID_ARGUMENT);

  f = parse1("x", "0", "1");
  pfc_report* r = nullptr;
  EXPECT_EQ(pfc_count(f, 4, 1, "lattice", &r), PFC_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(pfc_count(f, 4, 2, "determinant", &r), PFC_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(r, nullptr);
  pfc_fn_free(f);

  pfc_fn_free(nullptr);
  pfc_report_free(nullptr);
  pfc_atlas_free(nullptr);
  EXPECT_EQ(pfc_report_count(nullptr), 0u);
  EXPECT_EQ(pfc_report_oracle_agreement(nullptr), -1);
}

TEST(CApi, CliMain) {
  const char* bad[] = {"pfaffcert", "count", "--fn", "exp(x)", "--domain", "0,0.5"};
  EXPECT_EQ(pfc_cli_main(6, bad), 1);
  const char* none[] = {"pfaffcert"};
  EXPECT_EQ(pfc_cli_main(1, none), 1);
}
