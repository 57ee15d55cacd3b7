// Exercises the shared library through its C header only.

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "ws1s/ws1s.h"

namespace {

TEST(CApi, CompileAndWitness) {
  ws1s_automaton* a = nullptr;
  ASSERT_EQ(ws1s_compile("x in Y", nullptr, &a), WS1S_OK);
  EXPECT_EQ(ws1s_automaton_states(a), 3U);
  int sat = 0;
  char* w = nullptr;
  ASSERT_EQ(ws1s_automaton_witness(a, &sat, &w), WS1S_OK);
  EXPECT_EQ(sat, 1);
  EXPECT_STREQ(w, "[x=1,Y=1]");
  ws1s_string_free(w);
  char* text = nullptr;
  ASSERT_EQ(ws1s_automaton_dump(a, &text), WS1S_OK);
  EXPECT_EQ(std::string(text).rfind("dfa tracks=0:fo,1:so states=3 initial=0\n", 0), 0U);
  ws1s_string_free(text);
  ws1s_automaton_free(a);
}

TEST(CApi, ErrorsCarryStatusAndMessage) {
  ws1s_automaton* a = nullptr;
  EXPECT_EQ(ws1s_compile("x in", nullptr, &a), WS1S_ERR_SYNTAX);
  EXPECT_EQ(a, nullptr);
  EXPECT_NE(std::string(ws1s_last_error()).find("1:5"), std::string::npos);
  EXPECT_EQ(ws1s_compile("x in y", nullptr, &a), WS1S_ERR_KIND);
  EXPECT_EQ(ws1s_compile(nullptr, nullptr, &a), WS1S_ERR_INVALID_ARGUMENT);
  EXPECT_STREQ(ws1s_status_name(WS1S_ERR_BUDGET), "budget");
}

TEST(CApi, SessionPushAndReport) {
  for (ws1s_mode mode : {WS1S_MODE_INCREMENTAL, WS1S_MODE_FROM_SCRATCH}) {
    ws1s_session* s = nullptr;
    ASSERT_EQ(ws1s_session_open(nullptr, mode, &s), WS1S_OK);
    ws1s_step_report r{};
    ASSERT_EQ(ws1s_session_push(s, "x in Y", &r), WS1S_OK);
    EXPECT_EQ(r.step, 1U);
    EXPECT_EQ(r.mode, mode);
    EXPECT_EQ(r.sat, 1);
    EXPECT_STREQ(r.witness, "[x=1,Y=1]");
    EXPECT_STREQ(r.witness_json, "{\"x\":[1],\"Y\":[1]}");
    ws1s_step_report_clear(&r);

    EXPECT_EQ(ws1s_session_push(s, "Y < x", &r), WS1S_ERR_KIND);
    EXPECT_EQ(ws1s_session_step(s), 1U);

    ASSERT_EQ(ws1s_session_push(s, "~(x in Y)", &r), WS1S_OK);
    EXPECT_EQ(r.sat, 0);
    EXPECT_STREQ(r.witness, "");
    EXPECT_STREQ(r.witness_json, "null");
    ws1s_step_report_clear(&r);
    ws1s_session_close(s);
  }
}

TEST(CApi, BudgetFromOptions) {
  ws1s_options o = ws1s_default_options();
  o.state_budget = 2;
  ws1s_session* s = nullptr;
  ASSERT_EQ(ws1s_session_open(&o, WS1S_MODE_INCREMENTAL, &s), WS1S_OK);
  ws1s_step_report r{};
  ASSERT_EQ(ws1s_session_push(s, "x1 in Y1", &r), WS1S_OK);
  ws1s_step_report_clear(&r);
  EXPECT_EQ(ws1s_session_push(s, "x1 < x2 & x2 in Y1", &r), WS1S_ERR_BUDGET);
  ws1s_session_close(s);
}

TEST(CApi, OracleCheck) {
  int sat = 0;
  char* model = nullptr;
  ASSERT_EQ(ws1s_oracle_check("x < y", 4, &sat, &model), WS1S_OK);
  EXPECT_EQ(sat, 1);
  EXPECT_STREQ(model, "k=2 x=0 y=1");
  ws1s_string_free(model);
  EXPECT_EQ(ws1s_oracle_check("X sub Y", 40, &sat, nullptr), WS1S_ERR_BUDGET);
}

TEST(CApi, BenchWritesCsv) {
  const std::string path = ::testing::TempDir() + "capi_bench.csv";
  ASSERT_EQ(ws1s_bench(2, 3, 3U, 1, path.c_str(), nullptr), WS1S_OK);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("family,mode,step", 0), 0U);
  std::remove(path.c_str());
  EXPECT_EQ(ws1s_bench(1, 3, 0U, 1, path.c_str(), nullptr), WS1S_ERR_INVALID_ARGUMENT);
}

}  // namespace
