#include <gtest/gtest.h>

#include "ws1s/error.hpp"
#include "ws1s/oracle.hpp"

namespace ws1s::oracle {
namespace {

Interpretation model(std::size_t k, std::map<std::string, std::size_t> pos,
                     std::map<std::string, std::uint64_t> sets = {}) {
  Interpretation m;
  m.length = k;
  m.positions = std::move(pos);
  m.sets = std::move(sets);
  return m;
}

TEST(Eval, Membership) {
  EXPECT_TRUE(eval(parse("x in Y"), model(1, {{"x", 0}}, {{"Y", 1}})));
  EXPECT_FALSE(eval(parse("x in Y"), model(1, {{"x", 0}}, {{"Y", 0}})));
  EXPECT_TRUE(eval(parse("ex2 Y: x in Y"), model(1, {{"x", 0}})));
}

TEST(Eval, Atoms) {
  const auto m = model(3, {{"x", 2}, {"y", 1}}, {{"A", 0b011}, {"B", 0b111}});
  EXPECT_TRUE(eval(parse("y < x"), m));
  EXPECT_TRUE(eval(parse("x = y + 1"), m));
  EXPECT_FALSE(eval(parse("y = x + 1"), m));
  EXPECT_TRUE(eval(parse("x = x"), m));
  EXPECT_TRUE(eval(parse("A sub B"), m));
  EXPECT_FALSE(eval(parse("B sub A"), m));
  EXPECT_TRUE(eval(parse("all1 p: p in B"), m));
  EXPECT_FALSE(eval(parse("all1 p: p in A"), m));
}

TEST(Eval, Errors) {
  EXPECT_THROW(eval(parse("x in Y"), model(1, {{"x", 0}})), Error);
  EXPECT_THROW(eval(parse("x in Y"), model(1, {{"x", 1}}, {{"Y", 0}})), Error);
  EXPECT_THROW(eval(parse("x in Y"), model(1, {{"x", 0}}, {{"Y", 2}})), Error);
}

TEST(SatBounded, Examples) {
  EXPECT_FALSE(sat_bounded(parse("x in Y & ~(x in Y)"), 4));
  EXPECT_EQ(sat_bounded(parse("x in Y"), 4), model(1, {{"x", 0}}, {{"Y", 1}}));
  EXPECT_EQ(sat_bounded(parse("x < y"), 4), model(2, {{"x", 0}, {"y", 1}}));
}

TEST(SatBounded, EmptyModelForClosedTautology) {
  EXPECT_EQ(sat_bounded(parse("all1 p: p < p"), 3), model(0, {}));
}

TEST(SatBounded, Guard) {
  EXPECT_THROW(sat_bounded(parse("X sub Y & Y sub Z"), 10), BudgetExceeded);
  EXPECT_NO_THROW(sat_bounded(parse("x < y"), 20));
}

TEST(Decode, RequiresSingleFirstOrderBit) {
  const std::vector<VarId> vars{{"x", VarKind::kFirstOrder}, {"Y", VarKind::kSecondOrder}};
  EXPECT_FALSE(decode(vars, {{0, 1}}));
  EXPECT_FALSE(decode(vars, {{1, 1}, {1, 0}}));
  EXPECT_EQ(decode(vars, {{0, 1}, {1, 1}}), model(2, {{"x", 1}}, {{"Y", 0b11}}));
}

TEST(ToString, Format) {
  EXPECT_EQ(to_string(model(2, {{"x", 1}}, {{"Y", 0b10}})), "k=2 x=1 Y={1}");
}

}  // namespace
}  // namespace ws1s::oracle
