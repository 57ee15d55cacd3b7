#include <gtest/gtest.h>

#include "ws1s/cube.hpp"
#include "ws1s/error.hpp"

namespace ws1s {
namespace {

TEST(Cube, ParseRejectsJunk) {
  EXPECT_NO_THROW(Cube::parse("01X"));
  EXPECT_THROW(Cube::parse("01Y"), Error);
}

TEST(Cube, Matching) {
  const Cube c = Cube::parse("1X0");
  EXPECT_TRUE(c.matches({1, 0, 0}));
  EXPECT_TRUE(c.matches({1, 1, 0}));
  EXPECT_FALSE(c.matches({0, 1, 0}));
  EXPECT_FALSE(c.matches({1, 1, 1}));
  EXPECT_EQ(c.count_free(), 1U);
  EXPECT_EQ(c.min_symbol(), (Symbol{1, 0, 0}));
}

TEST(Cube, Intersection) {
  const Cube a = Cube::parse("1X");
  const Cube b = Cube::parse("X0");
  ASSERT_TRUE(a.intersect(b));
  EXPECT_EQ(*a.intersect(b), Cube::parse("10"));
  EXPECT_FALSE(Cube::parse("1X").intersects(Cube::parse("0X")));
}

TEST(Cube, ZeroAndUniversal) {
  EXPECT_TRUE(Cube::parse("0X").admits_zero());
  EXPECT_FALSE(Cube::parse("01").admits_zero());
  EXPECT_TRUE(Cube::parse("XX").is_universal());
  EXPECT_TRUE(Cube::parse("").is_universal());
}

TEST(Cube, WithoutAndWiden) {
  EXPECT_EQ(Cube::parse("10X").without(1), Cube::parse("1X"));
  const std::vector<std::size_t> target{0, 2};
  EXPECT_EQ(Cube::parse("10").widen(target, 4), Cube::parse("1X0X"));
}

TEST(Cube, Ordering) {
  EXPECT_TRUE(cube_min_less(Cube::parse("0X"), Cube::parse("1X")));
  EXPECT_TRUE(cube_min_less(Cube::parse("X0"), Cube::parse("01")));
  EXPECT_TRUE(symbol_less({0, 1}, {1, 0}));
  EXPECT_FALSE(symbol_less({1, 0}, {1, 0}));
}

}  // namespace
}  // namespace ws1s
