#include <gtest/gtest.h>

#include "ubk/exactnum.hpp"

using namespace ubk;

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-5")), "-5");
  EXPECT_EQ(to_string(parse_rational("-4/8")), "-1/2");
  EXPECT_THROW(parse_rational("4/-8"), Error);
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_THROW(parse_rational(""), Error);
}

TEST(Vector, SignNormalizedAndPrimitive) {
  RationalVector v{Rational(0), Rational(-2, 3), Rational(4, 9)};
  EXPECT_EQ(sign_normalized(v), (RationalVector{0, Rational(2, 3), Rational(-4, 9)}));
  EXPECT_EQ(primitive_direction(v), (RationalVector{0, -3, 2}));
}

TEST(LinearSystem, Identity) {
  RationalVector b{1, Rational(2, 3), -4};
  auto s = solve_linear_system(RationalMatrix::identity(3), b);
  ASSERT_TRUE(s);
  EXPECT_TRUE(s->unique);
  EXPECT_EQ(s->x, b);
}

TEST(LinearSystem, SingularConsistent) {
  auto a = RationalMatrix::from_rows({{1, 2}, {2, 4}});
  auto s = solve_linear_system(a, {3, 6});
  ASSERT_TRUE(s);
  EXPECT_FALSE(s->unique);
  EXPECT_EQ(a.apply(s->x), (RationalVector{3, 6}));
  EXPECT_FALSE(solve_linear_system(a, {3, 7}));
}

TEST(LinearSystem, ResidualIsZero) {
  auto a = RationalMatrix::from_rows({{Rational(1, 2), 3, -1, 0},
                                      {2, Rational(-1, 3), 0, 5},
                                      {0, 1, Rational(7, 4), -2},
                                      {1, 1, 1, 1}});
  RationalVector b{1, Rational(-2, 5), 3, 0};
  auto s = solve_linear_system(a, b);
  ASSERT_TRUE(s);
  EXPECT_TRUE(s->unique);
  EXPECT_TRUE(is_zero(sub(a.apply(s->x), b)));
  EXPECT_EQ(rank(a), 4u);
}
