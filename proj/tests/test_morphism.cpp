#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace ubk;
using fx::q;

TEST(Apply, Examples) {
  auto x = l1_space({"a", "b"});
  EXPECT_EQ(ubk::apply(identity_morphism(x), RationalVector{1, 2}), (RationalVector{1, 2}));
  auto c = l1_space({"c"});
  auto collapse = make_morphism(x, c, {{"a", "c"}, {"b", "c"}});
  EXPECT_EQ(ubk::apply(collapse, RationalVector{1, -1}), (RationalVector{0}));
  auto inc = inclusion_morphism(l1_space({"a"}), l1_space({"a", "b", "c"}));
  EXPECT_EQ(ubk::apply(inc, RationalVector{q(3, 7)}), (RationalVector{q(3, 7), 0, 0}));
}

TEST(OperatorNorm, Examples) {
  EXPECT_EQ(operator_norm(identity_morphism(fx::skew())), 1);
  auto t = make_morphism(fx::skew(), l1_space({"1", "2"}), {{"1", "1"}, {"2", "2"}});
  EXPECT_EQ(operator_norm(t), q(7, 4));
  EXPECT_EQ(operator_norm(inclusion_morphism(trivial_space(), fx::skew())), 0);
}

TEST(Isometry, Examples) {
  EXPECT_TRUE(is_isometry(identity_morphism(fx::skew())).isometry);
  auto small = l1_space({"a", "b"});
  auto big = fx::diamond({"a", "b"});
  auto c = is_isometry(inclusion_morphism(small, big));
  EXPECT_FALSE(c.isometry);
  ASSERT_TRUE(c.witness);
  EXPECT_LT(big.ball.gauge(*c.witness), small.ball.gauge(*c.witness));
}

TEST(Distortion, Examples) {
  auto t = make_morphism(fx::skew(), l1_space({"1", "2"}), {{"1", "1"}, {"2", "2"}});
  auto d = distortion(t);
  EXPECT_EQ(d, (DistortionInterval{1, q(7, 4)}));
  EXPECT_TRUE(is_epsilon_isometry(d, 1));
  EXPECT_FALSE(is_epsilon_isometry(d, q(3, 4)));
  EXPECT_EQ(distortion(identity_morphism(fx::skew())), (DistortionInterval{1, 1}));
  auto collapse = make_morphism(l1_space({"a", "b"}), l1_space({"c"}), {{"a", "c"}, {"b", "c"}});
  EXPECT_THROW(distortion(collapse), Error);
}

TEST(Compose, Examples) {
  auto x = l1_space({"a"});
  auto y = l1_space({"a", "b"});
  auto z = l1_space({"a", "b", "c"});
  auto t = inclusion_morphism(x, y);
  auto s = inclusion_morphism(y, z);
  EXPECT_TRUE(same_label_map(compose(identity_morphism(y), t), t));
  EXPECT_TRUE(same_label_map(compose(s, t), inclusion_morphism(x, z)));
  EXPECT_THROW(compose(t, s), Error);
  EXPECT_LE(operator_norm(compose(s, t)), operator_norm(s) * operator_norm(t));
}
