#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace ubk;
using fx::q;

TEST(Validate, Examples) {
  EXPECT_TRUE(validate(l1_space({"a", "b"})).valid);
  auto r = validate(fx::skew(1));
  EXPECT_FALSE(r.valid);
  ASSERT_TRUE(r.suppression_violation);
  EXPECT_EQ(r.suppression_violation->norm, q(5, 4));
  EXPECT_EQ(r.suppression_violation->subset, std::vector<Label>{"1"});
  EXPECT_EQ(r.suppression_violation->generator, (RationalVector{q(5, 4), q(1, 2)}));
  EXPECT_TRUE(validate(fx::skew(q(5, 4))).valid);
}

TEST(Validate, Normalization) {
  auto s = fx::space({"a", "b"}, {{2, 0}, {0, 1}});
  auto r = validate(s);
  EXPECT_FALSE(r.valid);
  ASSERT_EQ(r.unnormalized.size(), 1u);
  EXPECT_EQ(r.unnormalized[0].second, q(1, 2));
  EXPECT_FALSE(validate(fx::space({"a", "b"}, {{1, 1}})).full_dimensional);
}

TEST(ProjectionNorm, Examples) {
  EXPECT_EQ(projection_norm(fx::skew(), {}), 0);
  EXPECT_EQ(projection_norm(fx::skew(), {"1", "2"}), 1);
  EXPECT_EQ(projection_norm(fx::skew(), {"1"}), q(5, 4));
}

TEST(Suppression, Examples) {
  EXPECT_EQ(suppression_constant(l1_space({"a", "b", "c"})).norm, 1);
  EXPECT_EQ(suppression_constant(fx::diamond({"a", "b"})).norm, 1);
  EXPECT_EQ(suppression_constant(fx::skew()).norm, q(5, 4));
  EXPECT_EQ(suppression_constant_fast(fx::skew()).norm, q(5, 4));
  EXPECT_TRUE(certify_one_suppression(fx::diamond({"a", "b"})));
  EXPECT_FALSE(certify_one_suppression(fx::skew()));
  SpaceLimits lim;
  lim.suppression_ceiling = 2;
  EXPECT_THROW(suppression_constant(l1_space({"a", "b", "c"}), lim), Error);
}

TEST(Subspace, Examples) {
  auto s = fx::skew();
  EXPECT_TRUE(based_subspace(s, {"1", "2"}).ball.same_body(s.ball));
  EXPECT_EQ(based_subspace(s, {}).dim(), 0u);
  auto one = based_subspace(s, {"1"});
  EXPECT_TRUE(one.ball.same_body(Polytope(1, {{1}})));
  EXPECT_TRUE(validate(one).valid);
}

TEST(Renorm, Examples) {
  auto l1 = l1_space({"a", "b"});
  EXPECT_TRUE(renorm_to_one_based(l1).ball.same_body(l1.ball));
  auto r = renorm_to_one_based(fx::skew());
  EXPECT_EQ(suppression_constant(r).norm, 1);
  // new ball = old ball cut by |x1| <= 1 and |x2| <= 1
  for (auto x : std::vector<RationalVector>{{1, q(1, 3)}, {q(9, 8), 0}, {q(1, 2), q(1, 2)}}) {
    bool inside = fx::skew().ball.contains(x) && abs(x[0]) <= 1 && abs(x[1]) <= 1;
    EXPECT_EQ(r.ball.contains(x), inside);
  }
  auto one_d = fx::space({"a"}, {{1}});
  EXPECT_TRUE(renorm_to_one_based(one_d).ball.same_body(one_d.ball));
}

TEST(Canonical, Examples) {
  auto swapped = fx::space({"2", "1"}, {{q(1, 2), q(5, 4)}, {1, 0}, {0, 1}}, q(5, 4));
  EXPECT_EQ(canonical_form(fx::skew()), canonical_form(swapped));
  EXPECT_EQ(canonical_form(l1_space({"a", "b"})), canonical_form(l1_space({"b", "a"})));
  EXPECT_FALSE(canonical_form(l1_space({"a", "b"})) == canonical_form(fx::diamond({"a", "b"})));
  EXPECT_EQ(automorphisms(l1_space({"a", "b"})).size(), 2u);
  EXPECT_EQ(automorphisms(fx::skew()).size(), 1u);
}
