#include <gtest/gtest.h>

#include "ubk/approx.hpp"
#include "fixtures.hpp"

using namespace ubk;
using fx::q;

namespace {

Polytope segment(Rational r) { return Polytope(1, {{r}}); }

// 1-based ball on two coordinates with a bulge along the diagonal
Polytope bulge() { return Polytope(2, {{1, 0}, {0, 1}, {q(2, 3), q(2, 3)}}); }

}  // namespace

TEST(ChooseDelta, GridValues) {
  Polytope l1 = l1_space({"a", "b"}).ball;
  auto same = choose_delta(l1, l1, q(1, 2));
  EXPECT_EQ(same.delta, q(1, 8));
  EXPECT_EQ(same.delta_prime, q(1, 4));

  auto grown = choose_delta(l1.scaled(q(9, 8)), l1, q(1, 2));
  EXPECT_GT(grown.delta, q(1, 8));
  EXPECT_LT(grown.delta_prime, q(1, 2));
  EXPECT_EQ(grown.delta, q(1, 4));

  EXPECT_EQ(choose_delta(segment(q(7, 4)), segment(1), 1).delta, q(13, 16));
  EXPECT_EQ(choose_delta(Polytope(), Polytope(), q(1, 2)).delta, q(1, 8));
}

TEST(ChooseDelta, RejectsFarNorms) {
  try {
    choose_delta(segment(2), segment(1), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotEpsilonPerturbed);
  }
}

TEST(SimplestBetween, Values) {
  EXPECT_EQ(simplest_between(q(4, 5), q(8, 9)), q(5, 6));
  EXPECT_EQ(simplest_between(0, q(1, 3)), q(1, 4));
  EXPECT_EQ(simplest_between(q(1, 2), 1), q(2, 3));
  EXPECT_EQ(simplest_between(2, 5), 3);
  EXPECT_EQ(simplest_between(q(16, 23), q(8, 11)), q(5, 7));
}

TEST(Sandwich, L1Ball) {
  Polytope l1 = l1_space({"a", "b"}).ball;
  auto s = rational_sandwich(l1, {q(1, 8), q(1, 4), q(1, 2)});
  EXPECT_EQ(s.scale, q(5, 6));
  EXPECT_GT(s.scale, q(4, 5));
  EXPECT_LT(s.scale, q(8, 9));
  EXPECT_TRUE(s.p.same_body(l1.scaled(q(5, 6))));
}

TEST(Sandwich, DenominatorBound) {
  Polytope l1 = l1_space({"a"}).ball;
  try {
    rational_sandwich(l1, {q(1, 8), q(1, 4), q(1, 2)}, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WidenBound);
  }
}

TEST(ProjectionClosure, Examples) {
  Polytope l1 = l1_space({"a", "b", "c"}).ball.scaled(q(2, 3));
  EXPECT_TRUE(projection_closure(l1).same_body(l1));

  Polytope sq = fx::diamond({"a", "b"}).ball.scaled(q(1, 2));
  Polytope expected(2, {{q(1, 2), q(1, 2)}, {q(1, 2), q(-1, 2)}, {q(1, 2), 0}, {0, q(1, 2)}});
  EXPECT_TRUE(projection_closure(sq).same_body(expected));

  Polytope skew = fx::skew().ball;
  Polytope closed = projection_closure(skew);
  EXPECT_TRUE(closed.contains(RationalVector{q(5, 4), 0}));
  EXPECT_FALSE(skew.contains(RationalVector{q(5, 4), 0}));
}

TEST(ExtensionBall, IdentityPerturbation) {
  auto a = l1_space({"a", "b"});
  auto params = choose_delta(a.ball, a.ball, q(1, 2));
  auto r = extension_ball(a, a.labels, a.ball, params);
  EXPECT_TRUE(r.a_prime.ball.same_body(a.ball));
  auto empty = extension_ball(a, {}, Polytope(), params);
  EXPECT_TRUE(empty.a_prime.ball.same_body(a.ball));
  EXPECT_TRUE(validate(empty.a_prime).valid);
}

TEST(ExtensionBall, BulgedSection) {
  auto a = l1_space({"a", "b", "c"});
  auto params = choose_delta(bulge(), l1_space({"a", "b"}).ball, q(1, 2));
  EXPECT_EQ(params.delta, q(3, 8));
  EXPECT_EQ(params.delta_prime, q(7, 16));
  auto r = extension_ball(a, {"a", "b"}, bulge(), params);
  EXPECT_EQ(r.scale, q(5, 7));
  EXPECT_TRUE(r.report.section_equal);
  EXPECT_TRUE(r.report.basis_norms_one);
  EXPECT_EQ(r.report.suppression, 1);
  EXPECT_LT(r.report.upper_ratio, q(3, 2));
  EXPECT_LT(r.report.lower_ratio, q(3, 2));
  EXPECT_TRUE(r.a_prime.ball.restrict_to({0, 1}).same_body(bulge()));
  EXPECT_TRUE(validate(r.a_prime).valid);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(r.a_prime.ball.gauge(unit_vector(3, i)), 1);
}

TEST(ExtensionBall, ShrunkSegmentCannotKeepBasisVectors) {
  // B'_Lambda = [-8/9, 8/9] gives e_a norm 9/8, while e_a is a generator of B'_A
  auto a = l1_space({"a", "b"});
  auto params = choose_delta(segment(q(8, 9)), segment(1), q(1, 2));
  try {
    extension_ball(a, {"a"}, segment(q(8, 9)), params);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConstructionInvariantViolated);
  }
}

TEST(ExtensionBall, NeedsOneBased) {
  auto a = fx::skew();
  try {
    extension_ball(a, {}, Polytope(), {q(1, 8), q(1, 4), q(1, 2)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::KMismatch);
  }
}

TEST(Pullback, Examples) {
  auto x = l1_space({"a", "b"});
  EXPECT_TRUE(pullback_norm(identity_morphism(x)).same_body(x.ball));
  auto w = quotient_by_diagonal(l1_space({"a", "b"}), fx::diamond({"a", "c"}), {"a"}, {"a"}).w;
  auto line = based_subspace(w, {"a", "c"});
  auto f = make_morphism(fx::diamond({"p", "q"}), w, {{"p", "a"}, {"q", "c"}});
  EXPECT_TRUE(pullback_norm(f).same_body(fx::diamond({"p", "q"}).ball));
  EXPECT_TRUE(line.ball.same_body(fx::diamond({"a", "c"}).ball));
}

TEST(ExtendEpsilon, EmptyLambdaIsExact) {
  Chain c = trivial_chain();
  auto a = l1_space({"a", "b"});
  auto f = make_morphism(trivial_space(), c.top(), {});
  auto e = extend_epsilon_isometry(a, {}, f, c, q(1, 2));
  EXPECT_TRUE(e.exact);
  EXPECT_EQ(e.distortion.lower, 1);
  EXPECT_EQ(e.distortion.upper, 1);
  EXPECT_EQ(c.stages.size(), 2u);
}

TEST(ExtendEpsilon, ApproximateSection) {
  Chain c = trivial_chain();
  extend_epsilon_isometry(l1_space({"a", "b"}), {}, make_morphism(trivial_space(), c.top(), {}), c, q(1, 2));
  auto a = fx::space({"p", "q", "r"}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {q(2, 3), q(2, 3), 0}});
  ASSERT_TRUE(validate(a).valid);
  auto lam = based_subspace(a, {"p", "q"});
  auto f = make_morphism(lam, c.top(), {{"p", "stage1:0"}, {"q", "stage1:1"}});
  EXPECT_TRUE(is_epsilon_isometry(distortion(f), q(1, 2)));
  auto e = extend_epsilon_isometry(a, {"p", "q"}, f, c, q(1, 2));
  EXPECT_FALSE(e.exact);
  ASSERT_TRUE(e.params.has_value());
  EXPECT_EQ(e.params->delta, q(3, 8));
  EXPECT_TRUE(is_epsilon_isometry(e.distortion, q(1, 2)));
  auto lm = e.morphism.label_map();
  EXPECT_EQ(lm[0].second, "stage1:0");
  EXPECT_EQ(lm[1].second, "stage1:1");
  EXPECT_EQ(check_chain(c), "");
}

TEST(ExtendEpsilon, IsometricFKeepsA) {
  Chain c = trivial_chain();
  extend_epsilon_isometry(fx::diamond({"a", "b"}), {}, make_morphism(trivial_space(), c.top(), {}), c, 1);
  auto a = fx::space({"x", "y", "z"}, {{1, 1, 0}, {1, -1, 0}, {0, 0, 1}});
  auto lam = based_subspace(a, {"x", "y"});
  auto f = make_morphism(lam, c.top(), {{"x", "stage1:0"}, {"y", "stage1:1"}});
  auto e = extend_epsilon_isometry(a, {"x", "y"}, f, c, q(1, 4));
  EXPECT_TRUE(e.exact);
  EXPECT_TRUE(is_isometry(e.morphism).isometry);
}
