#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace ubk;
using fx::q;

TEST(L1Sum, Examples) {
  auto s = l1_sum(l1_space({"a"}), l1_space({"b"}));
  EXPECT_TRUE(s.ball.same_body(l1_space({"a", "b"}).ball));
  EXPECT_EQ(s.ball.gauge(RationalVector{q(1, 3), q(1, 2)}), q(5, 6));
  auto s4 = l1_sum(l1_space({"a", "b"}), fx::diamond({"c", "d"}));
  EXPECT_EQ(s4.ball.gauge(RationalVector{1, 0, 1, 1}), 2);
  EXPECT_THROW(l1_sum(l1_space({"a"}), l1_space({"a"})), Error);
}

TEST(Quotient, WorkedExample) {
  auto x = l1_space({"a", "b"});
  auto y = fx::diamond({"a", "c"});
  auto r = quotient_by_diagonal(x, y, {"a"}, {"a"});
  EXPECT_EQ(r.w.labels, (std::vector<Label>{"a", "b", "c"}));
  Polytope expected(3, {{1, 0, 0}, {0, 1, 0}, {1, 0, 1}, {1, 0, -1}});
  EXPECT_TRUE(r.w.ball.same_body(expected));
  EXPECT_EQ(r.w.ball.pruned().generator_count(), 3u);
  EXPECT_TRUE(r.report.verified);
  EXPECT_EQ(r.report.suppression, 1);
  auto line = based_subspace(r.w, {"a"});
  EXPECT_TRUE(line.ball.same_body(Polytope(1, {{1}})));
  for (auto p : std::vector<RationalVector>{{1, 2}, {q(-1, 3), q(1, 5)}, {0, 1}})
    EXPECT_EQ(r.w.ball.gauge(ubk::apply(r.i_prime, p)), quotient_norm_oracle(x, y, {"a"}, {"a"}, p));
}

TEST(Quotient, DegenerateCases) {
  auto x = fx::skew();
  auto same = quotient_by_diagonal(x, x, x.labels, x.labels);
  EXPECT_TRUE(same.w.ball.same_body(x.ball));
  auto sum = quotient_by_diagonal(l1_space({"a"}), l1_space({"b"}), {}, {});
  EXPECT_TRUE(sum.w.ball.same_body(l1_space({"a", "b"}).ball));
  EXPECT_THROW(quotient_by_diagonal(x, fx::diamond({"1", "2"}), x.labels, x.labels), Error);
}

TEST(Amalgamate, MixedBounds) {
  auto z = l1_space({"z"}, 1);
  auto x = fx::skew();
  auto y = l1_space({"y", "w"});
  auto j = make_morphism(z, x, {{"z", "1"}});
  auto i = make_morphism(z, y, {{"z", "y"}});
  auto r = amalgamate(z, x, y, j, i);
  EXPECT_TRUE(r.report.commutes);
  EXPECT_LE(r.report.suppression, q(5, 4));
  auto t = amalgamate(trivial_space(), x, y, inclusion_morphism(trivial_space(), x),
                      inclusion_morphism(trivial_space(), y));
  EXPECT_EQ(t.w.dim(), 4u);
}

TEST(Amalgamate, RejectsNonIsometricLeg) {
  auto z = fx::diamond({"p", "q"});
  auto x = l1_space({"a", "b"});
  auto j = make_morphism(z, x, {{"p", "a"}, {"q", "b"}});
  EXPECT_THROW(amalgamate(z, x, z, j, identity_morphism(z)), Error);
}
