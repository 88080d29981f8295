#include <gtest/gtest.h>

#include "ubk/lp.hpp"

using namespace ubk;

namespace {

LpProblem equality_problem(RationalVector c, std::vector<RationalVector> rows, RationalVector b) {
  LpProblem p;
  p.objective = std::move(c);
  p.constraints = RationalMatrix::from_rows(rows);
  p.senses.assign(b.size(), Sense::Equal);
  p.rhs = std::move(b);
  p.bounds.assign(p.objective.size(), VarBound::NonNegative);
  return p;
}

}  // namespace

TEST(Lp, OneTightConstraint) {
  auto p = equality_problem({1, 1}, {{1, -1}}, {1});
  auto o = lp_solve(p);
  ASSERT_EQ(o.status, LpStatus::Optimal);
  EXPECT_EQ(o.value, 1);
  EXPECT_EQ(o.primal, (RationalVector{1, 0}));
  EXPECT_TRUE(check_certificate(p, o));
}

TEST(Lp, Contradiction) {
  auto p = equality_problem({0}, {{0}}, {1});
  auto o = lp_solve(p);
  EXPECT_EQ(o.status, LpStatus::Infeasible);
  EXPECT_TRUE(check_certificate(p, o));
}

TEST(Lp, GaugeOfVertex) {
  // conv{+-(5/4,1/2), +-(1,0), +-(0,1)} at (5/4,1/2)
  RationalVector g1{Rational(5, 4), Rational(1, 2)}, g2{1, 0}, g3{0, 1};
  auto p = equality_problem({1, 1, 1, 1, 1, 1},
                            {{g1[0], -g1[0], 1, -1, 0, 0}, {g1[1], -g1[1], 0, 0, 1, -1}},
                            {Rational(5, 4), Rational(1, 2)});
  auto o = lp_solve(p);
  ASSERT_EQ(o.status, LpStatus::Optimal);
  EXPECT_EQ(o.value, 1);
  EXPECT_TRUE(check_certificate(p, o));
}

TEST(Lp, MixedSensesAndFreeVariables) {
  LpProblem p;
  p.objective = {-1, -2, 0};
  p.constraints = RationalMatrix::from_rows({{1, 1, 0}, {1, -1, 1}, {0, 1, 0}});
  p.senses = {Sense::LessEqual, Sense::Equal, Sense::GreaterEqual};
  p.rhs = {4, Rational(1, 2), -3};
  p.bounds = {VarBound::NonNegative, VarBound::NonNegative, VarBound::Free};
  auto o = lp_solve(p);
  ASSERT_EQ(o.status, LpStatus::Optimal);
  EXPECT_EQ(o.value, -8);
  EXPECT_TRUE(check_certificate(p, o));
}

TEST(Lp, Unbounded) {
  LpProblem p;
  p.objective = {-1, 0};
  p.constraints = RationalMatrix::from_rows({{1, -1}});
  p.senses = {Sense::LessEqual};
  p.rhs = {1};
  p.bounds = {VarBound::NonNegative, VarBound::NonNegative};
  auto o = lp_solve(p);
  ASSERT_EQ(o.status, LpStatus::Unbounded);
  EXPECT_TRUE(check_certificate(p, o));
}

TEST(Lp, ShapeMismatchAndCeiling) {
  LpProblem p = equality_problem({1, 1}, {{1, -1}}, {1});
  p.rhs = {1, 2};
  EXPECT_THROW(lp_solve(p), Error);
  LpProblem big = equality_problem(RationalVector(600, 1), {RationalVector(600, 1)}, {1});
  EXPECT_THROW(lp_solve(big), Error);
}
