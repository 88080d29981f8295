#pragma once

// Exact two-phase primal simplex with Bland's rule.
//
//   minimize    objective . x
//   subject to  row_i . x  (<= | = | >=)  rhs_i
//               x_j >= 0  or  x_j free
//
// Every outcome carries an exact certificate that check_certificate() can
// re-verify independently of the solver:
//   Optimal     primal x and dual y with equal objective values
//   Infeasible  Farkas multipliers y
//   Unbounded   feasible x and an improving recession direction

#include <cstddef>
#include <vector>

#include "ubk/exactnum.hpp"

namespace ubk {

enum class Sense { LessEqual, Equal, GreaterEqual };
enum class VarBound { NonNegative, Free };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpProblem {
  RationalVector objective;
  RationalMatrix constraints;
  std::vector<Sense> senses;
  RationalVector rhs;
  std::vector<VarBound> bounds;

  std::size_t num_vars() const { return objective.size(); }
  std::size_t num_rows() const { return rhs.size(); }
};

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Rational value;           // Optimal only
  RationalVector primal;    // Optimal, Unbounded (a feasible point)
  RationalVector dual;      // Optimal (dual solution), Infeasible (Farkas y)
  RationalVector ray;       // Unbounded
};

struct LpLimits {
  std::size_t max_vars = 512;
  std::size_t max_rows = 512;
};

/// Throws Error(MalformedInput) on inconsistent shapes and
/// Error(CeilingExceeded) above the size limits.
LpOutcome lp_solve(const LpProblem& problem, const LpLimits& limits = {});

/// Exact re-verification of the certificate attached to an outcome.
bool check_certificate(const LpProblem& problem, const LpOutcome& outcome);

}  // namespace ubk
