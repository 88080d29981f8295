#include "ubk/lp.hpp"

#include <limits>

namespace ubk {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void check_shape(const LpProblem& p) {
  std::size_t n = p.num_vars(), m = p.num_rows();
  if (p.constraints.rows() != m || (m > 0 && p.constraints.cols() != n) ||
      p.senses.size() != m || p.bounds.size() != n)
    throw Error(ErrorKind::MalformedInput, "LP dimension mismatch");
}

// Column of the standard form min c'x', A'x' = b', x' >= 0 that an original
// variable or a slack maps to.
struct StandardForm {
  std::size_t n_cols = 0;                   // structural + slack columns
  std::vector<std::size_t> plus_col;        // per original variable
  std::vector<std::size_t> minus_col;       // kNone unless free
  std::vector<int> row_sign;                // +1 / -1 applied to each row
  std::vector<std::vector<Rational>> a;     // m x n_cols
  RationalVector b;
  RationalVector c;
};

StandardForm standardize(const LpProblem& p) {
  StandardForm s;
  std::size_t n = p.num_vars(), m = p.num_rows();
  s.plus_col.resize(n);
  s.minus_col.assign(n, kNone);
  for (std::size_t j = 0; j < n; ++j) {
    s.plus_col[j] = s.n_cols++;
    if (p.bounds[j] == VarBound::Free) s.minus_col[j] = s.n_cols++;
  }
  std::vector<std::size_t> slack_col(m, kNone);
  for (std::size_t i = 0; i < m; ++i)
    if (p.senses[i] != Sense::Equal) slack_col[i] = s.n_cols++;

  s.a.assign(m, std::vector<Rational>(s.n_cols, Rational(0)));
  s.b.resize(m);
  s.row_sign.assign(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    int sign = p.rhs[i] < 0 ? -1 : 1;
    s.row_sign[i] = sign;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& v = p.constraints(i, j);
      if (sgn(v) == 0) continue;
      s.a[i][s.plus_col[j]] = sign * v;
      if (s.minus_col[j] != kNone) s.a[i][s.minus_col[j]] = -sign * v;
    }
    if (slack_col[i] != kNone)
      s.a[i][slack_col[i]] = (p.senses[i] == Sense::LessEqual ? sign : -sign);
    s.b[i] = sign * p.rhs[i];
  }
  s.c.assign(s.n_cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    s.c[s.plus_col[j]] = p.objective[j];
    if (s.minus_col[j] != kNone) s.c[s.minus_col[j]] = -p.objective[j];
  }
  return s;
}

// Dense simplex tableau over [structural | artificial] columns. Artificial
// columns are kept to the end so that B^{-1} stays readable from them.
class Tableau {
 public:
  Tableau(const StandardForm& s) : m_(s.b.size()), n_(s.n_cols), width_(n_ + m_) {
    rows_.assign(m_, std::vector<Rational>(width_ + 1, Rational(0)));
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = s.a[i][j];
      rows_[i][n_ + i] = 1;
      rows_[i][width_] = s.b[i];
    }
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;
  }

  // Loads reduced costs for the given cost vector (length width_).
  void set_costs(const RationalVector& cost) {
    cost_ = cost;
    obj_.assign(width_ + 1, Rational(0));
    for (std::size_t j = 0; j < width_; ++j) obj_[j] = cost[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= width_; ++j)
        if (sgn(rows_[i][j]) != 0) obj_[j] -= cb * rows_[i][j];
    }
  }

  // Bland's rule. Returns kNone when optimal; otherwise the entering column,
  // with leaving row set to kNone when the LP is unbounded along it.
  std::pair<std::size_t, std::size_t> iterate(std::size_t allowed_cols) {
    while (true) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < allowed_cols; ++j)
        if (sgn(obj_[j]) < 0) { enter = j; break; }
      if (enter == kNone) return {kNone, kNone};
      std::size_t leave = kNone;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(rows_[i][enter]) <= 0) continue;
        Rational ratio = rows_[i][width_] / rows_[i][enter];
        if (leave == kNone || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == kNone) return {enter, kNone};
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / rows_[r][c];
    auto& pr = rows_[r];
    for (auto& v : pr)
      if (sgn(v) != 0) v *= inv;
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= width_; ++j)
      if (sgn(pr[j]) != 0) nz.push_back(j);
    auto eliminate = [&](std::vector<Rational>& row) {
      if (sgn(row[c]) == 0) return;
      Rational f = row[c];
      for (std::size_t j : nz) row[j] -= f * pr[j];
    };
    for (std::size_t i = 0; i < m_; ++i)
      if (i != r) eliminate(rows_[i]);
    eliminate(obj_);
    basis_[r] = c;
  }

  // Drives zero-level artificial variables out of the basis where possible.
  void expel_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (sgn(rows_[i][j]) != 0) { pivot(i, j); break; }
    }
  }

  Rational objective_value() const { return -obj_[width_]; }

  RationalVector solution() const {
    RationalVector x(width_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) x[basis_[i]] = rows_[i][width_];
    return x;
  }

  // y = c_B B^{-1}, read from the artificial columns: reduced cost of
  // artificial i equals cost_i - y_i.
  RationalVector duals() const {
    RationalVector y(m_);
    for (std::size_t i = 0; i < m_; ++i) y[i] = cost_[n_ + i] - obj_[n_ + i];
    return y;
  }

  RationalVector ray(std::size_t enter) const {
    RationalVector d(width_, Rational(0));
    d[enter] = 1;
    for (std::size_t i = 0; i < m_; ++i) d[basis_[i]] = -rows_[i][enter];
    return d;
  }

  std::size_t structural() const { return n_; }
  std::size_t width() const { return width_; }

 private:
  std::size_t m_, n_, width_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> obj_;
  RationalVector cost_;
  std::vector<std::size_t> basis_;
};

RationalVector to_original(const LpProblem& p, const StandardForm& s, const RationalVector& xs) {
  RationalVector x(p.num_vars());
  for (std::size_t j = 0; j < p.num_vars(); ++j) {
    x[j] = xs[s.plus_col[j]];
    if (s.minus_col[j] != kNone) x[j] -= xs[s.minus_col[j]];
  }
  return x;
}

RationalVector duals_to_original(const StandardForm& s, const RationalVector& ys) {
  RationalVector y(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) y[i] = s.row_sign[i] * ys[i];
  return y;
}

}  // namespace

LpOutcome lp_solve(const LpProblem& problem, const LpLimits& limits) {
  check_shape(problem);
  if (problem.num_vars() > limits.max_vars || problem.num_rows() > limits.max_rows)
    throw Error(ErrorKind::CeilingExceeded,
                "LP of " + std::to_string(problem.num_rows()) + " rows x " +
                    std::to_string(problem.num_vars()) + " variables exceeds the size ceiling");

  StandardForm s = standardize(problem);
  Tableau t(s);
  std::size_t m = problem.num_rows();

  LpOutcome out;
  if (m > 0) {
    RationalVector phase1(t.width(), Rational(0));
    for (std::size_t i = 0; i < m; ++i) phase1[t.structural() + i] = 1;
    t.set_costs(phase1);
    t.iterate(t.structural());
    if (sgn(t.objective_value()) > 0) {
      out.status = LpStatus::Infeasible;
      out.dual = duals_to_original(s, t.duals());
      return out;
    }
    t.expel_artificials();
  }

  RationalVector phase2(t.width(), Rational(0));
  for (std::size_t j = 0; j < s.n_cols; ++j) phase2[j] = s.c[j];
  t.set_costs(phase2);
  auto [enter, leave] = t.iterate(t.structural());
  if (enter != kNone) {
    out.status = LpStatus::Unbounded;
    out.primal = to_original(problem, s, t.solution());
    out.ray = to_original(problem, s, t.ray(enter));
    return out;
  }
  out.status = LpStatus::Optimal;
  out.primal = to_original(problem, s, t.solution());
  out.value = t.objective_value();
  out.dual = duals_to_original(s, t.duals());
  return out;
}

namespace {

bool row_sign_ok(Sense sense, const Rational& y) {
  switch (sense) {
    case Sense::LessEqual: return sgn(y) <= 0;
    case Sense::GreaterEqual: return sgn(y) >= 0;
    case Sense::Equal: return true;
  }
  return false;
}

bool primal_feasible(const LpProblem& p, const RationalVector& x) {
  if (x.size() != p.num_vars()) return false;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (p.bounds[j] == VarBound::NonNegative && sgn(x[j]) < 0) return false;
  RationalVector ax = p.constraints.rows() ? p.constraints.apply(x) : RationalVector{};
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    int c = cmp(ax[i], p.rhs[i]);
    if ((p.senses[i] == Sense::LessEqual && c > 0) || (p.senses[i] == Sense::Equal && c != 0) ||
        (p.senses[i] == Sense::GreaterEqual && c < 0))
      return false;
  }
  return true;
}

// A^T y compared against `bound` per column: <= for nonnegative variables,
// == for free ones.
bool dual_columns_ok(const LpProblem& p, const RationalVector& y, const RationalVector& bound) {
  for (std::size_t j = 0; j < p.num_vars(); ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < p.num_rows(); ++i)
      if (sgn(y[i]) != 0) s += p.constraints(i, j) * y[i];
    int c = cmp(s, bound[j]);
    if (p.bounds[j] == VarBound::Free ? c != 0 : c > 0) return false;
  }
  return true;
}

}  // namespace

bool check_certificate(const LpProblem& p, const LpOutcome& o) {
  switch (o.status) {
    case LpStatus::Optimal: {
      if (!primal_feasible(p, o.primal) || dot(p.objective, o.primal) != o.value) return false;
      if (o.dual.size() != p.num_rows()) return false;
      for (std::size_t i = 0; i < p.num_rows(); ++i)
        if (!row_sign_ok(p.senses[i], o.dual[i])) return false;
      return dual_columns_ok(p, o.dual, p.objective) && dot(p.rhs, o.dual) == o.value;
    }
    case LpStatus::Infeasible: {
      if (o.dual.size() != p.num_rows()) return false;
      for (std::size_t i = 0; i < p.num_rows(); ++i)
        if (!row_sign_ok(p.senses[i], o.dual[i])) return false;
      return dual_columns_ok(p, o.dual, zeros(p.num_vars())) && sgn(dot(p.rhs, o.dual)) > 0;
    }
    case LpStatus::Unbounded: {
      if (!primal_feasible(p, o.primal) || o.ray.size() != p.num_vars()) return false;
      if (sgn(dot(p.objective, o.ray)) >= 0) return false;
      for (std::size_t j = 0; j < p.num_vars(); ++j)
        if (p.bounds[j] == VarBound::NonNegative && sgn(o.ray[j]) < 0) return false;
      RationalVector ad = p.constraints.rows() ? p.constraints.apply(o.ray) : RationalVector{};
      for (std::size_t i = 0; i < p.num_rows(); ++i) {
        int c = sgn(ad[i]);
        if ((p.senses[i] == Sense::LessEqual && c > 0) || (p.senses[i] == Sense::Equal && c != 0) ||
            (p.senses[i] == Sense::GreaterEqual && c < 0))
          return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace ubk
