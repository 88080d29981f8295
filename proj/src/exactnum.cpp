#include "ubk/exactnum.hpp"

#include <cctype>
#include <sstream>

namespace ubk {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedInput: return "malformed input";
    case ErrorKind::DegenerateBall: return "degenerate ball";
    case ErrorKind::CeilingExceeded: return "ceiling exceeded";
    case ErrorKind::LabelCollision: return "label collision";
    case ErrorKind::NotInjective: return "not injective";
    case ErrorKind::SpaceMismatch: return "space mismatch";
    case ErrorKind::AmalgamPrecondition: return "amalgam precondition";
    case ErrorKind::NotEpsilonPerturbed: return "not an epsilon-perturbed norm";
    case ErrorKind::WidenBound: return "widen bound";
    case ErrorKind::ConstructionInvariantViolated: return "construction invariant violated";
    case ErrorKind::KMismatch: return "K mismatch";
  }
  return "unknown";
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorKind::MalformedInput, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool parse_integer(std::string_view s, bool allow_sign, Integer& out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (std::size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  std::string digits(s.substr(s[0] == '+' ? 1 : 0));
  return out.set_str(digits, 10) == 0;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  Integer num, den = 1;
  bool ok = slash == std::string_view::npos
                ? parse_integer(text, true, num)
                : parse_integer(text.substr(0, slash), true, num) &&
                      parse_integer(text.substr(slash + 1), false, den);
  if (!ok) throw Error(ErrorKind::MalformedInput, "not a rational: \"" + std::string(text) + "\"");
  if (den == 0) throw Error(ErrorKind::MalformedInput, "zero denominator in \"" + std::string(text) + "\"");
  return make_rational(num, den);
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

RationalVector zeros(std::size_t n) { return RationalVector(n, Rational(0)); }

RationalVector unit_vector(std::size_t n, std::size_t i) {
  auto v = zeros(n);
  v.at(i) = 1;
  return v;
}

static void require_same_size(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::MalformedInput, "vector dimension mismatch");
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  require_same_size(a, b);
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

RationalVector add(const RationalVector& a, const RationalVector& b) {
  require_same_size(a, b);
  RationalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RationalVector sub(const RationalVector& a, const RationalVector& b) {
  require_same_size(a, b);
  RationalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

RationalVector scale(const Rational& s, const RationalVector& a) {
  RationalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

RationalVector negate(const RationalVector& a) { return scale(Rational(-1), a); }

bool is_zero(const RationalVector& a) {
  for (const auto& x : a)
    if (sgn(x) != 0) return false;
  return true;
}

RationalVector primitive_direction(const RationalVector& a) {
  Integer l = 1;
  for (const auto& x : a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> ints(a.size());
  Integer g = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ints[i] = a[i].get_num() * (l / a[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  if (g == 0) return a;
  RationalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = Rational(ints[i] / g);
  return r;
}

int lex_compare(const RationalVector& a, const RationalVector& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

RationalVector sign_normalized(const RationalVector& a) {
  for (const auto& x : a) {
    if (sgn(x) > 0) return a;
    if (sgn(x) < 0) return negate(a);
  }
  return a;
}

std::string to_string(const RationalVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << to_string(v[i]);
  os << ')';
  return os.str();
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  RationalMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorKind::MalformedInput, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalVector RationalMatrix::row(std::size_t r) const {
  return RationalVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

RationalVector RationalMatrix::column(std::size_t c) const {
  RationalVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

RationalVector RationalMatrix::apply(const RationalVector& x) const {
  if (x.size() != cols_) throw Error(ErrorKind::MalformedInput, "matrix/vector shape mismatch");
  RationalVector y(rows_, Rational(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (sgn((*this)(r, c)) != 0 && sgn(x[c]) != 0) y[r] += (*this)(r, c) * x[c];
  return y;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

namespace {

// Integer row echelon form by Bareiss elimination. Rows are scaled to
// integers first; the result keeps every intermediate entry integral.
struct Echelon {
  std::vector<std::vector<Integer>> rows;
  std::vector<std::size_t> pivot_cols;
};

Echelon bareiss(const RationalMatrix& m, std::size_t elim_cols) {
  Echelon e;
  e.rows.resize(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    e.rows[r].resize(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c)
      e.rows[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
  }
  Integer prev = 1;
  std::size_t pr = 0;
  for (std::size_t c = 0; c < elim_cols && pr < e.rows.size(); ++c) {
    std::size_t piv = pr;
    while (piv < e.rows.size() && e.rows[piv][c] == 0) ++piv;
    if (piv == e.rows.size()) continue;
    std::swap(e.rows[pr], e.rows[piv]);
    for (std::size_t r = pr + 1; r < e.rows.size(); ++r) {
      for (std::size_t k = c + 1; k < m.cols(); ++k) {
        Integer v = e.rows[pr][c] * e.rows[r][k] - e.rows[r][c] * e.rows[pr][k];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        e.rows[r][k] = v;
      }
      e.rows[r][c] = 0;
    }
    prev = e.rows[pr][c];
    e.pivot_cols.push_back(c);
    ++pr;
  }
  return e;
}

}  // namespace

std::size_t rank(const RationalMatrix& m) { return bareiss(m, m.cols()).pivot_cols.size(); }

std::optional<LinearSolution> solve_linear_system(const RationalMatrix& a,
                                                  const RationalVector& b) {
  if (b.size() != a.rows()) throw Error(ErrorKind::MalformedInput, "rhs length mismatch");
  RationalMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  Echelon e = bareiss(aug, a.cols());
  std::size_t rk = e.pivot_cols.size();
  for (std::size_t r = rk; r < e.rows.size(); ++r)
    if (e.rows[r][a.cols()] != 0) return std::nullopt;

  LinearSolution sol;
  sol.x = zeros(a.cols());
  sol.unique = rk == a.cols();
  for (std::size_t i = rk; i-- > 0;) {
    std::size_t c = e.pivot_cols[i];
    Rational acc(e.rows[i][a.cols()]);
    for (std::size_t k = c + 1; k < a.cols(); ++k)
      if (e.rows[i][k] != 0) acc -= Rational(e.rows[i][k]) * sol.x[k];
    sol.x[c] = acc / Rational(e.rows[i][c]);
  }
  return sol;
}

}  // namespace ubk
