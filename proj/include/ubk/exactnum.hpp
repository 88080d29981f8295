#pragma once

// Exact rational scalars, dense vectors and matrices.
//
// Rational is GMP's mpq_class. Every arithmetic result produced by gmpxx is
// already canonical (lowest terms, positive denominator); values built from
// raw numerator/denominator pairs go through make_rational() which
// canonicalizes.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "ubk/error.hpp"

namespace ubk {

using Integer = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

Rational make_rational(const Integer& num, const Integer& den);

/// "p/q", or "p" when q == 1.
std::string to_string(const Rational& q);

/// Parses "p", "-p", "p/q". Rejects q == 0 and anything else with
/// ErrorKind::MalformedInput.
Rational parse_rational(std::string_view text);

Rational abs(const Rational& q);

RationalVector zeros(std::size_t n);
RationalVector unit_vector(std::size_t n, std::size_t i);

Rational dot(const RationalVector& a, const RationalVector& b);
RationalVector add(const RationalVector& a, const RationalVector& b);
RationalVector sub(const RationalVector& a, const RationalVector& b);
RationalVector scale(const Rational& s, const RationalVector& a);
RationalVector negate(const RationalVector& a);
bool is_zero(const RationalVector& a);

/// Scales a nonzero vector to the primitive integer vector on the same ray.
RationalVector primitive_direction(const RationalVector& a);

/// Lexicographic comparison; used for deterministic orderings everywhere.
int lex_compare(const RationalVector& a, const RationalVector& b);

/// Picks the representative of {a, -a} whose first nonzero entry is positive.
RationalVector sign_normalized(const RationalVector& a);

std::string to_string(const RationalVector& v);

/// Dense row-major matrix.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows);
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  RationalVector row(std::size_t r) const;
  RationalVector column(std::size_t c) const;
  RationalVector apply(const RationalVector& x) const;
  RationalMatrix transpose() const;

  bool operator==(const RationalMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

std::size_t rank(const RationalMatrix& m);

struct LinearSolution {
  RationalVector x;
  bool unique = true;
};

/// Solves A x = b exactly by fraction-free (Bareiss) elimination. Returns
/// nullopt when the system is inconsistent; for rank-deficient consistent
/// systems returns the solution with all free variables set to zero and
/// unique == false.
std::optional<LinearSolution> solve_linear_system(const RationalMatrix& a,
                                                  const RationalVector& b);

}  // namespace ubk
