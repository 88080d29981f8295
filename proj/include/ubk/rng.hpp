#pragma once

// Seeded randomness. The engine is std::mt19937_64, whose output sequence is
// fixed by the standard; the range reductions below use rejection sampling
// instead of std::uniform_int_distribution (implementation-defined), so runs
// replay identically across standard libraries.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "ubk/exactnum.hpp"

namespace ubk {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
  }

  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// p/q with q uniform in [1, max_den] and |p/q| <= bound.
  Rational rational(std::int64_t max_den, std::int64_t bound = 1) {
    std::int64_t q = between(1, max_den);
    std::int64_t p = between(-bound * q, bound * q);
    return make_rational(p, q);
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ubk
