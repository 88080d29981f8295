#pragma once

#include "ubk/amalgam.hpp"

namespace fx {

inline ubk::Rational q(long p, long d = 1) { return ubk::make_rational(p, d); }

inline ubk::BasedSpace space(std::vector<ubk::Label> labels, std::vector<ubk::RationalVector> gens,
                             ubk::Rational k = 1) {
  std::size_t n = labels.size();
  return ubk::make_space(std::move(labels), ubk::Polytope(n, gens), k);
}

// conv{+-(5/4,1/2), +-(1,0), +-(0,1)}
inline ubk::BasedSpace skew(ubk::Rational k = q(5, 4)) {
  return space({"1", "2"}, {{q(5, 4), q(1, 2)}, {1, 0}, {0, 1}}, k);
}

inline ubk::BasedSpace diamond(std::vector<ubk::Label> labels) {
  return space(std::move(labels), {{1, 1}, {1, -1}});
}

}  // namespace fx
