#include "ubk/double_description.hpp"

#include <algorithm>
#include <cstdint>

namespace ubk {

namespace {

class Bitset {
 public:
  explicit Bitset(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }
  Bitset operator&(const Bitset& o) const {
    Bitset r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }
  bool contains(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((o.words_[i] & ~words_[i]) != 0) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

using IntVector = std::vector<Integer>;

IntVector primitive(IntVector v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return v;
}

IntVector integer_row(const RationalVector& r) {
  Integer l = 1;
  for (const auto& x : r) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntVector v(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) v[i] = r[i].get_num() * (l / r[i].get_den());
  return primitive(std::move(v));
}

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

struct Ray {
  IntVector v;
  Bitset tight;
};

// Extreme rays of the pointed cone {z : rows z >= 0}.
std::vector<IntVector> extreme_rays(const std::vector<IntVector>& rows, std::size_t n) {
  // Initial simplicial cone from the first n linearly independent rows.
  std::vector<std::size_t> basis;
  {
    std::vector<RationalVector> chosen;
    for (std::size_t i = 0; i < rows.size() && basis.size() < n; ++i) {
      RationalVector r(rows[i].begin(), rows[i].end());
      chosen.push_back(r);
      if (rank(RationalMatrix::from_rows(chosen)) == chosen.size())
        basis.push_back(i);
      else
        chosen.pop_back();
    }
  }
  if (basis.size() < n) throw Error(ErrorKind::DegenerateBall, "constraint system is not pointed");

  std::vector<Ray> rays;
  {
    RationalMatrix a0(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a0(i, j) = Rational(rows[basis[i]][j]);
    for (std::size_t k = 0; k < n; ++k) {
      auto sol = solve_linear_system(a0, unit_vector(n, k));
      RationalVector col = sol->x;
      Integer l = 1;
      for (const auto& x : col) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
      IntVector v(n);
      for (std::size_t j = 0; j < n; ++j) v[j] = col[j].get_num() * (l / col[j].get_den());
      Ray ray{primitive(std::move(v)), Bitset(rows.size())};
      for (std::size_t i = 0; i < n; ++i)
        if (i != k) ray.tight.set(basis[i]);
      rays.push_back(std::move(ray));
    }
  }

  std::vector<bool> in_basis(rows.size(), false);
  for (auto b : basis) in_basis[b] = true;

  for (std::size_t ri = 0; ri < rows.size(); ++ri) {
    if (in_basis[ri]) continue;
    const IntVector& a = rows[ri];
    std::vector<Integer> vals(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      vals[k] = dot(a, rays[k].v);
      int s = sgn(vals[k]);
      if (s > 0) pos.push_back(k);
      else if (s < 0) neg.push_back(k);
      else rays[k].tight.set(ri);
    }
    if (neg.empty()) continue;

    std::vector<Ray> next;
    for (std::size_t k = 0; k < rays.size(); ++k)
      if (sgn(vals[k]) >= 0) next.push_back(rays[k]);
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        Bitset common = rays[p].tight & rays[q].tight;
        if (common.count() + 2 < n) continue;
        bool adjacent = true;
        for (std::size_t w = 0; w < rays.size() && adjacent; ++w)
          if (w != p && w != q && rays[w].tight.contains(common)) adjacent = false;
        if (!adjacent) continue;
        IntVector v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = vals[p] * rays[q].v[j] - vals[q] * rays[p].v[j];
        Ray r{primitive(std::move(v)), common};
        r.tight.set(ri);
        next.push_back(std::move(r));
      }
    }
    rays = std::move(next);
  }

  std::vector<IntVector> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.v));
  return out;
}

}  // namespace

std::vector<RationalVector> symmetric_vertices(std::size_t dim, const std::vector<Facet>& slabs) {
  if (dim == 0) return {};
  std::size_t n = dim + 1;
  std::vector<IntVector> rows;
  {
    IntVector t(n, Integer(0));
    t[dim] = 1;
    rows.push_back(t);
  }
  for (const auto& s : slabs) {
    if (s.normal.size() != dim) throw Error(ErrorKind::MalformedInput, "slab dimension mismatch");
    if (is_zero(s.normal)) continue;
    if (sgn(s.offset) <= 0) throw Error(ErrorKind::DegenerateBall, "non-positive slab offset");
    RationalVector r(n);
    for (std::size_t j = 0; j < dim; ++j) r[j] = -s.normal[j];
    r[dim] = s.offset;
    rows.push_back(integer_row(r));
    for (std::size_t j = 0; j < dim; ++j) r[j] = s.normal[j];
    rows.push_back(integer_row(r));
  }

  std::vector<RationalVector> verts;
  for (const auto& ray : extreme_rays(rows, n)) {
    if (sgn(ray[dim]) == 0) throw Error(ErrorKind::DegenerateBall, "slab system is unbounded");
    RationalVector v(dim);
    for (std::size_t j = 0; j < dim; ++j) v[j] = make_rational(ray[j], ray[dim]);
    verts.push_back(sign_normalized(v));
  }
  std::sort(verts.begin(), verts.end(),
            [](const auto& a, const auto& b) { return lex_compare(a, b) < 0; });
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

std::vector<Facet> facets_of_generators(std::size_t dim, const std::vector<RationalVector>& gens) {
  std::vector<Facet> slabs;
  slabs.reserve(gens.size());
  for (const auto& g : gens) slabs.push_back({g, Rational(1)});
  std::vector<Facet> facets;
  for (const auto& y : symmetric_vertices(dim, slabs)) {
    RationalVector n = primitive_direction(y);
    std::size_t k = 0;
    while (sgn(y[k]) == 0) ++k;
    facets.push_back({n, Rational(n[k] / y[k])});
  }
  return facets;
}

}  // namespace ubk
