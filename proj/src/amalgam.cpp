#include "ubk/amalgam.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace ubk {

BasedSpace l1_sum(const BasedSpace& x, const BasedSpace& y) {
  return quotient_by_diagonal(x, y, {}, {}, AmalgamOptions{false, false, {}}).w;
}

void verify_amalgam(AmalgamResult& r, const BasedSpace& x, const BasedSpace& y, const PolytopeLimits& limits) {
  auto ic = is_isometry(r.i_prime, limits);
  auto jc = is_isometry(r.j_prime, limits);
  r.report.i_prime_isometry = ic.isometry;
  r.report.j_prime_isometry = jc.isometry;
  r.report.suppression_bound = std::max(x.k_bound, y.k_bound);
  SpaceLimits sl;
  sl.polytope = limits;
  r.report.suppression = suppression_constant_fast(r.w, sl).norm;
  if (!ic.isometry)
    throw Error(ErrorKind::ConstructionInvariantViolated, "i' is not an isometry: " + ic.reason);
  if (!jc.isometry)
    throw Error(ErrorKind::ConstructionInvariantViolated, "j' is not an isometry: " + jc.reason);
  if (r.report.suppression > r.report.suppression_bound)
    throw Error(ErrorKind::ConstructionInvariantViolated,
                "amalgam suppression " + to_string(r.report.suppression) + " exceeds " +
                    to_string(r.report.suppression_bound));
  r.report.verified = true;
}

AmalgamResult quotient_by_diagonal(const BasedSpace& x, const BasedSpace& y,
                                   const std::vector<Label>& shared_x, const std::vector<Label>& shared_y,
                                   const AmalgamOptions& options) {
  if (shared_x.size() != shared_y.size())
    throw Error(ErrorKind::MalformedInput, "shared label lists differ in length");
  auto sx = x.indices_of(shared_x);
  auto sy = y.indices_of(shared_y);

  if (options.check_precondition && !shared_x.empty()) {
    BasedSpace zx = based_subspace(x, shared_x, SpaceLimits{16, 6, options.limits});
    std::vector<std::pair<Label, Label>> ident;
    for (std::size_t k = 0; k < shared_x.size(); ++k) ident.emplace_back(shared_x[k], shared_y[k]);
    auto cert = is_isometry(make_morphism(zx, y, ident), options.limits);
    if (!cert.isometry) {
      std::string w = cert.witness ? " at " + to_string(*cert.witness) : "";
      throw Error(ErrorKind::AmalgamPrecondition,
                  "shared subspaces are not isometric under the identification: " + cert.reason + w);
    }
  }

  std::unordered_set<Label> x_labels(x.labels.begin(), x.labels.end());
  std::vector<std::size_t> ymap(y.dim(), Polytope::npos);
  for (std::size_t k = 0; k < sy.size(); ++k) {
    if (ymap[sy[k]] != Polytope::npos) throw Error(ErrorKind::NotInjective, "shared label repeated");
    ymap[sy[k]] = sx[k];
  }
  std::vector<Label> labels = x.labels;
  for (std::size_t i = 0; i < y.dim(); ++i) {
    if (ymap[i] != Polytope::npos) continue;
    if (x_labels.count(y.labels[i]))
      throw Error(ErrorKind::LabelCollision, "label '" + y.labels[i] + "' occurs in both spaces");
    ymap[i] = labels.size();
    labels.push_back(y.labels[i]);
  }
  std::size_t n = labels.size();
  std::vector<std::size_t> xmap(x.dim());
  for (std::size_t i = 0; i < xmap.size(); ++i) xmap[i] = i;
  Polytope ball = hull_union(x.ball.embed(xmap, n), y.ball.embed(ymap, n));

  AmalgamResult r{make_space(std::move(labels), std::move(ball), std::max(x.k_bound, y.k_bound)),
                  BasedMorphism{}, BasedMorphism{}, {}};
  r.i_prime = BasedMorphism{x, r.w, xmap};
  r.j_prime = BasedMorphism{y, r.w, ymap};
  r.report.commutes = true;
  if (options.verify) verify_amalgam(r, x, y, options.limits);
  return r;
}

AmalgamResult amalgamate(const BasedSpace& z, const BasedSpace& x, const BasedSpace& y,
                         const BasedMorphism& j, const BasedMorphism& i, const AmalgamOptions& options) {
  if (j.domain.labels != z.labels || i.domain.labels != z.labels)
    throw Error(ErrorKind::SpaceMismatch, "legs must start at Z");
  if (j.codomain.labels != x.labels || i.codomain.labels != y.labels)
    throw Error(ErrorKind::SpaceMismatch, "legs must end at X and Y");
  if (options.check_precondition) {
    for (const auto* leg : {&j, &i}) {
      auto c = is_isometry(*leg, options.limits);
      if (!c.isometry) {
        std::string msg = "leg is not an isometry: " + c.reason;
        if (c.witness) msg += " at " + to_string(*c.witness);
        if (leg->injective()) {
          auto d = distortion(*leg, options.limits);
          msg += " (distortion [" + to_string(d.lower) + ", " + to_string(d.upper) + "])";
        }
        throw Error(ErrorKind::AmalgamPrecondition, msg);
      }
    }
  }
  std::vector<Label> sx, sy;
  for (std::size_t k = 0; k < z.dim(); ++k) {
    sx.push_back(x.labels[j.map[k]]);
    sy.push_back(y.labels[i.map[k]]);
  }
  AmalgamOptions inner = options;
  inner.check_precondition = false;
  AmalgamResult r = quotient_by_diagonal(x, y, sx, sy, inner);
  if (options.verify) {
    r.report.commutes = compose(r.i_prime, j).map == compose(r.j_prime, i).map;
    if (!r.report.commutes)
      throw Error(ErrorKind::ConstructionInvariantViolated, "amalgam square does not commute");
  }
  return r;
}

Rational quotient_norm_oracle(const BasedSpace& x_space, const BasedSpace& y_space,
                              const std::vector<Label>& shared_x, const std::vector<Label>& shared_y,
                              const RationalVector& x) {
  if (x.size() != x_space.dim()) throw Error(ErrorKind::MalformedInput, "oracle: dimension mismatch");
  auto sx = x_space.indices_of(shared_x);
  auto sy = y_space.indices_of(shared_y);
  auto gx = x_space.ball.generators();
  auto gy = y_space.ball.generators();
  std::size_t nx = x_space.dim(), ny = y_space.dim(), s = sx.size();
  std::size_t vars = 2 * gx.size() + 2 * gy.size() + s;
  LpProblem p;
  p.objective.assign(vars, Rational(0));
  for (std::size_t v = 0; v < 2 * (gx.size() + gy.size()); ++v) p.objective[v] = 1;
  p.constraints = RationalMatrix(nx + ny, vars);
  for (std::size_t k = 0; k < gx.size(); ++k)
    for (std::size_t r = 0; r < nx; ++r) {
      p.constraints(r, 2 * k) = gx[k][r];
      p.constraints(r, 2 * k + 1) = -gx[k][r];
    }
  std::size_t off = 2 * gx.size();
  for (std::size_t k = 0; k < gy.size(); ++k)
    for (std::size_t r = 0; r < ny; ++r) {
      p.constraints(nx + r, off + 2 * k) = gy[k][r];
      p.constraints(nx + r, off + 2 * k + 1) = -gy[k][r];
    }
  off += 2 * gy.size();
  for (std::size_t k = 0; k < s; ++k) {
    p.constraints(sx[k], off + k) = 1;
    p.constraints(nx + sy[k], off + k) = -1;
  }
  p.senses.assign(nx + ny, Sense::Equal);
  p.rhs = x;
  p.rhs.resize(nx + ny, Rational(0));
  p.bounds.assign(vars, VarBound::NonNegative);
  for (std::size_t k = 0; k < s; ++k) p.bounds[off + k] = VarBound::Free;
  auto o = lp_solve(p);
  if (o.status != LpStatus::Optimal) throw Error(ErrorKind::DegenerateBall, "quotient norm LP not solvable");
  return o.value;
}

}  // namespace ubk
