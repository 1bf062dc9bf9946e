#include "starcalc/poisson.hpp"

namespace star {

PoissonBivector PoissonBivector::canonical(int n) {
  PoissonBivector lam;
  lam.dim = 2 * n;
  lam.comp = TensorField(lam.dim, {Slot::Vec, Slot::Vec});
  for (int i = 0; i < n; ++i) {
    lam.comp.add_comp({n + i, i}, FunctionExpr::one(lam.dim));
    lam.comp.add_comp({i, n + i}, -FunctionExpr::one(lam.dim));
  }
  return lam;
}

FunctionExpr poisson(const FunctionExpr& f, const FunctionExpr& g,
                     const PoissonBivector& lam) {
  if (!f.is_zero() && f.dim != lam.dim)
    throw std::invalid_argument("dimension mismatch");
  if (!g.is_zero() && g.dim != lam.dim)
    throw std::invalid_argument("dimension mismatch");
  FunctionExpr r(lam.dim);
  if (f.is_zero() || g.is_zero()) return r;
  // <Lambda, df (x) dg> contracts innermost-first:
  // {f,g} = Lambda^{mu nu} d_nu(f) d_mu(g)
  for (const auto& [key, c] : lam.comp.comp)
    r += c * (partial(key[1], f) * partial(key[0], g));
  return r;
}

VectorField ham_vf(const FunctionExpr& f, const PoissonBivector& lam) {
  VectorField x(lam.dim);
  if (f.is_zero()) return x;
  if (f.dim != lam.dim) throw std::invalid_argument("dimension mismatch");
  for (const auto& [key, c] : lam.comp.comp)
    x.comp[key[0]] += c * partial(key[1], f);
  return x;
}

bool compat_check(const std::vector<VectorField>& generators,
                  const PoissonBivector& lam) {
  for (const auto& g : generators)
    if (!lie(g, lam.comp).is_zero()) return false;
  return true;
}

PhaseSpaceContext::PhaseSpaceContext(int n_,
                                     std::vector<std::vector<Rat>> theta_,
                                     int wave_order_,
                                     std::vector<VectorField> generators_)
    : n(n_), theta(std::move(theta_)), wave_order(wave_order_) {
  if ((int)theta.size() != n)
    throw std::invalid_argument("theta must be n x n");
  for (int i = 0; i < n; ++i) {
    if ((int)theta[i].size() != n)
      throw std::invalid_argument("theta must be n x n");
    for (int j = 0; j < n; ++j)
      if (cmp(theta[i][j], -theta[j][i]) != 0)
        throw std::invalid_argument("theta must be antisymmetric");
  }
  lambda = PoissonBivector::canonical(n);
  if (generators_.empty())
    for (int l = 0; l < n; ++l)
      generators_.push_back(VectorField::frame(2 * n, l));
  generators = std::move(generators_);
  if ((int)generators.size() != n)
    throw std::invalid_argument("need one generator per x-coordinate");
  if (!compatible())
    throw std::invalid_argument(
        "twist incompatible with the Poisson bivector");
}

FunctionExpr star_fn_absorbed(const FunctionExpr& f, const FunctionExpr& g,
                              const PhaseSpaceContext& ps) {
  FunctionExpr r(ps.dim());
  for (const auto& [c, a, b] : absorbed_pairs(ps, finv_coeff(), f, g))
    r += c * (a * b);
  return r;
}

FunctionExpr star_poisson(const FunctionExpr& f, const FunctionExpr& g,
                          const PhaseSpaceContext& ps) {
  FunctionExpr r(ps.dim());
  for (const auto& [c, a, b] : absorbed_pairs(ps, finv_coeff(), f, g))
    r += c * poisson(a, b, ps.lambda);
  return r;
}

FunctionExpr star_poisson_explicit(const FunctionExpr& f,
                                   const FunctionExpr& g,
                                   const PhaseSpaceContext& ps) {
  FunctionExpr r(ps.dim());
  for (int l = 0; l < ps.n; ++l) {
    r += star_fn_absorbed(partial(l, f), partial(ps.n + l, g), ps);
    r -= star_fn_absorbed(partial(ps.n + l, f), partial(l, g), ps);
  }
  return r;
}

VectorField star_bracket_absorbed(const VectorField& u, const VectorField& v,
                                  const PhaseSpaceContext& ps) {
  VectorField r(ps.dim());
  for (const auto& [c, a, b] : absorbed_pairs(ps, finv_coeff(), u, v))
    r += c * lie_bracket(a, b);
  return r;
}

FunctionExpr star_lie_absorbed(const VectorField& u, const FunctionExpr& g,
                               const PhaseSpaceContext& ps) {
  FunctionExpr r(ps.dim());
  for (const auto& [c, a, b] : absorbed_pairs(ps, finv_coeff(), u, g))
    r += c * a.apply(b);
  return r;
}

VectorField morphism_check(const FunctionExpr& f, const FunctionExpr& g,
                           const PhaseSpaceContext& ps) {
  VectorField lhs =
      star_bracket_absorbed(ham_vf(f, ps.lambda), ham_vf(g, ps.lambda), ps);
  VectorField rhs = ham_vf(star_poisson(f, g, ps), ps.lambda);
  return lhs - rhs;
}

FunctionExpr time_evolution(const FunctionExpr& H, const FunctionExpr& f,
                            const PhaseSpaceContext& ps) {
  return -star_poisson(H, f, ps);
}

ConstantsReport constants_check(const FunctionExpr& H,
                                const std::vector<FunctionExpr>& Qs,
                                const PhaseSpaceContext& ps) {
  ConstantsReport rep;
  for (const auto& q : Qs)
    rep.bracket_residuals.push_back(
        (long)star_poisson(q, H, ps).terms.size());
  for (size_t i = 0; i < Qs.size(); ++i)
    for (size_t j = i + 1; j < Qs.size(); ++j) {
      FunctionExpr qq = star_poisson(Qs[i], Qs[j], ps);
      rep.closure_residuals.push_back(
          (long)star_poisson(qq, H, ps).terms.size());
    }
  return rep;
}

}  // namespace star
