#pragma once

#include <tuple>

#include "starcalc/star_ops.hpp"

namespace star {

// Antisymmetric Poisson bivector Lambda^{mu nu} d_mu (x) d_nu with
// <Lambda, df (x) dg> = {f,g} under the innermost-first pairing.
struct PoissonBivector {
  int dim = 0;
  TensorField comp;  // rank 2, all vector slots

  // canonical bivector on T*R^n: d_{p_i} (x) d_{x^i} - d_{x^i} (x) d_{p_i},
  // coordinates ordered x^1..x^n, p_1..p_n
  static PoissonBivector canonical(int n);
};

FunctionExpr poisson(const FunctionExpr& f, const FunctionExpr& g,
                     const PoissonBivector& lam);
// X_f = <Lambda, df> = {f, .}
VectorField ham_vf(const FunctionExpr& f, const PoissonBivector& lam);

bool compat_check(const std::vector<VectorField>& generators,
                  const PoissonBivector& lam);

// Phase space T*R^n with the canonical bracket and a momentum-translation
// Moyal twist on the x-coordinates; lambda is absorbed into theta, so the
// deformed operations terminate exactly on polynomials. For plane-wave
// carrying inputs the exponential is cut at wave_order.
struct PhaseSpaceContext {
  int n = 0;
  std::vector<std::vector<Rat>> theta;  // n x n, antisymmetric
  PoissonBivector lambda;
  std::vector<VectorField> generators;  // default d/dx^l
  int wave_order = 4;

  PhaseSpaceContext() = default;
  // throws std::invalid_argument if the twist/Poisson pair is incompatible
  PhaseSpaceContext(int n, std::vector<std::vector<Rat>> theta,
                    int wave_order = 4,
                    std::vector<VectorField> generators = {});

  int dim() const { return 2 * n; }
  bool compatible() const { return compat_check(generators, lambda); }
};

// finite expansion of exp(coeff * theta^{ls} g_l (x) g_s) applied to (a, b)
template <class A, class B>
std::vector<std::tuple<GaussRat, A, B>> absorbed_pairs(
    const PhaseSpaceContext& ps, const GaussRat& coeff, const A& a,
    const B& b) {
  std::vector<std::tuple<GaussRat, A, B>> out, level;
  out.emplace_back(GaussRat(1), a, b);
  level = out;
  bool waves = false;
  if constexpr (std::is_same_v<A, FunctionExpr>)
    waves = waves || !a.wave_free();
  if constexpr (std::is_same_v<B, FunctionExpr>)
    waves = waves || !b.wave_free();
  int cap = waves ? ps.wave_order : 10000;
  for (int m = 1; m <= cap && !level.empty(); ++m) {
    std::vector<std::tuple<GaussRat, A, B>> next;
    GaussRat inv_m(Rat(1, m));
    for (const auto& [c, x, y] : level)
      for (int l = 0; l < ps.n; ++l)
        for (int s = 0; s < ps.n; ++s) {
          if (sgn(ps.theta[l][s]) == 0) continue;
          A xl = lie(ps.generators[l], x);
          if (xl.is_zero()) continue;
          B ys = lie(ps.generators[s], y);
          if (ys.is_zero()) continue;
          next.emplace_back(c * coeff * GaussRat(ps.theta[l][s]) * inv_m,
                            std::move(xl), std::move(ys));
        }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

inline GaussRat finv_coeff() { return GaussRat(Rat(0), Rat(1, 2)); }   // +i/2
inline GaussRat rinv_coeff() { return GaussRat(Rat(0), Rat(-1)); }     // -i

// f * g with lambda absorbed into theta
FunctionExpr star_fn_absorbed(const FunctionExpr& f, const FunctionExpr& g,
                              const PhaseSpaceContext& ps);

// {f,g}_star = {fbar^a(f), fbar_a(g)}
FunctionExpr star_poisson(const FunctionExpr& f, const FunctionExpr& g,
                          const PhaseSpaceContext& ps);

// route through Eq-style explicit form:
// df/dx^l * dg/dp_l - df/dp_l * dg/dx^l (all products star)
FunctionExpr star_poisson_explicit(const FunctionExpr& f,
                                   const FunctionExpr& g,
                                   const PhaseSpaceContext& ps);

// [u,v]_star on vector fields, absorbed regime
VectorField star_bracket_absorbed(const VectorField& u, const VectorField& v,
                                  const PhaseSpaceContext& ps);

// L*_u(g) = fbar^a(u)(fbar_a(g))
FunctionExpr star_lie_absorbed(const VectorField& u, const FunctionExpr& g,
                               const PhaseSpaceContext& ps);

// residual [X_f, X_g]_star - X_{{f,g}_star}
VectorField morphism_check(const FunctionExpr& f, const FunctionExpr& g,
                           const PhaseSpaceContext& ps);

// df/dt = -L*_{X_H} f = -{H,f}_star
FunctionExpr time_evolution(const FunctionExpr& H, const FunctionExpr& f,
                            const PhaseSpaceContext& ps);

struct ConstantsReport {
  std::vector<long> bracket_residuals;  // |{Q_i, H}_star| term counts
  std::vector<long> closure_residuals;  // |{{Q_i,Q_j}_star, H}_star| counts
  bool pass() const {
    for (long n : bracket_residuals)
      if (n) return false;
    for (long n : closure_residuals)
      if (n) return false;
    return true;
  }
};

ConstantsReport constants_check(const FunctionExpr& H,
                                const std::vector<FunctionExpr>& Qs,
                                const PhaseSpaceContext& ps);

}  // namespace star
