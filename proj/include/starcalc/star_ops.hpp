#pragma once

#include "starcalc/twist.hpp"

namespace star {

// Everything deformed takes an explicit context; there is no ambient
// global twist.
struct StarContext {
  TwistExpansion tw;
  int dim = 0;
  int order = 0;

  StarContext() = default;
  StarContext(const TwistSpec& spec, int n)
      : tw(expand_twist(spec, n)), dim(spec.dim), order(n) {}
};

using FnSeries = LambdaSeries<FunctionExpr>;
using VfSeries = LambdaSeries<VectorField>;
using OfSeries = LambdaSeries<OneForm>;
using FormSeries = LambdaSeries<ExteriorForm>;
using TenSeries = LambdaSeries<TensorField>;

template <class X>
LambdaSeries<X> lift(const X& x, int order) {
  return LambdaSeries<X>::constant(order, x);
}

// mu_star = mu o Finv: act with the inverse-twist legs (iterated Lie
// derivative on each argument kind) and recombine with the classical
// bilinear map f.
template <class A, class B, class F>
auto twist_combine(const UTensor2& t, const LambdaSeries<A>& a,
                   const LambdaSeries<B>& b, F&& f)
    -> LambdaSeries<decltype(f(a.c[0], b.c[0]))> {
  int n = std::min({t.order, a.order, b.order});
  LambdaSeries<decltype(f(a.c[0], b.c[0]))> r(n);
  for (int m = 0; m <= n; ++m)
    for (const auto& [w, c] : t.c[m].terms) {
      for (int i = 0; m + i <= n; ++i) {
        if (a.c[i].is_zero()) continue;
        A ai = lie_word(w.first, a.c[i]);
        if (ai.is_zero()) continue;
        for (int j = 0; m + i + j <= n; ++j) {
          if (b.c[j].is_zero()) continue;
          B bj = lie_word(w.second, b.c[j]);
          if (bj.is_zero()) continue;
          r.c[m + i + j] += c * f(ai, bj);
        }
      }
    }
  return r;
}

// variant whose combiner is itself series-valued
template <class A, class B, class F>
auto twist_combine_series(const UTensor2& t, const LambdaSeries<A>& a,
                          const LambdaSeries<B>& b, F&& f)
    -> decltype(f(a.c[0], b.c[0])) {
  int n = std::min({t.order, a.order, b.order});
  decltype(f(a.c[0], b.c[0])) r(n);
  for (int m = 0; m <= n; ++m)
    for (const auto& [w, c] : t.c[m].terms)
      for (int i = 0; m + i <= n; ++i) {
        if (a.c[i].is_zero()) continue;
        A ai = lie_word(w.first, a.c[i]);
        if (ai.is_zero()) continue;
        for (int j = 0; m + i + j <= n; ++j) {
          if (b.c[j].is_zero()) continue;
          B bj = lie_word(w.second, b.c[j]);
          if (bj.is_zero()) continue;
          auto s = f(ai, bj);
          for (int k = 0; m + i + j + k <= n && k <= s.order; ++k)
            r.c[m + i + j + k] += c * s.c[k];
        }
      }
  return r;
}

// ---- deformed products ----------------------------------------------------

inline FnSeries star_fn(const FnSeries& f, const FnSeries& g,
                        const StarContext& ctx) {
  if (!f.c[0].is_zero() && !g.c[0].is_zero()) f.c[0].check_dim(g.c[0]);
  return twist_combine(ctx.tw.Finv, f, g,
                       [](const FunctionExpr& a, const FunctionExpr& b) {
                         return a * b;
                       });
}
inline FnSeries star_fn(const FunctionExpr& f, const FunctionExpr& g,
                        const StarContext& ctx) {
  return star_fn(lift(f, ctx.order), lift(g, ctx.order), ctx);
}

// h * X (left module product) for X a field kind
template <class X>
LambdaSeries<X> star_mod_left(const FnSeries& h, const LambdaSeries<X>& x,
                              const StarContext& ctx) {
  return twist_combine(ctx.tw.Finv, h, x,
                       [](const FunctionExpr& a, const X& b) { return a * b; });
}

// X * h (right module product)
template <class X>
LambdaSeries<X> star_mod_right(const LambdaSeries<X>& x, const FnSeries& h,
                               const StarContext& ctx) {
  return twist_combine(ctx.tw.Finv, x, h,
                       [](const X& a, const FunctionExpr& b) { return b * a; });
}

inline TenSeries tensor_star(const TenSeries& a, const TenSeries& b,
                             const StarContext& ctx) {
  return twist_combine(ctx.tw.Finv, a, b, tensor_product);
}

inline FormSeries wedge_star(const FormSeries& a, const FormSeries& b,
                             const StarContext& ctx) {
  return twist_combine(ctx.tw.Finv, a, b, wedge);
}

inline FormSeries exterior_d(const FormSeries& w) {
  return w.map([](const ExteriorForm& f) { return exterior_d(f); });
}

inline FnSeries pairing_star(const VfSeries& v, const OfSeries& w,
                             const StarContext& ctx) {
  return twist_combine(ctx.tw.Finv, v, w, pairing);
}

// onion pairing of a rank-r contravariant against a rank-r covariant tensor
inline FnSeries pairing_star_tensor(const TenSeries& t, const TenSeries& r,
                                    const StarContext& ctx) {
  return twist_combine(ctx.tw.Finv, t, r, pair_full);
}

// L*_u = L_{fbar^a(u)} o fbar_a, dispatched over the object kind
template <class X>
LambdaSeries<X> star_lie_derivative(const VfSeries& u,
                                    const LambdaSeries<X>& x,
                                    const StarContext& ctx) {
  return twist_combine(ctx.tw.Finv, u, x,
                       [](const VectorField& a, const X& b) {
                         return lie(a, b);
                       });
}

// [u,v]_star = [fbar^a(u), fbar_a(v)]
inline VfSeries star_lie_bracket(const VfSeries& u, const VfSeries& v,
                                 const StarContext& ctx) {
  return twist_combine(ctx.tw.Finv, u, v, lie_bracket);
}
inline VfSeries star_lie_bracket(const VectorField& u, const VectorField& v,
                                 const StarContext& ctx) {
  return star_lie_bracket(lift(u, ctx.order), lift(v, ctx.order), ctx);
}

// L* extended to enveloping-algebra elements: the twisted legs act on xi by
// the adjoint action and the resulting differential operator is applied
inline FnSeries star_lie_uenv(const UEnvElement& xi, const FnSeries& h,
                              const StarContext& ctx) {
  int n = std::min({ctx.order, xi.order, h.order});
  FnSeries r(n);
  for (int m = 0; m <= n; ++m)
    for (const auto& [w, c] : ctx.tw.Finv.c[m].terms)
      for (int i = 0; m + i <= n; ++i) {
        if (xi.c[i].is_zero()) continue;
        UPoly a = ad_word(w.first, xi.c[i]);
        if (a.is_zero()) continue;
        for (int j = 0; m + i + j <= n; ++j) {
          if (h.c[j].is_zero()) continue;
          r.c[m + i + j] += c * apply_upoly(a, lie_word(w.second, h.c[j]));
        }
      }
  return r;
}

// one enveloping-algebra generator word per order slice
inline UEnvElement vf_series_to_uenv(const VfSeries& s) {
  UEnvElement r(s.order);
  for (int k = 0; k <= s.order; ++k)
    if (!s.c[k].is_zero()) r.c[k] = UPoly::generator(s.c[k]);
  return r;
}

// Rbar-permuted combination: f applied to the Rinv-transformed pair (a, b)
template <class A, class B, class F>
auto rbar_combine(const LambdaSeries<A>& a, const LambdaSeries<B>& b,
                  const StarContext& ctx, F&& f) {
  return twist_combine(ctx.tw.Rinv, a, b, std::forward<F>(f));
}
template <class A, class B, class F>
auto rbar_combine_series(const LambdaSeries<A>& a, const LambdaSeries<B>& b,
                         const StarContext& ctx, F&& f) {
  return twist_combine_series(ctx.tw.Rinv, a, b, std::forward<F>(f));
}

// star-(anti)symmetric combinations of 1-forms in Omega (x)_star Omega
inline TenSeries star_symmetrize(const OneForm& w1, const OneForm& w2,
                                 const StarContext& ctx, int sign = +1) {
  TenSeries a = tensor_star(lift(TensorField::from(w1), ctx.order),
                            lift(TensorField::from(w2), ctx.order), ctx);
  TenSeries b = rbar_combine_series(
      lift(w2, ctx.order), lift(w1, ctx.order), ctx,
      [&](const OneForm& o2, const OneForm& o1) {
        return tensor_star(lift(TensorField::from(o2), ctx.order),
                           lift(TensorField::from(o1), ctx.order), ctx);
      });
  return sign > 0 ? a + b : a - b;
}
inline TenSeries star_antisymmetrize(const OneForm& w1, const OneForm& w2,
                                     const StarContext& ctx) {
  return star_symmetrize(w1, w2, ctx, -1);
}

template <class X>
long series_term_count(const LambdaSeries<X>& s, int k) {
  return s.c[k].term_count();
}
inline long series_term_count(const FnSeries& s, int k) {
  return (long)s.c[k].terms.size();
}
inline long series_term_count(const VfSeries& s, int k) {
  long n = 0;
  for (const auto& f : s.c[k].comp) n += (long)f.terms.size();
  return n;
}
inline long series_term_count(const OfSeries& s, int k) {
  long n = 0;
  for (const auto& f : s.c[k].comp) n += (long)f.terms.size();
  return n;
}

// per-lambda-order residual term counts
template <class X>
std::vector<long> residual_profile(const LambdaSeries<X>& s) {
  std::vector<long> r(s.order + 1, 0);
  for (int k = 0; k <= s.order; ++k) r[k] = series_term_count(s, k);
  return r;
}

}  // namespace star
