// Classical differential-geometry formulas implemented directly with
// ordinary products, independent of the deformed operation paths. Used as
// the lambda^0 / identity-twist oracle.
#pragma once

#include "starcalc/geometry.hpp"

namespace star::oracle {

// (nabla_u v)^k = u(v^k) + u^i v^j Gamma_{ij}^k, order by order
inline VfSeries classical_cov(const VfSeries& u, const VfSeries& v,
                              const FrameConnection& conn) {
  int order = std::min({u.order, v.order, conn.order});
  int d = conn.dim;
  VfSeries r(order);
  for (int a = 0; a <= order; ++a) {
    if (u.c[a].is_zero()) continue;
    for (int b = 0; a + b <= order; ++b) {
      if (!v.c[b].is_zero()) {
        VectorField w(d);
        for (int k = 0; k < d; ++k) w.comp[k] = u.c[a].apply(v.c[b].comp[k]);
        r.c[a + b] += w;
      }
      for (int c = 0; a + b + c <= order; ++c) {
        if (v.c[b].is_zero()) continue;
        VectorField w(d);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) {
            if (u.c[a].comp[i].is_zero() || v.c[b].comp[j].is_zero())
              continue;
            for (int k = 0; k < d; ++k)
              w.comp[k] += u.c[a].comp[i] * v.c[b].comp[j] *
                           conn.G(i, j, k).at(c);
          }
        r.c[a + b + c] += w;
      }
    }
  }
  return r;
}

inline VfSeries classical_torsion(const VfSeries& u, const VfSeries& v,
                                  const FrameConnection& conn) {
  VfSeries r = classical_cov(u, v, conn) - classical_cov(v, u, conn);
  r -= series_combine(u, v, lie_bracket);
  return r;
}

inline VfSeries classical_curvature(const VfSeries& u, const VfSeries& v,
                                    const VfSeries& z,
                                    const FrameConnection& conn) {
  VfSeries r = classical_cov(u, classical_cov(v, z, conn), conn);
  r -= classical_cov(v, classical_cov(u, z, conn), conn);
  r -= classical_cov(series_combine(u, v, lie_bracket), z, conn);
  return r;
}

// T_{ij}^l = Gamma_{ij}^l - Gamma_{ji}^l
inline FnSeries classical_torsion_coeff(const FrameConnection& conn, int i,
                                        int j, int l) {
  return conn.G(i, j, l) - conn.G(j, i, l);
}

// R_{ijk}^l = d_i Gamma_{jk}^l - d_j Gamma_{ik}^l
//             + Gamma_{jk}^m Gamma_{im}^l - Gamma_{ik}^m Gamma_{jm}^l
inline FnSeries classical_curvature_coeff(const FrameConnection& conn, int i,
                                          int j, int k, int l) {
  int order = conn.order;
  FnSeries r = conn.G(j, k, l).map(
      [&](const FunctionExpr& f) { return partial(i, f); });
  r -= conn.G(i, k, l).map(
      [&](const FunctionExpr& f) { return partial(j, f); });
  for (int m = 0; m < conn.dim; ++m) {
    r += series_combine(conn.G(j, k, m).truncated(order),
                        conn.G(i, m, l).truncated(order),
                        [](const FunctionExpr& a, const FunctionExpr& b) {
                          return a * b;
                        });
    r -= series_combine(conn.G(i, k, m).truncated(order),
                        conn.G(j, m, l).truncated(order),
                        [](const FunctionExpr& a, const FunctionExpr& b) {
                          return a * b;
                        });
  }
  return r;
}

}  // namespace star::oracle
