#include "starcalc/corpus.hpp"

namespace star {

FunctionExpr random_polynomial(Rng& rng, int dim, int max_deg,
                               int max_terms) {
  FunctionExpr f(dim);
  int nterms = rng.range(1, max_terms);
  for (int t = 0; t < nterms; ++t) {
    std::vector<int> alpha(dim, 0);
    int deg = rng.range(0, max_deg);
    for (int u = 0; u < deg; ++u) alpha[rng.range(0, dim - 1)] += 1;
    int c = rng.range(-2, 2);
    if (c == 0) c = 1;
    f += FunctionExpr::monomial(dim, alpha, GaussRat(c));
  }
  return f;
}

VectorField random_vector_field(Rng& rng, int dim, int max_deg) {
  VectorField v(dim);
  for (int i = 0; i < dim; ++i)
    v.comp[i] = random_polynomial(rng, dim, max_deg, 2);
  return v;
}

OneForm random_one_form(Rng& rng, int dim, int max_deg) {
  OneForm w(dim);
  for (int i = 0; i < dim; ++i)
    w.comp[i] = random_polynomial(rng, dim, max_deg, 2);
  return w;
}

std::vector<std::vector<Rat>> random_theta(Rng& rng, int dim) {
  std::vector<std::vector<Rat>> th(dim, std::vector<Rat>(dim, Rat(0)));
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      int num = rng.range(-2, 2);
      int den = rng.range(1, 3);
      Rat q(num, den);
      q.canonicalize();
      th[i][j] = q;
      th[j][i] = -q;
    }
  return th;
}

FrameConnection random_connection(Rng& rng, int dim, int order) {
  FrameConnection conn(dim, order);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        FnSeries s(order);
        s.c[0] = random_polynomial(rng, dim, 2, 2);
        if (order >= 1 && rng.range(0, 1))
          s.c[1] = random_polynomial(rng, dim, 2, 2);
        conn.G(i, j, k) = s;
      }
  return conn;
}

ClassicalModePoly random_mode_monomial(Rng& rng, const ModeLattice& lat,
                                       int max_deg) {
  ModeKey key;
  int deg = rng.range(1, max_deg);
  for (int t = 0; t < deg; ++t) {
    const Momentum& k = lat.momenta[rng.range(0, (int)lat.momenta.size() - 1)];
    if (rng.range(0, 1))
      explist_add(key.a, k, 1);
    else
      explist_add(key.astar, k, 1);
  }
  ClassicalModePoly p;
  p.add_term(key, GaussRat(rng.range(1, 2)));
  return p;
}

}  // namespace star
