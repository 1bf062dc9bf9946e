#pragma once

#include <cassert>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "starcalc/rational.hpp"

namespace star {

// Monomial key: x^alpha * exp(i k.x) with integer wave-vector k.
struct Mono {
  std::vector<int> alpha;
  std::vector<int> wave;

  int degree() const { return std::accumulate(alpha.begin(), alpha.end(), 0); }
  bool wave_free() const {
    for (int w : wave)
      if (w != 0) return false;
    return true;
  }

  friend bool operator<(const Mono& a, const Mono& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    if (a.alpha != b.alpha) return a.alpha < b.alpha;
    return a.wave < b.wave;
  }
  friend bool operator==(const Mono& a, const Mono& b) {
    return a.alpha == b.alpha && a.wave == b.wave;
  }
};

// Finite sum of (GaussRat, monomial, plane wave) terms in canonical sorted,
// merged form; zero coefficients are dropped. dim == 0 stands for the zero
// function of any dimension, so default-constructed values act as zeros.
class FunctionExpr {
 public:
  int dim = 0;
  std::map<Mono, GaussRat> terms;

  FunctionExpr() = default;
  explicit FunctionExpr(int d) : dim(d) {}

  static FunctionExpr zero(int d) { return FunctionExpr(d); }
  static FunctionExpr constant(int d, GaussRat c) {
    FunctionExpr f(d);
    f.add_term(Mono{std::vector<int>(d, 0), std::vector<int>(d, 0)},
               std::move(c));
    return f;
  }
  static FunctionExpr one(int d) { return constant(d, GaussRat(1)); }
  static FunctionExpr coordinate(int d, int mu) {
    if (mu < 0 || mu >= d) throw std::invalid_argument("index out of range");
    FunctionExpr f(d);
    std::vector<int> a(d, 0);
    a[mu] = 1;
    f.add_term(Mono{a, std::vector<int>(d, 0)}, GaussRat(1));
    return f;
  }
  static FunctionExpr monomial(int d, std::vector<int> alpha,
                               GaussRat c = GaussRat(1)) {
    assert((int)alpha.size() == d);
    FunctionExpr f(d);
    f.add_term(Mono{std::move(alpha), std::vector<int>(d, 0)}, std::move(c));
    return f;
  }
  static FunctionExpr plane_wave(int d, std::vector<int> k,
                                 GaussRat c = GaussRat(1)) {
    assert((int)k.size() == d);
    FunctionExpr f(d);
    f.add_term(Mono{std::vector<int>(d, 0), std::move(k)}, std::move(c));
    return f;
  }

  bool is_zero() const { return terms.empty(); }

  void add_term(const Mono& m, GaussRat c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  FunctionExpr& operator+=(const FunctionExpr& o) {
    if (o.is_zero()) return *this;
    if (is_zero() && dim == 0) return *this = o;
    check_dim(o);
    for (const auto& [m, c] : o.terms) add_term(m, c);
    return *this;
  }
  FunctionExpr& operator-=(const FunctionExpr& o) {
    if (o.is_zero()) return *this;
    if (is_zero() && dim == 0) *this = FunctionExpr(o.dim);
    check_dim(o);
    for (const auto& [m, c] : o.terms) add_term(m, -c);
    return *this;
  }
  friend FunctionExpr operator+(FunctionExpr a, const FunctionExpr& b) {
    return a += b;
  }
  friend FunctionExpr operator-(FunctionExpr a, const FunctionExpr& b) {
    return a -= b;
  }
  FunctionExpr operator-() const {
    FunctionExpr r(dim);
    for (const auto& [m, c] : terms) r.terms.emplace(m, -c);
    return r;
  }

  FunctionExpr& operator*=(const GaussRat& c) {
    if (c.is_zero()) {
      terms.clear();
      return *this;
    }
    for (auto& [m, v] : terms) v *= c;
    return *this;
  }
  friend FunctionExpr operator*(FunctionExpr f, const GaussRat& c) {
    return f *= c;
  }
  friend FunctionExpr operator*(const GaussRat& c, FunctionExpr f) {
    return f *= c;
  }

  // Pointwise product; plane-wave factors add their wave-vectors.
  friend FunctionExpr operator*(const FunctionExpr& a, const FunctionExpr& b) {
    if (a.is_zero() || b.is_zero())
      return FunctionExpr(a.dim ? a.dim : b.dim);
    a.check_dim(b);
    FunctionExpr r(a.dim);
    for (const auto& [ma, ca] : a.terms)
      for (const auto& [mb, cb] : b.terms) {
        Mono m;
        m.alpha.resize(a.dim);
        m.wave.resize(a.dim);
        for (int i = 0; i < a.dim; ++i) {
          m.alpha[i] = ma.alpha[i] + mb.alpha[i];
          m.wave[i] = ma.wave[i] + mb.wave[i];
        }
        r.add_term(m, ca * cb);
      }
    return r;
  }
  FunctionExpr& operator*=(const FunctionExpr& o) { return *this = *this * o; }

  friend bool operator==(const FunctionExpr& a, const FunctionExpr& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.dim == b.dim && a.terms == b.terms;
  }
  friend bool operator!=(const FunctionExpr& a, const FunctionExpr& b) {
    return !(a == b);
  }

  int compare(const FunctionExpr& o) const {
    if (is_zero() || o.is_zero()) {
      if (is_zero() && o.is_zero()) return 0;
      return is_zero() ? -1 : 1;
    }
    if (dim != o.dim) return dim < o.dim ? -1 : 1;
    auto it = terms.begin();
    auto jt = o.terms.begin();
    for (; it != terms.end() && jt != o.terms.end(); ++it, ++jt) {
      if (it->first < jt->first) return -1;
      if (jt->first < it->first) return 1;
      int c = it->second.compare(jt->second);
      if (c != 0) return c;
    }
    if (it != terms.end()) return 1;
    if (jt != o.terms.end()) return -1;
    return 0;
  }
  friend bool operator<(const FunctionExpr& a, const FunctionExpr& b) {
    return a.compare(b) < 0;
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms) d = std::max(d, m.degree());
    return d;
  }
  bool wave_free() const {
    for (const auto& [m, c] : terms)
      if (!m.wave_free()) return false;
    return true;
  }

  void check_dim(const FunctionExpr& o) const {
    if (dim != 0 && o.dim != 0 && dim != o.dim)
      throw std::invalid_argument("dimension mismatch");
  }
};

// Linear derivation d/dx^mu; a plane-wave factor contributes i*k_mu.
inline FunctionExpr partial(int mu, const FunctionExpr& f) {
  if (f.is_zero()) return f;
  if (mu < 0 || mu >= f.dim) throw std::invalid_argument("index out of range");
  FunctionExpr r(f.dim);
  for (const auto& [m, c] : f.terms) {
    if (m.alpha[mu] > 0) {
      Mono n = m;
      n.alpha[mu] -= 1;
      r.add_term(n, c * GaussRat(m.alpha[mu]));
    }
    if (m.wave[mu] != 0)
      r.add_term(m, c * GaussRat(Rat(0), Rat(m.wave[mu])));
  }
  return r;
}

inline FunctionExpr fn_mul(const FunctionExpr& f, const FunctionExpr& g) {
  return f * g;
}

// Derivative of the polynomial part only: partial(mu, f) minus the
// i*k_mu wave contribution. Used by the absorbed-twist machinery.
inline FunctionExpr poly_partial(int mu, const FunctionExpr& f) {
  if (f.is_zero()) return f;
  if (mu < 0 || mu >= f.dim) throw std::invalid_argument("index out of range");
  FunctionExpr r(f.dim);
  for (const auto& [m, c] : f.terms)
    if (m.alpha[mu] > 0) {
      Mono n = m;
      n.alpha[mu] -= 1;
      r.add_term(n, c * GaussRat(m.alpha[mu]));
    }
  return r;
}

// Canonical textual rendering: sorted monomials with explicit rational
// coefficients, e.g. "1 - 2*x1^2*x2 + (1/2i)*E[1,0]".
std::string render(const FunctionExpr& f,
                   const std::vector<std::string>& names = {});

std::string coord_name(int i, int dim, const std::vector<std::string>& names);

}  // namespace star
