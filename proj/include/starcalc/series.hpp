#pragma once

#include <algorithm>
#include <cassert>
#include <vector>

#include "starcalc/rational.hpp"

namespace star {

// Truncated formal power series in lambda with coefficients in T. Every
// operation discards terms of degree > order; binary operations use the
// smaller of the two truncation orders. T() must be the zero of T.
template <class T>
class LambdaSeries {
 public:
  int order = 0;
  std::vector<T> c;

  LambdaSeries() : c(1) {}
  explicit LambdaSeries(int n) : order(n), c(n + 1) {}
  LambdaSeries(int n, T v0) : order(n), c(n + 1) { c[0] = std::move(v0); }

  static LambdaSeries constant(int n, T v) {
    return LambdaSeries(n, std::move(v));
  }
  // v * lambda^k
  static LambdaSeries term(int n, int k, T v) {
    LambdaSeries s(n);
    if (k <= n) s.c[k] = std::move(v);
    return s;
  }

  const T& at(int k) const {
    static const T zero{};
    return k <= order ? c[k] : zero;
  }

  bool is_zero() const {
    for (const auto& v : c)
      if (!v.is_zero()) return false;
    return true;
  }

  LambdaSeries truncated(int n) const {
    LambdaSeries r(n);
    for (int k = 0; k <= std::min(n, order); ++k) r.c[k] = c[k];
    return r;
  }

  // multiply by lambda^m, same truncation order
  LambdaSeries shifted(int m) const {
    LambdaSeries r(order);
    for (int k = 0; k + m <= order; ++k) r.c[k + m] = c[k];
    return r;
  }

  LambdaSeries& operator+=(const LambdaSeries& o) {
    if (o.order < order) *this = truncated(o.order);
    for (int k = 0; k <= order; ++k) c[k] += o.c[k];
    return *this;
  }
  LambdaSeries& operator-=(const LambdaSeries& o) {
    if (o.order < order) *this = truncated(o.order);
    for (int k = 0; k <= order; ++k) c[k] -= o.c[k];
    return *this;
  }
  friend LambdaSeries operator+(LambdaSeries a, const LambdaSeries& b) {
    return a += b;
  }
  friend LambdaSeries operator-(LambdaSeries a, const LambdaSeries& b) {
    return a -= b;
  }
  LambdaSeries operator-() const {
    LambdaSeries r(order);
    for (int k = 0; k <= order; ++k) r.c[k] = -c[k];
    return r;
  }

  friend bool operator==(const LambdaSeries& a, const LambdaSeries& b) {
    int n = std::min(a.order, b.order);
    for (int k = 0; k <= n; ++k)
      if (!(a.c[k] == b.c[k])) return false;
    for (int k = n + 1; k <= a.order; ++k)
      if (!a.c[k].is_zero()) return false;
    for (int k = n + 1; k <= b.order; ++k)
      if (!b.c[k].is_zero()) return false;
    return true;
  }
  friend bool operator!=(const LambdaSeries& a, const LambdaSeries& b) {
    return !(a == b);
  }

  template <class F>
  auto map(F&& f) const -> LambdaSeries<decltype(f(c[0]))> {
    LambdaSeries<decltype(f(c[0]))> r(order);
    for (int k = 0; k <= order; ++k) r.c[k] = f(c[k]);
    return r;
  }
};

// Graded Cauchy product through the smaller truncation order, with an
// arbitrary bilinear combiner.
template <class A, class B, class F>
auto series_combine(const LambdaSeries<A>& a, const LambdaSeries<B>& b, F&& f)
    -> LambdaSeries<decltype(f(a.c[0], b.c[0]))> {
  int n = std::min(a.order, b.order);
  LambdaSeries<decltype(f(a.c[0], b.c[0]))> r(n);
  for (int i = 0; i <= n; ++i) {
    if (a.c[i].is_zero()) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (b.c[j].is_zero()) continue;
      r.c[i + j] += f(a.c[i], b.c[j]);
    }
  }
  return r;
}

template <class T>
LambdaSeries<T> operator*(const LambdaSeries<T>& a, const LambdaSeries<T>& b) {
  return series_combine(a, b, [](const T& x, const T& y) { return x * y; });
}

template <class T, class S>
LambdaSeries<T> scale_series(const LambdaSeries<T>& a, const S& s) {
  LambdaSeries<T> r(a.order);
  for (int k = 0; k <= a.order; ++k) r.c[k] = s * a.c[k];
  return r;
}

// exp of a series with vanishing constant term
template <class T>
LambdaSeries<T> exp_series(const LambdaSeries<T>& x, const T& unit) {
  assert(x.c[0].is_zero());
  LambdaSeries<T> acc = LambdaSeries<T>::constant(x.order, unit);
  LambdaSeries<T> pow = acc;
  Rat fact(1);
  for (int j = 1; j <= x.order; ++j) {
    pow = pow * x;
    fact *= j;
    LambdaSeries<T> t(x.order);
    GaussRat inv(Rat(1) / fact);
    for (int k = 0; k <= x.order; ++k) t.c[k] = inv * pow.c[k];
    acc += t;
  }
  return acc;
}

// inverse of unit + higher-order terms, by the formal recursion
// g_n = -(f_n + sum_{m=1}^{n-1} f_m g_{n-m})
template <class T>
LambdaSeries<T> invert_series(const LambdaSeries<T>& f, const T& unit) {
  assert(f.c[0] == unit);
  LambdaSeries<T> g(f.order);
  g.c[0] = unit;
  for (int n = 1; n <= f.order; ++n) {
    T s = f.c[n];
    for (int m = 1; m < n; ++m) s += f.c[m] * g.c[n - m];
    g.c[n] = -s;
  }
  return g;
}

}  // namespace star
