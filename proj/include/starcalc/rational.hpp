#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace star {

// Exact rational scalar. All arithmetic in the library is exact; there is
// no floating point anywhere.
using Rat = mpq_class;

inline Rat rat_parse(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline int rat_sign(const Rat& q) { return sgn(q); }

// Gaussian rational: re + im*i with exact rational parts.
struct GaussRat {
  Rat re{0};
  Rat im{0};

  GaussRat() = default;
  GaussRat(long v) : re(v) {}  // implicit, mirrors Rat
  GaussRat(const Rat& r) : re(r) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRat unit_i() { return GaussRat(Rat(0), Rat(1)); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  GaussRat& operator+=(const GaussRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRat operator-() const { return GaussRat(-re, -im); }

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return GaussRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  GaussRat& operator*=(const GaussRat& o) { return *this = *this * o; }

  friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
    Rat n = b.re * b.re + b.im * b.im;
    if (sgn(n) == 0) throw std::domain_error("division by zero GaussRat");
    return GaussRat((a.re * b.re + a.im * b.im) / n,
                    (a.im * b.re - a.re * b.im) / n);
  }
  GaussRat& operator/=(const GaussRat& o) { return *this = *this / o; }

  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return cmp(a.re, b.re) == 0 && cmp(a.im, b.im) == 0;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) {
    return !(a == b);
  }

  // total order, used only for canonical term sorting
  int compare(const GaussRat& o) const {
    int c = cmp(re, o.re);
    if (c != 0) return c;
    return cmp(im, o.im);
  }
};

// Canonical text: "0", "2", "-1/3", "i", "-2/3i", "(1+1/2i)".
inline std::string gauss_str(const GaussRat& z) {
  if (z.is_zero()) return "0";
  std::string rs = rat_str(z.re);
  if (sgn(z.im) == 0) return rs;
  std::string is;
  if (cmp(z.im, Rat(1)) == 0)
    is = "i";
  else if (cmp(z.im, Rat(-1)) == 0)
    is = "-i";
  else
    is = rat_str(z.im) + "i";
  if (sgn(z.re) == 0) return is;
  if (sgn(z.im) > 0) return "(" + rs + "+" + is + ")";
  return "(" + rs + is + ")";
}

}  // namespace star
