#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "starcalc/function_expr.hpp"

namespace star {

// Vector field sum v^mu d/dx^mu, components in canonical form.
class VectorField {
 public:
  int dim = 0;
  std::vector<FunctionExpr> comp;

  VectorField() = default;
  explicit VectorField(int d) : dim(d), comp(d, FunctionExpr(d)) {}

  static VectorField zero(int d) { return VectorField(d); }
  static VectorField frame(int d, int mu) {
    VectorField v(d);
    v.comp.at(mu) = FunctionExpr::one(d);
    return v;
  }

  bool is_zero() const {
    for (const auto& c : comp)
      if (!c.is_zero()) return false;
    return true;
  }

  // action on functions: v(f) = v^mu d_mu f
  FunctionExpr apply(const FunctionExpr& f) const {
    FunctionExpr r(f.dim ? f.dim : dim);
    if (is_zero() || f.is_zero()) return r;
    check_dim_fn(f);
    for (int mu = 0; mu < dim; ++mu)
      if (!comp[mu].is_zero()) r += comp[mu] * partial(mu, f);
    return r;
  }

  VectorField& operator+=(const VectorField& o) {
    if (o.is_zero()) return *this;
    if (is_zero() && dim == 0) return *this = o;
    check_dim(o);
    for (int i = 0; i < dim; ++i) comp[i] += o.comp[i];
    return *this;
  }
  VectorField& operator-=(const VectorField& o) {
    if (o.is_zero()) return *this;
    if (is_zero() && dim == 0) *this = VectorField(o.dim);
    check_dim(o);
    for (int i = 0; i < dim; ++i) comp[i] -= o.comp[i];
    return *this;
  }
  friend VectorField operator+(VectorField a, const VectorField& b) {
    return a += b;
  }
  friend VectorField operator-(VectorField a, const VectorField& b) {
    return a -= b;
  }
  VectorField operator-() const {
    VectorField r(dim);
    for (int i = 0; i < dim; ++i) r.comp[i] = -comp[i];
    return r;
  }
  friend VectorField operator*(const GaussRat& c, VectorField v) {
    for (auto& f : v.comp) f *= c;
    return v;
  }
  friend VectorField operator*(const FunctionExpr& h, VectorField v) {
    for (auto& f : v.comp) f = h * f;
    return v;
  }

  friend bool operator==(const VectorField& a, const VectorField& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.dim == b.dim && a.comp == b.comp;
  }
  friend bool operator!=(const VectorField& a, const VectorField& b) {
    return !(a == b);
  }
  int compare(const VectorField& o) const {
    if (is_zero() || o.is_zero()) {
      if (is_zero() && o.is_zero()) return 0;
      return is_zero() ? -1 : 1;
    }
    if (dim != o.dim) return dim < o.dim ? -1 : 1;
    for (int i = 0; i < dim; ++i) {
      int c = comp[i].compare(o.comp[i]);
      if (c != 0) return c;
    }
    return 0;
  }
  friend bool operator<(const VectorField& a, const VectorField& b) {
    return a.compare(b) < 0;
  }

  void check_dim(const VectorField& o) const {
    if (dim != 0 && o.dim != 0 && dim != o.dim)
      throw std::invalid_argument("dimension mismatch");
  }
  void check_dim_fn(const FunctionExpr& f) const {
    if (dim != 0 && f.dim != 0 && dim != f.dim)
      throw std::invalid_argument("dimension mismatch");
  }
};

// [u,v](h) = u(v(h)) - v(u(h)); antisymmetric, satisfies Jacobi.
inline VectorField lie_bracket(const VectorField& u, const VectorField& v) {
  if (u.is_zero() || v.is_zero()) return VectorField(u.dim ? u.dim : v.dim);
  u.check_dim(v);
  VectorField r(u.dim);
  for (int mu = 0; mu < u.dim; ++mu)
    r.comp[mu] = u.apply(v.comp[mu]) - v.apply(u.comp[mu]);
  return r;
}

// 1-form sum w_nu dx^nu.
class OneForm {
 public:
  int dim = 0;
  std::vector<FunctionExpr> comp;

  OneForm() = default;
  explicit OneForm(int d) : dim(d), comp(d, FunctionExpr(d)) {}

  static OneForm zero(int d) { return OneForm(d); }
  static OneForm coframe(int d, int nu) {
    OneForm w(d);
    w.comp.at(nu) = FunctionExpr::one(d);
    return w;
  }

  bool is_zero() const {
    for (const auto& c : comp)
      if (!c.is_zero()) return false;
    return true;
  }

  OneForm& operator+=(const OneForm& o) {
    if (o.is_zero()) return *this;
    if (is_zero() && dim == 0) return *this = o;
    check_dim(o);
    for (int i = 0; i < dim; ++i) comp[i] += o.comp[i];
    return *this;
  }
  OneForm& operator-=(const OneForm& o) {
    if (o.is_zero()) return *this;
    if (is_zero() && dim == 0) *this = OneForm(o.dim);
    check_dim(o);
    for (int i = 0; i < dim; ++i) comp[i] -= o.comp[i];
    return *this;
  }
  friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
  friend OneForm operator-(OneForm a, const OneForm& b) { return a -= b; }
  OneForm operator-() const {
    OneForm r(dim);
    for (int i = 0; i < dim; ++i) r.comp[i] = -comp[i];
    return r;
  }
  friend OneForm operator*(const GaussRat& c, OneForm w) {
    for (auto& f : w.comp) f *= c;
    return w;
  }
  friend OneForm operator*(const FunctionExpr& h, OneForm w) {
    for (auto& f : w.comp) f = h * f;
    return w;
  }
  friend bool operator==(const OneForm& a, const OneForm& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.dim == b.dim && a.comp == b.comp;
  }
  friend bool operator!=(const OneForm& a, const OneForm& b) {
    return !(a == b);
  }

  void check_dim(const OneForm& o) const {
    if (dim != 0 && o.dim != 0 && dim != o.dim)
      throw std::invalid_argument("dimension mismatch");
  }
};

// <v^mu d_mu, w_nu dx^nu> = v^mu w_mu, bilinear over functions.
inline FunctionExpr pairing(const VectorField& v, const OneForm& w) {
  if (v.is_zero() || w.is_zero())
    return FunctionExpr(v.dim ? v.dim : w.dim);
  if (v.dim != w.dim) throw std::invalid_argument("dimension mismatch");
  FunctionExpr r(v.dim);
  for (int mu = 0; mu < v.dim; ++mu) r += v.comp[mu] * w.comp[mu];
  return r;
}

// Exterior form of fixed degree p: components over strictly increasing
// index tuples. Degree 0 holds a single scalar component at the empty key.
class ExteriorForm {
 public:
  int dim = 0;
  int degree = 0;
  std::map<std::vector<int>, FunctionExpr> comp;  // keys sorted ascending

  ExteriorForm() = default;
  ExteriorForm(int d, int p) : dim(d), degree(p) {}

  static ExteriorForm zero(int d, int p) { return ExteriorForm(d, p); }
  static ExteriorForm from_function(const FunctionExpr& f) {
    ExteriorForm w(f.dim, 0);
    if (!f.is_zero()) w.comp[{}] = f;
    return w;
  }
  static ExteriorForm from_one_form(const OneForm& o) {
    ExteriorForm w(o.dim, 1);
    for (int i = 0; i < o.dim; ++i)
      if (!o.comp[i].is_zero()) w.comp[{i}] = o.comp[i];
    return w;
  }
  OneForm to_one_form() const {
    if (degree != 1) throw std::invalid_argument("not a 1-form");
    OneForm o(dim);
    for (const auto& [k, f] : comp) o.comp[k[0]] = f;
    return o;
  }

  bool is_zero() const {
    for (const auto& [k, f] : comp)
      if (!f.is_zero()) return false;
    return true;
  }

  void add_comp(const std::vector<int>& key, const FunctionExpr& f) {
    if (f.is_zero()) return;
    auto [it, fresh] = comp.emplace(key, f);
    if (!fresh) {
      it->second += f;
      if (it->second.is_zero()) comp.erase(it);
    }
  }

  ExteriorForm& operator+=(const ExteriorForm& o) {
    if (o.is_zero()) return *this;
    if (is_zero() && dim == 0) return *this = o;
    check_shape(o);
    for (const auto& [k, f] : o.comp) add_comp(k, f);
    return *this;
  }
  ExteriorForm& operator-=(const ExteriorForm& o) {
    if (o.is_zero()) return *this;
    if (is_zero() && dim == 0) *this = ExteriorForm(o.dim, o.degree);
    check_shape(o);
    for (const auto& [k, f] : o.comp) add_comp(k, -f);
    return *this;
  }
  friend ExteriorForm operator+(ExteriorForm a, const ExteriorForm& b) {
    return a += b;
  }
  friend ExteriorForm operator-(ExteriorForm a, const ExteriorForm& b) {
    return a -= b;
  }
  ExteriorForm operator-() const {
    ExteriorForm r(dim, degree);
    for (const auto& [k, f] : comp) r.comp.emplace(k, -f);
    return r;
  }
  friend ExteriorForm operator*(const GaussRat& c, ExteriorForm w) {
    if (c.is_zero()) return ExteriorForm(w.dim, w.degree);
    for (auto& [k, f] : w.comp) f *= c;
    return w;
  }
  // left multiplication by a function (module product, undeformed)
  friend ExteriorForm operator*(const FunctionExpr& h, const ExteriorForm& w) {
    ExteriorForm r(w.dim, w.degree);
    for (const auto& [k, f] : w.comp) r.add_comp(k, h * f);
    return r;
  }
  friend bool operator==(const ExteriorForm& a, const ExteriorForm& b) {
    if (a.is_zero() && b.is_zero()) return a.degree == b.degree || true;
    return a.dim == b.dim && a.degree == b.degree && a.comp == b.comp;
  }
  friend bool operator!=(const ExteriorForm& a, const ExteriorForm& b) {
    return !(a == b);
  }

  void check_shape(const ExteriorForm& o) const {
    if (dim != 0 && o.dim != 0 && (dim != o.dim || degree != o.degree))
      throw std::invalid_argument("form shape mismatch");
  }

  long term_count() const {
    long n = 0;
    for (const auto& [k, f] : comp) n += (long)f.terms.size();
    return n;
  }
};

ExteriorForm wedge(const ExteriorForm& a, const ExteriorForm& b);
ExteriorForm exterior_d(const ExteriorForm& w);

// Lie derivatives along a vector field, one per object kind.
FunctionExpr lie(const VectorField& u, const FunctionExpr& f);
VectorField lie(const VectorField& u, const VectorField& v);
OneForm lie(const VectorField& u, const OneForm& w);
ExteriorForm lie(const VectorField& u, const ExteriorForm& w);

// Dense tensor field with a slot signature over {vector, form}.
enum class Slot { Vec, Form };

class TensorField {
 public:
  int dim = 0;
  std::vector<Slot> sig;
  std::map<std::vector<int>, FunctionExpr> comp;

  TensorField() = default;
  TensorField(int d, std::vector<Slot> s) : dim(d), sig(std::move(s)) {}

  static TensorField from(const VectorField& v) {
    TensorField t(v.dim, {Slot::Vec});
    for (int i = 0; i < v.dim; ++i)
      if (!v.comp[i].is_zero()) t.comp[{i}] = v.comp[i];
    return t;
  }
  static TensorField from(const OneForm& w) {
    TensorField t(w.dim, {Slot::Form});
    for (int i = 0; i < w.dim; ++i)
      if (!w.comp[i].is_zero()) t.comp[{i}] = w.comp[i];
    return t;
  }
  static TensorField scalar(const FunctionExpr& f) {
    TensorField t(f.dim, {});
    if (!f.is_zero()) t.comp[{}] = f;
    return t;
  }

  int rank() const { return (int)sig.size(); }
  bool is_zero() const {
    for (const auto& [k, f] : comp)
      if (!f.is_zero()) return false;
    return true;
  }

  void add_comp(const std::vector<int>& key, const FunctionExpr& f) {
    if (f.is_zero()) return;
    auto [it, fresh] = comp.emplace(key, f);
    if (!fresh) {
      it->second += f;
      if (it->second.is_zero()) comp.erase(it);
    }
  }

  TensorField& operator+=(const TensorField& o) {
    if (o.is_zero()) return *this;
    if (is_zero() && dim == 0) return *this = o;
    check_shape(o);
    for (const auto& [k, f] : o.comp) add_comp(k, f);
    return *this;
  }
  TensorField& operator-=(const TensorField& o) {
    if (o.is_zero()) return *this;
    if (is_zero() && dim == 0) *this = TensorField(o.dim, o.sig);
    check_shape(o);
    for (const auto& [k, f] : o.comp) add_comp(k, -f);
    return *this;
  }
  friend TensorField operator+(TensorField a, const TensorField& b) {
    return a += b;
  }
  friend TensorField operator-(TensorField a, const TensorField& b) {
    return a -= b;
  }
  TensorField operator-() const {
    TensorField r(dim, sig);
    for (const auto& [k, f] : comp) r.comp.emplace(k, -f);
    return r;
  }
  friend TensorField operator*(const GaussRat& c, TensorField t) {
    if (c.is_zero()) return TensorField(t.dim, t.sig);
    for (auto& [k, f] : t.comp) f *= c;
    return t;
  }
  friend TensorField operator*(const FunctionExpr& h, const TensorField& t) {
    TensorField r(t.dim, t.sig);
    for (const auto& [k, f] : t.comp) r.add_comp(k, h * f);
    return r;
  }
  friend bool operator==(const TensorField& a, const TensorField& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.dim == b.dim && a.sig == b.sig && a.comp == b.comp;
  }
  friend bool operator!=(const TensorField& a, const TensorField& b) {
    return !(a == b);
  }

  void check_shape(const TensorField& o) const {
    if (dim != 0 && o.dim != 0 && (dim != o.dim || sig != o.sig))
      throw std::invalid_argument("tensor shape mismatch");
  }

  long term_count() const {
    long n = 0;
    for (const auto& [k, f] : comp) n += (long)f.terms.size();
    return n;
  }
};

TensorField tensor_product(const TensorField& a, const TensorField& b);
TensorField lie(const VectorField& u, const TensorField& t);

// Full onion pairing of a rank-r all-vector tensor with a rank-r all-form
// tensor, contracted innermost-first.
FunctionExpr pair_full(const TensorField& contra, const TensorField& cova);

// contract the last (innermost) vector slot against a 1-form
TensorField pair_last(const TensorField& t, const OneForm& w);

std::string render(const VectorField& v,
                   const std::vector<std::string>& names = {});
std::string render(const OneForm& w,
                   const std::vector<std::string>& names = {});
std::string render(const ExteriorForm& w,
                   const std::vector<std::string>& names = {});

}  // namespace star
