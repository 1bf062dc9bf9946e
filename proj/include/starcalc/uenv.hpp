#pragma once

#include <array>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "starcalc/fields.hpp"
#include "starcalc/series.hpp"

namespace star {

// Words in the universal enveloping algebra are ordered lists of interned
// vector fields; the empty word is the unit. A word t1 t2 ... acts on
// functions as t1(t2(...)), rightmost factor first.
using Word = std::vector<int>;

// Deterministic intern pool: ids follow first-use order, which is fixed by
// the (purely sequential) computation that creates the fields.
class FieldPool {
 public:
  int intern(const VectorField& v);
  const VectorField& at(int id) const;

 private:
  mutable std::mutex mu_;
  std::vector<VectorField> fields_;
  std::map<VectorField, int> ids_;
};

FieldPool& field_pool();

// Finite linear combination of words with GaussRat coefficients; one
// lambda-order slice of an enveloping-algebra element.
class UPoly {
 public:
  std::map<Word, GaussRat> terms;

  UPoly() = default;
  static UPoly unit() {
    UPoly p;
    p.terms[{}] = GaussRat(1);
    return p;
  }
  static UPoly word(Word w, GaussRat c = GaussRat(1)) {
    UPoly p;
    if (!c.is_zero()) p.terms[std::move(w)] = std::move(c);
    return p;
  }
  static UPoly generator(const VectorField& v, GaussRat c = GaussRat(1)) {
    return word({field_pool().intern(v)}, std::move(c));
  }

  bool is_zero() const { return terms.empty(); }

  void add_term(const Word& w, const GaussRat& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms.emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  UPoly& operator+=(const UPoly& o) {
    for (const auto& [w, c] : o.terms) add_term(w, c);
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    for (const auto& [w, c] : o.terms) add_term(w, -c);
    return *this;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  UPoly operator-() const {
    UPoly r;
    for (const auto& [w, c] : terms) r.terms.emplace(w, -c);
    return r;
  }
  friend UPoly operator*(const GaussRat& s, const UPoly& p) {
    UPoly r;
    if (s.is_zero()) return r;
    for (const auto& [w, c] : p.terms) r.terms.emplace(w, s * c);
    return r;
  }
  // concatenation product
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    UPoly r;
    for (const auto& [wa, ca] : a.terms)
      for (const auto& [wb, cb] : b.terms) {
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        r.add_term(w, ca * cb);
      }
    return r;
  }
  friend bool operator==(const UPoly& a, const UPoly& b) {
    return a.terms == b.terms;
  }

  long term_count() const { return (long)terms.size(); }
  int max_word_len() const {
    int m = 0;
    for (const auto& [w, c] : terms) m = std::max(m, (int)w.size());
    return m;
  }
};

// One lambda-order slice of an element of UXi (x) UXi, resp. triple.
class UPoly2 {
 public:
  std::map<std::pair<Word, Word>, GaussRat> terms;

  UPoly2() = default;
  static UPoly2 unit() {
    UPoly2 p;
    p.terms[{{}, {}}] = GaussRat(1);
    return p;
  }
  static UPoly2 pure(Word a, Word b, GaussRat c = GaussRat(1)) {
    UPoly2 p;
    if (!c.is_zero()) p.terms[{std::move(a), std::move(b)}] = std::move(c);
    return p;
  }

  bool is_zero() const { return terms.empty(); }
  void add_term(const std::pair<Word, Word>& w, const GaussRat& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms.emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  UPoly2& operator+=(const UPoly2& o) {
    for (const auto& [w, c] : o.terms) add_term(w, c);
    return *this;
  }
  UPoly2& operator-=(const UPoly2& o) {
    for (const auto& [w, c] : o.terms) add_term(w, -c);
    return *this;
  }
  friend UPoly2 operator+(UPoly2 a, const UPoly2& b) { return a += b; }
  friend UPoly2 operator-(UPoly2 a, const UPoly2& b) { return a -= b; }
  UPoly2 operator-() const {
    UPoly2 r;
    for (const auto& [w, c] : terms) r.terms.emplace(w, -c);
    return r;
  }
  friend UPoly2 operator*(const GaussRat& s, const UPoly2& p) {
    UPoly2 r;
    if (s.is_zero()) return r;
    for (const auto& [w, c] : p.terms) r.terms.emplace(w, s * c);
    return r;
  }
  // factor-wise concatenation
  friend UPoly2 operator*(const UPoly2& a, const UPoly2& b) {
    UPoly2 r;
    for (const auto& [wa, ca] : a.terms)
      for (const auto& [wb, cb] : b.terms) {
        Word w1 = wa.first;
        w1.insert(w1.end(), wb.first.begin(), wb.first.end());
        Word w2 = wa.second;
        w2.insert(w2.end(), wb.second.begin(), wb.second.end());
        r.add_term({std::move(w1), std::move(w2)}, ca * cb);
      }
    return r;
  }
  friend bool operator==(const UPoly2& a, const UPoly2& b) {
    return a.terms == b.terms;
  }
  UPoly2 flip() const {
    UPoly2 r;
    for (const auto& [w, c] : terms) r.terms.emplace(
        std::make_pair(w.second, w.first), c);
    return r;
  }
  long term_count() const { return (long)terms.size(); }
};

class UPoly3 {
 public:
  std::map<std::array<Word, 3>, GaussRat> terms;

  UPoly3() = default;
  static UPoly3 unit() {
    UPoly3 p;
    p.terms[{Word{}, Word{}, Word{}}] = GaussRat(1);
    return p;
  }
  bool is_zero() const { return terms.empty(); }
  void add_term(const std::array<Word, 3>& w, const GaussRat& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms.emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  UPoly3& operator+=(const UPoly3& o) {
    for (const auto& [w, c] : o.terms) add_term(w, c);
    return *this;
  }
  UPoly3& operator-=(const UPoly3& o) {
    for (const auto& [w, c] : o.terms) add_term(w, -c);
    return *this;
  }
  friend UPoly3 operator+(UPoly3 a, const UPoly3& b) { return a += b; }
  friend UPoly3 operator-(UPoly3 a, const UPoly3& b) { return a -= b; }
  UPoly3 operator-() const {
    UPoly3 r;
    for (const auto& [w, c] : terms) r.terms.emplace(w, -c);
    return r;
  }
  friend UPoly3 operator*(const UPoly3& a, const UPoly3& b) {
    UPoly3 r;
    for (const auto& [wa, ca] : a.terms)
      for (const auto& [wb, cb] : b.terms) {
        std::array<Word, 3> w = wa;
        for (int s = 0; s < 3; ++s)
          w[s].insert(w[s].end(), wb[s].begin(), wb[s].end());
        r.add_term(w, ca * cb);
      }
    return r;
  }
  friend bool operator==(const UPoly3& a, const UPoly3& b) {
    return a.terms == b.terms;
  }
  long term_count() const { return (long)terms.size(); }
};

// Formal power series in lambda over the word algebras.
using UEnvElement = LambdaSeries<UPoly>;
using UTensor2 = LambdaSeries<UPoly2>;
using UTensor3 = LambdaSeries<UPoly3>;

inline UEnvElement uenv_unit(int order) {
  return UEnvElement::constant(order, UPoly::unit());
}
inline UTensor2 utensor2_unit(int order) {
  return UTensor2::constant(order, UPoly2::unit());
}

// Hopf operations on one order slice.
UPoly2 coproduct(const UPoly& p);
GaussRat counit(const UPoly& p);
UPoly antipode(const UPoly& p);

// embeddings and partial coproducts UPoly2 -> UPoly3
UPoly3 emb12(const UPoly2& p);  // F (x) 1
UPoly3 emb23(const UPoly2& p);  // 1 (x) F
UPoly3 cop_slot1(const UPoly2& p);  // (Delta (x) id)
UPoly3 cop_slot2(const UPoly2& p);  // (id (x) Delta)
UPoly eps_slot1(const UPoly2& p);
UPoly eps_slot2(const UPoly2& p);

inline UTensor2 coproduct(const UEnvElement& x) {
  return x.map([](const UPoly& p) { return coproduct(p); });
}
inline LambdaSeries<GaussRat> counit(const UEnvElement& x) {
  return x.map([](const UPoly& p) { return counit(p); });
}
inline UEnvElement antipode(const UEnvElement& x) {
  return x.map([](const UPoly& p) { return antipode(p); });
}

// iterated bracket action of a word, rightmost factor first
VectorField ad_word(const Word& w, VectorField v);

// derivation action of a word on a word polynomial (adjoint action of
// generators extended by Leibniz over concatenation)
UPoly ad_word(const Word& w, const UPoly& p);

// Hopf adjoint ad_xi(zeta) = xi_1 zeta S(xi_2), per lambda order
UEnvElement adjoint_action(const UEnvElement& xi, const UEnvElement& zeta);

template <class X>
X lie_word(const Word& w, X x) {
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    x = lie(field_pool().at(*it), x);
  return x;
}

FunctionExpr apply_word(const Word& w, const FunctionExpr& f);
FunctionExpr apply_upoly(const UPoly& p, const FunctionExpr& f);

// ---- semantic (operator) equality by evaluation --------------------------
//
// An order slice is the zero operator iff it kills every test monomial; for
// polynomial-coefficient operators, monomials over the derivative-support
// variables up to degree = max word length are enough to detect any nonzero
// operator, so the effective test degree is min(deg, that bound).

struct EvalProfile {
  std::vector<long> per_order;  // nonzero residual terms per lambda order
  bool all_zero() const {
    for (long n : per_order)
      if (n) return false;
    return true;
  }
  long total() const {
    long t = 0;
    for (long n : per_order) t += n;
    return t;
  }
};

EvalProfile eval_profile(const UEnvElement& x, int dim, int deg,
                         bool early_exit = false);
EvalProfile eval_profile(const UTensor2& x, int dim, int deg,
                         bool early_exit = false);
EvalProfile eval_profile(const UTensor3& x, int dim, int deg,
                         bool early_exit = false);

bool op_equal(const UEnvElement& a, const UEnvElement& b, int dim, int deg);
bool op_equal(const UTensor2& a, const UTensor2& b, int dim, int deg);
bool op_equal(const UTensor3& a, const UTensor3& b, int dim, int deg);

// all monomials x^alpha with support in `vars` and total degree <= deg
std::vector<FunctionExpr> test_monomials(int dim, const std::vector<int>& vars,
                                         int deg);

std::string render(const UPoly& p);
std::string render(const UEnvElement& x);
std::string render(const UTensor2& x);

}  // namespace star
