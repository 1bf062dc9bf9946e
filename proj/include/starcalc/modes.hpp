#pragma once

#include <map>
#include <string>
#include <vector>

#include "starcalc/scalar.hpp"

namespace star {

using Momentum = std::vector<int>;

// Finite momentum set K in Z^d, closed under negation, with formal
// theta-symbols th(i,j) (i<j<=d) and free positive rational energy
// parameters E_k.
struct ModeLattice {
  int d = 0;
  std::vector<Momentum> momenta;
  bool theta_enabled = true;
  std::map<Momentum, Rat> energy;

  ModeLattice() = default;
  ModeLattice(int d, std::vector<Momentum> ks, bool theta_on = true,
              std::map<Momentum, Rat> energies = {});

  const Rat& energy_of(const Momentum& k) const;

  // exp(i * coef * theta(p,q)) with theta(p,q) = sum th^{ij} p_i q_j
  Phase twist_phase(const Rat& coef, const Momentum& p,
                    const Momentum& q) const;
};

// exponent lists sorted by momentum, positive exponents only
using ExpList = std::vector<std::pair<Momentum, int>>;

void explist_add(ExpList& l, const Momentum& k, int e);

// Commuting monomial in mode symbols a(k), a*(k) with bookkeeping for the
// formal symbols hbar, phases, sqrt(2 E_k) surds, and position plane waves
// (used by the lattice field assembly). Momentum grading:
// p(a(k)) = k, p(a*(k)) = -k.
struct ModeKey {
  ExpList a, astar;
  int hbar = 0;
  Phase phase;
  ExpList surd;            // entries with exponent 1 after folding
  std::vector<int> poswave;

  Momentum momentum(int d) const;
  int mode_degree() const;

  auto tie() const { return std::tie(a, astar, hbar, surd, poswave); }
  friend bool operator<(const ModeKey& x, const ModeKey& y) {
    if (x.tie() != y.tie()) return x.tie() < y.tie();
    return x.phase.compare(y.phase) < 0;
  }
  friend bool operator==(const ModeKey& x, const ModeKey& y) {
    return x.tie() == y.tie() && x.phase.compare(y.phase) == 0;
  }
};

class ClassicalModePoly {
 public:
  std::map<ModeKey, GaussRat> terms;

  static ClassicalModePoly zero() { return {}; }
  static ClassicalModePoly one(Scalar c = Scalar::one());
  static ClassicalModePoly mode_a(const Momentum& k,
                                  Scalar c = Scalar::one());
  static ClassicalModePoly mode_astar(const Momentum& k,
                                      Scalar c = Scalar::one());

  bool is_zero() const { return terms.empty(); }
  long term_count() const { return (long)terms.size(); }

  void add_term(const ModeKey& k, const GaussRat& c);
  ClassicalModePoly& operator+=(const ClassicalModePoly& o);
  ClassicalModePoly& operator-=(const ClassicalModePoly& o);
  friend ClassicalModePoly operator+(ClassicalModePoly a,
                                     const ClassicalModePoly& b) {
    return a += b;
  }
  friend ClassicalModePoly operator-(ClassicalModePoly a,
                                     const ClassicalModePoly& b) {
    return a -= b;
  }
  ClassicalModePoly operator-() const;
  friend bool operator==(const ClassicalModePoly& a,
                         const ClassicalModePoly& b) {
    return a.terms == b.terms;
  }
};

ClassicalModePoly scalar_mul(const Scalar& s, const ClassicalModePoly& p);

// undeformed commutative product (folds surds using the lattice energies)
ClassicalModePoly mode_mul(const ClassicalModePoly& f,
                           const ClassicalModePoly& g,
                           const ModeLattice& lat);

// F * G = exp(-(i/2) theta(p,q)) F G on momentum-homogeneous pieces
ClassicalModePoly mode_star(const ClassicalModePoly& f,
                            const ClassicalModePoly& g,
                            const ModeLattice& lat);

// canonical bracket {a(k), a*(k')} = -(i/hbar) delta_{kk'}, extended as a
// biderivation; star version twists the arguments first
ClassicalModePoly mode_poisson(const ClassicalModePoly& f,
                               const ClassicalModePoly& g,
                               const ModeLattice& lat);
ClassicalModePoly mode_poisson_star(const ClassicalModePoly& f,
                                    const ClassicalModePoly& g,
                                    const ModeLattice& lat);

// ---- quantum layer --------------------------------------------------------

// normal-ordered word: all creation operators left of all annihilation
// operators; within each species momenta sorted (they commute)
struct QKey {
  ExpList dag, ann;
  int hbar = 0;
  Phase phase;

  Momentum momentum(int d) const;  // p(ahat(k)) = k, p(ahat+(k)) = -k
  int mode_degree() const;

  auto tie() const { return std::tie(dag, ann, hbar); }
  friend bool operator<(const QKey& x, const QKey& y) {
    if (x.tie() != y.tie()) return x.tie() < y.tie();
    return x.phase.compare(y.phase) < 0;
  }
  friend bool operator==(const QKey& x, const QKey& y) {
    return x.tie() == y.tie() && x.phase.compare(y.phase) == 0;
  }
};

class QuantumElement {
 public:
  std::map<QKey, GaussRat> terms;

  static QuantumElement zero() { return {}; }
  static QuantumElement one(Scalar c = Scalar::one());
  static QuantumElement op_a(const Momentum& k, Scalar c = Scalar::one());
  static QuantumElement op_adag(const Momentum& k, Scalar c = Scalar::one());

  bool is_zero() const { return terms.empty(); }
  long term_count() const { return (long)terms.size(); }

  void add_term(const QKey& k, const GaussRat& c);
  QuantumElement& operator+=(const QuantumElement& o);
  QuantumElement& operator-=(const QuantumElement& o);
  friend QuantumElement operator+(QuantumElement a, const QuantumElement& b) {
    return a += b;
  }
  friend QuantumElement operator-(QuantumElement a, const QuantumElement& b) {
    return a -= b;
  }
  QuantumElement operator-() const;
  friend bool operator==(const QuantumElement& a, const QuantumElement& b) {
    return a.terms == b.terms;
  }
};

QuantumElement scalar_mul(const Scalar& s, const QuantumElement& p);

// one operator letter: creation flag + momentum
struct OpLetter {
  Momentum k;
  bool dagger = false;
};

// confluent rewriting a(k) a+(k') -> a+(k') a(k) + delta_{kk'}
QuantumElement normal_order(const std::vector<OpLetter>& word,
                            Scalar coeff = Scalar::one());

// operator product, normal-ordered
QuantumElement qmode_mul(const QuantumElement& f, const QuantumElement& g);

QuantumElement qmode_star(const QuantumElement& f, const QuantumElement& g,
                          const ModeLattice& lat);

// [F,G]_star = F * G - Rbar^a(G) * Rbar_a(F)
QuantumElement star_commutator(const QuantumElement& f,
                               const QuantumElement& g,
                               const ModeLattice& lat);

// a -> ahat, a* -> ahat+ monomial-wise into normal-ordered form, identity
// on coefficients
QuantumElement quantize(const ClassicalModePoly& f);

// effective hbar order of a term: 2*hbar_power - (number of mode factors),
// doubled to stay integral (each mode symbol weighs hbar^{-1/2})
int weighted_hbar_degree(int hbar_power, int mode_degree);

struct CorrespondenceReport {
  QuantumElement residual;
  int leading_degree = 0;       // lowest weighted degree in either route
  bool leading_vanishes = false;
  bool exact_zero = false;
};

// residual of quantize({F,G}_star) + (i/hbar)[quantize F, quantize G]_star
CorrespondenceReport correspondence_residual(const ClassicalModePoly& f,
                                             const ClassicalModePoly& g,
                                             const ModeLattice& lat);

struct FieldBracketReport {
  long residual_terms = 0;   // |{Phi,Pi}_star - {Phi,Pi}|
  long delta_terms = 0;      // term count of the undeformed bracket
  bool pass() const { return residual_terms == 0; }
};

// assemble the lattice fields Phi(x), Pi(y) from the modes with formal
// positions x, y and verify {Phi(x),Pi(y)}_star = {Phi(x),Pi(y)} exactly
FieldBracketReport field_bracket_check(const ModeLattice& lat);

std::string render(const ClassicalModePoly& p);
std::string render(const QuantumElement& p);

}  // namespace star
