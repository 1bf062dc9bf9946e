#include "starcalc/modes.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace star {

ModeLattice::ModeLattice(int d_, std::vector<Momentum> ks, bool theta_on,
                         std::map<Momentum, Rat> energies)
    : d(d_), momenta(std::move(ks)), theta_enabled(theta_on),
      energy(std::move(energies)) {
  std::sort(momenta.begin(), momenta.end());
  momenta.erase(std::unique(momenta.begin(), momenta.end()), momenta.end());
  for (const auto& k : momenta) {
    if ((int)k.size() != d)
      throw std::invalid_argument("momentum dimension mismatch");
    Momentum neg(k.size());
    for (size_t i = 0; i < k.size(); ++i) neg[i] = -k[i];
    if (!std::binary_search(momenta.begin(), momenta.end(), neg))
      throw std::invalid_argument("momentum set not closed under negation");
  }
  for (const auto& [k, e] : energy)
    if (sgn(e) <= 0) throw std::invalid_argument("energies must be positive");
}

const Rat& ModeLattice::energy_of(const Momentum& k) const {
  static const Rat one(1);
  auto it = energy.find(k);
  if (it != energy.end()) return it->second;
  Momentum neg(k.size());
  for (size_t i = 0; i < k.size(); ++i) neg[i] = -k[i];
  it = energy.find(neg);  // E_k = E_{-k}
  return it != energy.end() ? it->second : one;
}

Phase ModeLattice::twist_phase(const Rat& coef, const Momentum& p,
                               const Momentum& q) const {
  Phase ph;
  if (!theta_enabled || sgn(coef) == 0) return ph;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      long w = (long)p[i] * q[j] - (long)p[j] * q[i];
      if (w) ph.add_exp(i + 1, j + 1, coef * Rat(w));
    }
  return ph;
}

void explist_add(ExpList& l, const Momentum& k, int e) {
  if (e == 0) return;
  auto it = std::lower_bound(
      l.begin(), l.end(), k,
      [](const auto& a, const Momentum& b) { return a.first < b; });
  if (it != l.end() && it->first == k) {
    it->second += e;
    if (it->second == 0) l.erase(it);
  } else {
    l.insert(it, {k, e});
  }
}

namespace {

Momentum accumulate_momentum(int d, const ExpList& plus, const ExpList& minus) {
  Momentum p(d, 0);
  for (const auto& [k, e] : plus) {
    if ((int)k.size() != d)
      throw std::invalid_argument("momentum dimension mismatch");
    for (int i = 0; i < d; ++i) p[i] += e * k[i];
  }
  for (const auto& [k, e] : minus) {
    if ((int)k.size() != d)
      throw std::invalid_argument("momentum dimension mismatch");
    for (int i = 0; i < d; ++i) p[i] -= e * k[i];
  }
  return p;
}

int explist_degree(const ExpList& l) {
  int n = 0;
  for (const auto& [k, e] : l) n += e;
  return n;
}

Rat rat_pow(Rat base, long e) {
  Rat r(1);
  bool inv = e < 0;
  if (inv) e = -e;
  while (e--) r *= base;
  if (inv) r = Rat(1) / r;
  return r;
}

// fold sqrt(2 E_k)^e to exponent in {0,1} times a rational factor
void fold_surds(ExpList& surd, const ModeLattice& lat, GaussRat& value) {
  ExpList out;
  for (const auto& [k, e] : surd) {
    long q = e >= 0 ? e / 2 : -((-(long)e + 1) / 2);
    int r = (int)(e - 2 * q);
    assert(r == 0 || r == 1);
    if (q != 0) value *= GaussRat(rat_pow(2 * lat.energy_of(k), q));
    if (r) out.push_back({k, 1});
  }
  surd = std::move(out);
}

std::vector<int> merge_poswave(const std::vector<int>& a,
                               const std::vector<int>& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.size() != b.size())
    throw std::invalid_argument("position wave dimension mismatch");
  std::vector<int> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

ModeKey merge_keys(const ModeKey& x, const ModeKey& y, const ModeLattice& lat,
                   GaussRat& value) {
  ModeKey k;
  k.a = x.a;
  for (const auto& [m, e] : y.a) explist_add(k.a, m, e);
  k.astar = x.astar;
  for (const auto& [m, e] : y.astar) explist_add(k.astar, m, e);
  k.hbar = x.hbar + y.hbar;
  k.phase = x.phase * y.phase;
  k.surd = x.surd;
  for (const auto& [m, e] : y.surd) explist_add(k.surd, m, e);
  fold_surds(k.surd, lat, value);
  k.poswave = merge_poswave(x.poswave, y.poswave);
  return k;
}

}  // namespace

Momentum ModeKey::momentum(int d) const {
  return accumulate_momentum(d, a, astar);
}
int ModeKey::mode_degree() const {
  return explist_degree(a) + explist_degree(astar);
}

Momentum QKey::momentum(int d) const {
  return accumulate_momentum(d, ann, dag);
}
int QKey::mode_degree() const {
  return explist_degree(dag) + explist_degree(ann);
}

ClassicalModePoly ClassicalModePoly::one(Scalar c) {
  ClassicalModePoly p;
  ModeKey k;
  k.hbar = c.hbar_power;
  k.phase = c.phase;
  p.add_term(k, c.value);
  return p;
}

ClassicalModePoly ClassicalModePoly::mode_a(const Momentum& k, Scalar c) {
  ClassicalModePoly p;
  ModeKey key;
  key.a = {{k, 1}};
  key.hbar = c.hbar_power;
  key.phase = c.phase;
  p.add_term(key, c.value);
  return p;
}

ClassicalModePoly ClassicalModePoly::mode_astar(const Momentum& k, Scalar c) {
  ClassicalModePoly p;
  ModeKey key;
  key.astar = {{k, 1}};
  key.hbar = c.hbar_power;
  key.phase = c.phase;
  p.add_term(key, c.value);
  return p;
}

void ClassicalModePoly::add_term(const ModeKey& k, const GaussRat& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms.emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

ClassicalModePoly& ClassicalModePoly::operator+=(const ClassicalModePoly& o) {
  for (const auto& [k, c] : o.terms) add_term(k, c);
  return *this;
}
ClassicalModePoly& ClassicalModePoly::operator-=(const ClassicalModePoly& o) {
  for (const auto& [k, c] : o.terms) add_term(k, -c);
  return *this;
}
ClassicalModePoly ClassicalModePoly::operator-() const {
  ClassicalModePoly r;
  for (const auto& [k, c] : terms) r.terms.emplace(k, -c);
  return r;
}

ClassicalModePoly scalar_mul(const Scalar& s, const ClassicalModePoly& p) {
  ClassicalModePoly r;
  if (s.is_zero()) return r;
  for (const auto& [k0, c] : p.terms) {
    ModeKey k = k0;
    k.hbar += s.hbar_power;
    k.phase = k.phase * s.phase;
    r.add_term(k, c * s.value);
  }
  return r;
}

ClassicalModePoly mode_mul(const ClassicalModePoly& f,
                           const ClassicalModePoly& g,
                           const ModeLattice& lat) {
  ClassicalModePoly r;
  for (const auto& [kf, cf] : f.terms)
    for (const auto& [kg, cg] : g.terms) {
      GaussRat c = cf * cg;
      ModeKey k = merge_keys(kf, kg, lat, c);
      r.add_term(k, c);
    }
  return r;
}

ClassicalModePoly mode_star(const ClassicalModePoly& f,
                            const ClassicalModePoly& g,
                            const ModeLattice& lat) {
  ClassicalModePoly r;
  for (const auto& [kf, cf] : f.terms)
    for (const auto& [kg, cg] : g.terms) {
      GaussRat c = cf * cg;
      ModeKey k = merge_keys(kf, kg, lat, c);
      k.phase = k.phase * lat.twist_phase(Rat(-1, 2), kf.momentum(lat.d),
                                          kg.momentum(lat.d));
      r.add_term(k, c);
    }
  return r;
}

namespace {

// derivative d/da(k) resp. d/da*(k): exponent times decremented monomial
bool deriv(const ModeKey& m, const Momentum& k, bool conj, int& e_out,
           ModeKey& out) {
  const ExpList& l = conj ? m.astar : m.a;
  auto it = std::lower_bound(
      l.begin(), l.end(), k,
      [](const auto& a, const Momentum& b) { return a.first < b; });
  if (it == l.end() || !(it->first == k)) return false;
  e_out = it->second;
  out = m;
  explist_add(conj ? out.astar : out.a, k, -1);
  return true;
}

void poisson_pair(const ModeKey& kf, const GaussRat& cf, const ModeKey& kg,
                  const GaussRat& cg, const ModeLattice& lat,
                  const Phase& extra, ClassicalModePoly& acc) {
  // {F,G} = -(i/hbar) sum_k (dF/da_k dG/da*_k - dF/da*_k dG/da_k)
  const GaussRat minus_i(Rat(0), Rat(-1));
  auto contract = [&](bool conj_first, int sign) {
    const ExpList& from = conj_first ? kf.astar : kf.a;
    for (const auto& [k, ef] : from) {
      int eg = 0;
      ModeKey df, dg;
      if (!deriv(kg, k, !conj_first, eg, dg)) continue;
      int dummy = 0;
      deriv(kf, k, conj_first, dummy, df);
      GaussRat c = cf * cg * GaussRat(ef) * GaussRat(eg) * minus_i;
      if (sign < 0) c = -c;
      ModeKey merged = merge_keys(df, dg, lat, c);
      merged.hbar -= 1;
      merged.phase = merged.phase * extra;
      acc.add_term(merged, c);
    }
  };
  contract(false, +1);  // dF/da dG/da*
  contract(true, -1);   // -dF/da* dG/da
}

}  // namespace

ClassicalModePoly mode_poisson(const ClassicalModePoly& f,
                               const ClassicalModePoly& g,
                               const ModeLattice& lat) {
  ClassicalModePoly r;
  for (const auto& [kf, cf] : f.terms)
    for (const auto& [kg, cg] : g.terms)
      poisson_pair(kf, cf, kg, cg, lat, Phase{}, r);
  return r;
}

ClassicalModePoly mode_poisson_star(const ClassicalModePoly& f,
                                    const ClassicalModePoly& g,
                                    const ModeLattice& lat) {
  ClassicalModePoly r;
  for (const auto& [kf, cf] : f.terms)
    for (const auto& [kg, cg] : g.terms)
      poisson_pair(kf, cf, kg, cg, lat,
                   lat.twist_phase(Rat(-1, 2), kf.momentum(lat.d),
                                   kg.momentum(lat.d)),
                   r);
  return r;
}

// ---- quantum layer --------------------------------------------------------

QuantumElement QuantumElement::one(Scalar c) {
  QuantumElement p;
  QKey k;
  k.hbar = c.hbar_power;
  k.phase = c.phase;
  p.add_term(k, c.value);
  return p;
}
QuantumElement QuantumElement::op_a(const Momentum& k, Scalar c) {
  QuantumElement p;
  QKey key;
  key.ann = {{k, 1}};
  key.hbar = c.hbar_power;
  key.phase = c.phase;
  p.add_term(key, c.value);
  return p;
}
QuantumElement QuantumElement::op_adag(const Momentum& k, Scalar c) {
  QuantumElement p;
  QKey key;
  key.dag = {{k, 1}};
  key.hbar = c.hbar_power;
  key.phase = c.phase;
  p.add_term(key, c.value);
  return p;
}

void QuantumElement::add_term(const QKey& k, const GaussRat& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms.emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

QuantumElement& QuantumElement::operator+=(const QuantumElement& o) {
  for (const auto& [k, c] : o.terms) add_term(k, c);
  return *this;
}
QuantumElement& QuantumElement::operator-=(const QuantumElement& o) {
  for (const auto& [k, c] : o.terms) add_term(k, -c);
  return *this;
}
QuantumElement QuantumElement::operator-() const {
  QuantumElement r;
  for (const auto& [k, c] : terms) r.terms.emplace(k, -c);
  return r;
}

QuantumElement scalar_mul(const Scalar& s, const QuantumElement& p) {
  QuantumElement r;
  if (s.is_zero()) return r;
  for (const auto& [k0, c] : p.terms) {
    QKey k = k0;
    k.hbar += s.hbar_power;
    k.phase = k.phase * s.phase;
    r.add_term(k, c * s.value);
  }
  return r;
}

namespace {

void normal_order_rec(std::vector<OpLetter>& word, const QKey& proto,
                      const GaussRat& coeff, QuantumElement& out) {
  for (size_t i = 0; i + 1 < word.size(); ++i) {
    if (!word[i].dagger && word[i + 1].dagger) {
      // a(k) a+(k') -> a+(k') a(k) + delta_{kk'}
      std::vector<OpLetter> swapped = word;
      std::swap(swapped[i], swapped[i + 1]);
      normal_order_rec(swapped, proto, coeff, out);
      if (word[i].k == word[i + 1].k) {
        std::vector<OpLetter> contracted;
        contracted.reserve(word.size() - 2);
        for (size_t j = 0; j < word.size(); ++j)
          if (j != i && j != i + 1) contracted.push_back(word[j]);
        normal_order_rec(contracted, proto, coeff, out);
      }
      return;
    }
  }
  QKey key = proto;
  for (const auto& op : word)
    explist_add(op.dagger ? key.dag : key.ann, op.k, 1);
  out.add_term(key, coeff);
}

std::vector<OpLetter> expand_word(const QKey& k) {
  std::vector<OpLetter> w;
  for (const auto& [m, e] : k.dag)
    for (int i = 0; i < e; ++i) w.push_back({m, true});
  for (const auto& [m, e] : k.ann)
    for (int i = 0; i < e; ++i) w.push_back({m, false});
  return w;
}

}  // namespace

QuantumElement normal_order(const std::vector<OpLetter>& word, Scalar coeff) {
  QuantumElement out;
  if (coeff.is_zero()) return out;
  QKey proto;
  proto.hbar = coeff.hbar_power;
  proto.phase = coeff.phase;
  std::vector<OpLetter> w = word;
  normal_order_rec(w, proto, coeff.value, out);
  return out;
}

QuantumElement qmode_mul(const QuantumElement& f, const QuantumElement& g) {
  QuantumElement r;
  for (const auto& [kf, cf] : f.terms)
    for (const auto& [kg, cg] : g.terms) {
      std::vector<OpLetter> w = expand_word(kf);
      std::vector<OpLetter> w2 = expand_word(kg);
      w.insert(w.end(), w2.begin(), w2.end());
      QKey proto;
      proto.hbar = kf.hbar + kg.hbar;
      proto.phase = kf.phase * kg.phase;
      normal_order_rec(w, proto, cf * cg, r);
    }
  return r;
}

QuantumElement qmode_star(const QuantumElement& f, const QuantumElement& g,
                          const ModeLattice& lat) {
  QuantumElement r;
  for (const auto& [kf, cf] : f.terms)
    for (const auto& [kg, cg] : g.terms) {
      std::vector<OpLetter> w = expand_word(kf);
      std::vector<OpLetter> w2 = expand_word(kg);
      w.insert(w.end(), w2.begin(), w2.end());
      QKey proto;
      proto.hbar = kf.hbar + kg.hbar;
      proto.phase = kf.phase * kg.phase *
                    lat.twist_phase(Rat(-1, 2), kf.momentum(lat.d),
                                    kg.momentum(lat.d));
      normal_order_rec(w, proto, cf * cg, r);
    }
  return r;
}

QuantumElement star_commutator(const QuantumElement& f,
                               const QuantumElement& g,
                               const ModeLattice& lat) {
  QuantumElement r = qmode_star(f, g, lat);
  // Rbar acts on the flipped pair (G, F): on gradings (q, p) it multiplies
  // by exp(i theta(q,p)); then the pair is star-multiplied
  for (const auto& [kg, cg] : g.terms)
    for (const auto& [kf, cf] : f.terms) {
      Momentum q = kg.momentum(lat.d), p = kf.momentum(lat.d);
      std::vector<OpLetter> w = expand_word(kg);
      std::vector<OpLetter> w2 = expand_word(kf);
      w.insert(w.end(), w2.begin(), w2.end());
      QKey proto;
      proto.hbar = kf.hbar + kg.hbar;
      proto.phase = kf.phase * kg.phase * lat.twist_phase(Rat(1), q, p) *
                    lat.twist_phase(Rat(-1, 2), q, p);
      normal_order_rec(w, proto, -(cg * cf), r);
    }
  return r;
}

QuantumElement quantize(const ClassicalModePoly& f) {
  QuantumElement r;
  for (const auto& [k, c] : f.terms) {
    if (!k.surd.empty() || !k.poswave.empty())
      throw std::invalid_argument("quantize expects pure mode polynomials");
    QKey q;
    q.dag = k.astar;
    q.ann = k.a;
    q.hbar = k.hbar;
    q.phase = k.phase;
    r.add_term(q, c);
  }
  return r;
}

int weighted_hbar_degree(int hbar_power, int mode_degree) {
  return 2 * hbar_power - mode_degree;
}

CorrespondenceReport correspondence_residual(const ClassicalModePoly& f,
                                             const ClassicalModePoly& g,
                                             const ModeLattice& lat) {
  QuantumElement r1 = quantize(mode_poisson_star(f, g, lat));
  QuantumElement comm = star_commutator(quantize(f), quantize(g), lat);
  QuantumElement r2 =
      scalar_mul(Scalar(GaussRat::unit_i(), -1), comm);  // (i/hbar) [.,.]
  CorrespondenceReport rep;
  rep.residual = r1 + r2;
  bool any = false;
  int lead = 0;
  auto scan = [&](const QuantumElement& q) {
    for (const auto& [k, c] : q.terms) {
      int w = weighted_hbar_degree(k.hbar, k.mode_degree());
      if (!any || w < lead) lead = w;
      any = true;
    }
  };
  scan(r1);
  scan(r2);
  rep.leading_degree = lead;
  rep.exact_zero = rep.residual.is_zero();
  rep.leading_vanishes = true;
  if (any)
    for (const auto& [k, c] : rep.residual.terms)
      if (weighted_hbar_degree(k.hbar, k.mode_degree()) <= lead)
        rep.leading_vanishes = false;
  return rep;
}

FieldBracketReport field_bracket_check(const ModeLattice& lat) {
  int d = lat.d;
  ClassicalModePoly phi, pi;
  auto pos = [&](const Momentum& k, bool second) {
    std::vector<int> w(2 * d, 0);
    for (int i = 0; i < d; ++i) w[(second ? d : 0) + i] = k[i];
    return w;
  };
  auto neg = [](const Momentum& k) {
    Momentum n(k.size());
    for (size_t i = 0; i < k.size(); ++i) n[i] = -k[i];
    return n;
  };
  for (const auto& k : lat.momenta) {
    // Phi: (a(k) e^{ikx} + a*(k) e^{-ikx}) / sqrt(2 E_k)
    {
      ModeKey t;
      t.a = {{k, 1}};
      t.surd = {{k, -1}};
      GaussRat c(1);
      fold_surds(t.surd, lat, c);
      t.poswave = pos(k, false);
      phi.add_term(t, c);
    }
    {
      ModeKey t;
      t.astar = {{k, 1}};
      t.surd = {{k, -1}};
      GaussRat c(1);
      fold_surds(t.surd, lat, c);
      t.poswave = pos(neg(k), false);
      phi.add_term(t, c);
    }
    // Pi: -i hbar sqrt(E_k/2) (a(k) e^{iky} - a*(k) e^{-iky}),
    // sqrt(E_k/2) = sqrt(2 E_k)/2
    {
      ModeKey t;
      t.a = {{k, 1}};
      t.surd = {{k, 1}};
      t.hbar = 1;
      t.poswave = pos(k, true);
      pi.add_term(t, GaussRat(Rat(0), Rat(-1, 2)));
    }
    {
      ModeKey t;
      t.astar = {{k, 1}};
      t.surd = {{k, 1}};
      t.hbar = 1;
      t.poswave = pos(neg(k), true);
      pi.add_term(t, GaussRat(Rat(0), Rat(1, 2)));
    }
  }
  ClassicalModePoly plain = mode_poisson(phi, pi, lat);
  ClassicalModePoly starred = mode_poisson_star(phi, pi, lat);
  FieldBracketReport rep;
  rep.residual_terms = (starred - plain).term_count();
  rep.delta_terms = plain.term_count();
  return rep;
}

namespace {

std::string momentum_str(const Momentum& k) {
  std::string s = "[";
  for (size_t i = 0; i < k.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(k[i]);
  }
  return s + "]";
}

std::string explist_str(const ExpList& l, const std::string& sym) {
  std::string s;
  for (const auto& [k, e] : l) {
    if (!s.empty()) s += "*";
    s += sym + momentum_str(k);
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

template <class Key>
std::string mode_terms_str(const std::map<Key, GaussRat>& terms,
                           const std::string& sym1, const std::string& sym2,
                           const ExpList Key::*m1, const ExpList Key::*m2) {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : terms) {
    if (!s.empty()) s += " + ";
    Scalar sc(c, k.hbar, k.phase);
    std::string body = explist_str(k.*m1, sym1);
    std::string b2 = explist_str(k.*m2, sym2);
    if (!b2.empty()) body += (body.empty() ? "" : "*") + b2;
    s += sc.str();
    if (!body.empty()) s += "*" + body;
  }
  return s;
}

}  // namespace

std::string render(const ClassicalModePoly& p) {
  return mode_terms_str(p.terms, "a", "a*", &ModeKey::a, &ModeKey::astar);
}

std::string render(const QuantumElement& p) {
  return mode_terms_str(p.terms, "A+", "A", &QKey::dag, &QKey::ann);
}

}  // namespace star
