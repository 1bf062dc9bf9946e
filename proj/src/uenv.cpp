#include "starcalc/uenv.hpp"

#include <algorithm>

namespace star {

FieldPool& field_pool() {
  static FieldPool pool;
  return pool;
}

int FieldPool::intern(const VectorField& v) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = ids_.find(v);
  if (it != ids_.end()) return it->second;
  int id = (int)fields_.size();
  fields_.push_back(v);
  ids_.emplace(v, id);
  return id;
}

const VectorField& FieldPool::at(int id) const {
  std::lock_guard<std::mutex> lock(mu_);
  return fields_.at(id);
}

UPoly2 coproduct(const UPoly& p) {
  UPoly2 r;
  for (const auto& [w, c] : p.terms) {
    // product of (t (x) 1 + 1 (x) t) over the factors
    std::map<std::pair<Word, Word>, GaussRat> acc;
    acc[{{}, {}}] = c;
    for (int f : w) {
      std::map<std::pair<Word, Word>, GaussRat> next;
      for (const auto& [ww, cc] : acc) {
        auto l = ww;
        l.first.push_back(f);
        auto r2 = ww;
        r2.second.push_back(f);
        next[l] += cc;
        next[r2] += cc;
      }
      acc = std::move(next);
    }
    for (const auto& [ww, cc] : acc) r.add_term(ww, cc);
  }
  return r;
}

GaussRat counit(const UPoly& p) {
  auto it = p.terms.find(Word{});
  return it == p.terms.end() ? GaussRat() : it->second;
}

UPoly antipode(const UPoly& p) {
  UPoly r;
  for (const auto& [w, c] : p.terms) {
    Word rev(w.rbegin(), w.rend());
    r.add_term(rev, (w.size() % 2) ? -c : c);
  }
  return r;
}

UPoly3 emb12(const UPoly2& p) {
  UPoly3 r;
  for (const auto& [w, c] : p.terms)
    r.add_term({w.first, w.second, Word{}}, c);
  return r;
}

UPoly3 emb23(const UPoly2& p) {
  UPoly3 r;
  for (const auto& [w, c] : p.terms)
    r.add_term({Word{}, w.first, w.second}, c);
  return r;
}

UPoly3 cop_slot1(const UPoly2& p) {
  UPoly3 r;
  for (const auto& [w, c] : p.terms) {
    UPoly2 d = coproduct(UPoly::word(w.first));
    for (const auto& [dw, dc] : d.terms)
      r.add_term({dw.first, dw.second, w.second}, c * dc);
  }
  return r;
}

UPoly3 cop_slot2(const UPoly2& p) {
  UPoly3 r;
  for (const auto& [w, c] : p.terms) {
    UPoly2 d = coproduct(UPoly::word(w.second));
    for (const auto& [dw, dc] : d.terms)
      r.add_term({w.first, dw.first, dw.second}, c * dc);
  }
  return r;
}

UPoly eps_slot1(const UPoly2& p) {
  UPoly r;
  for (const auto& [w, c] : p.terms)
    if (w.first.empty()) r.add_term(w.second, c);
  return r;
}

UPoly eps_slot2(const UPoly2& p) {
  UPoly r;
  for (const auto& [w, c] : p.terms)
    if (w.second.empty()) r.add_term(w.first, c);
  return r;
}

VectorField ad_word(const Word& w, VectorField v) {
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    v = lie_bracket(field_pool().at(*it), v);
  return v;
}

UPoly ad_word(const Word& w, const UPoly& p) {
  UPoly cur = p;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const VectorField& t = field_pool().at(*it);
    UPoly next;
    for (const auto& [pw, c] : cur.terms)
      for (size_t i = 0; i < pw.size(); ++i) {
        VectorField b = lie_bracket(t, field_pool().at(pw[i]));
        if (b.is_zero()) continue;
        Word nw = pw;
        nw[i] = field_pool().intern(b);
        next.add_term(nw, c);
      }
    cur = std::move(next);
  }
  return cur;
}

UEnvElement adjoint_action(const UEnvElement& xi, const UEnvElement& zeta) {
  int n = std::min(xi.order, zeta.order);
  UEnvElement r(n);
  for (int i = 0; i <= n; ++i) {
    if (xi.c[i].is_zero()) continue;
    for (const auto& [w, c] : xi.c[i].terms) {
      UPoly2 d = coproduct(UPoly::word(w, c));
      for (const auto& [dw, dc] : d.terms) {
        UPoly right = antipode(UPoly::word(dw.second));
        for (int j = 0; i + j <= n; ++j) {
          if (zeta.c[j].is_zero()) continue;
          r.c[i + j] += dc * (UPoly::word(dw.first) * zeta.c[j] * right);
        }
      }
    }
  }
  return r;
}

FunctionExpr apply_word(const Word& w, const FunctionExpr& f) {
  FunctionExpr r = f;
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    r = field_pool().at(*it).apply(r);
  return r;
}

FunctionExpr apply_upoly(const UPoly& p, const FunctionExpr& f) {
  FunctionExpr r(f.dim);
  for (const auto& [w, c] : p.terms) r += c * apply_word(w, f);
  return r;
}

std::vector<FunctionExpr> test_monomials(int dim, const std::vector<int>& vars,
                                         int deg) {
  std::vector<FunctionExpr> out;
  std::vector<int> alpha(dim, 0);
  // enumerate exponents over `vars` with total degree <= deg
  std::function<void(size_t, int)> rec = [&](size_t vi, int left) {
    if (vi == vars.size()) {
      out.push_back(FunctionExpr::monomial(dim, alpha));
      return;
    }
    for (int e = 0; e <= left; ++e) {
      alpha[vars[vi]] = e;
      rec(vi + 1, left - e);
    }
    alpha[vars[vi]] = 0;
  };
  rec(0, deg);
  return out;
}

namespace {

// When every field occurring in a set of words commutes with every other,
// words act as operators through their multisets only; sorting the factor
// ids is then a sound canonicalization (formal zero implies operator zero),
// which lets large abelian-twist residuals cancel without any evaluation.
class CommuteCache {
 public:
  bool commute(int a, int b) {
    if (a == b) return true;
    auto key = std::minmax(a, b);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    bool ok =
        lie_bracket(field_pool().at(key.first), field_pool().at(key.second))
            .is_zero();
    cache_.emplace(key, ok);
    return ok;
  }

  bool all_commute(const std::set<int>& ids) {
    for (auto i = ids.begin(); i != ids.end(); ++i)
      for (auto j = std::next(i); j != ids.end(); ++j)
        if (!commute(*i, *j)) return false;
    return true;
  }

 private:
  std::map<std::pair<int, int>, bool> cache_;
};

template <class P>
void collect_ids(const LambdaSeries<P>& x, std::set<int>& ids);

template <>
void collect_ids(const UEnvElement& x, std::set<int>& ids) {
  for (int k = 0; k <= x.order; ++k)
    for (const auto& [w, c] : x.c[k].terms) ids.insert(w.begin(), w.end());
}
template <>
void collect_ids(const UTensor2& x, std::set<int>& ids) {
  for (int k = 0; k <= x.order; ++k)
    for (const auto& [w, c] : x.c[k].terms) {
      ids.insert(w.first.begin(), w.first.end());
      ids.insert(w.second.begin(), w.second.end());
    }
}
template <>
void collect_ids(const UTensor3& x, std::set<int>& ids) {
  for (int k = 0; k <= x.order; ++k)
    for (const auto& [w, c] : x.c[k].terms)
      for (int s = 0; s < 3; ++s) ids.insert(w[s].begin(), w[s].end());
}

UPoly sort_words(const UPoly& p) {
  UPoly r;
  for (const auto& [w, c] : p.terms) {
    Word sw = w;
    std::sort(sw.begin(), sw.end());
    r.add_term(sw, c);
  }
  return r;
}
UPoly2 sort_words(const UPoly2& p) {
  UPoly2 r;
  for (const auto& [w, c] : p.terms) {
    auto sw = w;
    std::sort(sw.first.begin(), sw.first.end());
    std::sort(sw.second.begin(), sw.second.end());
    r.add_term(sw, c);
  }
  return r;
}
UPoly3 sort_words(const UPoly3& p) {
  UPoly3 r;
  for (const auto& [w, c] : p.terms) {
    auto sw = w;
    for (int s = 0; s < 3; ++s) std::sort(sw[s].begin(), sw[s].end());
    r.add_term(sw, c);
  }
  return r;
}

// formally cancels an all-commuting residual; true when it vanished
template <class T>
bool abelian_zero(const LambdaSeries<T>& x) {
  std::set<int> ids;
  collect_ids(x, ids);
  CommuteCache cc;
  if (!cc.all_commute(ids)) return false;
  for (int k = 0; k <= x.order; ++k)
    if (!sort_words(x.c[k]).is_zero()) return false;
  return true;
}

void word_support(const Word& w, std::set<int>& vars, int& maxlen, int len) {
  maxlen = std::max(maxlen, len);
  for (int f : w) {
    const VectorField& v = field_pool().at(f);
    for (int mu = 0; mu < v.dim; ++mu)
      if (!v.comp[mu].is_zero()) vars.insert(mu);
  }
}

// per-slot nonzero evaluations of each distinct word on each test monomial
struct SlotTable {
  std::vector<Word> words;
  std::map<Word, int> index;
  // eval[wi] = list of (monomial index, word(monomial))
  std::vector<std::vector<std::pair<int, FunctionExpr>>> eval;

  int intern(const Word& w) {
    auto it = index.find(w);
    if (it != index.end()) return it->second;
    int id = (int)words.size();
    words.push_back(w);
    index.emplace(w, id);
    eval.emplace_back();
    return id;
  }

  void evaluate(const std::vector<FunctionExpr>& mons) {
    for (size_t wi = 0; wi < words.size(); ++wi)
      for (size_t mi = 0; mi < mons.size(); ++mi) {
        FunctionExpr r = apply_word(words[wi], mons[mi]);
        if (!r.is_zero()) eval[wi].push_back({(int)mi, std::move(r)});
      }
  }
};

// product of functions over disjoint variable blocks
FunctionExpr tensor_fn(const FunctionExpr& a, const FunctionExpr& b) {
  FunctionExpr r(a.dim + b.dim);
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      Mono m;
      m.alpha = ma.alpha;
      m.alpha.insert(m.alpha.end(), mb.alpha.begin(), mb.alpha.end());
      m.wave = ma.wave;
      m.wave.insert(m.wave.end(), mb.wave.begin(), mb.wave.end());
      r.add_term(m, ca * cb);
    }
  return r;
}

}  // namespace

EvalProfile eval_profile(const UEnvElement& x, int dim, int deg,
                         bool early_exit) {
  EvalProfile pr;
  pr.per_order.assign(x.order + 1, 0);
  if (abelian_zero(x)) return pr;
  std::set<int> vars;
  int maxlen = 0;
  for (int k = 0; k <= x.order; ++k)
    for (const auto& [w, c] : x.c[k].terms)
      word_support(w, vars, maxlen, (int)w.size());
  std::vector<int> vvars(vars.begin(), vars.end());
  auto mons = test_monomials(dim, vvars, std::min(deg, maxlen));
  for (int k = 0; k <= x.order; ++k) {
    if (x.c[k].is_zero()) continue;
    for (const auto& m : mons) {
      FunctionExpr r = apply_upoly(x.c[k], m);
      pr.per_order[k] += (long)r.terms.size();
      if (early_exit && pr.per_order[k]) return pr;
    }
  }
  return pr;
}

EvalProfile eval_profile(const UTensor2& x, int dim, int deg,
                         bool early_exit) {
  EvalProfile pr;
  pr.per_order.assign(x.order + 1, 0);
  if (abelian_zero(x)) return pr;
  std::set<int> vars1, vars2;
  int len1 = 0, len2 = 0;
  for (int k = 0; k <= x.order; ++k)
    for (const auto& [w, c] : x.c[k].terms) {
      word_support(w.first, vars1, len1, (int)w.first.size());
      word_support(w.second, vars2, len2, (int)w.second.size());
    }
  SlotTable s1, s2;
  struct Term {
    int w1, w2;
    GaussRat c;
  };
  std::vector<std::vector<Term>> per_order(x.order + 1);
  for (int k = 0; k <= x.order; ++k)
    for (const auto& [w, c] : x.c[k].terms)
      per_order[k].push_back({s1.intern(w.first), s2.intern(w.second), c});
  auto mons1 =
      test_monomials(dim, {vars1.begin(), vars1.end()}, std::min(deg, len1));
  auto mons2 =
      test_monomials(dim, {vars2.begin(), vars2.end()}, std::min(deg, len2));
  s1.evaluate(mons1);
  s2.evaluate(mons2);
  for (int k = 0; k <= x.order; ++k) {
    if (per_order[k].empty()) continue;
    std::map<std::pair<int, int>, FunctionExpr> acc;
    for (const auto& t : per_order[k])
      for (const auto& [i1, e1] : s1.eval[t.w1])
        for (const auto& [i2, e2] : s2.eval[t.w2])
          acc[{i1, i2}] += t.c * tensor_fn(e1, e2);
    for (const auto& [key, f] : acc) pr.per_order[k] += (long)f.terms.size();
    if (early_exit && pr.per_order[k]) return pr;
  }
  return pr;
}

EvalProfile eval_profile(const UTensor3& x, int dim, int deg,
                         bool early_exit) {
  EvalProfile pr;
  pr.per_order.assign(x.order + 1, 0);
  if (abelian_zero(x)) return pr;
  std::set<int> vars[3];
  int len[3] = {0, 0, 0};
  for (int k = 0; k <= x.order; ++k)
    for (const auto& [w, c] : x.c[k].terms)
      for (int s = 0; s < 3; ++s)
        word_support(w[s], vars[s], len[s], (int)w[s].size());
  SlotTable st[3];
  struct Term {
    int w[3];
    GaussRat c;
  };
  std::vector<std::vector<Term>> per_order(x.order + 1);
  for (int k = 0; k <= x.order; ++k)
    for (const auto& [w, c] : x.c[k].terms)
      per_order[k].push_back(
          {{st[0].intern(w[0]), st[1].intern(w[1]), st[2].intern(w[2])}, c});
  for (int s = 0; s < 3; ++s) {
    auto mons = test_monomials(dim, {vars[s].begin(), vars[s].end()},
                               std::min(deg, len[s]));
    st[s].evaluate(mons);
  }
  for (int k = 0; k <= x.order; ++k) {
    if (per_order[k].empty()) continue;
    std::map<std::array<int, 3>, FunctionExpr> acc;
    for (const auto& t : per_order[k])
      for (const auto& [i1, e1] : st[0].eval[t.w[0]])
        for (const auto& [i2, e2] : st[1].eval[t.w[1]]) {
          FunctionExpr e12 = tensor_fn(e1, e2);
          for (const auto& [i3, e3] : st[2].eval[t.w[2]])
            acc[{i1, i2, i3}] += t.c * tensor_fn(e12, e3);
        }
    for (const auto& [key, f] : acc) pr.per_order[k] += (long)f.terms.size();
    if (early_exit && pr.per_order[k]) return pr;
  }
  return pr;
}

bool op_equal(const UEnvElement& a, const UEnvElement& b, int dim, int deg) {
  return eval_profile(a - b, dim, deg, true).all_zero();
}
bool op_equal(const UTensor2& a, const UTensor2& b, int dim, int deg) {
  return eval_profile(a - b, dim, deg, true).all_zero();
}
bool op_equal(const UTensor3& a, const UTensor3& b, int dim, int deg) {
  return eval_profile(a - b, dim, deg, true).all_zero();
}

namespace {

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (int f : w) {
    if (!s.empty()) s += ".";
    s += "[" + render(field_pool().at(f)) + "]";
  }
  return s;
}

}  // namespace

std::string render(const UPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (const auto& [w, c] : p.terms) {
    if (!s.empty()) s += " + ";
    s += gauss_str(c) + "*" + word_str(w);
  }
  return s;
}

std::string render(const UEnvElement& x) {
  std::string s;
  for (int k = 0; k <= x.order; ++k) {
    if (x.c[k].is_zero()) continue;
    if (!s.empty()) s += " + ";
    if (k > 0) s += "L^" + std::to_string(k) + "*( ";
    s += render(x.c[k]);
    if (k > 0) s += " )";
  }
  return s.empty() ? "0" : s;
}

std::string render(const UTensor2& x) {
  std::string s;
  for (int k = 0; k <= x.order; ++k) {
    if (x.c[k].is_zero()) continue;
    for (const auto& [w, c] : x.c[k].terms) {
      if (!s.empty()) s += " + ";
      if (k > 0) s += "L^" + std::to_string(k) + "*";
      s += gauss_str(c) + "*" + word_str(w.first) + " (x) " +
           word_str(w.second);
    }
  }
  return s.empty() ? "0" : s;
}

}  // namespace star
