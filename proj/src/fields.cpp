#include "starcalc/fields.hpp"

#include <algorithm>

namespace star {

namespace {

// sorts key indices ascending; returns 0 on a repeated index, else the
// permutation sign
int sort_key(std::vector<int>& key) {
  int sign = 1;
  for (size_t i = 1; i < key.size(); ++i)
    for (size_t j = i; j > 0 && key[j - 1] >= key[j]; --j) {
      if (key[j - 1] == key[j]) return 0;
      std::swap(key[j - 1], key[j]);
      sign = -sign;
    }
  return sign;
}

}  // namespace

ExteriorForm wedge(const ExteriorForm& a, const ExteriorForm& b) {
  if (a.is_zero() || b.is_zero())
    return ExteriorForm(a.dim ? a.dim : b.dim, a.degree + b.degree);
  if (a.dim != b.dim) throw std::invalid_argument("dimension mismatch");
  ExteriorForm r(a.dim, a.degree + b.degree);
  if (r.degree > r.dim) return r;
  for (const auto& [ka, fa] : a.comp)
    for (const auto& [kb, fb] : b.comp) {
      std::vector<int> key = ka;
      key.insert(key.end(), kb.begin(), kb.end());
      int sign = sort_key(key);
      if (sign == 0) continue;
      FunctionExpr f = fa * fb;
      if (sign < 0) f = -f;
      r.add_comp(key, f);
    }
  return r;
}

ExteriorForm exterior_d(const ExteriorForm& w) {
  ExteriorForm r(w.dim, w.degree + 1);
  if (w.is_zero() || r.degree > w.dim) return r;
  for (const auto& [k, f] : w.comp)
    for (int mu = 0; mu < w.dim; ++mu) {
      FunctionExpr df = partial(mu, f);
      if (df.is_zero()) continue;
      std::vector<int> key = k;
      key.insert(key.begin(), mu);
      int sign = sort_key(key);
      if (sign == 0) continue;
      if (sign < 0) df = -df;
      r.add_comp(key, df);
    }
  return r;
}

FunctionExpr lie(const VectorField& u, const FunctionExpr& f) {
  return u.apply(f);
}

VectorField lie(const VectorField& u, const VectorField& v) {
  return lie_bracket(u, v);
}

OneForm lie(const VectorField& u, const OneForm& w) {
  if (u.is_zero() || w.is_zero()) return OneForm(w.dim ? w.dim : u.dim);
  if (u.dim != w.dim) throw std::invalid_argument("dimension mismatch");
  OneForm r(w.dim);
  for (int nu = 0; nu < w.dim; ++nu) {
    r.comp[nu] = u.apply(w.comp[nu]);
    for (int mu = 0; mu < w.dim; ++mu)
      r.comp[nu] += w.comp[mu] * partial(nu, u.comp[mu]);
  }
  return r;
}

ExteriorForm lie(const VectorField& u, const ExteriorForm& w) {
  if (u.is_zero() || w.is_zero()) return ExteriorForm(w.dim, w.degree);
  if (u.dim != w.dim) throw std::invalid_argument("dimension mismatch");
  ExteriorForm r(w.dim, w.degree);
  for (const auto& [k, f] : w.comp) {
    r.add_comp(k, u.apply(f));
    for (size_t j = 0; j < k.size(); ++j) {
      // index k[j] came from w_{.. rho ..}: contributes d_{nu}(u^rho) with
      // nu placed at slot j
      int rho = k[j];
      for (int nu = 0; nu < w.dim; ++nu) {
        FunctionExpr c = partial(nu, u.comp[rho]);
        if (c.is_zero()) continue;
        std::vector<int> key = k;
        key[j] = nu;
        int sign = sort_key(key);
        if (sign == 0) continue;
        FunctionExpr g = f * c;
        if (sign < 0) g = -g;
        r.add_comp(key, g);
      }
    }
  }
  return r;
}

TensorField tensor_product(const TensorField& a, const TensorField& b) {
  std::vector<Slot> sig = a.sig;
  sig.insert(sig.end(), b.sig.begin(), b.sig.end());
  TensorField r(a.dim ? a.dim : b.dim, sig);
  if (a.is_zero() || b.is_zero()) return r;
  if (a.dim != b.dim) throw std::invalid_argument("dimension mismatch");
  for (const auto& [ka, fa] : a.comp)
    for (const auto& [kb, fb] : b.comp) {
      std::vector<int> key = ka;
      key.insert(key.end(), kb.begin(), kb.end());
      r.add_comp(key, fa * fb);
    }
  return r;
}

TensorField lie(const VectorField& u, const TensorField& t) {
  TensorField r(t.dim, t.sig);
  if (u.is_zero() || t.is_zero()) return r;
  if (u.dim != t.dim) throw std::invalid_argument("dimension mismatch");
  for (const auto& [k, f] : t.comp) {
    r.add_comp(k, u.apply(f));
    for (size_t j = 0; j < k.size(); ++j) {
      int src = k[j];
      for (int idx = 0; idx < t.dim; ++idx) {
        FunctionExpr c;
        if (t.sig[j] == Slot::Vec) {
          // (L_u T)^mu gets -d_rho(u^mu) T^rho: src = rho, idx = mu
          c = -partial(src, u.comp[idx]) * f;
        } else {
          // (L_u T)_nu gets +d_nu(u^rho) T_rho: src = rho, idx = nu
          c = partial(idx, u.comp[src]) * f;
        }
        if (c.is_zero()) continue;
        std::vector<int> key = k;
        key[j] = idx;
        r.add_comp(key, c);
      }
    }
  }
  return r;
}

FunctionExpr pair_full(const TensorField& contra, const TensorField& cova) {
  if (contra.rank() != cova.rank())
    throw std::invalid_argument("rank mismatch");
  for (auto s : contra.sig)
    if (s != Slot::Vec) throw std::invalid_argument("rank mismatch");
  for (auto s : cova.sig)
    if (s != Slot::Form) throw std::invalid_argument("rank mismatch");
  FunctionExpr r(contra.dim ? contra.dim : cova.dim);
  if (contra.is_zero() || cova.is_zero()) return r;
  if (contra.dim != cova.dim)
    throw std::invalid_argument("dimension mismatch");
  // innermost-first: slot r-1-t of the left contracts slot t of the right
  for (const auto& [k, f] : contra.comp) {
    std::vector<int> rk(k.rbegin(), k.rend());
    auto it = cova.comp.find(rk);
    if (it != cova.comp.end()) r += f * it->second;
  }
  return r;
}

TensorField pair_last(const TensorField& t, const OneForm& w) {
  if (t.rank() == 0 || t.sig.back() != Slot::Vec)
    throw std::invalid_argument("rank mismatch");
  TensorField r(t.dim ? t.dim : w.dim,
                std::vector<Slot>(t.sig.begin(), t.sig.end() - 1));
  if (t.is_zero() || w.is_zero()) return r;
  if (t.dim != w.dim) throw std::invalid_argument("dimension mismatch");
  for (const auto& [k, f] : t.comp) {
    int z = k.back();
    if (w.comp[z].is_zero()) continue;
    r.add_comp(std::vector<int>(k.begin(), k.end() - 1), f * w.comp[z]);
  }
  return r;
}

std::string render(const VectorField& v,
                   const std::vector<std::string>& names) {
  if (v.is_zero()) return "0";
  std::string s;
  for (int i = 0; i < v.dim; ++i) {
    if (v.comp[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + render(v.comp[i], names) + ")*d_" +
         coord_name(i, v.dim, names);
  }
  return s;
}

std::string render(const OneForm& w, const std::vector<std::string>& names) {
  if (w.is_zero()) return "0";
  std::string s;
  for (int i = 0; i < w.dim; ++i) {
    if (w.comp[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + render(w.comp[i], names) + ")*d" +
         coord_name(i, w.dim, names);
  }
  return s;
}

std::string render(const ExteriorForm& w,
                   const std::vector<std::string>& names) {
  if (w.is_zero()) return "0";
  std::string s;
  for (const auto& [k, f] : w.comp) {
    if (!s.empty()) s += " + ";
    s += "(" + render(f, names) + ")";
    for (int i : k) s += "*d" + coord_name(i, w.dim, names);
  }
  return s;
}

}  // namespace star
