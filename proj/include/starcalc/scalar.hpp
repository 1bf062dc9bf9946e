#pragma once

#include <algorithm>
#include <cassert>
#include <string>
#include <utility>
#include <vector>

#include "starcalc/rational.hpp"

namespace star {

// Exact unit phase exp(i * sum_{i<j} r_ij * th(i,j)) with formal symbols
// th(i,j) and rational exponents r_ij. Exponents add under multiplication;
// the all-zero exponent vector is the identity phase.
struct Phase {
  // sorted by key, no zero exponents
  std::vector<std::pair<std::pair<int, int>, Rat>> exps;

  bool is_identity() const { return exps.empty(); }

  void add_exp(int i, int j, const Rat& r) {
    assert(i < j);
    if (sgn(r) == 0) return;
    auto key = std::make_pair(i, j);
    auto it = std::lower_bound(
        exps.begin(), exps.end(), key,
        [](const auto& e, const auto& k) { return e.first < k; });
    if (it != exps.end() && it->first == key) {
      it->second += r;
      if (sgn(it->second) == 0) exps.erase(it);
    } else {
      exps.insert(it, {key, r});
    }
  }

  friend Phase operator*(const Phase& a, const Phase& b) {
    Phase r = a;
    for (const auto& [k, e] : b.exps) r.add_exp(k.first, k.second, e);
    return r;
  }

  Phase inverse() const {
    Phase r;
    for (const auto& [k, e] : exps) r.exps.push_back({k, -e});
    return r;
  }

  int compare(const Phase& o) const {
    if (exps.size() != o.exps.size())
      return exps.size() < o.exps.size() ? -1 : 1;
    for (size_t t = 0; t < exps.size(); ++t) {
      if (exps[t].first != o.exps[t].first)
        return exps[t].first < o.exps[t].first ? -1 : 1;
      int c = cmp(exps[t].second, o.exps[t].second);
      if (c != 0) return c;
    }
    return 0;
  }
  friend bool operator==(const Phase& a, const Phase& b) {
    return a.compare(b) == 0;
  }
  friend bool operator<(const Phase& a, const Phase& b) {
    return a.compare(b) < 0;
  }

  std::string str() const {
    if (exps.empty()) return "1";
    std::string s = "exp[i(";
    bool first = true;
    for (const auto& [k, e] : exps) {
      std::string c = rat_str(e);
      if (!first && sgn(e) > 0) s += "+";
      if (c == "1")
        ;  // bare symbol
      else if (c == "-1")
        s += "-";
      else
        s += c + "*";
      s += "th" + std::to_string(k.first) + std::to_string(k.second);
      first = false;
    }
    return s + ")]";
  }
};

// One exact scalar atom: value * hbar^n * phase. The formal symbol hbar
// carries an integer Laurent power; it is never assigned a number.
struct Scalar {
  GaussRat value;
  int hbar_power = 0;
  Phase phase;

  Scalar() = default;
  Scalar(GaussRat v) : value(std::move(v)) {}  // NOLINT
  Scalar(GaussRat v, int h, Phase p = {})
      : value(std::move(v)), hbar_power(h), phase(std::move(p)) {}

  static Scalar one() { return Scalar(GaussRat(1)); }
  static Scalar unit_i() { return Scalar(GaussRat::unit_i()); }

  bool is_zero() const { return value.is_zero(); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return Scalar(a.value * b.value, a.hbar_power + b.hbar_power,
                  a.phase * b.phase);
  }
  Scalar operator-() const { return Scalar(-value, hbar_power, phase); }

  // Addition is defined within one symbol class (same hbar power and
  // phase); containers key their terms on (hbar, phase) so this is the
  // only case that reaches here.
  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    assert(a.hbar_power == b.hbar_power && a.phase == b.phase);
    return Scalar(a.value + b.value, a.hbar_power, a.phase);
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.value == b.value && a.hbar_power == b.hbar_power &&
           a.phase == b.phase;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) {
    return !(a == b);
  }

  std::string str() const {
    std::string s = gauss_str(value);
    if (is_zero()) return s;
    if (hbar_power != 0) s += "*hbar^" + std::to_string(hbar_power);
    if (!phase.is_identity()) s += "*" + phase.str();
    return s;
  }
};

}  // namespace star
