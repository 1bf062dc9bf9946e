#include "starcalc/function_expr.hpp"

namespace star {

std::string coord_name(int i, int dim,
                       const std::vector<std::string>& names) {
  if (i < (int)names.size()) return names[i];
  (void)dim;
  return "x" + std::to_string(i + 1);
}

namespace {

std::string mono_str(const Mono& m, const std::vector<std::string>& names) {
  std::string s;
  for (size_t i = 0; i < m.alpha.size(); ++i) {
    if (m.alpha[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += coord_name((int)i, (int)m.alpha.size(), names);
    if (m.alpha[i] != 1) s += "^" + std::to_string(m.alpha[i]);
  }
  if (!m.wave_free()) {
    if (!s.empty()) s += "*";
    s += "E[";
    for (size_t i = 0; i < m.wave.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(m.wave[i]);
    }
    s += "]";
  }
  return s;
}

// sign used for "+"/"-" joining: real part decides, else imaginary part
bool display_negative(const GaussRat& c) {
  if (sgn(c.re) != 0) return sgn(c.re) < 0;
  return sgn(c.im) < 0;
}

}  // namespace

std::string render(const FunctionExpr& f,
                   const std::vector<std::string>& names) {
  if (f.is_zero()) return "0";
  std::string s;
  for (const auto& [m, c] : f.terms) {
    GaussRat cc = c;
    if (s.empty()) {
      if (display_negative(cc)) {
        s += "-";
        cc = -cc;
      }
    } else {
      if (display_negative(cc)) {
        s += " - ";
        cc = -cc;
      } else {
        s += " + ";
      }
    }
    std::string ms = mono_str(m, names);
    std::string cs = gauss_str(cc);
    if (ms.empty())
      s += cs;
    else if (cs == "1")
      s += ms;
    else
      s += cs + "*" + ms;
  }
  return s;
}

}  // namespace star
