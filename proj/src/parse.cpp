#include "starcalc/parse.hpp"

#include <cctype>
#include <stdexcept>

namespace star {

std::vector<std::string> default_names(int dim) {
  std::vector<std::string> names;
  for (int i = 0; i < dim; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

std::vector<std::string> phase_space_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i + 1));
  return names;
}

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;
  int dim;
  const std::vector<std::string>& names;

  Parser(const std::string& text, int d, const std::vector<std::string>& nm)
      : s(text), dim(d), names(nm) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("parse error at offset " +
                                std::to_string(pos) + ": " + why + " in '" +
                                s + "'");
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  long integer() {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit((unsigned char)s[start])))
      fail("expected integer");
    return std::stol(s.substr(start, pos - start));
  }

  FunctionExpr expr() {
    FunctionExpr r = term();
    while (true) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        break;
    }
    return r;
  }

  FunctionExpr term() {
    FunctionExpr r = factor();
    while (eat('*')) r *= factor();
    return r;
  }

  FunctionExpr factor() {
    skip_ws();
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    if (eat('(')) {
      FunctionExpr r = expr();
      if (!eat(')')) fail("expected ')'");
      return power_suffix(r);
    }
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (std::isdigit((unsigned char)c)) {
      long num = integer();
      Rat q(num);
      if (eat('/')) {
        long den = integer();
        if (den == 0) fail("division by zero");
        q = Rat(num, den);
        q.canonicalize();
      }
      FunctionExpr f = FunctionExpr::constant(dim, GaussRat(q));
      if (peek() == 'i' && !identifier_ahead()) {
        ++pos;
        f = FunctionExpr::constant(dim, GaussRat(Rat(0), q));
      }
      return power_suffix(f);
    }
    if (c == 'E' && pos + 1 < s.size() && s[pos + 1] == '[') {
      pos += 2;
      std::vector<int> k;
      while (true) {
        k.push_back((int)integer());
        if (eat(']')) break;
        if (!eat(',')) fail("expected ',' or ']'");
      }
      if ((int)k.size() != dim) fail("wave-vector length != dimension");
      return FunctionExpr::plane_wave(dim, k);
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      std::string id = identifier();
      if (id == "i")
        return power_suffix(
            FunctionExpr::constant(dim, GaussRat::unit_i()));
      for (int v = 0; v < dim && v < (int)names.size(); ++v)
        if (names[v] == id)
          return power_suffix(FunctionExpr::coordinate(dim, v));
      fail("unknown symbol '" + id + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  bool identifier_ahead() {
    // true if the 'i' at pos starts a longer identifier
    return pos + 1 < s.size() &&
           (std::isalnum((unsigned char)s[pos + 1]) || s[pos + 1] == '_');
  }

  std::string identifier() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
      ++pos;
    return s.substr(start, pos - start);
  }

  FunctionExpr power_suffix(FunctionExpr base) {
    while (eat('^')) {
      long e = integer();
      if (e < 0) fail("negative exponent");
      FunctionExpr r = FunctionExpr::one(dim);
      for (long t = 0; t < e; ++t) r *= base;
      base = r;
    }
    return base;
  }
};

}  // namespace

FunctionExpr parse_function(const std::string& text, int dim,
                            const std::vector<std::string>& names) {
  const std::vector<std::string> nm =
      names.empty() ? default_names(dim) : names;
  Parser p(text, dim, nm);
  FunctionExpr r = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return r;
}

VectorField parse_vector_field(const std::vector<std::string>& comps, int dim,
                               const std::vector<std::string>& names) {
  if ((int)comps.size() != dim)
    throw std::invalid_argument("component count != dimension");
  VectorField v(dim);
  for (int i = 0; i < dim; ++i) v.comp[i] = parse_function(comps[i], dim, names);
  return v;
}

}  // namespace star
