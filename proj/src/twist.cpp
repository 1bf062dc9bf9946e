#include "starcalc/twist.hpp"

#include <stdexcept>

namespace star {

std::string family_name(TwistFamily f) {
  switch (f) {
    case TwistFamily::Moyal:
      return "moyal";
    case TwistFamily::Jordanian:
      return "jordanian";
    case TwistFamily::ExtJordanian:
      return "ext_jordanian";
  }
  return "?";
}

TwistSpec TwistSpec::moyal(int dim, std::vector<std::vector<Rat>> theta,
                           std::vector<VectorField> fields) {
  TwistSpec s;
  s.family = TwistFamily::Moyal;
  s.dim = dim;
  if (theta.empty()) theta.assign(dim, std::vector<Rat>(dim, Rat(0)));
  s.theta = std::move(theta);
  if (fields.empty())
    for (int mu = 0; mu < dim; ++mu) fields.push_back(VectorField::frame(dim, mu));
  s.fields = std::move(fields);
  return s;
}

TwistSpec TwistSpec::identity(int dim) { return moyal(dim, {}); }

TwistSpec TwistSpec::jordanian(VectorField h, VectorField e) {
  TwistSpec s;
  s.family = TwistFamily::Jordanian;
  s.dim = h.dim;
  s.H = std::move(h);
  s.E = std::move(e);
  return s;
}

TwistSpec TwistSpec::ext_jordanian(VectorField h, VectorField e, VectorField a,
                                   VectorField b, Rat alpha, Rat beta) {
  TwistSpec s;
  s.family = TwistFamily::ExtJordanian;
  s.dim = h.dim;
  s.H = std::move(h);
  s.E = std::move(e);
  s.A = std::move(a);
  s.B = std::move(b);
  s.alpha = std::move(alpha);
  s.beta = std::move(beta);
  return s;
}

namespace {

VectorField scaled_coord_field(int dim, const GaussRat& c, int coord,
                               int dir) {
  VectorField v(dim);
  v.comp[dir] = c * FunctionExpr::coordinate(dim, coord);
  return v;
}

}  // namespace

TwistSpec TwistSpec::jordanian_default(int dim) {
  if (dim < 2) throw std::invalid_argument("jordanian realization needs dim >= 2");
  VectorField h = scaled_coord_field(dim, GaussRat(-2), 0, 0);
  return jordanian(h, VectorField::frame(dim, 0));
}

TwistSpec TwistSpec::ext_jordanian_default(int dim) {
  if (dim < 2) throw std::invalid_argument("jordanian realization needs dim >= 2");
  VectorField h = scaled_coord_field(dim, GaussRat(-2), 0, 0);
  VectorField b = scaled_coord_field(dim, GaussRat(1), 1, 0);
  return ext_jordanian(h, VectorField::frame(dim, 0), VectorField::frame(dim, 1),
                       b, Rat(0), Rat(2));
}

void TwistSpec::validate() const {
  auto expect = [](const VectorField& got, const VectorField& want,
                   const std::string& what) {
    if (!(got == want))
      throw std::invalid_argument("twist spec violates " + what);
  };
  switch (family) {
    case TwistFamily::Moyal: {
      if ((int)theta.size() != dim)
        throw std::invalid_argument("theta must be dim x dim");
      for (int i = 0; i < dim; ++i) {
        if ((int)theta[i].size() != dim)
          throw std::invalid_argument("theta must be dim x dim");
        for (int j = 0; j < dim; ++j)
          if (cmp(theta[i][j], -theta[j][i]) != 0)
            throw std::invalid_argument("theta must be antisymmetric");
      }
      if ((int)fields.size() != dim)
        throw std::invalid_argument("moyal needs dim generators");
      for (size_t i = 0; i < fields.size(); ++i)
        for (size_t j = i + 1; j < fields.size(); ++j)
          expect(lie_bracket(fields[i], fields[j]), VectorField(dim),
                 "[t_mu, t_nu] = 0");
      break;
    }
    case TwistFamily::Jordanian:
      expect(lie_bracket(H, E), GaussRat(2) * E, "[H,E] = 2E");
      break;
    case TwistFamily::ExtJordanian: {
      if (cmp(alpha + beta, Rat(2)) != 0)
        throw std::invalid_argument("twist spec violates alpha + beta = 2");
      expect(lie_bracket(H, E), GaussRat(2) * E, "[H,E] = 2E");
      expect(lie_bracket(H, A), GaussRat(alpha) * A, "[H,A] = alpha A");
      expect(lie_bracket(H, B), GaussRat(beta) * B, "[H,B] = beta B");
      expect(lie_bracket(A, B), E, "[A,B] = E");
      expect(lie_bracket(E, A), VectorField(dim), "[E,A] = 0");
      expect(lie_bracket(E, B), VectorField(dim), "[E,B] = 0");
      break;
    }
  }
}

namespace {

Word word_pow(int id, int n) { return Word((size_t)n, id); }

}  // namespace

TwistExpansion expand_twist(const TwistSpec& spec, int order) {
  spec.validate();
  TwistExpansion tw;
  tw.order = order;
  tw.dim = spec.dim;
  tw.family = spec.family;
  const UPoly2 unit2 = UPoly2::unit();

  switch (spec.family) {
    case TwistFamily::Moyal: {
      std::vector<int> ids;
      for (const auto& t : spec.fields) ids.push_back(field_pool().intern(t));
      UTensor2 arg(order);
      GaussRat half_i = GaussRat(Rat(0), Rat(-1, 2));  // -i/2
      if (order >= 1)
        for (int mu = 0; mu < spec.dim; ++mu)
          for (int nu = 0; nu < spec.dim; ++nu) {
            if (sgn(spec.theta[mu][nu]) == 0) continue;
            arg.c[1].add_term({{ids[mu]}, {ids[nu]}},
                              half_i * GaussRat(spec.theta[mu][nu]));
          }
      tw.F = exp_series(arg, unit2);
      break;
    }
    case TwistFamily::Jordanian:
    case TwistFamily::ExtJordanian: {
      int hid = field_pool().intern(spec.H);
      int eid = field_pool().intern(spec.E);
      // (1/2) H (x) ln(1 + lambda E)
      UTensor2 arg1(order);
      Rat sign(1);
      for (int m = 1; m <= order; ++m) {
        arg1.c[m].add_term({{hid}, word_pow(eid, m)},
                           GaussRat(sign / (2 * m)));
        sign = -sign;
      }
      tw.F = exp_series(arg1, unit2);
      if (spec.family == TwistFamily::ExtJordanian) {
        int aid = field_pool().intern(spec.A);
        int bid = field_pool().intern(spec.B);
        // lambda A (x) B (1 + lambda E)^{-1}
        UTensor2 arg2(order);
        Rat s2(1);
        for (int m = 0; m + 1 <= order; ++m) {
          Word w2{bid};
          Word ew = word_pow(eid, m);
          w2.insert(w2.end(), ew.begin(), ew.end());
          arg2.c[m + 1].add_term({{aid}, w2}, GaussRat(s2));
          s2 = -s2;
        }
        tw.F = tw.F * exp_series(arg2, unit2);
        tw.F = tw.F.truncated(order);
      }
      break;
    }
  }

  tw.Finv = invert_series(tw.F, unit2);
  tw.F21 = tw.F.map([](const UPoly2& p) { return p.flip(); });
  tw.R = (tw.F21 * tw.Finv).truncated(order);
  tw.Rinv =
      (tw.F * tw.Finv.map([](const UPoly2& p) { return p.flip(); }))
          .truncated(order);
  return tw;
}

ResidualReport check_cocycle(const TwistExpansion& tw, int deg) {
  UTensor3 lhs = tw.F.map(emb12) * tw.F.map(cop_slot1);
  UTensor3 rhs = tw.F.map(emb23) * tw.F.map(cop_slot2);
  auto pr = eval_profile(lhs - rhs, tw.dim, deg);
  return {pr.per_order};
}

ResidualReport check_inverse_cocycle(const TwistExpansion& tw, int deg) {
  UTensor3 lhs = tw.Finv.map(cop_slot1) * tw.Finv.map(emb12);
  UTensor3 rhs = tw.Finv.map(cop_slot2) * tw.Finv.map(emb23);
  auto pr = eval_profile(lhs - rhs, tw.dim, deg);
  return {pr.per_order};
}

ResidualReport check_counit(const TwistExpansion& tw) {
  UEnvElement left = tw.F.map(eps_slot1);
  UEnvElement right = tw.F.map(eps_slot2);
  UEnvElement unit = uenv_unit(tw.order);
  // the word-length cap keeps this complete at any requested degree
  auto p1 = eval_profile(left - unit, tw.dim, 4 * tw.order);
  auto p2 = eval_profile(right - unit, tw.dim, 4 * tw.order);
  ResidualReport r;
  r.per_order.resize(p1.per_order.size());
  for (size_t k = 0; k < r.per_order.size(); ++k)
    r.per_order[k] = p1.per_order[k] + p2.per_order[k];
  return r;
}

UEnvElement uenv_star(const UEnvElement& xi, const UEnvElement& zeta,
                      const TwistExpansion& tw) {
  int n = std::min({tw.order, xi.order, zeta.order});
  UEnvElement r(n);
  for (int m = 0; m <= n; ++m)
    for (const auto& [w, c] : tw.Finv.c[m].terms)
      for (int i = 0; m + i <= n; ++i) {
        if (xi.c[i].is_zero()) continue;
        UPoly a = ad_word(w.first, xi.c[i]);
        if (a.is_zero()) continue;
        for (int j = 0; m + i + j <= n; ++j) {
          if (zeta.c[j].is_zero()) continue;
          UPoly b = ad_word(w.second, zeta.c[j]);
          if (b.is_zero()) continue;
          r.c[m + i + j] += c * (a * b);
        }
      }
  return r;
}

UEnvElement dmap(const UEnvElement& xi, const TwistExpansion& tw) {
  int n = std::min(tw.order, xi.order);
  UEnvElement r(n);
  for (int m = 0; m <= n; ++m)
    for (const auto& [w, c] : tw.Finv.c[m].terms)
      for (int i = 0; m + i <= n; ++i) {
        if (xi.c[i].is_zero()) continue;
        UPoly a = ad_word(w.first, xi.c[i]);
        if (a.is_zero()) continue;
        r.c[m + i] += c * (a * UPoly::word(w.second));
      }
  return r;
}

UEnvElement chi_element(const TwistExpansion& tw) {
  UEnvElement chi(tw.order);
  for (int m = 0; m <= tw.order; ++m)
    for (const auto& [w, c] : tw.F.c[m].terms)
      chi.c[m] += c * (UPoly::word(w.first) * antipode(UPoly::word(w.second)));
  return chi;
}

UEnvElement chi_inverse(const TwistExpansion& tw) {
  // chi^{-1} = S(fbar^a) fbar_a
  UEnvElement inv(tw.order);
  for (int m = 0; m <= tw.order; ++m)
    for (const auto& [w, c] : tw.Finv.c[m].terms)
      inv.c[m] += c * (antipode(UPoly::word(w.first)) * UPoly::word(w.second));
  return inv;
}

UTensor2 twisted_coproduct(const UEnvElement& xi, const TwistExpansion& tw) {
  int n = std::min(tw.order, xi.order);
  UTensor2 d = coproduct(xi).truncated(n);
  return (tw.F.truncated(n) * d * tw.Finv.truncated(n)).truncated(n);
}

UEnvElement twisted_antipode(const UEnvElement& xi, const TwistExpansion& tw) {
  int n = std::min(tw.order, xi.order);
  UEnvElement r =
      (chi_element(tw).truncated(n) * antipode(xi).truncated(n)).truncated(n);
  return (r * chi_inverse(tw).truncated(n)).truncated(n);
}

UEnvElement xmap(const UEnvElement& xi, const TwistExpansion& tw) {
  int n = std::min(tw.order, xi.order);
  // chi = f^b S(f_b)
  UEnvElement chi(n);
  for (int m = 0; m <= n; ++m)
    for (const auto& [w, c] : tw.F.c[m].terms)
      chi.c[m] += c * (UPoly::word(w.first) * antipode(UPoly::word(w.second)));
  UEnvElement r(n);
  for (int m = 0; m <= n; ++m)
    for (const auto& [w, c] : tw.Finv.c[m].terms) {
      UPoly left = UPoly::word(w.first);
      UPoly right = antipode(UPoly::word(w.second));
      for (int i = 0; m + i <= n; ++i) {
        if (xi.c[i].is_zero()) continue;
        for (int k = 0; m + i + k <= n; ++k) {
          if (chi.c[k].is_zero()) continue;
          r.c[m + i + k] += c * (left * xi.c[i] * chi.c[k] * right);
        }
      }
    }
  return r;
}

}  // namespace star
