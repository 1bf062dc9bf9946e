#pragma once

#include <string>
#include <vector>

#include "starcalc/uenv.hpp"

namespace star {

enum class TwistFamily { Moyal, Jordanian, ExtJordanian };

std::string family_name(TwistFamily f);

// A twist datum. Moyal: F = exp(-(i/2) lambda theta^{mu nu} t_mu (x) t_nu)
// with commuting generators t_mu. Jordanian: F = exp((1/2) H (x) ln(1 +
// lambda E)) with [H,E] = 2E. Extended Jordanian multiplies in
// exp(lambda A (x) B (1 + lambda E)^{-1}) with the full six-relation
// algebra, alpha + beta = 2.
struct TwistSpec {
  TwistFamily family = TwistFamily::Moyal;
  int dim = 0;
  std::vector<std::vector<Rat>> theta;  // Moyal
  std::vector<VectorField> fields;      // Moyal generators t_mu
  VectorField H, E, A, B;               // Jordanian / extended Jordanian
  Rat alpha{0}, beta{2};                // extended Jordanian weights

  static TwistSpec moyal(int dim, std::vector<std::vector<Rat>> theta,
                         std::vector<VectorField> fields = {});
  static TwistSpec identity(int dim);  // Moyal with theta = 0
  static TwistSpec jordanian(VectorField h, VectorField e);
  static TwistSpec ext_jordanian(VectorField h, VectorField e, VectorField a,
                                 VectorField b, Rat alpha, Rat beta);
  // smallest polynomial realization on R^dim (dim >= 2):
  // H = -2 x1 d1, E = d1, A = d2, B = x2 d1, alpha = 0, beta = 2
  static TwistSpec jordanian_default(int dim = 2);
  static TwistSpec ext_jordanian_default(int dim = 2);

  // verifies the defining bracket relations; throws on violation
  void validate() const;
};

// Order-by-order twist data, all truncated at `order`:
// F Finv = 1 (x) 1 and R = F21 Finv.
struct TwistExpansion {
  int order = 0;
  int dim = 0;
  TwistFamily family = TwistFamily::Moyal;
  UTensor2 F, Finv, F21, R, Rinv;
};

TwistExpansion expand_twist(const TwistSpec& spec, int order);

struct ResidualReport {
  std::vector<long> per_order;
  bool pass() const {
    for (long n : per_order)
      if (n) return false;
    return true;
  }
};

// F12 (Delta (x) id)F - F23 (id (x) Delta)F tested as the zero operator on
// monomial triples up to degree deg
ResidualReport check_cocycle(const TwistExpansion& tw, int deg);
// (eps (x) id)F = 1 = (id (x) eps)F
ResidualReport check_counit(const TwistExpansion& tw);
// inverse form ((Delta (x) id)Finv) Finv_12 = ((id (x) Delta)Finv) Finv_23
ResidualReport check_inverse_cocycle(const TwistExpansion& tw, int deg);

// xi * zeta = fbar^a(xi) fbar_a(zeta), bar factors acting by the adjoint
UEnvElement uenv_star(const UEnvElement& xi, const UEnvElement& zeta,
                      const TwistExpansion& tw);

// D(xi) = fbar^a(xi) fbar_a, the inverse of X
UEnvElement dmap(const UEnvElement& xi, const TwistExpansion& tw);
// X_xi = fbar^a xi f^b S(f_b) S^{-1}(fbar_a)
UEnvElement xmap(const UEnvElement& xi, const TwistExpansion& tw);

// twisted Hopf structure: Delta^F(xi) = F Delta(xi) Finv and
// S^F(xi) = chi S(xi) chi^{-1} with chi = f^a S(f_a)
UTensor2 twisted_coproduct(const UEnvElement& xi, const TwistExpansion& tw);
UEnvElement twisted_antipode(const UEnvElement& xi, const TwistExpansion& tw);
UEnvElement chi_element(const TwistExpansion& tw);
UEnvElement chi_inverse(const TwistExpansion& tw);

}  // namespace star
