#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "starcalc/corpus.hpp"
#include "starcalc/parse.hpp"
#include "starcalc/poisson.hpp"

using namespace star;

namespace {

const int N = 2;            // pairs
const int DIM = 2 * N;      // x1 x2 p1 p2

FunctionExpr ps(const std::string& s) {
  return parse_function(s, DIM, phase_space_names(N));
}

PhaseSpaceContext canonical_ctx() {
  std::vector<std::vector<Rat>> th(N, std::vector<Rat>(N, Rat(0)));
  th[0][1] = Rat(1);
  th[1][0] = Rat(-1);
  return PhaseSpaceContext(N, th, 4);
}

}  // namespace

TEST_CASE("canonical poisson bracket") {
  PoissonBivector lam = PoissonBivector::canonical(N);
  CHECK(poisson(ps("x1"), ps("p1"), lam) == ps("1"));
  CHECK(poisson(ps("x1"), ps("p2"), lam).is_zero());
  CHECK(poisson(ps("x1"), ps("x1"), lam).is_zero());
  // direct partial-derivative expansion as the oracle
  FunctionExpr f = ps("x1^2*p1");
  FunctionExpr g = ps("p1^2");
  FunctionExpr oracle = partial(0, f) * partial(N + 0, g) -
                        partial(N + 0, f) * partial(0, g) +
                        partial(1, f) * partial(N + 1, g) -
                        partial(N + 1, f) * partial(1, g);
  CHECK(poisson(f, g, lam) == oracle);
  CHECK(oracle == ps("4*x1*p1^2"));
}

TEST_CASE("poisson axioms on a corpus") {
  PoissonBivector lam = PoissonBivector::canonical(N);
  Rng rng(50);
  for (int t = 0; t < 25; ++t) {
    FunctionExpr f = random_polynomial(rng, DIM, 3);
    FunctionExpr g = random_polynomial(rng, DIM, 3);
    FunctionExpr h = random_polynomial(rng, DIM, 3);
    CHECK((poisson(f, g, lam) + poisson(g, f, lam)).is_zero());
    FunctionExpr jac = poisson(f, poisson(g, h, lam), lam) +
                       poisson(h, poisson(f, g, lam), lam) +
                       poisson(g, poisson(h, f, lam), lam);
    CHECK(jac.is_zero());
    CHECK(poisson(f, g * h, lam) ==
          poisson(f, g, lam) * h + g * poisson(f, h, lam));
  }
}

TEST_CASE("hamiltonian vector fields") {
  PoissonBivector lam = PoissonBivector::canonical(N);
  // X_{p1} = -d/dx1 and X_{x1} = +d/dp1 with the bracket conventions
  // {f,g} = df/dx^l dg/dp_l - df/dp_l dg/dx^l
  VectorField xp1 = ham_vf(ps("p1"), lam);
  CHECK(xp1.comp[0] == ps("-1"));
  for (int i = 1; i < DIM; ++i) CHECK(xp1.comp[i].is_zero());
  VectorField xx1 = ham_vf(ps("x1"), lam);
  CHECK(xx1.comp[N] == ps("1"));
  CHECK(ham_vf(ps("7"), lam).is_zero());

  Rng rng(51);
  for (int t = 0; t < 20; ++t) {
    FunctionExpr f = random_polynomial(rng, DIM, 3);
    FunctionExpr g = random_polynomial(rng, DIM, 3);
    // bracket route equals the pairing route
    CHECK(ham_vf(f, lam).apply(g) == poisson(f, g, lam));
    // classical morphism X_{{f,g}} = [X_f, X_g]
    CHECK(ham_vf(poisson(f, g, lam), lam) ==
          lie_bracket(ham_vf(f, lam), ham_vf(g, lam)));
  }
}

TEST_CASE("compatibility of twist and bivector") {
  PhaseSpaceContext ctx = canonical_ctx();
  CHECK(ctx.compatible());
  // momentum-translation generators Lie-derive the bivector to zero
  for (const auto& g : ctx.generators)
    CHECK(lie(g, ctx.lambda.comp).is_zero());
  // x1 d/dp1 is the Hamiltonian field of -x1^2/2, so it does preserve the
  // bivector; a dilation field is genuinely non-invariant
  VectorField ham(DIM);
  ham.comp[N] = ps("x1");  // x1 d/dp1
  CHECK(compat_check({ham}, ctx.lambda));
  CHECK(ham == ham_vf(ps("1/2*x1^2"), ctx.lambda));
  VectorField bad(DIM);
  bad.comp[0] = ps("x1");  // x1 d/dx1
  CHECK(!compat_check({bad}, ctx.lambda));
  std::vector<std::vector<Rat>> th(N, std::vector<Rat>(N, Rat(0)));
  th[0][1] = Rat(1);
  th[1][0] = Rat(-1);
  CHECK_THROWS_AS(PhaseSpaceContext(N, th, 4, {bad, bad}),
                  std::invalid_argument);
}

TEST_CASE("star product with absorbed theta") {
  PhaseSpaceContext ctx = canonical_ctx();
  // x1 * x2 - x2 * x1 = i theta^{12}
  FunctionExpr comm = star_fn_absorbed(ps("x1"), ps("x2"), ctx) -
                      star_fn_absorbed(ps("x2"), ps("x1"), ctx);
  CHECK(comm == ps("i"));
  // polynomial star products terminate and are associative
  Rng rng(52);
  for (int t = 0; t < 15; ++t) {
    FunctionExpr f = random_polynomial(rng, DIM, 3);
    FunctionExpr g = random_polynomial(rng, DIM, 3);
    FunctionExpr h = random_polynomial(rng, DIM, 3);
    CHECK(star_fn_absorbed(star_fn_absorbed(f, g, ctx), h, ctx) ==
          star_fn_absorbed(f, star_fn_absorbed(g, h, ctx), ctx));
  }
}

TEST_CASE("star poisson bracket") {
  PhaseSpaceContext ctx = canonical_ctx();
  CHECK(star_poisson(ps("x1"), ps("p1"), ctx) == ps("1"));
  // theta = 0 degenerates to the classical bracket
  std::vector<std::vector<Rat>> z(N, std::vector<Rat>(N, Rat(0)));
  PhaseSpaceContext ctx0(N, z, 4);
  Rng rng(53);
  for (int t = 0; t < 15; ++t) {
    FunctionExpr f = random_polynomial(rng, DIM, 3);
    FunctionExpr g = random_polynomial(rng, DIM, 3);
    CHECK(star_poisson(f, g, ctx0) == poisson(f, g, ctx0.lambda));
  }
  // the deformation is visible on nontrivial observables
  FunctionExpr f = ps("x1*x2*p1");
  FunctionExpr g = ps("x1*x2*p2");
  CHECK(star_poisson(f, g, ctx) != poisson(f, g, ctx.lambda));
  // ... and also with plane waves in x with polynomial p-dependence
  FunctionExpr fw = ps("E[1,0,0,0]*p2");
  FunctionExpr gw = ps("E[0,1,0,0]*p1");
  CHECK(!poisson(fw, gw, ctx.lambda).is_zero());
  CHECK(star_poisson(fw, gw, ctx) != poisson(fw, gw, ctx.lambda));
}

TEST_CASE("explicit-form route equivalence") {
  PhaseSpaceContext ctx = canonical_ctx();
  Rng rng(54);
  for (int t = 0; t < 20; ++t) {
    FunctionExpr f = random_polynomial(rng, DIM, 3);
    FunctionExpr g = random_polynomial(rng, DIM, 3);
    CHECK(star_poisson(f, g, ctx) == star_poisson_explicit(f, g, ctx));
    CHECK(star_poisson(f, g, ctx) ==
          star_lie_absorbed(ham_vf(f, ctx.lambda), g, ctx));
  }
}

TEST_CASE("star poisson laws") {
  PhaseSpaceContext ctx = canonical_ctx();
  Rng rng(55);
  for (int t = 0; t < 10; ++t) {
    FunctionExpr f = random_polynomial(rng, DIM, 2);
    FunctionExpr g = random_polynomial(rng, DIM, 2);
    FunctionExpr h = random_polynomial(rng, DIM, 2);
    // star-antisymmetry
    FunctionExpr anti = star_poisson(f, g, ctx);
    for (const auto& [c, gg, ff] : absorbed_pairs(ctx, rinv_coeff(), g, f))
      anti += c * star_poisson(gg, ff, ctx);
    CHECK(anti.is_zero());
    // star-Leibniz
    FunctionExpr leib = star_poisson(f, star_fn_absorbed(g, h, ctx), ctx);
    leib -= star_fn_absorbed(star_poisson(f, g, ctx), h, ctx);
    for (const auto& [c, gg, ff] : absorbed_pairs(ctx, rinv_coeff(), g, f))
      leib -= c * star_fn_absorbed(gg, star_poisson(ff, h, ctx), ctx);
    CHECK(leib.is_zero());
    // star-Jacobi
    FunctionExpr jac = star_poisson(f, star_poisson(g, h, ctx), ctx);
    jac -= star_poisson(star_poisson(f, g, ctx), h, ctx);
    for (const auto& [c, gg, ff] : absorbed_pairs(ctx, rinv_coeff(), g, f))
      jac -= c * star_poisson(gg, star_poisson(ff, h, ctx), ctx);
    CHECK(jac.is_zero());
  }
}

TEST_CASE("hamiltonian vector fields close under the star bracket") {
  PhaseSpaceContext ctx = canonical_ctx();
  CHECK(morphism_check(ps("x1"), ps("p1"), ctx).is_zero());
  Rng rng(56);
  for (int t = 0; t < 12; ++t) {
    FunctionExpr f = random_polynomial(rng, DIM, 3);
    FunctionExpr g = random_polynomial(rng, DIM, 3);
    CHECK(morphism_check(f, g, ctx).is_zero());
  }
}

TEST_CASE("time evolution and constants of motion") {
  PhaseSpaceContext ctx = canonical_ctx();
  FunctionExpr H = ps("p1^2+p2^2");
  // xdot = -{H, x}_star = 2 p1
  CHECK(time_evolution(H, ps("x1"), ctx) == ps("2*p1"));
  // translation-invariant H: star evolution equals the classical one
  Rng rng(57);
  for (int t = 0; t < 10; ++t) {
    FunctionExpr f = random_polynomial(rng, DIM, 3);
    CHECK(time_evolution(H, f, ctx) == -poisson(H, f, ctx.lambda));
  }
  // constants close under the star bracket
  std::vector<FunctionExpr> qs = {ps("p1"), ps("p2"),
                                  ps("x1*p2-x2*p1")};
  ConstantsReport rep = constants_check(H, qs, ctx);
  CHECK(rep.pass());
  // for twist-invariant H the star bracket agrees with the plain one
  for (const auto& q : qs) {
    CHECK(star_poisson(q, H, ctx) == poisson(q, H, ctx.lambda));
    CHECK(star_poisson(q, H, ctx).is_zero());
  }
}
