#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "starcalc/corpus.hpp"
#include "starcalc/parse.hpp"
#include "starcalc/star_ops.hpp"

using namespace star;

namespace {

FunctionExpr fn(const std::string& s) { return parse_function(s, 2); }
VectorField vf2(const std::string& c1, const std::string& c2) {
  return parse_vector_field({c1, c2}, 2);
}

std::vector<std::vector<Rat>> theta2(const Rat& v) {
  std::vector<std::vector<Rat>> th(2, std::vector<Rat>(2, Rat(0)));
  th[0][1] = v;
  th[1][0] = -v;
  return th;
}

// Independent expansion of mu o Finv for the Moyal twist: iterates the
// one-derivative-per-slot levels directly, with none of the word-algebra
// machinery the production path uses.
template <class A, class B, class F>
auto moyal_oracle(const std::vector<std::vector<Rat>>& theta, int dim,
                  int order, const A& a, const B& b, F&& f)
    -> LambdaSeries<decltype(f(a, b))> {
  LambdaSeries<decltype(f(a, b))> out(order);
  std::vector<std::tuple<GaussRat, A, B>> level = {{GaussRat(1), a, b}};
  out.c[0] += f(a, b);
  GaussRat half_i(Rat(0), Rat(1, 2));  // Finv carries +i/2
  for (int m = 1; m <= order; ++m) {
    std::vector<std::tuple<GaussRat, A, B>> next;
    for (const auto& [c, x, y] : level)
      for (int mu = 0; mu < dim; ++mu)
        for (int nu = 0; nu < dim; ++nu) {
          if (sgn(theta[mu][nu]) == 0) continue;
          A xl = lie(VectorField::frame(dim, mu), x);
          if (xl.is_zero()) continue;
          B yn = lie(VectorField::frame(dim, nu), y);
          if (yn.is_zero()) continue;
          next.emplace_back(
              c * half_i * GaussRat(theta[mu][nu]) * GaussRat(Rat(1, m)),
              std::move(xl), std::move(yn));
        }
    for (const auto& [c, x, y] : next) out.c[m] += c * f(x, y);
    level = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("moyal star product on coordinates") {
  StarContext ctx(TwistSpec::moyal(2, theta2(Rat(1, 2))), 3);
  // x1 * x2 = x1 x2 + (i/2) L theta
  FnSeries p = star_fn(fn("x1"), fn("x2"), ctx);
  CHECK(p.c[0] == fn("x1*x2"));
  CHECK(p.c[1] == fn("1/4i"));  // (i/2) * theta with theta = 1/2
  CHECK(p.c[2].is_zero());
  // commutator x1 * x2 - x2 * x1 = i L theta
  FnSeries comm = p - star_fn(fn("x2"), fn("x1"), ctx);
  CHECK(comm.c[0].is_zero());
  CHECK(comm.c[1] == fn("1/2i"));
  CHECK(comm.c[2].is_zero());
  CHECK(comm.c[3].is_zero());
}

TEST_CASE("theta zero degenerates to the pointwise product") {
  StarContext ctx(TwistSpec::identity(2), 3);
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    FunctionExpr f = random_polynomial(rng, 2, 3);
    FunctionExpr g = random_polynomial(rng, 2, 3);
    CHECK(star_fn(f, g, ctx) == lift(f * g, 3));
  }
}

TEST_CASE("production star operations match the direct Moyal expansion") {
  auto th = theta2(Rat(2, 3));
  StarContext ctx(TwistSpec::moyal(2, th), 4);
  Rng rng(5);
  for (int t = 0; t < 15; ++t) {
    FunctionExpr f = random_polynomial(rng, 2, 3);
    FunctionExpr g = random_polynomial(rng, 2, 3);
    VectorField u = random_vector_field(rng, 2, 2);
    VectorField v = random_vector_field(rng, 2, 2);
    OneForm w = random_one_form(rng, 2, 2);

    CHECK(star_fn(f, g, ctx) ==
          moyal_oracle(th, 2, 4, f, g,
                       [](const FunctionExpr& a, const FunctionExpr& b) {
                         return a * b;
                       }));
    CHECK(star_lie_bracket(u, v, ctx) ==
          moyal_oracle(th, 2, 4, u, v, lie_bracket));
    CHECK(pairing_star(lift(u, 4), lift(w, 4), ctx) ==
          moyal_oracle(th, 2, 4, u, w, pairing));
    CHECK(star_lie_derivative(lift(u, 4), lift(f, 4), ctx) ==
          moyal_oracle(th, 2, 4, u, f,
                       [](const VectorField& a, const FunctionExpr& b) {
                         return a.apply(b);
                       }));
    CHECK(tensor_star(lift(TensorField::from(u), 4),
                      lift(TensorField::from(w), 4), ctx) ==
          moyal_oracle(th, 2, 4, TensorField::from(u), TensorField::from(w),
                       tensor_product));
  }
}

TEST_CASE("module products") {
  StarContext ctx(TwistSpec::moyal(2, theta2(Rat(1))), 3);
  VectorField v = vf2("x1*x2", "x2^2");
  // 1 * v = v
  CHECK(star_mod_left(lift(fn("1"), 3), lift(v, 3), ctx) == lift(v, 3));
  // x1 * d2 = x1 d2: the twist legs annihilate the constant frame field
  VfSeries p = star_mod_left(lift(fn("x1"), 3),
                             lift(VectorField::frame(2, 1), 3), ctx);
  CHECK(p == lift(vf2("0", "x1"), 3));
  // right product follows the R-matrix rule: w * h = Rbar(h) * Rbar(w)
  Rng rng(6);
  for (int t = 0; t < 10; ++t) {
    OneForm w = random_one_form(rng, 2, 2);
    FunctionExpr h = random_polynomial(rng, 2, 3);
    OfSeries lhs = star_mod_right(lift(w, 3), lift(h, 3), ctx);
    OfSeries rhs = rbar_combine_series(
        lift(h, 3), lift(w, 3), ctx,
        [&](const FunctionExpr& hh, const OneForm& ww) {
          return star_mod_left(lift(hh, 3), lift(ww, 3), ctx);
        });
    CHECK(lhs == rhs);
  }
}

TEST_CASE("deformed tensor product") {
  StarContext ctx(TwistSpec::moyal(2, theta2(Rat(1))), 3);
  // coordinate differentials are translation invariant
  TensorField dxdy = tensor_product(
      TensorField::from(OneForm::coframe(2, 0)),
      TensorField::from(OneForm::coframe(2, 1)));
  CHECK(tensor_star(lift(TensorField::from(OneForm::coframe(2, 0)), 3),
                    lift(TensorField::from(OneForm::coframe(2, 1)), 3),
                    ctx) == lift(dxdy, 3));
  // (x1 dx1) (x)_star (x2 dx2) = x1 x2 dx1 (x) dx2 + (i/2) L theta dx1 (x) dx2
  OneForm a(2), b(2);
  a.comp[0] = fn("x1");
  b.comp[1] = fn("x2");
  TenSeries p = tensor_star(lift(TensorField::from(a), 3),
                            lift(TensorField::from(b), 3), ctx);
  CHECK(p.c[0].comp.at({0, 1}) == fn("x1*x2"));
  CHECK(p.c[1].comp.at({0, 1}) == fn("1/2i"));
  CHECK(p.c[2].is_zero());
}

TEST_CASE("deformed wedge") {
  StarContext ctx(TwistSpec::moyal(2, theta2(Rat(1))), 3);
  FormSeries dx1 = lift(ExteriorForm::from_one_form(OneForm::coframe(2, 0)), 3);
  CHECK(wedge_star(dx1, dx1, ctx).is_zero());
  // theta = 0 gives the ordinary wedge
  StarContext id(TwistSpec::identity(2), 3);
  Rng rng(8);
  OneForm w1 = random_one_form(rng, 2, 2);
  OneForm w2 = random_one_form(rng, 2, 2);
  CHECK(wedge_star(lift(ExteriorForm::from_one_form(w1), 3),
                   lift(ExteriorForm::from_one_form(w2), 3), id) ==
        lift(wedge(ExteriorForm::from_one_form(w1),
                   ExteriorForm::from_one_form(w2)),
             3));
  // star-wedge is the star-antisymmetric tensor combination
  for (int t = 0; t < 8; ++t) {
    OneForm o1 = random_one_form(rng, 2, 2);
    OneForm o2 = random_one_form(rng, 2, 2);
    FormSeries ws = wedge_star(lift(ExteriorForm::from_one_form(o1), 3),
                               lift(ExteriorForm::from_one_form(o2), 3), ctx);
    TenSeries wt = ws.map([&](const ExteriorForm& f) {
      TensorField t2(2, {Slot::Form, Slot::Form});
      for (const auto& [k, c] : f.comp) {
        t2.add_comp({k[0], k[1]}, c);
        t2.add_comp({k[1], k[0]}, -c);
      }
      return t2;
    });
    CHECK(wt == star_antisymmetrize(o1, o2, ctx));
  }
}

TEST_CASE("exterior derivative") {
  StarContext ctx(TwistSpec::moyal(2, theta2(Rat(1))), 3);
  FormSeries x1 = lift(ExteriorForm::from_function(fn("x1")), 3);
  CHECK(exterior_d(x1) ==
        lift(ExteriorForm::from_one_form(OneForm::coframe(2, 0)), 3));
  // d(h * g) = dh * g + h * dg
  Rng rng(9);
  for (int t = 0; t < 10; ++t) {
    FormSeries h = lift(
        ExteriorForm::from_function(random_polynomial(rng, 2, 3)), 3);
    FormSeries g = lift(
        ExteriorForm::from_function(random_polynomial(rng, 2, 3)), 3);
    CHECK(exterior_d(wedge_star(h, g, ctx)) ==
          wedge_star(exterior_d(h), g, ctx) +
              wedge_star(h, exterior_d(g), ctx));
    CHECK(exterior_d(exterior_d(wedge_star(h, g, ctx))).is_zero());
  }
}

TEST_CASE("star pairing") {
  StarContext ctx(TwistSpec::moyal(2, theta2(Rat(1))), 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      FnSeries p = pairing_star(lift(VectorField::frame(2, i), 3),
                                lift(OneForm::coframe(2, j), 3), ctx);
      FnSeries expect(3);
      if (i == j) expect.c[0] = fn("1");
      CHECK(p == expect);
    }
  // <x2 d1, x1 dx1>_star = x1 x2 - (i/2) L theta (frozen from the direct
  // expansion of the twist legs)
  VectorField u = vf2("x2", "0");
  OneForm w(2);
  w.comp[0] = fn("x1");
  FnSeries p = pairing_star(lift(u, 3), lift(w, 3), ctx);
  CHECK(p.c[0] == fn("x1*x2"));
  CHECK(p.c[1] == fn("-1/2i"));
  CHECK(p.c[2].is_zero());
  CHECK(p == moyal_oracle(theta2(Rat(1)), 2, 3, u, w, pairing));
}

TEST_CASE("star lie derivative examples") {
  StarContext ctx(TwistSpec::moyal(2, theta2(Rat(1))), 3);
  // L*_{d1}(x1) = 1
  CHECK(star_lie_derivative(lift(VectorField::frame(2, 0), 3),
                            lift(fn("x1"), 3), ctx) == lift(fn("1"), 3));
  // L*_{x1 d2}(x2) = x1 exactly: all twist corrections vanish
  CHECK(star_lie_derivative(lift(vf2("0", "x1"), 3), lift(fn("x2"), 3),
                            ctx) == lift(fn("x1"), 3));
  // L*_{x1 d2}(x2^2) = 2 x1 x2 + i L theta  (frozen, theta = 1)
  FnSeries p = star_lie_derivative(lift(vf2("0", "x1"), 3),
                                   lift(fn("x2^2"), 3), ctx);
  CHECK(p.c[0] == fn("2*x1*x2"));
  CHECK(p.c[1] == fn("i"));
  CHECK(p.c[2].is_zero());
}

TEST_CASE("star lie bracket examples") {
  StarContext ctx(TwistSpec::moyal(2, theta2(Rat(1))), 3);
  CHECK(star_lie_bracket(VectorField::frame(2, 0), VectorField::frame(2, 1),
                         ctx)
            .is_zero());
  StarContext id(TwistSpec::identity(2), 3);
  Rng rng(10);
  for (int t = 0; t < 10; ++t) {
    VectorField u = random_vector_field(rng, 2, 3);
    VectorField v = random_vector_field(rng, 2, 3);
    CHECK(star_lie_bracket(u, v, id) == lift(lie_bracket(u, v), 3));
  }
  // frozen first-order value: [x1^2 d2, x2 d1]_star
  VfSeries b = star_lie_bracket(vf2("0", "x1^2"), vf2("x2", "0"), ctx);
  CHECK(b.c[0] == lie_bracket(vf2("0", "x1^2"), vf2("x2", "0")));
  CHECK(b.c[1] == vf2("0", "-i"));
  CHECK(b.c[2].is_zero());
  // bracket equals the star Lie derivative on vector fields
  Rng rng2(11);
  for (int t = 0; t < 10; ++t) {
    VectorField u = random_vector_field(rng2, 2, 2);
    VectorField v = random_vector_field(rng2, 2, 2);
    CHECK(star_lie_bracket(u, v, ctx) ==
          star_lie_derivative(lift(u, 3), lift(v, 3), ctx));
  }
}

TEST_CASE("star symmetrization") {
  StarContext ctx(TwistSpec::moyal(2, theta2(Rat(1))), 3);
  // invariant classical symmetric tensors stay classical
  TenSeries s =
      star_symmetrize(OneForm::coframe(2, 0), OneForm::coframe(2, 1), ctx);
  TensorField expect =
      tensor_product(TensorField::from(OneForm::coframe(2, 0)),
                     TensorField::from(OneForm::coframe(2, 1))) +
      tensor_product(TensorField::from(OneForm::coframe(2, 1)),
                     TensorField::from(OneForm::coframe(2, 0)));
  CHECK(s == lift(expect, 3));
  // antisymmetrization of an invariant form with itself vanishes
  CHECK(star_antisymmetrize(OneForm::coframe(2, 0), OneForm::coframe(2, 0),
                            ctx)
            .is_zero());
}

TEST_CASE("associativity and R-commutativity for the non-abelian families") {
  Rng rng(12);
  for (const auto& spec : {TwistSpec::jordanian_default(2),
                           TwistSpec::ext_jordanian_default(2)}) {
    StarContext ctx(spec, 3);
    for (int t = 0; t < 10; ++t) {
      FunctionExpr f = random_polynomial(rng, 2, 3);
      FunctionExpr g = random_polynomial(rng, 2, 3);
      FunctionExpr h = random_polynomial(rng, 2, 3);
      CHECK(star_fn(star_fn(f, g, ctx), lift(h, 3), ctx) ==
            star_fn(lift(f, 3), star_fn(g, h, ctx), ctx));
      FnSeries rhs = rbar_combine_series(
          lift(g, 3), lift(f, 3), ctx,
          [&](const FunctionExpr& gg, const FunctionExpr& ff) {
            return star_fn(gg, ff, ctx);
          });
      CHECK(star_fn(f, g, ctx) == rhs);
    }
  }
}
