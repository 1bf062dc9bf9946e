#include "starcalc/suites.hpp"

#include <chrono>
#include <functional>
#include <stdexcept>

#include "starcalc/parse.hpp"

namespace star {

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names = {"twist", "starcalc",
                                                 "geometry", "poisson",
                                                 "modes"};
  return names;
}

std::string digest(const std::string& text) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

namespace {

class Collector {
 public:
  Collector(std::vector<CheckRecord>& out, std::string prefix)
      : out_(out), prefix_(std::move(prefix)) {}

  template <class F>
  void run(const std::string& id, const std::string& tag,
           const std::string& inputs, F&& fill) {
    CheckRecord rec;
    rec.id = prefix_ + "/" + id;
    rec.tag = tag;
    rec.inputs_digest = digest(inputs);
    auto t0 = std::chrono::steady_clock::now();
    fill(rec);
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    out_.push_back(std::move(rec));
  }

 private:
  std::vector<CheckRecord>& out_;
  std::string prefix_;
};

void set_profile(CheckRecord& rec, std::vector<long> prof) {
  rec.per_order = std::move(prof);
  rec.pass = true;
  for (long n : rec.per_order)
    if (n) rec.pass = false;
}

void add_profile(std::vector<long>& acc, const std::vector<long>& p) {
  if (acc.size() < p.size()) acc.resize(p.size(), 0);
  for (size_t k = 0; k < p.size(); ++k) acc[k] += p[k];
}

struct Family {
  std::string name;
  TwistSpec spec;
};

std::vector<Family> twist_families(Rng& rng, bool with_identity,
                                   int moyal_dim = 2,
                                   const std::string& only = "") {
  std::vector<Family> fams;
  fams.push_back(
      {"moyal", TwistSpec::moyal(moyal_dim, random_theta(rng, moyal_dim))});
  fams.push_back({"jordanian", TwistSpec::jordanian_default(moyal_dim)});
  fams.push_back(
      {"ext_jordanian", TwistSpec::ext_jordanian_default(moyal_dim)});
  if (with_identity)
    fams.push_back({"identity", TwistSpec::identity(moyal_dim)});
  if (!only.empty()) {
    std::vector<Family> kept;
    for (auto& f : fams)
      if (f.name.rfind(only, 0) == 0) kept.push_back(std::move(f));
    fams = std::move(kept);
  }
  return fams;
}

// ---- twist suite ----------------------------------------------------------

void twist_suite(const SuiteConfig& cfg, std::vector<CheckRecord>& out) {
  Collector col(out, "twist");
  Rng rng(cfg.seed);

  std::vector<Family> fams;
  const int moyal_dims[3] = {2, 3, 2};
  for (int t = 0; t < 3; ++t) {
    int d = moyal_dims[t];
    fams.push_back({"moyal_r" + std::to_string(d) + "_" + std::to_string(t),
                    TwistSpec::moyal(d, random_theta(rng, d))});
  }
  fams.push_back({"jordanian", TwistSpec::jordanian_default(2)});
  fams.push_back({"ext_jordanian", TwistSpec::ext_jordanian_default(2)});
  fams.push_back({"identity", TwistSpec::identity(2)});
  if (!cfg.family.empty()) {
    std::vector<Family> kept;
    for (auto& f : fams)
      if (f.name.rfind(cfg.family, 0) == 0) kept.push_back(std::move(f));
    fams = std::move(kept);
  }

  for (const auto& fam : fams) {
    TwistExpansion tw = expand_twist(fam.spec, cfg.order);
    std::string inputs = fam.name + "/order" + std::to_string(cfg.order);

    col.run(fam.name + "/consF", "unit-leading", inputs, [&](CheckRecord& rec) {
      rec.pass = tw.F.c[0] == UPoly2::unit();
    });
    col.run(fam.name + "/cocycle", "cocycle", inputs, [&](CheckRecord& rec) {
      set_profile(rec, check_cocycle(tw, cfg.eval_degree).per_order);
    });
    col.run(fam.name + "/counit", "counit-normalization", inputs, [&](CheckRecord& rec) {
      set_profile(rec, check_counit(tw).per_order);
    });
    col.run(fam.name + "/invertible", "invertibility", inputs, [&](CheckRecord& rec) {
      UTensor2 unit = utensor2_unit(tw.order);
      auto p1 = eval_profile((tw.F * tw.Finv).truncated(tw.order) - unit,
                             tw.dim, cfg.eval_degree);
      auto p2 = eval_profile((tw.Finv * tw.F).truncated(tw.order) - unit,
                             tw.dim, cfg.eval_degree);
      std::vector<long> acc;
      add_profile(acc, p1.per_order);
      add_profile(acc, p2.per_order);
      set_profile(rec, acc);
    });
    col.run(fam.name + "/inverse_cocycle", "inverse-cocycle", inputs,
            [&](CheckRecord& rec) {
              set_profile(rec,
                          check_inverse_cocycle(tw, cfg.eval_degree).per_order);
            });
    col.run(fam.name + "/twisted_hopf", "twisted-hopf", inputs,
            [&](CheckRecord& rec) {
              rec.pass = true;
              Rng hrng(cfg.seed + 30);
              UEnvElement chi = chi_element(tw);
              UEnvElement chin = chi_inverse(tw);
              int n = tw.order;
              if (!op_equal((chi * chin).truncated(n), uenv_unit(n), tw.dim,
                            cfg.eval_degree))
                rec.pass = false;
              for (int t = 0; t < 3; ++t) {
                UEnvElement xi(n);
                xi.c[0] = UPoly::generator(
                    random_vector_field(hrng, tw.dim, 2));
                UTensor2 dxi = twisted_coproduct(xi, tw);
                UTensor3 lhs = (tw.F.map(emb12) * dxi.map(cop_slot1) *
                                tw.Finv.map(emb12))
                                   .truncated(n);
                UTensor3 rhs = (tw.F.map(emb23) * dxi.map(cop_slot2) *
                                tw.Finv.map(emb23))
                                   .truncated(n);
                if (!op_equal(lhs, rhs, tw.dim, cfg.eval_degree))
                  rec.pass = false;
                if (!op_equal(dxi.map(eps_slot1), xi, tw.dim,
                              cfg.eval_degree))
                  rec.pass = false;
              }
            });
    if (fam.spec.family == TwistFamily::Moyal) {
      col.run(fam.name + "/r_matrix", "r-matrix", inputs, [&](CheckRecord& rec) {
        // for the abelian twist R = F^{-2} = exp(+i lambda theta t (x) t)
        UTensor2 arg(tw.order);
        if (tw.order >= 1) {
          GaussRat iu = GaussRat::unit_i();
          for (int mu = 0; mu < fam.spec.dim; ++mu)
            for (int nu = 0; nu < fam.spec.dim; ++nu) {
              if (sgn(fam.spec.theta[mu][nu]) == 0) continue;
              arg.c[1].add_term(
                  {{field_pool().intern(fam.spec.fields[mu])},
                   {field_pool().intern(fam.spec.fields[nu])}},
                  iu * GaussRat(fam.spec.theta[mu][nu]));
            }
        }
        UTensor2 expected = exp_series(arg, UPoly2::unit());
        rec.pass = op_equal(tw.R, expected, tw.dim, cfg.eval_degree);
      });
    }
  }

  // Hopf axioms of the undeformed structure on corpus words
  {
    std::vector<UEnvElement> corpus;
    for (int t = 0; t < 6; ++t) {
      VectorField a = random_vector_field(rng, 2, 2);
      VectorField b = random_vector_field(rng, 2, 2);
      UEnvElement x(cfg.order);
      x.c[0] = UPoly::word(
          {field_pool().intern(a), field_pool().intern(b)},
          GaussRat(rng.range(-2, 2) == 0 ? 1 : rng.range(-2, 2)));
      x.c[0] += UPoly::generator(a, GaussRat(rng.range(1, 2)));
      if (t % 2) x.c[0] += UPoly::unit();
      corpus.push_back(x);
    }
    col.run("hopf/coassociativity", "coassociativity", "corpus", [&](CheckRecord& rec) {
      rec.pass = true;
      for (const auto& x : corpus) {
        UTensor2 d = coproduct(x);
        if (!op_equal(d.map(cop_slot1), d.map(cop_slot2), 2, 4))
          rec.pass = false;
      }
    });
    col.run("hopf/counit_axiom", "counit-axiom", "corpus", [&](CheckRecord& rec) {
      rec.pass = true;
      for (const auto& x : corpus) {
        UTensor2 d = coproduct(x);
        if (!op_equal(d.map(eps_slot1), x, 2, 4)) rec.pass = false;
        if (!op_equal(d.map(eps_slot2), x, 2, 4)) rec.pass = false;
      }
    });
    col.run("hopf/antipode_axiom", "antipode-axiom", "corpus", [&](CheckRecord& rec) {
      rec.pass = true;
      for (const auto& x : corpus) {
        UTensor2 d = coproduct(x);
        UEnvElement lhs = d.map([](const UPoly2& p) {
          UPoly r;
          for (const auto& [w, c] : p.terms)
            r += c * (antipode(UPoly::word(w.first)) * UPoly::word(w.second));
          return r;
        });
        UEnvElement rhs(x.order);
        for (int k = 0; k <= x.order; ++k)
          rhs.c[k] = counit(x.c[k]) * UPoly::unit();
        if (!op_equal(lhs, rhs, 2, 4)) rec.pass = false;
      }
    });
  }
}

// ---- star-calculus suite ---------------------------------------------------

void starcalc_suite(const SuiteConfig& cfg, std::vector<CheckRecord>& out) {
  Collector col(out, "starcalc");
  Rng rng(cfg.seed);
  const int dim = 2;

  for (const auto& fam : twist_families(rng, true, 2, cfg.family)) {
    StarContext ctx(fam.spec, cfg.order);
    std::string inputs = fam.name + "/order" + std::to_string(cfg.order);
    Rng crng(cfg.seed + 1);

    col.run(fam.name + "/assoc", "star-associativity", inputs, [&](CheckRecord& rec) {
      std::vector<long> acc;
      for (int t = 0; t < cfg.triples; ++t) {
        FunctionExpr f = random_polynomial(crng, dim, 3);
        FunctionExpr g = random_polynomial(crng, dim, 3);
        FunctionExpr h = random_polynomial(crng, dim, 3);
        FnSeries lhs = star_fn(star_fn(f, g, ctx), lift(h, ctx.order), ctx);
        FnSeries rhs = star_fn(lift(f, ctx.order), star_fn(g, h, ctx), ctx);
        add_profile(acc, residual_profile(lhs - rhs));
      }
      set_profile(rec, acc);
    });

    col.run(fam.name + "/r_commutativity", "r-commutativity", inputs,
            [&](CheckRecord& rec) {
              std::vector<long> acc;
              for (int t = 0; t < cfg.triples; ++t) {
                FunctionExpr f = random_polynomial(crng, dim, 3);
                FunctionExpr g = random_polynomial(crng, dim, 3);
                FnSeries lhs = star_fn(f, g, ctx);
                FnSeries rhs = rbar_combine_series(
                    lift(g, ctx.order), lift(f, ctx.order), ctx,
                    [&](const FunctionExpr& gg, const FunctionExpr& ff) {
                      return star_fn(gg, ff, ctx);
                    });
                add_profile(acc, residual_profile(lhs - rhs));
              }
              set_profile(rec, acc);
            });

    col.run(fam.name + "/lie_antisymmetry", "star-antisymmetry", inputs,
            [&](CheckRecord& rec) {
              std::vector<long> acc;
              for (int t = 0; t < cfg.lie_triples; ++t) {
                VectorField u = random_vector_field(crng, dim, 3);
                VectorField v = random_vector_field(crng, dim, 3);
                VfSeries lhs = star_lie_bracket(u, v, ctx);
                VfSeries rhs = rbar_combine_series(
                    lift(v, ctx.order), lift(u, ctx.order), ctx,
                    [&](const VectorField& vv, const VectorField& uu) {
                      return star_lie_bracket(vv, uu, ctx);
                    });
                add_profile(acc, residual_profile(lhs + rhs));
              }
              set_profile(rec, acc);
            });

    col.run(fam.name + "/lie_jacobi", "star-bracket", inputs, [&](CheckRecord& rec) {
      std::vector<long> acc;
      for (int t = 0; t < cfg.lie_triples; ++t) {
        VectorField u = random_vector_field(crng, dim, 2);
        VectorField v = random_vector_field(crng, dim, 2);
        VectorField z = random_vector_field(crng, dim, 2);
        VfSeries zs = lift(z, ctx.order);
        VfSeries lhs =
            star_lie_bracket(lift(u, ctx.order),
                             star_lie_bracket(v, z, ctx), ctx);
        VfSeries rhs =
            star_lie_bracket(star_lie_bracket(u, v, ctx), zs, ctx);
        rhs += rbar_combine_series(
            lift(v, ctx.order), lift(u, ctx.order), ctx,
            [&](const VectorField& vv, const VectorField& uu) {
              return star_lie_bracket(lift(vv, ctx.order),
                                      star_lie_bracket(uu, z, ctx), ctx);
            });
        add_profile(acc, residual_profile(lhs - rhs));
      }
      set_profile(rec, acc);
    });

    col.run(fam.name + "/bracket_as_commutator", "star-bracket", inputs,
            [&](CheckRecord& rec) {
              rec.pass = true;
              for (int t = 0; t < 5; ++t) {
                VectorField u = random_vector_field(crng, dim, 2);
                VectorField v = random_vector_field(crng, dim, 2);
                UEnvElement lhs =
                    vf_series_to_uenv(star_lie_bracket(u, v, ctx));
                UEnvElement ue_u = UEnvElement::constant(
                    ctx.order, UPoly::generator(u));
                UEnvElement ue_v = UEnvElement::constant(
                    ctx.order, UPoly::generator(v));
                UEnvElement rhs = uenv_star(ue_u, ue_v, ctx.tw);
                for (int m = 0; m <= ctx.order; ++m)
                  for (const auto& [w, c] : ctx.tw.Rinv.c[m].terms) {
                    UPoly av = ad_word(w.first, ue_v.c[0]);
                    UPoly bu = ad_word(w.second, ue_u.c[0]);
                    if (av.is_zero() || bu.is_zero()) continue;
                    UEnvElement s = uenv_star(
                        UEnvElement::constant(ctx.order, c * av),
                        UEnvElement::constant(ctx.order, bu), ctx.tw);
                    rhs -= s.shifted(m);
                  }
                if (!op_equal(lhs, rhs, dim, cfg.eval_degree))
                  rec.pass = false;
              }
            });

    col.run(fam.name + "/module_assoc", "module-associativity", inputs,
            [&](CheckRecord& rec) {
              std::vector<long> acc;
              for (int t = 0; t < 10; ++t) {
                FunctionExpr h = random_polynomial(crng, dim, 3);
                FunctionExpr g = random_polynomial(crng, dim, 3);
                VectorField v = random_vector_field(crng, dim, 2);
                OneForm w = random_one_form(crng, dim, 2);
                VfSeries l1 = star_mod_left(star_fn(h, g, ctx),
                                            lift(v, ctx.order), ctx);
                VfSeries r1 = star_mod_left(
                    lift(h, ctx.order),
                    star_mod_left(lift(g, ctx.order), lift(v, ctx.order),
                                  ctx),
                    ctx);
                add_profile(acc, residual_profile(l1 - r1));
                OfSeries l2 = star_mod_left(star_fn(h, g, ctx),
                                            lift(w, ctx.order), ctx);
                OfSeries r2 = star_mod_left(
                    lift(h, ctx.order),
                    star_mod_left(lift(g, ctx.order), lift(w, ctx.order),
                                  ctx),
                    ctx);
                add_profile(acc, residual_profile(l2 - r2));
              }
              set_profile(rec, acc);
            });

    col.run(fam.name + "/right_module_r_rule", "r-commutativity", inputs,
            [&](CheckRecord& rec) {
              std::vector<long> acc;
              for (int t = 0; t < 10; ++t) {
                FunctionExpr h = random_polynomial(crng, dim, 3);
                OneForm w = random_one_form(crng, dim, 2);
                OfSeries lhs =
                    star_mod_right(lift(w, ctx.order), lift(h, ctx.order),
                                   ctx);
                OfSeries rhs = rbar_combine_series(
                    lift(h, ctx.order), lift(w, ctx.order), ctx,
                    [&](const FunctionExpr& hh, const OneForm& ww) {
                      return star_mod_left(lift(hh, ctx.order),
                                           lift(ww, ctx.order), ctx);
                    });
                add_profile(acc, residual_profile(lhs - rhs));
              }
              set_profile(rec, acc);
            });

    col.run(fam.name + "/pairing_frame", "star-pairing", inputs,
            [&](CheckRecord& rec) {
              std::vector<long> acc;
              for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) {
                  FnSeries p = pairing_star(
                      lift(VectorField::frame(dim, i), ctx.order),
                      lift(OneForm::coframe(dim, j), ctx.order), ctx);
                  FnSeries expected(ctx.order);
                  if (i == j) expected.c[0] = FunctionExpr::one(dim);
                  add_profile(acc, residual_profile(p - expected));
                }
              set_profile(rec, acc);
            });

    col.run(fam.name + "/pairing_linearity", "pairing-linearity", inputs,
            [&](CheckRecord& rec) {
              std::vector<long> acc;
              for (int t = 0; t < 10; ++t) {
                FunctionExpr h = random_polynomial(crng, dim, 2);
                FunctionExpr k = random_polynomial(crng, dim, 2);
                VectorField u = random_vector_field(crng, dim, 2);
                OneForm w = random_one_form(crng, dim, 2);
                // <h*u, w*k>_star = h * <u,w>_star * k
                FnSeries lhs = pairing_star(
                    star_mod_left(lift(h, ctx.order), lift(u, ctx.order),
                                  ctx),
                    star_mod_right(lift(w, ctx.order), lift(k, ctx.order),
                                   ctx),
                    ctx);
                FnSeries rhs = star_fn(
                    star_fn(lift(h, ctx.order),
                            pairing_star(lift(u, ctx.order),
                                         lift(w, ctx.order), ctx),
                            ctx),
                    lift(k, ctx.order), ctx);
                add_profile(acc, residual_profile(lhs - rhs));
                // <u, h*w>_star = Rbar(h) * <Rbar(u), w>_star
                FnSeries lhs2 = pairing_star(
                    lift(u, ctx.order),
                    star_mod_left(lift(h, ctx.order), lift(w, ctx.order),
                                  ctx),
                    ctx);
                FnSeries rhs2 = rbar_combine_series(
                    lift(h, ctx.order), lift(u, ctx.order), ctx,
                    [&](const FunctionExpr& hh, const VectorField& uu) {
                      return star_fn(lift(hh, ctx.order),
                                     pairing_star(lift(uu, ctx.order),
                                                  lift(w, ctx.order), ctx),
                                     ctx);
                    });
                add_profile(acc, residual_profile(lhs2 - rhs2));
              }
              set_profile(rec, acc);
            });

    col.run(fam.name + "/pairing_onion", "pairing-onion", inputs,
            [&](CheckRecord& rec) {
              std::vector<long> acc;
              for (int t = 0; t < 8; ++t) {
                VectorField tau = random_vector_field(crng, dim, 2);
                VectorField u = random_vector_field(crng, dim, 2);
                OneForm th = random_one_form(crng, dim, 2);
                OneForm rho = random_one_form(crng, dim, 2);
                TenSeries lhs_l = tensor_star(
                    lift(TensorField::from(tau), ctx.order),
                    lift(TensorField::from(u), ctx.order), ctx);
                TenSeries lhs_r = tensor_star(
                    lift(TensorField::from(th), ctx.order),
                    lift(TensorField::from(rho), ctx.order), ctx);
                FnSeries lhs = pairing_star_tensor(lhs_l, lhs_r, ctx);
                FnSeries inner = pairing_star(lift(u, ctx.order),
                                              lift(th, ctx.order), ctx);
                OfSeries mid = star_mod_left(inner, lift(rho, ctx.order),
                                             ctx);
                FnSeries rhs =
                    pairing_star(lift(tau, ctx.order), mid, ctx);
                add_profile(acc, residual_profile(lhs - rhs));
              }
              set_profile(rec, acc);
            });

    col.run(fam.name + "/lie_module_property", "lie-module-property", inputs,
            [&](CheckRecord& rec) {
              std::vector<long> acc;
              for (int t = 0; t < 10; ++t) {
                VectorField u = random_vector_field(crng, dim, 2);
                VectorField v = random_vector_field(crng, dim, 2);
                FunctionExpr h = random_polynomial(crng, dim, 3);
                FnSeries lhs = star_lie_derivative(
                    lift(u, ctx.order),
                    star_lie_derivative(lift(v, ctx.order),
                                        lift(h, ctx.order), ctx),
                    ctx);
                UEnvElement uv = uenv_star(
                    UEnvElement::constant(ctx.order, UPoly::generator(u)),
                    UEnvElement::constant(ctx.order, UPoly::generator(v)),
                    ctx.tw);
                FnSeries rhs = star_lie_uenv(uv, lift(h, ctx.order), ctx);
                add_profile(acc, residual_profile(lhs - rhs));
              }
              set_profile(rec, acc);
            });

    col.run(fam.name + "/lie_deformed_leibniz", "deformed-leibniz", inputs,
            [&](CheckRecord& rec) {
              std::vector<long> acc;
              for (int t = 0; t < 10; ++t) {
                VectorField u = random_vector_field(crng, dim, 2);
                FunctionExpr h = random_polynomial(crng, dim, 3);
                FunctionExpr g = random_polynomial(crng, dim, 3);
                FnSeries lhs = star_lie_derivative(lift(u, ctx.order),
                                                   star_fn(h, g, ctx), ctx);
                FnSeries rhs = star_fn(
                    star_lie_derivative(lift(u, ctx.order),
                                        lift(h, ctx.order), ctx),
                    lift(g, ctx.order), ctx);
                rhs += rbar_combine_series(
                    lift(h, ctx.order), lift(u, ctx.order), ctx,
                    [&](const FunctionExpr& hh, const VectorField& uu) {
                      return star_fn(
                          lift(hh, ctx.order),
                          star_lie_derivative(lift(uu, ctx.order),
                                              lift(g, ctx.order), ctx),
                          ctx);
                    });
                add_profile(acc, residual_profile(lhs - rhs));
              }
              set_profile(rec, acc);
            });

    col.run(fam.name + "/d_leibniz", "wedge-leibniz", inputs,
            [&](CheckRecord& rec) {
              std::vector<long> acc;
              for (int t = 0; t < 10; ++t) {
                FunctionExpr h = random_polynomial(crng, dim, 3);
                FunctionExpr g = random_polynomial(crng, dim, 3);
                FormSeries h0 =
                    lift(ExteriorForm::from_function(h), ctx.order);
                FormSeries g0 =
                    lift(ExteriorForm::from_function(g), ctx.order);
                FormSeries lhs = exterior_d(wedge_star(h0, g0, ctx));
                FormSeries rhs = wedge_star(exterior_d(h0), g0, ctx);
                rhs += wedge_star(h0, exterior_d(g0), ctx);
                add_profile(acc, residual_profile(lhs - rhs));
                FormSeries dd = exterior_d(exterior_d(
                    wedge_star(h0, lift(ExteriorForm::from_one_form(
                                            random_one_form(crng, dim, 2)),
                                        ctx.order),
                               ctx)));
                add_profile(acc, residual_profile(dd));
              }
              set_profile(rec, acc);
            });

    col.run(fam.name + "/wedge_antisymmetry", "wedge-antisymmetry", inputs,
            [&](CheckRecord& rec) {
              std::vector<long> acc;
              for (int t = 0; t < 10; ++t) {
                OneForm w1 = random_one_form(crng, dim, 2);
                OneForm w2 = random_one_form(crng, dim, 2);
                FormSeries ws = wedge_star(
                    lift(ExteriorForm::from_one_form(w1), ctx.order),
                    lift(ExteriorForm::from_one_form(w2), ctx.order), ctx);
                // as a tensor: T[{i,j}] = w_{ij}, T[{j,i}] = -w_{ij}
                TenSeries wt = ws.map([&](const ExteriorForm& f) {
                  TensorField t(dim, {Slot::Form, Slot::Form});
                  for (const auto& [k, c] : f.comp) {
                    t.add_comp({k[0], k[1]}, c);
                    t.add_comp({k[1], k[0]}, -c);
                  }
                  return t;
                });
                TenSeries anti = star_antisymmetrize(w1, w2, ctx);
                add_profile(acc, residual_profile(wt - anti));
              }
              set_profile(rec, acc);
            });

    col.run(fam.name + "/star_symmetric_expansion", "star-symmetric", inputs,
            [&](CheckRecord& rec) {
              std::vector<long> acc;
              for (int t = 0; t < 8; ++t) {
                OneForm w1 = random_one_form(crng, dim, 2);
                OneForm w2 = random_one_form(crng, dim, 2);
                TenSeries lhs = star_symmetrize(w1, w2, ctx);
                TenSeries rhs = twist_combine(
                    ctx.tw.Finv, lift(TensorField::from(w1), ctx.order),
                    lift(TensorField::from(w2), ctx.order), tensor_product);
                rhs += twist_combine(
                    ctx.tw.Finv.map([](const UPoly2& p) { return p.flip(); }),
                    lift(TensorField::from(w2), ctx.order),
                    lift(TensorField::from(w1), ctx.order), tensor_product);
                add_profile(acc, residual_profile(lhs - rhs));
              }
              // invariant classical pair stays classical
              TenSeries s = star_symmetrize(OneForm::coframe(dim, 0),
                                            OneForm::coframe(dim, 1), ctx);
              TensorField expect =
                  tensor_product(
                      TensorField::from(OneForm::coframe(dim, 0)),
                      TensorField::from(OneForm::coframe(dim, 1))) +
                  tensor_product(
                      TensorField::from(OneForm::coframe(dim, 1)),
                      TensorField::from(OneForm::coframe(dim, 0)));
              add_profile(acc,
                          residual_profile(s - lift(expect, ctx.order)));
              set_profile(rec, acc);
            });

    col.run(fam.name + "/tensor_assoc", "tensor-associativity", inputs,
            [&](CheckRecord& rec) {
              std::vector<long> acc;
              for (int t = 0; t < 8; ++t) {
                TensorField a = TensorField::from(
                    random_one_form(crng, dim, 2));
                TensorField b = TensorField::from(
                    random_vector_field(crng, dim, 2));
                TensorField c = TensorField::from(
                    random_one_form(crng, dim, 2));
                TenSeries lhs = tensor_star(
                    tensor_star(lift(a, ctx.order), lift(b, ctx.order), ctx),
                    lift(c, ctx.order), ctx);
                TenSeries rhs = tensor_star(
                    lift(a, ctx.order),
                    tensor_star(lift(b, ctx.order), lift(c, ctx.order), ctx),
                    ctx);
                add_profile(acc, residual_profile(lhs - rhs));
              }
              set_profile(rec, acc);
            });

    // X and D maps, D(xi * zeta) = D(xi) D(zeta)
    {
      StarContext xctx(fam.spec, cfg.xd_order);
      col.run(fam.name + "/xd_roundtrip", "xd-roundtrip", inputs,
              [&](CheckRecord& rec) {
                rec.pass = true;
                for (int t = 0; t < cfg.xd_elements; ++t) {
                  VectorField a = random_vector_field(crng, dim, 2);
                  VectorField b = random_vector_field(crng, dim, 2);
                  UEnvElement xi(xctx.order);
                  xi.c[0] = UPoly::word(
                      {field_pool().intern(a), field_pool().intern(b)});
                  xi.c[0] += UPoly::generator(a);
                  if (!op_equal(xmap(dmap(xi, xctx.tw), xctx.tw), xi, dim,
                                cfg.eval_degree))
                    rec.pass = false;
                  if (!op_equal(dmap(xmap(xi, xctx.tw), xctx.tw), xi, dim,
                                cfg.eval_degree))
                    rec.pass = false;
                }
              });
      col.run(fam.name + "/d_homomorphism", "d-homomorphism", inputs,
              [&](CheckRecord& rec) {
                rec.pass = true;
                for (int t = 0; t < cfg.xd_elements; ++t) {
                  UEnvElement xi = UEnvElement::constant(
                      xctx.order,
                      UPoly::generator(random_vector_field(crng, dim, 2)));
                  UEnvElement zeta = UEnvElement::constant(
                      xctx.order,
                      UPoly::generator(random_vector_field(crng, dim, 2)));
                  UEnvElement lhs =
                      dmap(uenv_star(xi, zeta, xctx.tw), xctx.tw);
                  UEnvElement rhs =
                      dmap(xi, xctx.tw) * dmap(zeta, xctx.tw);
                  if (!op_equal(lhs, rhs.truncated(xctx.order), dim,
                                cfg.eval_degree))
                    rec.pass = false;
                }
              });
    }

    // classical limit: order-0 slice of every deformed operation
    col.run(fam.name + "/lambda0_classical", "unit-leading", inputs,
            [&](CheckRecord& rec) {
              rec.pass = true;
              for (int t = 0; t < 10; ++t) {
                FunctionExpr f = random_polynomial(crng, dim, 3);
                FunctionExpr g = random_polynomial(crng, dim, 3);
                VectorField u = random_vector_field(crng, dim, 2);
                VectorField v = random_vector_field(crng, dim, 2);
                OneForm w = random_one_form(crng, dim, 2);
                if (!(star_fn(f, g, ctx).c[0] == f * g)) rec.pass = false;
                if (!(star_lie_bracket(u, v, ctx).c[0] == lie_bracket(u, v)))
                  rec.pass = false;
                if (!(pairing_star(lift(u, ctx.order), lift(w, ctx.order),
                                   ctx)
                          .c[0] == pairing(u, w)))
                  rec.pass = false;
              }
            });

    if (fam.name == "identity") {
      col.run("identity/full_degeneration", "unit-leading", inputs,
              [&](CheckRecord& rec) {
                rec.pass = true;
                for (int t = 0; t < 10; ++t) {
                  FunctionExpr f = random_polynomial(crng, dim, 3);
                  FunctionExpr g = random_polynomial(crng, dim, 3);
                  VectorField u = random_vector_field(crng, dim, 2);
                  VectorField v = random_vector_field(crng, dim, 2);
                  if (!(star_fn(f, g, ctx) == lift(f * g, ctx.order)))
                    rec.pass = false;
                  if (!(star_lie_bracket(u, v, ctx) ==
                        lift(lie_bracket(u, v), ctx.order)))
                    rec.pass = false;
                }
              });
    }
  }
}

// ---- geometry suite --------------------------------------------------------

void geometry_suite(const SuiteConfig& cfg, std::vector<CheckRecord>& out) {
  Collector col(out, "geometry");
  Rng rng(cfg.seed);
  const int dim = 3;
  const int order = cfg.geometry_order;

  for (const auto& fam : twist_families(rng, false, dim, cfg.family)) {
    StarContext ctx(fam.spec, order);
    std::string inputs = fam.name + "/order" + std::to_string(order);
    Rng crng(cfg.seed + 2);

    col.run(fam.name + "/flat_control", "connection-coefficients", inputs,
            [&](CheckRecord& rec) {
              FrameConnection flat(dim, order);
              CovEngine eng(flat, ctx);
              std::vector<long> acc;
              TorsionTensor tt = eng.torsion_coeffs();
              CurvatureTensor rt = eng.curvature_coeffs();
              for (const auto& s : tt.comp)
                add_profile(acc, residual_profile(s));
              for (const auto& s : rt.comp)
                add_profile(acc, residual_profile(s));
              set_profile(rec, acc);
            });

    std::vector<FrameConnection> conns;
    for (int c = 0; c < cfg.connections; ++c)
      conns.push_back(random_connection(crng, dim, order));

    col.run(fam.name + "/cartan_bianchi", "cartan-bianchi", inputs,
            [&](CheckRecord& rec) {
              std::vector<long> acc;
              for (const auto& conn : conns) {
                GeomReport rep = structure_residuals(conn, ctx);
                for (const auto& [name, prof] : rep.residuals)
                  add_profile(acc, prof);
              }
              set_profile(rec, acc);
            });

    col.run(fam.name + "/frame_connection", "connection-coefficients", inputs,
            [&](CheckRecord& rec) {
              // nabla*_{e_i} e_j = Gamma_{ij}^k * e_k
              const FrameConnection& conn = conns[0];
              CovEngine eng(conn, ctx);
              std::vector<long> acc;
              for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) {
                  VfSeries lhs =
                      eng.cov(lift(VectorField::frame(dim, i), order),
                              lift(VectorField::frame(dim, j), order));
                  VfSeries rhs(order);
                  for (int k = 0; k < dim; ++k)
                    rhs += star_mod_left(
                        conn.G(i, j, k),
                        lift(VectorField::frame(dim, k), order), ctx);
                  add_profile(acc, residual_profile(lhs - rhs));
                }
              set_profile(rec, acc);
            });

    col.run(fam.name + "/cov_axioms", "covariant-leibniz", inputs,
            [&](CheckRecord& rec) {
              const FrameConnection& conn = conns[0];
              CovEngine eng(conn, ctx);
              std::vector<long> acc;
              for (int t = 0; t < 3; ++t) {
                FunctionExpr h = random_polynomial(crng, dim, 2, 2);
                VectorField u = random_vector_field(crng, dim, 2);
                VectorField v = random_vector_field(crng, dim, 2);
                // ddal: nabla*_{h*u} v = h * nabla*_u v
                VfSeries lhs = eng.cov(
                    star_mod_left(lift(h, order), lift(u, order), ctx),
                    lift(v, order));
                VfSeries rhs = star_mod_left(
                    lift(h, order), eng.cov(lift(u, order), lift(v, order)),
                    ctx);
                add_profile(acc, residual_profile(lhs - rhs));
                // ddsDuhv
                VfSeries lhs2 = eng.cov(
                    lift(u, order),
                    star_mod_left(lift(h, order), lift(v, order), ctx));
                VfSeries rhs2 = star_mod_left(
                    star_lie_derivative(lift(u, order), lift(h, order), ctx),
                    lift(v, order), ctx);
                rhs2 += rbar_combine_series(
                    lift(h, order), lift(u, order), ctx,
                    [&](const FunctionExpr& hh, const VectorField& uu) {
                      return star_mod_left(lift(hh, order),
                                           eng.cov(lift(uu, order),
                                                   lift(v, order)),
                                           ctx);
                    });
                add_profile(acc, residual_profile(lhs2 - rhs2));
              }
              set_profile(rec, acc);
            });

    col.run(fam.name + "/tr_antisymmetry", "tr-antisymmetry", inputs,
            [&](CheckRecord& rec) {
              const FrameConnection& conn = conns[0];
              CovEngine eng(conn, ctx);
              std::vector<long> acc;
              for (int t = 0; t < 2; ++t) {
                VectorField u = random_vector_field(crng, dim, 2);
                VectorField v = random_vector_field(crng, dim, 2);
                VectorField z = random_vector_field(crng, dim, 1);
                VfSeries lhs = eng.torsion(lift(u, order), lift(v, order));
                VfSeries rhs = rbar_combine_series(
                    lift(v, order), lift(u, order), ctx,
                    [&](const VectorField& vv, const VectorField& uu) {
                      return eng.torsion(lift(vv, order), lift(uu, order));
                    });
                add_profile(acc, residual_profile(lhs + rhs));
                VfSeries lhc =
                    eng.curvature(lift(u, order), lift(v, order),
                                  lift(z, order));
                VfSeries rhc = rbar_combine_series(
                    lift(v, order), lift(u, order), ctx,
                    [&](const VectorField& vv, const VectorField& uu) {
                      return eng.curvature(lift(vv, order), lift(uu, order),
                                           lift(z, order));
                    });
                add_profile(acc, residual_profile(lhc + rhc));
              }
              set_profile(rec, acc);
            });

    col.run(fam.name + "/tr_linearity", "coefficient-extraction", inputs,
            [&](CheckRecord& rec) {
              const FrameConnection& conn = conns[0];
              CovEngine eng(conn, ctx);
              std::vector<long> acc;
              for (int t = 0; t < 2; ++t) {
                FunctionExpr f = random_polynomial(crng, dim, 2, 2);
                VectorField u = random_vector_field(crng, dim, 1);
                VectorField v = random_vector_field(crng, dim, 1);
                // T(f*u, v) = f * T(u,v)
                VfSeries lhs = eng.torsion(
                    star_mod_left(lift(f, order), lift(u, order), ctx),
                    lift(v, order));
                VfSeries rhs = star_mod_left(
                    lift(f, order), eng.torsion(lift(u, order),
                                                lift(v, order)),
                    ctx);
                add_profile(acc, residual_profile(lhs - rhs));
                // T(u, f*v) = Rbar(f) * T(Rbar(u), v)
                VfSeries lhs2 = eng.torsion(
                    lift(u, order),
                    star_mod_left(lift(f, order), lift(v, order), ctx));
                VfSeries rhs2 = rbar_combine_series(
                    lift(f, order), lift(u, order), ctx,
                    [&](const FunctionExpr& ff, const VectorField& uu) {
                      return star_mod_left(lift(ff, order),
                                           eng.torsion(lift(uu, order),
                                                       lift(v, order)),
                                           ctx);
                    });
                add_profile(acc, residual_profile(lhs2 - rhs2));
              }
              set_profile(rec, acc);
            });

    col.run(fam.name + "/coeff_roundtrip", "coefficient-extraction", inputs,
            [&](CheckRecord& rec) {
              const FrameConnection& conn = conns[0];
              CovEngine eng(conn, ctx);
              TorsionTensor tt = eng.torsion_coeffs();
              std::vector<long> acc;
              for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) {
                  VfSeries tmap =
                      eng.torsion(lift(VectorField::frame(dim, i), order),
                                  lift(VectorField::frame(dim, j), order));
                  VfSeries re(order);
                  for (int l = 0; l < dim; ++l)
                    re += star_mod_left(
                        tt.T(i, j, l),
                        lift(VectorField::frame(dim, l), order), ctx);
                  add_profile(acc, residual_profile(tmap - re));
                }
              set_profile(rec, acc);
            });

    // The braided Leibniz rule is expanded over the canonical innermost
    // frame presentation T = sum_b <T, theta^b>_star (x)_star e_b; a
    // left-linear connection with generic coefficients is not a bimodule
    // connection, so expansions over other A_star factorizations differ
    // at O(lambda) (pinned as a regression fact in the unit suite).
    col.run(fam.name + "/tensor_leibniz_two_route", "covariant-leibniz", inputs,
            [&](CheckRecord& rec) {
              const FrameConnection& conn = conns[0];
              CovEngine eng(conn, ctx);
              std::vector<long> acc;
              for (int t = 0; t < 2; ++t) {
                VectorField u = random_vector_field(crng, dim, 1);
                VectorField v = random_vector_field(crng, dim, 1);
                VectorField z = random_vector_field(crng, dim, 1);
                TenSeries vz = tensor_star(
                    lift(TensorField::from(v), order),
                    lift(TensorField::from(z), order), ctx);
                TenSeries route1 = eng.cov_tensor(lift(u, order), vz);
                TenSeries route2(order);
                for (int b = 0; b < dim; ++b) {
                  OfSeries thb = lift(OneForm::coframe(dim, b), order);
                  TenSeries tb =
                      twist_combine(ctx.tw.Finv, vz, thb, pair_last);
                  if (tb.is_zero()) continue;
                  TenSeries eb = lift(
                      TensorField::from(VectorField::frame(dim, b)), order);
                  route2 += tensor_star(eng.cov_tensor(lift(u, order), tb),
                                        eb, ctx);
                  route2 += rbar_combine_series(
                      tb, lift(u, order), ctx,
                      [&](const TensorField& hh, const VectorField& uu) {
                        return tensor_star(
                            lift(hh, order),
                            eng.cov_tensor(lift(uu, order), eb), ctx);
                      });
                }
                add_profile(acc, residual_profile(route1 - route2));
              }
              set_profile(rec, acc);
            });
  }
}

// ---- poisson suite ---------------------------------------------------------

void poisson_suite(const SuiteConfig& cfg, std::vector<CheckRecord>& out) {
  Collector col(out, "poisson");
  Rng rng(cfg.seed);
  const int n = 2;
  const int dim = 2 * n;
  std::vector<std::vector<Rat>> theta(n, std::vector<Rat>(n, Rat(0)));
  theta[0][1] = Rat(1);
  theta[1][0] = Rat(-1);
  PhaseSpaceContext ps(n, theta, cfg.order);
  std::string inputs = "canonical_T*R2/theta12=1";

  auto rand_obs = [&](Rng& r, int deg) {
    return random_polynomial(r, dim, deg);
  };

  col.run("classical_axioms", "poisson-axioms", inputs, [&](CheckRecord& rec) {
    Rng crng(cfg.seed + 3);
    rec.pass = true;
    for (int t = 0; t < 20; ++t) {
      FunctionExpr f = rand_obs(crng, 3);
      FunctionExpr g = rand_obs(crng, 3);
      FunctionExpr h = rand_obs(crng, 3);
      if (!(poisson(f, g, ps.lambda) + poisson(g, f, ps.lambda)).is_zero())
        rec.pass = false;
      FunctionExpr jac = poisson(f, poisson(g, h, ps.lambda), ps.lambda);
      jac += poisson(h, poisson(f, g, ps.lambda), ps.lambda);
      jac += poisson(g, poisson(h, f, ps.lambda), ps.lambda);
      if (!jac.is_zero()) rec.pass = false;
      FunctionExpr leib = poisson(f, g * h, ps.lambda) -
                          poisson(f, g, ps.lambda) * h -
                          g * poisson(f, h, ps.lambda);
      if (!leib.is_zero()) rec.pass = false;
      // X_f(g) = {f,g} and the pairing route agree
      if (!(ham_vf(f, ps.lambda).apply(g) == poisson(f, g, ps.lambda)))
        rec.pass = false;
    }
  });

  col.run("compatibility", "twist-compatibility", inputs, [&](CheckRecord& rec) {
    rec.pass = ps.compatible();
    // a dilation generator is not Poisson-invariant and must fail
    VectorField bad(dim);
    bad.comp[0] = FunctionExpr::coordinate(dim, 0);  // x^1 d/dx^1
    if (compat_check({bad}, ps.lambda)) rec.pass = false;
  });

  col.run("star_antisymmetry", "star-antisymmetry", inputs, [&](CheckRecord& rec) {
    Rng crng(cfg.seed + 4);
    std::vector<long> acc(1, 0);
    for (int t = 0; t < 20; ++t) {
      FunctionExpr f = rand_obs(crng, 3);
      FunctionExpr g = rand_obs(crng, 3);
      FunctionExpr res = star_poisson(f, g, ps);
      for (const auto& [c, gg, ff] : absorbed_pairs(ps, rinv_coeff(), g, f))
        res += c * star_poisson(gg, ff, ps);
      acc[0] += (long)res.terms.size();
    }
    set_profile(rec, acc);
  });

  col.run("star_jacobi", "star-jacobi", inputs, [&](CheckRecord& rec) {
    Rng crng(cfg.seed + 5);
    std::vector<long> acc(1, 0);
    for (int t = 0; t < 12; ++t) {
      FunctionExpr f = rand_obs(crng, 2);
      FunctionExpr g = rand_obs(crng, 2);
      FunctionExpr h = rand_obs(crng, 2);
      FunctionExpr res = star_poisson(f, star_poisson(g, h, ps), ps);
      res -= star_poisson(star_poisson(f, g, ps), h, ps);
      for (const auto& [c, gg, ff] : absorbed_pairs(ps, rinv_coeff(), g, f))
        res -= c * star_poisson(gg, star_poisson(ff, h, ps), ps);
      acc[0] += (long)res.terms.size();
    }
    set_profile(rec, acc);
  });

  col.run("star_leibniz", "star-leibniz", inputs, [&](CheckRecord& rec) {
    Rng crng(cfg.seed + 6);
    std::vector<long> acc(1, 0);
    for (int t = 0; t < 12; ++t) {
      FunctionExpr f = rand_obs(crng, 2);
      FunctionExpr g = rand_obs(crng, 2);
      FunctionExpr h = rand_obs(crng, 2);
      FunctionExpr res =
          star_poisson(f, star_fn_absorbed(g, h, ps), ps);
      res -= star_fn_absorbed(star_poisson(f, g, ps), h, ps);
      for (const auto& [c, gg, ff] : absorbed_pairs(ps, rinv_coeff(), g, f))
        res -= c * star_fn_absorbed(gg, star_poisson(ff, h, ps), ps);
      acc[0] += (long)res.terms.size();
    }
    set_profile(rec, acc);
  });

  col.run("explicit_form", "explicit-form", inputs, [&](CheckRecord& rec) {
    Rng crng(cfg.seed + 7);
    std::vector<long> acc(1, 0);
    for (int t = 0; t < 20; ++t) {
      FunctionExpr f = rand_obs(crng, 3);
      FunctionExpr g = rand_obs(crng, 3);
      FunctionExpr res =
          star_poisson(f, g, ps) - star_poisson_explicit(f, g, ps);
      acc[0] += (long)res.terms.size();
    }
    set_profile(rec, acc);
  });

  col.run("lie_derivative_route", "star-poisson", inputs,
          [&](CheckRecord& rec) {
            Rng crng(cfg.seed + 8);
            std::vector<long> acc(1, 0);
            for (int t = 0; t < 20; ++t) {
              FunctionExpr f = rand_obs(crng, 3);
              FunctionExpr g = rand_obs(crng, 3);
              FunctionExpr res = star_poisson(f, g, ps) -
                                 star_lie_absorbed(ham_vf(f, ps.lambda), g,
                                                   ps);
              acc[0] += (long)res.terms.size();
            }
            set_profile(rec, acc);
          });

  col.run("hamiltonian_morphism", "hamiltonian-morphism", inputs,
          [&](CheckRecord& rec) {
            Rng crng(cfg.seed + 9);
            std::vector<long> acc(1, 0);
            for (int t = 0; t < 12; ++t) {
              FunctionExpr f = rand_obs(crng, 3);
              FunctionExpr g = rand_obs(crng, 3);
              VectorField res = morphism_check(f, g, ps);
              for (const auto& c : res.comp)
                acc[0] += (long)c.terms.size();
            }
            set_profile(rec, acc);
          });

  col.run("deformation_visible", "deformation-visible", inputs, [&](CheckRecord& rec) {
    // {F,G}_star != {F,G} must occur for some corpus pair
    auto names = phase_space_names(n);
    FunctionExpr f = parse_function("x1*x2*p1", dim, names);
    FunctionExpr g = parse_function("x1*x2*p2", dim, names);
    FunctionExpr res = star_poisson(f, g, ps) - poisson(f, g, ps.lambda);
    rec.per_order = {(long)res.terms.size()};
    rec.pass = !res.is_zero();
  });

  col.run("time_evolution", "constants-of-motion", inputs, [&](CheckRecord& rec) {
    auto names = phase_space_names(n);
    FunctionExpr H = parse_function("p1^2+p2^2", dim, names);
    FunctionExpr x1 = parse_function("x1", dim, names);
    // xdot = -{H, x}_star = 2 p1 with the canonical conventions
    FunctionExpr expect = parse_function("2*p1", dim, names);
    rec.pass = time_evolution(H, x1, ps) == expect;
    // translation-invariant H: evolution reduces to the classical one
    Rng crng(cfg.seed + 10);
    for (int t = 0; t < 10; ++t) {
      FunctionExpr f = rand_obs(crng, 3);
      if (!(time_evolution(H, f, ps) == -poisson(H, f, ps.lambda)))
        rec.pass = false;
    }
  });

  col.run("constants_of_motion", "constants-of-motion", inputs, [&](CheckRecord& rec) {
    auto names = phase_space_names(n);
    FunctionExpr H = parse_function("p1^2+p2^2", dim, names);
    std::vector<FunctionExpr> qs = {
        parse_function("p1", dim, names), parse_function("p2", dim, names),
        parse_function("x1*p2-x2*p1", dim, names)};
    ConstantsReport cr = constants_check(H, qs, ps);
    std::vector<long> acc(1, 0);
    for (long v : cr.bracket_residuals) acc[0] += v;
    for (long v : cr.closure_residuals) acc[0] += v;
    set_profile(rec, acc);
    // twist-invariant H: {Q,H}_star = {Q,H}
    for (const auto& q : qs)
      if (!(star_poisson(q, H, ps) == poisson(q, H, ps.lambda)))
        rec.pass = false;
  });

  col.run("theta_zero_degeneration", "star-poisson", inputs,
          [&](CheckRecord& rec) {
            std::vector<std::vector<Rat>> z(n, std::vector<Rat>(n, Rat(0)));
            PhaseSpaceContext ps0(n, z, cfg.order);
            Rng crng(cfg.seed + 11);
            rec.pass = true;
            for (int t = 0; t < 12; ++t) {
              FunctionExpr f = rand_obs(crng, 3);
              FunctionExpr g = rand_obs(crng, 3);
              if (!(star_poisson(f, g, ps0) == poisson(f, g, ps0.lambda)))
                rec.pass = false;
              if (!(star_fn_absorbed(f, g, ps0) == f * g)) rec.pass = false;
            }
          });
}

// ---- modes suite -----------------------------------------------------------

void modes_suite(const SuiteConfig& cfg, std::vector<CheckRecord>& out) {
  Collector col(out, "modes");
  Rng rng(cfg.seed);
  const int d = 2;
  std::vector<Momentum> k4 = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  std::map<Momentum, Rat> energies;
  for (const auto& k : k4)
    energies[k] = Rat(rng.range(1, 5), rng.range(1, 3));
  // E_k = E_{-k}
  energies[{-1, 0}] = energies[{1, 0}];
  energies[{0, -1}] = energies[{0, 1}];
  ModeLattice lat(d, k4, true, energies);
  ModeLattice lat0(d, k4, false, energies);
  std::string inputs = "K4/d2";

  const Momentum k{1, 0}, kp{0, 1};

  col.run("phase_relations", "mode-phases", inputs, [&](CheckRecord& rec) {
    rec.pass = true;
    auto phase = [&](const Rat& c, const Momentum& p, const Momentum& q) {
      return lat.twist_phase(c, p, q);
    };
    auto expect1 = [&](const ClassicalModePoly& prod, const Phase& ph) {
      // exactly one term carrying the given phase
      if (prod.terms.size() != 1) return false;
      return prod.terms.begin()->first.phase == ph;
    };
    Momentum mk{-1, 0}, mkp{0, -1};
    (void)mk;
    (void)mkp;
    // a(k) * a(k') = e^{-(i/2) th(k,k')} a(k) a(k')
    if (!expect1(mode_star(ClassicalModePoly::mode_a(k),
                           ClassicalModePoly::mode_a(kp), lat),
                 phase(Rat(-1, 2), k, kp)))
      rec.pass = false;
    // a*(k) * a*(k') = e^{-(i/2) th(k,k')} a*(k) a*(k')
    if (!expect1(mode_star(ClassicalModePoly::mode_astar(k),
                           ClassicalModePoly::mode_astar(kp), lat),
                 phase(Rat(-1, 2), k, kp)))
      rec.pass = false;
    // a*(k) * a(k') = e^{+(i/2) th(k,k')} a*(k) a(k')
    if (!expect1(mode_star(ClassicalModePoly::mode_astar(k),
                           ClassicalModePoly::mode_a(kp), lat),
                 phase(Rat(1, 2), k, kp)))
      rec.pass = false;
    // a(k) * a*(k') = e^{+(i/2) th(k,k')} a(k) a*(k')
    if (!expect1(mode_star(ClassicalModePoly::mode_a(k),
                           ClassicalModePoly::mode_astar(kp), lat),
                 phase(Rat(1, 2), k, kp)))
      rec.pass = false;
  });

  col.run("mode_poisson_brackets", "mode-poisson", inputs, [&](CheckRecord& rec) {
    rec.pass = true;
    // {a(k), a*(k')}_star = -(i/hbar) delta_{kk'}
    ClassicalModePoly b1 = mode_poisson_star(
        ClassicalModePoly::mode_a(k), ClassicalModePoly::mode_astar(k), lat);
    ClassicalModePoly expect =
        ClassicalModePoly::one(Scalar(GaussRat(Rat(0), Rat(-1)), -1));
    if (!(b1 == expect)) rec.pass = false;
    if (!mode_poisson_star(ClassicalModePoly::mode_a(k),
                           ClassicalModePoly::mode_astar(kp), lat)
             .is_zero())
      rec.pass = false;
    if (!mode_poisson_star(ClassicalModePoly::mode_a(k),
                           ClassicalModePoly::mode_a(kp), lat)
             .is_zero())
      rec.pass = false;
    if (!mode_poisson_star(ClassicalModePoly::mode_astar(k),
                           ClassicalModePoly::mode_astar(kp), lat)
             .is_zero())
      rec.pass = false;
  });

  col.run("star_assoc_rcomm", "mode-star", inputs, [&](CheckRecord& rec) {
    Rng crng(cfg.seed + 12);
    std::vector<long> acc(1, 0);
    for (int t = 0; t < 20; ++t) {
      ClassicalModePoly f = random_mode_monomial(crng, lat, 3);
      ClassicalModePoly g = random_mode_monomial(crng, lat, 3);
      ClassicalModePoly h = random_mode_monomial(crng, lat, 3);
      ClassicalModePoly lhs = mode_star(mode_star(f, g, lat), h, lat);
      ClassicalModePoly rhs = mode_star(f, mode_star(g, h, lat), lat);
      acc[0] += (lhs - rhs).term_count();
      // R-commutativity: F * G = Rbar^a(G) * Rbar_a(F)
      ClassicalModePoly rc = mode_star(f, g, lat);
      ClassicalModePoly rhs2;
      for (const auto& [kg, cg] : g.terms)
        for (const auto& [kf, cf] : f.terms) {
          ClassicalModePoly pg, pf;
          pg.add_term(kg, cg);
          pf.add_term(kf, cf);
          ClassicalModePoly s = mode_star(pg, pf, lat);
          Phase rph = lat.twist_phase(Rat(1), kg.momentum(d),
                                      kf.momentum(d));
          rhs2 += scalar_mul(Scalar(GaussRat(1), 0, rph), s);
        }
      acc[0] += (rc - rhs2).term_count();
    }
    set_profile(rec, acc);
  });

  col.run("star_bracket_laws", "mode-bracket-laws", inputs, [&](CheckRecord& rec) {
    Rng crng(cfg.seed + 13);
    std::vector<long> acc(1, 0);
    auto rbar_pairs = [&](const ClassicalModePoly& a,
                          const ClassicalModePoly& b) {
      std::vector<std::tuple<Phase, ClassicalModePoly, ClassicalModePoly>>
          out;
      for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) {
          ClassicalModePoly pa, pb;
          pa.add_term(ka, ca);
          pb.add_term(kb, cb);
          out.emplace_back(
              lat.twist_phase(Rat(1), ka.momentum(d), kb.momentum(d)), pa,
              pb);
        }
      return out;
    };
    for (int t = 0; t < 15; ++t) {
      ClassicalModePoly f = random_mode_monomial(crng, lat, 2);
      ClassicalModePoly g = random_mode_monomial(crng, lat, 2);
      ClassicalModePoly h = random_mode_monomial(crng, lat, 2);
      // antisymmetry
      ClassicalModePoly res = mode_poisson_star(f, g, lat);
      for (const auto& [ph, gg, ff] : rbar_pairs(g, f))
        res += scalar_mul(Scalar(GaussRat(1), 0, ph),
                          mode_poisson_star(gg, ff, lat));
      acc[0] += res.term_count();
      // Leibniz
      ClassicalModePoly lres =
          mode_poisson_star(f, mode_star(g, h, lat), lat);
      lres -= mode_star(mode_poisson_star(f, g, lat), h, lat);
      for (const auto& [ph, gg, ff] : rbar_pairs(g, f))
        lres -= scalar_mul(Scalar(GaussRat(1), 0, ph),
                           mode_star(gg, mode_poisson_star(ff, h, lat), lat));
      acc[0] += lres.term_count();
      // Jacobi
      ClassicalModePoly jres =
          mode_poisson_star(f, mode_poisson_star(g, h, lat), lat);
      jres -= mode_poisson_star(mode_poisson_star(f, g, lat), h, lat);
      for (const auto& [ph, gg, ff] : rbar_pairs(g, f))
        jres -= scalar_mul(
            Scalar(GaussRat(1), 0, ph),
            mode_poisson_star(gg, mode_poisson_star(ff, h, lat), lat));
      acc[0] += jres.term_count();
    }
    set_profile(rec, acc);
  });

  col.run("ccr", "star-ccr", inputs, [&](CheckRecord& rec) {
    rec.pass = true;
    // [ahat(k), ahat+(k')]_star = delta_{kk'}
    QuantumElement c1 = star_commutator(QuantumElement::op_a(k),
                                        QuantumElement::op_adag(k), lat);
    if (!(c1 == QuantumElement::one())) rec.pass = false;
    QuantumElement c2 = star_commutator(QuantumElement::op_a(k),
                                        QuantumElement::op_adag(kp), lat);
    if (!c2.is_zero()) rec.pass = false;
    if (!star_commutator(QuantumElement::op_a(k), QuantumElement::op_a(kp),
                         lat)
             .is_zero())
      rec.pass = false;
    if (!star_commutator(QuantumElement::op_adag(k),
                         QuantumElement::op_adag(kp), lat)
             .is_zero())
      rec.pass = false;
  });

  col.run("acomm_equivalence", "acomm", inputs, [&](CheckRecord& rec) {
    rec.pass = true;
    for (const auto& kk : lat.momenta)
      for (const auto& kq : lat.momenta) {
        // ahat(k) * ahat+(k') - e^{-i th(k',k)} ahat+(k') * ahat(k)
        QuantumElement lhs =
            qmode_star(QuantumElement::op_a(kk),
                       QuantumElement::op_adag(kq), lat);
        QuantumElement sw = qmode_star(QuantumElement::op_adag(kq),
                                       QuantumElement::op_a(kk), lat);
        lhs -= scalar_mul(
            Scalar(GaussRat(1), 0, lat.twist_phase(Rat(-1), kq, kk)), sw);
        QuantumElement expect =
            kk == kq ? QuantumElement::one() : QuantumElement::zero();
        if (!(lhs == expect)) rec.pass = false;
        // expanding the star products recovers the undeformed CCR
        QuantumElement plain =
            qmode_mul(QuantumElement::op_a(kk), QuantumElement::op_adag(kq)) -
            qmode_mul(QuantumElement::op_adag(kq), QuantumElement::op_a(kk));
        if (!(plain == expect)) rec.pass = false;
      }
  });

  col.run("field_bracket_k2", "field-bracket", "K2/d2", [&](CheckRecord& rec) {
    ModeLattice l2(d, {{1, 0}, {-1, 0}}, true,
                   {{{1, 0}, Rat(3, 2)}, {{-1, 0}, Rat(3, 2)}});
    FieldBracketReport r = field_bracket_check(l2);
    rec.per_order = {r.residual_terms};
    rec.pass = r.pass();
  });

  col.run("field_bracket_k4", "field-bracket", inputs, [&](CheckRecord& rec) {
    FieldBracketReport r = field_bracket_check(lat);
    rec.per_order = {r.residual_terms};
    rec.pass = r.pass();
  });

  col.run("correspondence_quadratic", "correspondence", inputs, [&](CheckRecord& rec) {
    rec.pass = true;
    std::vector<ClassicalModePoly> gens;
    for (const auto& kk : lat.momenta) {
      gens.push_back(ClassicalModePoly::mode_a(kk));
      gens.push_back(ClassicalModePoly::mode_astar(kk));
    }
    for (const auto& f : gens)
      for (const auto& g : gens) {
        CorrespondenceReport r = correspondence_residual(f, g, lat);
        if (!r.exact_zero) rec.pass = false;
      }
  });

  col.run("correspondence_leading", "correspondence", inputs, [&](CheckRecord& rec) {
    Rng crng(cfg.seed + 14);
    rec.pass = true;
    long remainder_terms = 0;
    for (int t = 0; t < cfg.mode_pairs; ++t) {
      ClassicalModePoly f = random_mode_monomial(crng, lat, 4);
      ClassicalModePoly g = random_mode_monomial(crng, lat, 4);
      CorrespondenceReport r = correspondence_residual(f, g, lat);
      if (!r.leading_vanishes) rec.pass = false;
      remainder_terms += r.residual.term_count();
    }
    rec.per_order = {remainder_terms};  // higher-hbar remainder, reported
    // pass is about the leading order only
  });

  col.run("theta_zero_degeneration", "mode-poisson", inputs,
          [&](CheckRecord& rec) {
            Rng crng(cfg.seed + 15);
            rec.pass = true;
            for (int t = 0; t < 15; ++t) {
              ClassicalModePoly f = random_mode_monomial(crng, lat0, 3);
              ClassicalModePoly g = random_mode_monomial(crng, lat0, 3);
              if (!(mode_star(f, g, lat0) == mode_mul(f, g, lat0)))
                rec.pass = false;
              if (!(mode_poisson_star(f, g, lat0) ==
                    mode_poisson(f, g, lat0)))
                rec.pass = false;
            }
            QuantumElement qa = QuantumElement::op_a(k);
            QuantumElement qd = QuantumElement::op_adag(kp);
            if (!(qmode_star(qa, qd, lat0) == qmode_mul(qa, qd)))
              rec.pass = false;
          });
}

}  // namespace

std::vector<CheckRecord> run_poisson_scenario(const PhaseScenario& sc,
                                              const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;
  Collector col(out, "poisson_scenario");
  PhaseSpaceContext ps(sc.n, sc.theta, cfg.order);
  std::string inputs = "n=" + std::to_string(sc.n) + "/" +
                       render(sc.hamiltonian, phase_space_names(sc.n));

  col.run("compatibility", "twist-compatibility", inputs,
          [&](CheckRecord& rec) { rec.pass = ps.compatible(); });

  col.run("star_laws", "star-jacobi", inputs, [&](CheckRecord& rec) {
    Rng crng(cfg.seed);
    std::vector<long> acc(1, 0);
    for (int t = 0; t < 10; ++t) {
      FunctionExpr f = random_polynomial(crng, ps.dim(), 2);
      FunctionExpr g = random_polynomial(crng, ps.dim(), 2);
      FunctionExpr h = random_polynomial(crng, ps.dim(), 2);
      FunctionExpr anti = star_poisson(f, g, ps);
      for (const auto& [c, gg, ff] : absorbed_pairs(ps, rinv_coeff(), g, f))
        anti += c * star_poisson(gg, ff, ps);
      acc[0] += (long)anti.terms.size();
      FunctionExpr jac = star_poisson(f, star_poisson(g, h, ps), ps);
      jac -= star_poisson(star_poisson(f, g, ps), h, ps);
      for (const auto& [c, gg, ff] : absorbed_pairs(ps, rinv_coeff(), g, f))
        jac -= c * star_poisson(gg, star_poisson(ff, h, ps), ps);
      acc[0] += (long)jac.terms.size();
      acc[0] += (long)(star_poisson(f, g, ps) -
                       star_poisson_explicit(f, g, ps))
                    .terms.size();
    }
    set_profile(rec, acc);
  });

  col.run("constants_of_motion", "constants-of-motion", inputs, [&](CheckRecord& rec) {
    ConstantsReport cr =
        constants_check(sc.hamiltonian, sc.observables, ps);
    std::vector<long> acc(1, 0);
    for (long v : cr.bracket_residuals) acc[0] += v;
    for (long v : cr.closure_residuals) acc[0] += v;
    set_profile(rec, acc);
  });

  col.run("time_evolution", "constants-of-motion", inputs, [&](CheckRecord& rec) {
    // for a twist-invariant Hamiltonian the star evolution is classical
    rec.pass = true;
    bool invariant = true;
    for (const auto& g : ps.generators)
      if (!lie(g, sc.hamiltonian).is_zero()) invariant = false;
    if (invariant) {
      Rng crng(cfg.seed + 1);
      for (int t = 0; t < 10; ++t) {
        FunctionExpr f = random_polynomial(crng, ps.dim(), 3);
        if (!(time_evolution(sc.hamiltonian, f, ps) ==
              -poisson(sc.hamiltonian, f, ps.lambda)))
          rec.pass = false;
      }
    }
  });

  return out;
}

std::vector<CheckRecord> run_suite(const std::string& name,
                                   const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;
  if (name == "twist")
    twist_suite(cfg, out);
  else if (name == "starcalc")
    starcalc_suite(cfg, out);
  else if (name == "geometry")
    geometry_suite(cfg, out);
  else if (name == "poisson")
    poisson_suite(cfg, out);
  else if (name == "modes")
    modes_suite(cfg, out);
  else
    throw std::invalid_argument("unknown suite '" + name + "'");
  return out;
}

std::vector<CheckRecord> run_suites(const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;
  const auto& names = cfg.suites.empty() ? known_suites() : cfg.suites;
  for (const auto& n : names) {
    auto part = run_suite(n, cfg);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace star
