// Acceptance gate: runs every criterion of the exact-residual contract and
// prints one pass/fail line per criterion. All residuals are algebraic
// zeros, never tolerances. Exit code 0 iff every criterion passes.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "starcalc/parse.hpp"
#include "starcalc/suites.hpp"
#include "support/classical_oracle.hpp"

using namespace star;

namespace {

int failures = 0;

void criterion(int n, const std::string& name, bool ok,
               const std::string& extra = "") {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << name;
  if (!extra.empty()) std::cout << " (" << extra << ")";
  std::cout << "\n";
  if (!ok) ++failures;
}

// every record whose id contains one of the fragments must pass, and each
// fragment must match at least one record
bool all_pass(const std::vector<CheckRecord>& recs,
              const std::vector<std::string>& frags) {
  for (const auto& frag : frags) {
    bool seen = false;
    for (const auto& r : recs)
      if (r.id.find(frag) != std::string::npos) {
        seen = true;
        if (!r.pass) return false;
      }
    if (!seen) return false;
  }
  return true;
}

double ms_of(const std::vector<CheckRecord>& recs,
             const std::vector<std::string>& frags) {
  double total = 0;
  for (const auto& r : recs)
    for (const auto& frag : frags)
      if (r.id.find(frag) != std::string::npos) {
        total += r.wall_ms;
        break;
      }
  return total;
}

std::string fmt_s(double ms) {
  char buf[32];
  snprintf(buf, sizeof buf, "%.1f s", ms / 1000.0);
  return buf;
}

// criterion 11: identity twist against independently implemented classical
// operations, across the full corpus of every layer
bool degeneration_against_oracles() {
  bool ok = true;
  const int dim = 2;
  StarContext ctx(TwistSpec::identity(dim), 4);
  Rng rng(42);
  for (int t = 0; t < 50; ++t) {
    FunctionExpr f = random_polynomial(rng, dim, 3);
    FunctionExpr g = random_polynomial(rng, dim, 3);
    VectorField u = random_vector_field(rng, dim, 3);
    VectorField v = random_vector_field(rng, dim, 3);
    OneForm w = random_one_form(rng, dim, 2);
    if (!(star_fn(f, g, ctx) == lift(f * g, 4))) ok = false;
    if (!(star_lie_bracket(u, v, ctx) == lift(lie_bracket(u, v), 4)))
      ok = false;
    if (!(pairing_star(lift(u, 4), lift(w, 4), ctx) ==
          lift(pairing(u, w), 4)))
      ok = false;
    if (!(star_lie_derivative(lift(u, 4), lift(f, 4), ctx) ==
          lift(u.apply(f), 4)))
      ok = false;
    ExteriorForm w1 = ExteriorForm::from_one_form(w);
    ExteriorForm w2 =
        ExteriorForm::from_one_form(random_one_form(rng, dim, 2));
    if (!(wedge_star(lift(w1, 4), lift(w2, 4), ctx) ==
          lift(wedge(w1, w2), 4)))
      ok = false;
    TensorField t1 = TensorField::from(u);
    TensorField t2 = TensorField::from(w);
    if (!(tensor_star(lift(t1, 4), lift(t2, 4), ctx) ==
          lift(tensor_product(t1, t2), 4)))
      ok = false;
  }
  // geometry layer against the classical oracle
  StarContext gctx(TwistSpec::identity(3), 3);
  Rng grng(43);
  for (int c = 0; c < 3; ++c) {
    FrameConnection conn = random_connection(grng, 3, 3);
    CovEngine eng(conn, gctx);
    for (int t = 0; t < 2; ++t) {
      VfSeries u = lift(random_vector_field(grng, 3, 2), 3);
      VfSeries v = lift(random_vector_field(grng, 3, 2), 3);
      VfSeries z = lift(random_vector_field(grng, 3, 1), 3);
      if (!(eng.cov(u, v) == oracle::classical_cov(u, v, conn))) ok = false;
      if (!(eng.torsion(u, v) == oracle::classical_torsion(u, v, conn)))
        ok = false;
      if (!(eng.curvature(u, v, z) ==
            oracle::classical_curvature(u, v, z, conn)))
        ok = false;
    }
    auto [tt, rt] = extract_coeffs(conn, gctx);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) {
          if (!(tt.T(i, j, l) ==
                oracle::classical_torsion_coeff(conn, i, j, l)))
            ok = false;
          for (int k = 0; k < 3; ++k)
            if (!(rt.R(i, j, k, l) ==
                  oracle::classical_curvature_coeff(conn, i, j, k, l)))
              ok = false;
        }
  }
  // poisson layer
  {
    std::vector<std::vector<Rat>> z2(2, std::vector<Rat>(2, Rat(0)));
    PhaseSpaceContext ps0(2, z2, 4);
    Rng prng(44);
    for (int t = 0; t < 30; ++t) {
      FunctionExpr f = random_polynomial(prng, 4, 3);
      FunctionExpr g = random_polynomial(prng, 4, 3);
      if (!(star_poisson(f, g, ps0) == poisson(f, g, ps0.lambda))) ok = false;
      if (!(star_fn_absorbed(f, g, ps0) == f * g)) ok = false;
    }
  }
  // mode layer
  {
    ModeLattice lat0(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, false);
    Rng mrng(45);
    for (int t = 0; t < 30; ++t) {
      ClassicalModePoly f = random_mode_monomial(mrng, lat0, 3);
      ClassicalModePoly g = random_mode_monomial(mrng, lat0, 3);
      if (!(mode_star(f, g, lat0) == mode_mul(f, g, lat0))) ok = false;
      if (!(mode_poisson_star(f, g, lat0) == mode_poisson(f, g, lat0)))
        ok = false;
      QuantumElement qf = quantize(f), qg = quantize(g);
      if (!(qmode_star(qf, qg, lat0) == qmode_mul(qf, qg))) ok = false;
    }
  }
  return ok;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run_cmd(const std::string& cmd) { return std::system(cmd.c_str()); }

bool byte_stable_reports(const std::string& bin) {
  std::string base = bin +
                     " verify --seed 42 --quiet --out /tmp/acceptance_rep_";
  if (run_cmd(base + "1.json > /dev/null") != 0) return false;
  if (run_cmd(base + "2.json > /dev/null") != 0) return false;
  auto stable = [](const std::string& p) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(slurp(p));
    j.erase("timing");  // the single isolated nondeterministic subtree
    return j.dump(2);
  };
  return stable("/tmp/acceptance_rep_1.json") ==
         stable("/tmp/acceptance_rep_2.json");
}

}  // namespace

int main(int argc, char** argv) {
  SuiteConfig cfg;  // defaults: order 4, seed 42, full corpus sizes
  std::vector<CheckRecord> recs = run_suites(cfg);

  criterion(1, "twist cocycle and counit residuals vanish through order 4",
            all_pass(recs, {"twist/moyal_r2_0/cocycle", "twist/moyal_r3_1/cocycle",
                            "twist/moyal_r2_2/cocycle", "twist/jordanian/cocycle",
                            "twist/ext_jordanian/cocycle", "/counit"}),
            fmt_s(ms_of(recs, {"/cocycle", "/counit"})) + ", expected < 20 s");

  criterion(2, "star-product associativity on 50 seeded triples per family",
            all_pass(recs, {"starcalc/moyal/assoc", "starcalc/jordanian/assoc",
                            "starcalc/ext_jordanian/assoc"}),
            fmt_s(ms_of(recs, {"/assoc"})) + ", expected < 30 s");

  criterion(3, "R-commutativity on 50 pairs per family",
            all_pass(recs, {"starcalc/moyal/r_commutativity",
                            "starcalc/jordanian/r_commutativity",
                            "starcalc/ext_jordanian/r_commutativity"}));

  criterion(4, "star-Lie antisymmetry, Jacobi, and the deformed commutator",
            all_pass(recs, {"/lie_antisymmetry", "/lie_jacobi",
                            "/bracket_as_commutator"}));

  criterion(5, "X/D roundtrip and D homomorphism through order 3",
            all_pass(recs, {"/xd_roundtrip", "/d_homomorphism"}));

  criterion(6, "Cartan and Bianchi identities for 10 connections per family",
            all_pass(recs, {"geometry/moyal/cartan_bianchi",
                            "geometry/jordanian/cartan_bianchi",
                            "geometry/ext_jordanian/cartan_bianchi",
                            "/flat_control"}),
            fmt_s(ms_of(recs, {"/cartan_bianchi", "/flat_control"})) +
                ", expected < 60 s");

  criterion(7, "torsion/curvature star-antisymmetry and A_star-linearity",
            all_pass(recs, {"/tr_antisymmetry", "/tr_linearity"}));

  criterion(8, "star-Poisson laws, route equivalence, morphism, deformation",
            all_pass(recs, {"poisson/star_antisymmetry", "poisson/star_jacobi",
                            "poisson/star_leibniz", "poisson/explicit_form",
                            "poisson/hamiltonian_morphism",
                            "poisson/deformation_visible",
                            "poisson/compatibility"}));

  criterion(9, "mode phase relations, CCR, acomm, and field brackets",
            all_pass(recs, {"modes/phase_relations",
                            "modes/mode_poisson_brackets", "modes/ccr",
                            "modes/acomm_equivalence",
                            "modes/field_bracket_k2",
                            "modes/field_bracket_k4"}),
            fmt_s(ms_of(recs, {"modes/"})) + ", expected < 10 s");

  criterion(10, "correspondence principle at leading hbar order",
            all_pass(recs, {"modes/correspondence_quadratic",
                            "modes/correspondence_leading"}));

  criterion(11, "identity twist degenerates to the classical oracles",
            degeneration_against_oracles() &&
                all_pass(recs, {"identity/full_degeneration",
                                "/lambda0_classical",
                                "poisson/theta_zero_degeneration",
                                "modes/theta_zero_degeneration"}));

  bool det = true;
  if (argc > 1) {
    det = byte_stable_reports(argv[1]);
  } else {
    // without the CLI path, compare two in-process runs record by record
    std::vector<CheckRecord> again = run_suites(cfg);
    det = again.size() == recs.size();
    for (size_t i = 0; det && i < recs.size(); ++i)
      det = again[i].id == recs[i].id && again[i].pass == recs[i].pass &&
            again[i].per_order == recs[i].per_order &&
            again[i].inputs_digest == recs[i].inputs_digest;
  }
  criterion(12, "verify reports are byte-stable for a fixed seed", det);

  std::cout << (failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE OK") << " ("
            << (12 - failures) << "/12 criteria)\n";
  return failures ? 1 : 0;
}
