#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "starcalc/corpus.hpp"
#include "starcalc/geometry.hpp"
#include "starcalc/modes.hpp"
#include "starcalc/poisson.hpp"

namespace star {

struct CheckRecord {
  std::string id;
  std::string tag;  // equation tag the check certifies
  std::string inputs_digest;
  std::vector<long> per_order;  // residual term counts per lambda order
  bool pass = false;
  double wall_ms = 0.0;
};

struct SuiteConfig {
  std::vector<std::string> suites;  // empty = all
  std::string family;               // empty = all twist families
  int order = 4;
  uint64_t seed = 42;
  int eval_degree = 6;
  int triples = 50;       // associativity / R-commutativity corpus
  int lie_triples = 30;   // star-Lie corpus
  int xd_elements = 20;   // X/D map corpus
  int connections = 10;   // geometry corpus per family
  int geometry_order = 3;
  int xd_order = 3;
  int mode_pairs = 30;    // correspondence corpus
};

// Phase-space scenario contents: canonical T*R^n data plus a Hamiltonian
// and observables to run the constants-of-motion checks against.
struct PhaseScenario {
  int n = 2;
  std::vector<std::vector<Rat>> theta;
  FunctionExpr hamiltonian;
  std::vector<FunctionExpr> observables;
};

// star-Poisson checks driven by a scenario instead of the built-in corpus
std::vector<CheckRecord> run_poisson_scenario(const PhaseScenario& sc,
                                              const SuiteConfig& cfg);

const std::vector<std::string>& known_suites();

std::string digest(const std::string& text);

std::vector<CheckRecord> run_suite(const std::string& name,
                                   const SuiteConfig& cfg);

// every suite named in cfg.suites (all when empty), in canonical order
std::vector<CheckRecord> run_suites(const SuiteConfig& cfg);

}  // namespace star
