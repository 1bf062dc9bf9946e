#pragma once

#include <cstdint>

#include "starcalc/fields.hpp"
#include "starcalc/geometry.hpp"
#include "starcalc/modes.hpp"

namespace star {

// splitmix64: identical streams on every platform, unlike the std
// distributions, so reports stay byte-stable across toolchains
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // inclusive
  int range(int lo, int hi) {
    return lo + (int)(next() % (uint64_t)(hi - lo + 1));
  }

 private:
  uint64_t state_;
};

// default corpus: coefficients in {-2..2}, a handful of monomials
FunctionExpr random_polynomial(Rng& rng, int dim, int max_deg,
                               int max_terms = 3);
VectorField random_vector_field(Rng& rng, int dim, int max_deg);
OneForm random_one_form(Rng& rng, int dim, int max_deg);
std::vector<std::vector<Rat>> random_theta(Rng& rng, int dim);
// Gamma_{ij}^k of polynomial degree <= 2 and lambda-degree <= 1
FrameConnection random_connection(Rng& rng, int dim, int order);
ClassicalModePoly random_mode_monomial(Rng& rng, const ModeLattice& lat,
                                       int max_deg);

}  // namespace star
