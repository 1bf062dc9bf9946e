#pragma once

#include <string>
#include <vector>

#include "starcalc/fields.hpp"

namespace star {

// Parses polynomial / plane-wave expressions over named coordinates, e.g.
// "x1^2*x2 - 3/2*x2 + i*E[1,0]". Default names are x1..xn; phase-space
// callers pass x1..xn,p1..pn. Throws std::invalid_argument on bad input.
FunctionExpr parse_function(const std::string& text, int dim,
                            const std::vector<std::string>& names = {});

// component list "v1, v2, ..." (one expression per coordinate direction)
VectorField parse_vector_field(const std::vector<std::string>& comps, int dim,
                               const std::vector<std::string>& names = {});

std::vector<std::string> default_names(int dim);
std::vector<std::string> phase_space_names(int n);

}  // namespace star
