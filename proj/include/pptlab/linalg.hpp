#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pptlab/numeric.hpp"

namespace pptlab {

using RatMatrix = std::vector<std::vector<Rat>>;

/// One exact nullspace vector of an m x r rational matrix, or nullopt when the
/// kernel is trivial. Gaussian elimination over the rationals.
std::optional<std::vector<Rat>> nullspace_vector(const RatMatrix& m);

/// Rows separated by ';', entries by ',', entries rational ("2", "-1/3").
RatMatrix parse_matrix(const std::string& text);

}  // namespace pptlab
