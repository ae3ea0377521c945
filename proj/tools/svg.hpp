#pragma once

#include <string>
#include <utility>
#include <vector>

#include "loopforest/complex.hpp"
#include "loopforest/landscape.hpp"

namespace loopforest::cli {

/// Planar complex at time r (simplices with filtration <= r in grey) with
/// each cycle's support drawn on top in its own colour.
std::string cycles_svg(const FilteredComplex& k, double r,
                       const std::vector<std::vector<FacetId>>& cycles);

/// Landscapes sampled at `samples` evenly spaced abscissae over the union
/// of their supports, one polyline per curve.
std::string landscape_svg(const std::vector<std::pair<std::string, PiecewiseLinear>>& curves,
                          int samples);

}  // namespace loopforest::cli
