#pragma once

#include <vector>

#include "fracp/grid.hpp"

namespace fracp {

/// (1 - xi^2)^2 in the normalized coordinate xi in (-1, 1).
DiscreteFunction bump(const Grid& g);

/// k-lobe seed with k-1 sign changes: envelope * sin(k pi (xi+1)/2).
DiscreteFunction lobed_seed(const Grid& g, int lobes);

/// C-infinity bump exp(1 - 1/(1 - ((x-center)/width)^2)) supported on
/// (center - width, center + width).
DiscreteFunction smooth_bump(const Grid& g, double center, double width);

/// Deterministic family of smooth bumps of varying widths and offsets, all
/// supported strictly inside the interval.
std::vector<DiscreteFunction> bump_family(const Grid& g, int count);

/// Uniform(-1, 1) nodal values from a fixed-seed generator.
DiscreteFunction random_function(const Grid& g, unsigned long long seed);

}  // namespace fracp
