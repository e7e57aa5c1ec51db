#pragma once

#include <vector>

#include "fracp/grid.hpp"
#include "fracp/weight.hpp"

namespace fracp {

/// Boundary treatment for singular weights.  `automatic` turns the refined
/// quadrature on for power-like weights with beta > 1/2, where the plain
/// midpoint rule loses the O(h^(1-beta)) boundary mass.
enum class Grading { off, on, automatic };

/// Integral of the weight over each cell: w_i * h(x_i) by default; with
/// grading active, power-like weights use their exact per-cell antiderivative
/// masses (a boundary cell mass is +inf when beta >= 1, matching the
/// divergent integral).
std::vector<double> cell_weight_integrals(const Grid& g, const WeightSpec& w,
                                          Grading grading = Grading::automatic);

/// sum_i m_i |u_i|^t with m_i the cell integrals of the weight; cells where
/// u vanishes contribute nothing even against an infinite mass.  Throws a
/// numerical-domain error if the weight is non-finite at a node.
double weighted_integral(const DiscreteFunction& u, double t, const WeightSpec& w,
                         Grading grading = Grading::automatic);

}  // namespace fracp
