#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fracp {

/// Cell-centered discretization of an open interval (a, b): n cells of width
/// h = (b-a)/n with nodes at the cell midpoints.  No node ever touches the
/// boundary, so weights that blow up on the boundary stay evaluable.
struct Grid {
    double a = -1.0;
    double b = 1.0;
    int n = 0;
    double h = 0.0;

    double node(int i) const { return a + (i + 0.5) * h; }
    double length() const { return b - a; }
    /// Midpoint-rule quadrature weight of cell i.
    double weight(int /*i*/) const { return h; }
    /// Distance from node i to the boundary of (a, b).
    double boundary_distance(int i) const {
        const double x = node(i);
        return std::min(x - a, b - x);
    }
    bool operator==(const Grid&) const = default;
};

/// Nodal values on a grid, extended by zero outside (a, b).  The zero
/// extension is a convention of every operation, not stored data.
struct DiscreteFunction {
    Grid grid;
    std::vector<double> values;

    int size() const { return static_cast<int>(values.size()); }
};

Grid build_grid(double a, double b, int n);

DiscreteFunction zero_function(const Grid& g);

/// (sum_i w_i |u_i|^p)^(1/p); requires p >= 1.
double lp_norm(const DiscreteFunction& u, double p);

/// Grid-weighted inner product sum_i w_i u_i v_i.
double weighted_dot(const DiscreteFunction& u, const DiscreteFunction& v);

/// u reflected about the interval midpoint.
DiscreteFunction reflect(const DiscreteFunction& u);

void require_same_grid(const Grid& ga, const Grid& gb, const char* where);
void require_consistent(const DiscreteFunction& u, const char* where);

}  // namespace fracp
