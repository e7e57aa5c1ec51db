#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "fracp/grid.hpp"

namespace fracp {

/// A weight function on the interval.  Power weights are negative powers
/// rho(x)^(-beta) of the boundary distance rho; they may be singular on the
/// boundary but are finite at every grid node.  Tabulated weights only have
/// nodal values and support no off-node evaluation.
class WeightSpec {
public:
    enum class Kind { constant, power, scaled_power, tabulated };

    static WeightSpec constant(double c) { return WeightSpec(Kind::constant, c, 0.0, {}); }
    static WeightSpec power(double beta) { return WeightSpec(Kind::power, 1.0, beta, {}); }
    static WeightSpec scaled_power(double c, double beta) {
        return WeightSpec(Kind::scaled_power, c, beta, {});
    }
    static WeightSpec tabulated(std::vector<double> nodal) {
        return WeightSpec(Kind::tabulated, 0.0, 0.0, std::move(nodal));
    }

    Kind kind() const { return kind_; }
    double scale() const { return c_; }
    double beta() const { return beta_; }
    bool is_power_like() const { return kind_ == Kind::power || kind_ == Kind::scaled_power; }
    const std::vector<double>& table() const { return table_; }

    /// Value at an interior point x of (a, b).  Throws for tabulated weights.
    double value_at(double x, const Grid& g) const;

    /// Value at node i of g.
    double node_value(const Grid& g, int i) const;

private:
    WeightSpec(Kind k, double c, double beta, std::vector<double> table)
        : kind_(k), c_(c), beta_(beta), table_(std::move(table)) {}

    Kind kind_;
    double c_;
    double beta_;
    std::vector<double> table_;
};

}  // namespace fracp
