#pragma once

#include <vector>

#include "fracp/grid.hpp"

namespace fracp {

/// Discrete Gagliardo energy ||u||^p on a uniform midpoint grid.
///
/// The double integral over R x R splits exactly into an interior pair sum
/// and a closed-form exterior ("tail") part coming from the zero extension:
///
///   energy(u) = sum_{i<j} c_ij |u_i - u_j|^p + sum_i T_i |u_i|^p,
///
/// with c_ij = 2 w_i w_j / |x_i - x_j|^(1+sp) for non-adjacent cells, a 4x4
/// tensor Gauss value of the exact kernel integral over the cell pair for
/// adjacent cells, and T_i = (2/sp) w_i ((x_i-a)^(-sp) + (b-x_i)^(-sp)).
/// On a uniform grid c_ij depends only on |i-j|, so coefficients are stored
/// per distance; this also makes reflection symmetry exact.
class EnergyAssembly {
public:
    static EnergyAssembly assemble(const Grid& g, double s, double p);

    const Grid& grid() const { return grid_; }
    double s() const { return s_; }
    double p() const { return p_; }

    /// c_{ij} for i != j.
    double pair_coeff(int i, int j) const { return kappa_[i > j ? i - j : j - i]; }
    /// T_i.
    double tail(int i) const { return tail_[i]; }

    /// ||u||^p.
    double energy(const DiscreteFunction& u) const;
    /// The Omega x Omega pair sum alone.
    double interior_energy(const DiscreteFunction& u) const;
    /// The exterior tail sum alone.
    double tail_energy(const DiscreteFunction& u) const;

    /// <A(u), v> = sum_{i<j} c_ij phi_p(u_i-u_j)(v_i-v_j) + sum_i T_i phi_p(u_i) v_i.
    double weak_action(const DiscreteFunction& u, const DiscreteFunction& v) const;

    /// Nodal gradient of energy(u)/p; satisfies sum_i grad_i v_i = weak_action(u, v).
    DiscreteFunction gradient(const DiscreteFunction& u) const;

    /// Hessian of energy(u)/p applied to v (second derivative of the pair and
    /// tail sums); |t|^(p-2) is extended by 0 at t = 0 for p < 2.
    DiscreteFunction hessian_apply(const DiscreteFunction& u, const DiscreteFunction& v) const;

private:
    EnergyAssembly(Grid g, double s, double p) : grid_(g), s_(s), p_(p) {}

    Grid grid_;
    double s_;
    double p_;
    std::vector<double> kappa_;  // kappa_[d] = c_ij for |i-j| = d, d >= 1
    std::vector<double> tail_;
};

}  // namespace fracp
