#pragma once

#include <vector>

#include "fracp/energy.hpp"
#include "fracp/quadrature.hpp"
#include "fracp/weight.hpp"

namespace fracp {

struct RayleighConfig {
    int max_iterations = 5000;
    double tolerance = 1e-9;  // sup-norm of the Rayleigh-quotient gradient
    double armijo_c = 1e-4;
    double backtrack = 0.5;
    enum class Seed { positive_bump, random };
    Seed seed = Seed::positive_bump;
    unsigned long long seed_value = 1;
    bool record_history = false;
};

/// First eigenpair of the weighted problem.  The eigenfunction is normalized
/// to energy(u)/p = 1 with sum_i u_i w_i >= 0; residual is the sup-norm of
/// the nodal defect p grad(u) - lambda p m phi_p(u), where m are the (graded)
/// cell integrals of the weight.
struct EigenResult {
    double lambda = 0.0;
    DiscreteFunction u;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;  // Rayleigh quotient per iteration, if recorded
};

/// Minimize the Rayleigh quotient R(u) = energy(u) / int h|u|^p by projected
/// gradient descent (BB trial step, Armijo backtracking, renormalization to
/// the manifold energy/p = 1 each step).  Requires h > 0 somewhere on the
/// grid.
EigenResult first_eigenpair(const EnergyAssembly& E, const WeightSpec& h,
                            const RayleighConfig& cfg = {});

/// Sup-norm of the nodal defect of the weak eigen-equation at (lambda, u).
double nodal_residual(const EnergyAssembly& E, const WeightSpec& h, double lambda,
                      const DiscreteFunction& u);

struct SimplicityReport {
    double score = 0.0;       // 1 - |<u1,u2>_w| / (|u1|_{2,w} |u2|_{2,w})
    double lambda_gap = 0.0;  // |lambda1 - lambda2|
};

SimplicityReport simplicity_check(const EigenResult& r1, const EigenResult& r2);

/// Upper bounds for the first k minimax eigenvalues, obtained by restricting
/// the minimax to unit spheres of j-dimensional subspaces of the span of the
/// first k eigenvectors of the p = 2 pencil for the same (s, h).  The sphere
/// supremum is located by a 721-point angular sweep (j <= 2) or 2000 random
/// samples (j >= 3), refined by local ascent, and minimized over 50
/// orthogonal reshuffles of the basis.  Requires 1 <= k <= 8 and h > 0 at
/// every node.
std::vector<double> minimax_upper_bounds(const EnergyAssembly& E, const WeightSpec& h, int k);

}  // namespace fracp
