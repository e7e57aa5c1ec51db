#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracp/energy.hpp"
#include "fracp/weight.hpp"
#include "fracp/weight_classes.hpp"

namespace fracp {

/// One power perturbation sign * K_i(x) |u|^(q_i - 2) u of the right-hand
/// side; odd in u by construction.
struct PerturbationTerm {
    WeightSpec weight = WeightSpec::constant(1.0);
    double exponent = 3.0;  // q_i
    double sign = 1.0;
    std::optional<AdmissibilityCertificate> certificate;  // class B_{q_i}^q
};

/// Problem data for  (-Delta)_p^s u = lambda h|u|^(p-2)u + K|u|^(q-2)u + g(x,u).
/// Mode is determined by q against p: q > p is the mountain-pass regime,
/// q < p the sublinear minimization regime.
struct ProblemSpec {
    double lambda = 0.0;
    std::optional<WeightSpec> h;
    std::optional<AdmissibilityCertificate> h_certificate;  // class B_p^q
    std::optional<WeightSpec> K;
    double q = 4.0;
    std::vector<PerturbationTerm> perturbations;
    bool odd = true;
};

/// Validate exponent windows, certificates and inf K > 0 against the
/// assembly; throws std::invalid_argument on violation.  N is the symbolic
/// dimension used for the certificate queries.
void validate_problem(const ProblemSpec& spec, const EnergyAssembly& E, int N = 1);

/// Superlinear regime only: run the class checks and fill the certificate
/// fields (h needs B_p^q, each perturbation weight B_{q_i}^q).  Throws
/// std::invalid_argument when a weight is refused.
void attach_certificates(ProblemSpec& spec, const EnergyAssembly& E, int N = 1);

struct SolveConfig {
    int max_iterations = 30000;  // descent / polish iterations
    double tolerance = 1e-8;     // sup-norm of the nodal gradient of Phi
    double armijo_c = 1e-4;
    double backtrack = 0.5;
    int path_points = 41;
    int max_sweeps = 20000;
    int max_restarts = 8;
    double dedup_rel = 1e-3;
    enum class Parity { none, even, odd };
    Parity parity = Parity::none;
};

struct SolveResult {
    DiscreteFunction u;
    double phi = 0.0;
    double residual = 0.0;
    std::string method;  // "minimize" | "mountain-pass"
    bool converged = false;
    bool trivial_refusal = false;  // zero forcing: only the trivial solution exists
    bool resonant = false;         // lambda >= lambda_1 of the weighted p-problem
    std::vector<double> path_max_history;  // mountain pass: max Phi per sweep
};

/// Phi(u) = energy(u)/p - (lambda/p) int h|u|^p - (1/q) int K|u|^q - int G(x,u).
double phi(const ProblemSpec& spec, const DiscreteFunction& u, const EnergyAssembly& E);

/// Nodal gradient of phi.
DiscreteFunction phi_gradient(const ProblemSpec& spec, const DiscreteFunction& u,
                              const EnergyAssembly& E);

/// Sublinear regime q < p: Armijo descent from a positive bump; restarts from
/// scaled seeds 2^j * bump if the descent stalls at zero.  Returns Phi(u) < 0
/// on success.
SolveResult minimize(const ProblemSpec& spec, const EnergyAssembly& E, const SolveConfig& cfg = {},
                     const std::optional<DiscreteFunction>& seed = std::nullopt);

/// Superlinear regime q > p: path-deformation mountain pass.  A 41-point path
/// from 0 to a ray endpoint with Phi < 0 is deformed by descending the path
/// maximum each sweep (with arclength reparametrization to keep the path
/// resolved across the crest), then the located pass point is polished to a
/// critical point by minimizing |grad Phi|^2.  Returns Phi(u) > 0.
SolveResult mountain_pass(const ProblemSpec& spec, const EnergyAssembly& E,
                          const SolveConfig& cfg = {},
                          const std::optional<DiscreteFunction>& seed = std::nullopt);

struct MultiResult {
    std::vector<SolveResult> solutions;  // distinct, sorted by Phi ascending
    bool shortfall = false;
};

/// Multiplicity proxy: mountain passes from deterministic seeds with
/// 0, 1, 2, ... sign changes (bump, dipole, tripole, ...), deduplicated
/// modulo sign.  Requires the odd flag and count <= 4.
MultiResult multi_solution_search(const ProblemSpec& spec, const EnergyAssembly& E,
                                  const SolveConfig& cfg, int count);

/// Dedup helper: |u_a -+ u_b|_2 > rel * max(|u_a|_2, |u_b|_2) for distinctness.
bool same_solution(const SolveResult& a, const SolveResult& b, double rel);

/// Solve (-Delta)_p^s u = f by descent on energy(u)/p - <f, u>_w; the
/// stopping tolerance is relative to the forcing scale.
DiscreteFunction solve_forced(const EnergyAssembly& E, const DiscreteFunction& f,
                              const SolveConfig& cfg = {});

}  // namespace fracp
