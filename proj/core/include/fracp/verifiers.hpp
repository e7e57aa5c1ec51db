#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracp/energy.hpp"
#include "fracp/weight.hpp"
#include "fracp/weight_classes.hpp"

namespace fracp {

/// Empirical Hardy constants.  The regime is read off sp: the sp > 1 and
/// sp < 1 statements are checked against the Omega x Omega part of the
/// discrete energy (the pair sum; plus |u|_p^p for sp < 1), the sp = 1
/// statement against the full energy including the tail.
struct HardyReport {
    std::string regime;  // "sp>1" | "sp<1" | "sp=1"
    double constant = 0.0;  // max ratio over the family
    int family_size = 0;
    std::vector<double> ratios;
    int skipped = 0;  // zero functions in the family
};

HardyReport hardy_constant(const EnergyAssembly& E, const std::vector<DiscreteFunction>& family);

struct MoserConfig {
    int max_levels = 60;
    double floor = 1e-14;
    double terminal = 1e-10;
    double delta_scale = 1.0;  // multiplier on the fitted delta target
    std::optional<double> scaling_override;  // bypass the delta-based scaling
};

/// De Giorgi-type L-infinity certificate for an eigenfunction.  u is scaled
/// so that |u_+|_q = delta with q = p r/(r-1) from the certificate's r, the
/// level masses U_k = |(u - (1 - 2^-k))_+|_q^p are computed, and the
/// superlinear recursion U_{k+1} <= C0 b^k U_k^(1+alpha) is audited at every
/// level above the floor.  alpha = (qbar - q)/qbar is analytic; (C0, b) are
/// fitted by log-linear regression on the first three nonzero iterates of a
/// probe run; delta = C0^(-1/(p alpha)) b^(-1/(p alpha^2)).
struct MoserCertificate {
    bool certified = false;
    double scaling = 1.0;     // factor applied to u
    double delta = 0.0;
    double c0 = 0.0, b = 0.0, alpha = 0.0;
    double q = 0.0, qbar = 0.0;
    std::vector<double> levels;       // U_0 .. U_k for the positive part
    int terminal_index = 0;
    double certified_bound = 0.0;     // |u|_inf <= 1/scaling
    double direct_max = 0.0;          // max_i |u_i|, for cross-checking
    int violation_index = -1;         // recursion violation, certificate refused
};

MoserCertificate moser_certify(const DiscreteFunction& u, double lambda, const WeightSpec& h,
                               const AdmissibilityCertificate& cert, const MoserConfig& cfg = {});

/// Homogeneity proxy of the summability estimate: the solution map of
/// (-Delta)_p^s u = f satisfies u(t f) = t^(1/(p-1)) u(f).  Solves for each
/// t and reports the sup-norm deviations, plus the exponent map r(q) of the
/// L^q -> L^r estimate with its two branches.
struct ScalingReport {
    std::vector<double> t_values;
    std::vector<double> deviations;  // |u(tf) - t^(1/(p-1)) u(f)|_inf / |u(f)|_inf
    double max_deviation = 0.0;
    bool converged = false;
};

ScalingReport scaling_check(const EnergyAssembly& E, const DiscreteFunction& f,
                            const std::vector<double>& t_values);

/// r(q) of the L^q estimate: N(p-1)q/(N-spq) for 1 < q < N/sp, infinity for
/// q > N/sp (undefined at the branch point).
std::optional<double> summability_exponent(int N, double s, double p, double q);

}  // namespace fracp
