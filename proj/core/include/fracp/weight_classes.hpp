#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracp/energy.hpp"
#include "fracp/grid.hpp"
#include "fracp/weight.hpp"

namespace fracp {

/// The four admissibility classes for boundary-singular weights.  Membership
/// of a weight h is witnessed by exponents (a, r) with h rho^(sa) in L^r and
/// an exponent-balance inequality per class:
///
///   Aq:      1/r + q/ps            < 1          (a = 0)
///   Bq:      1/r + a/p + (q-a)/ps  < 1,         a in [0, q-1]
///   Btilde:  1/r + a/p + (q-1-a)/ps < sp/N,     a in [0, q-1]
///   Bt:      1/r + a/p + (t-a)/q   <= 1,        a in [0, t-1]
///
/// where ps = Np/(N-sp) is the critical exponent (infinite for N <= sp, in
/// which case any x/ps term is 0).
enum class WeightClass { Aq, Bq, Btilde, Bt };

std::string class_name(WeightClass c);

struct ClassQuery {
    WeightClass cls = WeightClass::Bq;
    int N = 1;  // symbolic spatial dimension in the exponent algebra
    double s = 0.5;
    double p = 2.0;
    double q = 2.0;
    double t = 1.0;  // only for Bt
};

/// Np/(N - sp), or +infinity when N <= sp.
double critical_exponent(int N, double s, double p);

/// A verified witness (a, r) for class membership, together with the slack of
/// the class inequality, the integrability slack of |h rho^(sa)|^r near the
/// boundary (1 - (beta - sa) r for power weights), and the induced companion
/// exponent: the Hoelder exponent b for Aq/Bq/Bt, or tau for Btilde.
struct AdmissibilityCertificate {
    WeightClass cls = WeightClass::Bq;
    int N = 1;
    double s = 0.5, p = 2.0, q = 2.0, t = 1.0;
    double a = 0.0;
    double r = 2.0;
    double slack = 0.0;
    double integrability_slack = 0.0;
    double b_or_tau = 0.0;
    bool empirical = false;  // tabulated weight: integrability checked by grid sums only

    /// Re-checks the class inequality and (for power weights) the
    /// integrability window; throws std::logic_error on violation.
    void validate(const WeightSpec& w) const;
};

struct Refusal {
    std::string binding_constraint;
    /// Supremal feasible beta for power weights, by bisection to 1e-6.
    std::optional<double> beta_star;
};

struct CheckOutcome {
    std::optional<AdmissibilityCertificate> certificate;
    std::optional<Refusal> refusal;

    bool admissible() const { return certificate.has_value(); }
};

/// Decide class membership by exhibiting a witness.  a is scanned on a
/// 2001-point uniform grid over its window; per a the feasible r-interval is
/// intersected in closed form from the class inequality and the
/// integrability constraint, and r is taken as the interval midpoint
/// (2 r_min when unbounded above).  Among feasible a the witness with the
/// largest robustness min(slack, integrability_slack) is returned, ties
/// broken by smaller a then smaller r.
CheckOutcome check_class(const WeightSpec& w, const ClassQuery& cq);

/// Aq certificates embed into Bq with a = 0; Btilde embeds into Bq whenever
/// sp <= N.  Both conversions re-validate.
AdmissibilityCertificate to_Bq(const AdmissibilityCertificate& cert, const WeightSpec& w);

struct HolderReport {
    double lhs = 0.0;
    double factor_r = 0.0;      // |h rho^(sa)|_r
    double factor_hardy = 0.0;  // |u/rho^s|_p^a
    double factor_u = 0.0;      // |u|_b^(q-1-a)
    double factor_v = 0.0;      // |v|_b
    double ratio = 0.0;
    bool quadrature_warning = false;  // ratio > 1.01
};

/// Evaluate both sides of the weighted Hoelder chain
/// int |h| |u|^(q-1) |v| <= |h rho^(sa)|_r |u/rho^s|_p^a |u|_b^(q-1-a) |v|_b
/// on the grid, with all five sums over the same midpoint weights.
HolderReport holder_estimate(const WeightSpec& w, const AdmissibilityCertificate& cert,
                             const DiscreteFunction& u, const DiscreteFunction& v,
                             const EnergyAssembly& E);

struct TauReport {
    double tau = 0.0;
    double n_over_sp = 0.0;
    std::vector<double> ratios;      // |K|u|^(q-1)|_tau / ||u||^(q-1) per family member
    double empirical_constant = 0.0; // max ratio
};

/// Summability estimate |K |u|^(q-1)|_tau <= C ||u||^(q-1) for a Btilde
/// certificate; reports tau > N/sp and the empirical constant over a family
/// of functions.
TauReport tau_estimate(const WeightSpec& w, const AdmissibilityCertificate& cert,
                       const std::vector<DiscreteFunction>& family, const EnergyAssembly& E);

struct YoungReport {
    double m = 0.0;    // from a/m + (t-a)/q = 1 (a > 0); m = 0 when a = 0
    double eps = 0.0;
    double c_eps = 0.0;  // fitted max over the family of (int|K||u|^t - eps|u|_q^q)/||u||^m
    std::vector<double> lhs_values;
};

/// Split int |K| |u|^t <= C(eps) ||u||^m + eps |u|_q^q for a Bt certificate;
/// verifies m < p and fits C(eps) over the supplied family.
YoungReport young_split(const WeightSpec& w, const AdmissibilityCertificate& cert,
                        const std::vector<DiscreteFunction>& family, const EnergyAssembly& E,
                        double eps);

}  // namespace fracp
