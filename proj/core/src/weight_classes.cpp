#include "fracp/weight_classes.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracp/power.hpp"
#include "fracp/quadrature.hpp"

namespace fracp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kScanPoints = 2001;

/// x / ps with the convention x / inf = 0.
double over_critical(double x, double ps) { return std::isinf(ps) ? 0.0 : x / ps; }

struct Window {
    double a_max;        // witness window [0, a_max]
    double bound;        // right-hand side of the class inequality
    bool strict;         // strict or non-strict inequality
};

Window window_for(const ClassQuery& cq) {
    switch (cq.cls) {
        case WeightClass::Aq: return {0.0, 1.0, true};
        case WeightClass::Bq: return {cq.q - 1.0, 1.0, true};
        case WeightClass::Btilde: return {cq.q - 1.0, cq.s * cq.p / cq.N, true};
        case WeightClass::Bt: return {cq.t - 1.0, 1.0, false};
    }
    return {0.0, 1.0, true};
}

/// The exponent-sum term of the class inequality other than 1/r.
double fixed_part(const ClassQuery& cq, double ps, double a) {
    switch (cq.cls) {
        case WeightClass::Aq: return over_critical(cq.q, ps);
        case WeightClass::Bq: return a / cq.p + over_critical(cq.q - a, ps);
        case WeightClass::Btilde: return a / cq.p + over_critical(cq.q - 1.0 - a, ps);
        case WeightClass::Bt: return a / cq.p + (cq.t - a) / cq.q;
    }
    return 0.0;
}

struct RInterval {
    bool nonempty = false;
    double lo = 1.0;   // max(1, bound on 1/r); strict at 1
    double hi = kInf;  // integrability cap for power weights; strict
    double mid = 0.0;  // midpoint rule: (lo+hi)/2 bounded, 2*lo unbounded
};

RInterval r_interval(const ClassQuery& cq, double ps, double a, const WeightSpec& w) {
    const Window win = window_for(cq);
    const double gamma = win.bound - fixed_part(cq, ps, a);  // feasible iff 1/r < gamma (or <=)
    RInterval out;
    if (gamma <= 0.0) return out;

    const double lo = std::max(1.0, 1.0 / gamma);
    double hi = kInf;
    if (w.is_power_like()) {
        const double excess = w.beta() - cq.s * a;  // rho^(sa-beta) integrable iff excess*r < 1
        if (excess > 0.0) hi = 1.0 / excess;
    }
    // The usable set is (lo, hi) for the strict classes and [lo, hi) for the
    // non-strict one; the integrability cap is strict either way, so the set
    // is nonempty exactly when lo < hi, and the midpoint stays interior.
    if (!(lo < hi)) return out;
    out.nonempty = true;
    out.lo = lo;
    out.hi = hi;
    out.mid = std::isinf(hi) ? 2.0 * lo : 0.5 * (lo + hi);
    return out;
}

double holder_b(double q_minus_a, double one_over_r, double a_over_p) {
    // 1/r + a/p + (q-a)/b = 1
    const double denom = 1.0 - one_over_r - a_over_p;
    if (q_minus_a <= 0.0) return kInf;
    return q_minus_a / denom;
}

double integrability_slack_of(const WeightSpec& w, const ClassQuery& cq, double a, double r) {
    if (w.is_power_like()) return 1.0 - (w.beta() - cq.s * a) * r;
    return 1.0;  // bounded or tabulated: grid-level integrability is vacuous
}

AdmissibilityCertificate make_certificate(const WeightSpec& w, const ClassQuery& cq, double ps,
                                          double a, double r) {
    AdmissibilityCertificate cert;
    cert.cls = cq.cls;
    cert.N = cq.N;
    cert.s = cq.s;
    cert.p = cq.p;
    cert.q = cq.q;
    cert.t = cq.t;
    cert.a = a;
    cert.r = r;
    const Window win = window_for(cq);
    cert.slack = win.bound - fixed_part(cq, ps, a) - 1.0 / r;
    cert.integrability_slack = integrability_slack_of(w, cq, a, r);
    cert.empirical = w.kind() == WeightSpec::Kind::tabulated;
    switch (cq.cls) {
        case WeightClass::Aq:
            cert.b_or_tau = holder_b(cq.q, 1.0 / r, 0.0);
            break;
        case WeightClass::Bq:
            cert.b_or_tau = holder_b(cq.q - a, 1.0 / r, a / cq.p);
            break;
        case WeightClass::Btilde: {
            // tau = 1/(1/r + a/p + (q-1-a)/b) with b < ps close enough that the
            // sum stays below sp/N: aim at the midpoint of the slack.
            const double base = 1.0 / r + a / cq.p + over_critical(cq.q - 1.0 - a, ps);
            const double target = base + 0.5 * cert.slack;
            cert.b_or_tau = 1.0 / target;
            break;
        }
        case WeightClass::Bt:
            cert.b_or_tau = holder_b(cq.t - a, 1.0 / r, a / cq.p);
            break;
    }
    return cert;
}

bool feasible_somewhere(const WeightSpec& w, const ClassQuery& cq, double ps) {
    const Window win = window_for(cq);
    const int pts = win.a_max > 0.0 ? kScanPoints : 1;
    for (int k = 0; k < pts; ++k) {
        const double a = win.a_max * (pts == 1 ? 0.0 : double(k) / (pts - 1));
        if (r_interval(cq, ps, a, w).nonempty) return true;
    }
    return false;
}

void validate_query(const ClassQuery& cq) {
    if (cq.N < 1) throw std::domain_error("ClassQuery: requires N >= 1");
    if (!(cq.s > 0.0 && cq.s < 1.0)) throw std::domain_error("ClassQuery: requires s in (0,1)");
    if (!(cq.p > 1.0)) throw std::domain_error("ClassQuery: requires p > 1");
    const double ps = critical_exponent(cq.N, cq.s, cq.p);
    if (cq.cls == WeightClass::Bt) {
        if (!(cq.q > 1.0 && cq.q < ps))
            throw std::domain_error("ClassQuery: requires q in (1, p_s^*)");
        if (!(cq.t >= 1.0 && cq.t < cq.q))
            throw std::domain_error("ClassQuery: requires t in [1, q)");
    } else {
        if (!(cq.q >= 1.0 && cq.q < ps))
            throw std::domain_error("ClassQuery: requires q in [1, p_s^*)");
    }
}

}  // namespace

std::string class_name(WeightClass c) {
    switch (c) {
        case WeightClass::Aq: return "Aq";
        case WeightClass::Bq: return "Bq";
        case WeightClass::Btilde: return "Btildeq";
        case WeightClass::Bt: return "Btq";
    }
    return "?";
}

double critical_exponent(int N, double s, double p) {
    if (N > s * p) return N * p / (N - s * p);
    return kInf;
}

void AdmissibilityCertificate::validate(const WeightSpec& w) const {
    ClassQuery cq{cls, N, s, p, q, t};
    const double ps = critical_exponent(N, s, p);
    const Window win = window_for(cq);
    if (!(a >= 0.0 && a <= win.a_max + 1e-12))
        throw std::logic_error("certificate: witness a outside its window");
    if (!(r > 1.0)) throw std::logic_error("certificate: requires r > 1");
    const double lhs = 1.0 / r + fixed_part(cq, ps, a);
    const bool class_ok = win.strict ? lhs < win.bound : lhs <= win.bound + 1e-15;
    if (!class_ok) throw std::logic_error("certificate: class inequality violated");
    if (w.is_power_like() && !((w.beta() - s * a) * r < 1.0))
        throw std::logic_error("certificate: |h rho^(sa)|^r not integrable near the boundary");
}

CheckOutcome check_class(const WeightSpec& w, const ClassQuery& cq) {
    validate_query(cq);
    const double ps = critical_exponent(cq.N, cq.s, cq.p);
    const Window win = window_for(cq);

    double best_score = -kInf;
    double best_a = 0.0, best_r = 0.0;
    bool found = false;
    const int pts = win.a_max > 0.0 ? kScanPoints : 1;
    for (int k = 0; k < pts; ++k) {
        const double a = win.a_max * (pts == 1 ? 0.0 : double(k) / (pts - 1));
        const RInterval ri = r_interval(cq, ps, a, w);
        if (!ri.nonempty) continue;
        const double r = ri.mid;
        const double class_slack = win.bound - fixed_part(cq, ps, a) - 1.0 / r;
        const double intg = std::min(1.0, integrability_slack_of(w, cq, a, r));
        const double score = std::min(class_slack, intg);
        if (score > best_score) {
            best_score = score;
            best_a = a;
            best_r = r;
            found = true;
        }
    }

    CheckOutcome out;
    if (found) {
        auto cert = make_certificate(w, cq, ps, best_a, best_r);
        cert.validate(w);
        out.certificate = std::move(cert);
        return out;
    }

    Refusal ref;
    if (w.is_power_like()) {
        // Supremal feasible beta by bisection; the class caps beta at
        // s*a_max + 1, so a doubling bracket terminates quickly.
        auto feasible_at = [&](double beta) {
            return feasible_somewhere(WeightSpec::power(beta), cq, ps);
        };
        double lo = 0.0;
        if (!feasible_at(lo)) {
            ref.binding_constraint =
                "class inequality infeasible for every (a, r); no weight admissible";
        } else {
            double hi = 1.0;
            while (feasible_at(hi) && hi < cq.s * win.a_max + 4.0) hi *= 2.0;
            for (int it = 0; it < 64 && hi - lo > 1e-6 / 2; ++it) {
                const double mid = 0.5 * (lo + hi);
                (feasible_at(mid) ? lo : hi) = mid;
            }
            ref.beta_star = 0.5 * (lo + hi);
            ref.binding_constraint =
                "beta exceeds the supremum of s a + 1/r over the feasible (a, r) set";
        }
    } else {
        ref.binding_constraint = "class inequality infeasible for every admissible (a, r)";
    }
    out.refusal = std::move(ref);
    return out;
}

AdmissibilityCertificate to_Bq(const AdmissibilityCertificate& cert, const WeightSpec& w) {
    const double ps = critical_exponent(cert.N, cert.s, cert.p);
    ClassQuery cq{WeightClass::Bq, cert.N, cert.s, cert.p, cert.q, 1.0};
    switch (cert.cls) {
        case WeightClass::Bq: return cert;
        case WeightClass::Aq: {
            auto out = make_certificate(w, cq, ps, 0.0, cert.r);
            out.empirical = cert.empirical;
            out.validate(w);
            return out;
        }
        case WeightClass::Btilde: {
            if (cert.s * cert.p > cert.N)
                throw std::domain_error("to_Bq: Btilde embeds into Bq only for sp <= N");
            auto out = make_certificate(w, cq, ps, cert.a, cert.r);
            out.empirical = cert.empirical;
            out.validate(w);
            return out;
        }
        case WeightClass::Bt:
            throw std::domain_error("to_Bq: no generic embedding from Bt^q");
    }
    throw std::logic_error("to_Bq: unknown class");
}

HolderReport holder_estimate(const WeightSpec& w, const AdmissibilityCertificate& cert,
                             const DiscreteFunction& u, const DiscreteFunction& v,
                             const EnergyAssembly& /*unused: all factors are plain sums*/) {
    if (cert.cls != WeightClass::Bq && cert.cls != WeightClass::Aq)
        throw std::domain_error("holder_estimate: requires an Aq or Bq certificate");
    require_same_grid(u.grid, v.grid, "holder_estimate");
    const Grid& g = u.grid;
    const double s = cert.s, p = cert.p, q = cert.q, a = cert.a, r = cert.r;
    const double b = cert.b_or_tau;

    // All five sums share the plain midpoint weights, so the discrete
    // Hoelder inequality holds exactly and the ratio cannot exceed 1 by more
    // than rounding.
    double lhs = 0.0, sr = 0.0, shardy = 0.0, su = 0.0, sv = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const double wi = g.weight(i);
        const double hi = std::fabs(w.node_value(g, i));
        const double rho = g.boundary_distance(i);
        const double ui = u.values[static_cast<std::size_t>(i)];
        const double vi = v.values[static_cast<std::size_t>(i)];
        lhs += wi * hi * pow_abs(ui, q - 1.0) * std::fabs(vi);
        sr += wi * std::pow(hi * std::pow(rho, s * a), r);
        shardy += wi * pow_abs(ui, p) * std::pow(rho, -s * p);
        su += wi * pow_abs(ui, b);
        sv += wi * pow_abs(vi, b);
    }
    HolderReport rep;
    rep.lhs = lhs;
    rep.factor_r = std::pow(sr, 1.0 / r);
    rep.factor_hardy = std::pow(shardy, a / p);
    rep.factor_u = std::pow(su, (q - 1.0 - a) / b);
    rep.factor_v = std::pow(sv, 1.0 / b);
    const double rhs = rep.factor_r * rep.factor_hardy * rep.factor_u * rep.factor_v;
    rep.ratio = rhs > 0.0 ? lhs / rhs : 0.0;
    rep.quadrature_warning = rep.ratio > 1.01;
    return rep;
}

TauReport tau_estimate(const WeightSpec& w, const AdmissibilityCertificate& cert,
                       const std::vector<DiscreteFunction>& family, const EnergyAssembly& E) {
    if (cert.cls != WeightClass::Btilde)
        throw std::domain_error("tau_estimate: requires a Btilde certificate");
    TauReport rep;
    rep.tau = cert.b_or_tau;
    rep.n_over_sp = cert.N / (cert.s * cert.p);
    if (!(rep.tau > rep.n_over_sp))
        throw std::logic_error("tau_estimate: certificate tau does not exceed N/sp");
    const double qm1 = cert.q - 1.0;
    for (const auto& u : family) {
        double acc = 0.0;
        for (int i = 0; i < u.grid.n; ++i)
            acc += u.grid.weight(i) * std::pow(std::fabs(w.node_value(u.grid, i)), rep.tau) *
                   pow_abs(u.values[static_cast<std::size_t>(i)], qm1 * rep.tau);
        const double lhs = std::pow(acc, 1.0 / rep.tau);
        const double nrm = std::pow(E.energy(u), 1.0 / cert.p);
        if (nrm == 0.0) continue;  // nonzero family required
        rep.ratios.push_back(lhs / std::pow(nrm, qm1));
    }
    for (double v : rep.ratios) rep.empirical_constant = std::max(rep.empirical_constant, v);
    return rep;
}

YoungReport young_split(const WeightSpec& w, const AdmissibilityCertificate& cert,
                        const std::vector<DiscreteFunction>& family, const EnergyAssembly& E,
                        double eps) {
    if (cert.cls != WeightClass::Bt)
        throw std::domain_error("young_split: requires a Bt certificate");
    if (!(eps > 0.0)) throw std::invalid_argument("young_split: requires eps > 0");
    YoungReport rep;
    rep.eps = eps;
    // a/m + (t-a)/q = 1 for a > 0; the a = 0 branch has no norm term at all.
    rep.m = cert.a > 0.0 ? cert.a * cert.q / (cert.q - cert.t + cert.a) : 0.0;
    if (!(rep.m < cert.p)) throw std::logic_error("young_split: m >= p, certificate unsound");
    for (const auto& u : family) {
        double lhs = 0.0, uq = 0.0;
        for (int i = 0; i < u.grid.n; ++i) {
            const double wi = u.grid.weight(i);
            lhs += wi * std::fabs(w.node_value(u.grid, i)) *
                   pow_abs(u.values[static_cast<std::size_t>(i)], cert.t);
            uq += wi * pow_abs(u.values[static_cast<std::size_t>(i)], cert.q);
        }
        rep.lhs_values.push_back(lhs);
        const double nrm = std::pow(E.energy(u), 1.0 / cert.p);
        const double denom = rep.m == 0.0 ? 1.0 : std::pow(nrm, rep.m);
        if (denom > 0.0)
            rep.c_eps = std::max(rep.c_eps, std::max(0.0, (lhs - eps * uq) / denom));
    }
    return rep;
}

}  // namespace fracp
