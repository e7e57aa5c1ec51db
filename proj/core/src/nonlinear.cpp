#include "fracp/nonlinear.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracp/descent.hpp"
#include "fracp/eigensolver.hpp"
#include "fracp/power.hpp"
#include "fracp/quadrature.hpp"
#include "fracp/shapes.hpp"

namespace fracp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Assembled {
    std::vector<double> mh;  // empty when no lambda-term
    std::vector<double> mk;  // empty when no K-term
    struct Term {
        std::vector<double> m;
        double exponent;
        double sign;
    };
    std::vector<Term> terms;
};

Assembled assemble_terms(const ProblemSpec& spec, const EnergyAssembly& E) {
    Assembled a;
    const Grid& g = E.grid();
    if (spec.lambda != 0.0 && spec.h) a.mh = cell_weight_integrals(g, *spec.h);
    if (spec.K) a.mk = cell_weight_integrals(g, *spec.K);
    for (const auto& t : spec.perturbations)
        a.terms.push_back({cell_weight_integrals(g, t.weight), t.exponent, t.sign});
    return a;
}

double phi_value(const ProblemSpec& spec, const Assembled& a, const EnergyAssembly& E,
                 const std::vector<double>& u) {
    DiscreteFunction f{E.grid(), u};
    double acc = E.energy(f) / E.p();
    auto mass = [&](const std::vector<double>& m, double t) {
        double sum = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) sum += m[i] * pow_abs(u[i], t);
        return sum;
    };
    if (!a.mh.empty()) acc -= spec.lambda / E.p() * mass(a.mh, E.p());
    if (!a.mk.empty()) acc -= mass(a.mk, spec.q) / spec.q;
    for (const auto& t : a.terms) acc -= t.sign / t.exponent * mass(t.m, t.exponent);
    return acc;
}

void phi_grad(const ProblemSpec& spec, const Assembled& a, const EnergyAssembly& E,
              const std::vector<double>& u, std::vector<double>& out) {
    DiscreteFunction f{E.grid(), u};
    DiscreteFunction ge = E.gradient(f);
    out = ge.values;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!a.mh.empty()) out[i] -= spec.lambda * a.mh[i] * phi_p(u[i], E.p());
        if (!a.mk.empty()) out[i] -= a.mk[i] * phi_p(u[i], spec.q);
        for (const auto& t : a.terms) out[i] -= t.sign * t.m[i] * phi_p(u[i], t.exponent);
    }
}

void phi_hessian_apply(const ProblemSpec& spec, const Assembled& a, const EnergyAssembly& E,
                       const std::vector<double>& u, const std::vector<double>& v,
                       std::vector<double>& out) {
    DiscreteFunction fu{E.grid(), u}, fv{E.grid(), v};
    out = E.hessian_apply(fu, fv).values;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!a.mh.empty()) out[i] -= spec.lambda * a.mh[i] * dphi_p(u[i], E.p()) * v[i];
        if (!a.mk.empty()) out[i] -= a.mk[i] * dphi_p(u[i], spec.q) * v[i];
        for (const auto& t : a.terms) out[i] -= t.sign * t.m[i] * dphi_p(u[i], t.exponent) * v[i];
    }
}

void apply_parity(std::vector<double>& u, SolveConfig::Parity parity) {
    if (parity == SolveConfig::Parity::none) return;
    const std::size_t n = u.size();
    const double sign = parity == SolveConfig::Parity::even ? 1.0 : -1.0;
    for (std::size_t i = 0; i < n / 2; ++i) {
        const double a = 0.5 * (u[i] + sign * u[n - 1 - i]);
        u[i] = a;
        u[n - 1 - i] = sign * a;
    }
    if (n % 2 == 1 && parity == SolveConfig::Parity::odd) u[n / 2] = 0.0;
}

double sup_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s = std::max(s, std::fabs(x));
    return s;
}

double l2w(const Grid& g, const std::vector<double>& u) {
    double acc = 0.0;
    for (int i = 0; i < g.n; ++i)
        acc += g.weight(i) * u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
    return std::sqrt(acc);
}

bool resonance_flag(const ProblemSpec& spec, const EnergyAssembly& E) {
    if (spec.lambda <= 0.0 || !spec.h) return false;
    RayleighConfig rc;
    rc.tolerance = 1e-7;
    const EigenResult first = first_eigenpair(E, *spec.h, rc);
    return spec.lambda >= first.lambda * (1.0 - 1e-10);
}

/// Equal-arclength resampling of the path polyline; endpoints fixed.
void reparametrize(std::vector<std::vector<double>>& path) {
    const std::size_t P = path.size();
    const std::size_t n = path[0].size();
    std::vector<double> cum(P, 0.0);
    for (std::size_t m = 1; m < P; ++m) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = path[m][i] - path[m - 1][i];
            d2 += d * d;
        }
        cum[m] = cum[m - 1] + std::sqrt(d2);
    }
    if (cum.back() <= 0.0) return;
    std::vector<std::vector<double>> out(P);
    out[0] = path[0];
    out[P - 1] = path[P - 1];
    std::size_t seg = 0;
    for (std::size_t m = 1; m + 1 < P; ++m) {
        const double target = cum.back() * double(m) / double(P - 1);
        while (seg + 2 < P && cum[seg + 1] < target) ++seg;
        const double len = cum[seg + 1] - cum[seg];
        const double f = len > 0.0 ? (target - cum[seg]) / len : 0.0;
        out[m].resize(n);
        for (std::size_t i = 0; i < n; ++i)
            out[m][i] = (1.0 - f) * path[seg][i] + f * path[seg + 1][i];
    }
    path = std::move(out);
}

/// Minimize 0.5 |grad Phi|^2 by BB descent until the nodal gradient of Phi is
/// below tol; gradient of the objective is H(u) grad Phi(u).
int critical_polish(const ProblemSpec& spec, const Assembled& a, const EnergyAssembly& E,
                    std::vector<double>& u, const SolveConfig& cfg, SolveConfig::Parity parity) {
    std::vector<double> g, gF, u_prev, gF_prev, trial, gt;
    auto eval = [&](const std::vector<double>& x, std::vector<double>& gout) {
        phi_grad(spec, a, E, x, gout);
        double f = 0.0;
        for (double v : gout) f += v * v;
        return 0.5 * f;
    };
    double F = eval(u, g);
    double alpha = 1e-3;
    int it = 0;
    for (; it < cfg.max_iterations; ++it) {
        if (sup_norm(g) <= cfg.tolerance) break;
        phi_hessian_apply(spec, a, E, u, g, gF);
        apply_parity(gF, parity);
        if (!u_prev.empty()) {
            double ss = 0.0, sy = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) {
                const double si = u[i] - u_prev[i];
                sy += si * (gF[i] - gF_prev[i]);
                ss += si * si;
            }
            if (sy > 1e-300) alpha = std::clamp(ss / sy, 1e-14, 1e10);
        }
        u_prev = u;
        gF_prev = gF;
        double gF2 = 0.0;
        for (double v : gF) gF2 += v * v;
        double t = alpha;
        bool accepted = false;
        for (int bt = 0; bt < 80; ++bt) {
            trial.resize(u.size());
            for (std::size_t i = 0; i < u.size(); ++i) trial[i] = u[i] - t * gF[i];
            apply_parity(trial, parity);
            const double Ft = eval(trial, gt);
            if (Ft <= F - cfg.armijo_c * t * gF2) {
                accepted = true;
                F = Ft;
                break;
            }
            t *= cfg.backtrack;
        }
        if (!accepted) break;
        u = trial;
        g = gt;
    }
    return it;
}

}  // namespace

void validate_problem(const ProblemSpec& spec, const EnergyAssembly& E, int N) {
    const double p = E.p();
    const double ps = critical_exponent(N, E.s(), p);
    if (spec.lambda < 0.0) throw std::invalid_argument("problem: requires lambda >= 0");
    if (spec.q >= p) {
        if (!(spec.q > p && spec.q < ps))
            throw std::invalid_argument("problem: requires q in (p, p_s^*) or q in [1, p)");
    } else if (!(spec.q >= 1.0)) {
        throw std::invalid_argument("problem: requires q >= 1");
    }
    if (spec.lambda > 0.0 && !spec.h)
        throw std::invalid_argument("problem: lambda > 0 requires the weight h");
    if (spec.K) {
        const auto& g = E.grid();
        for (int i = 0; i < g.n; ++i)
            if (!(spec.K->node_value(g, i) > 0.0))
                throw std::invalid_argument("problem: requires inf K > 0");
    }
    for (const auto& t : spec.perturbations) {
        if (!(t.exponent > p && t.exponent < spec.q))
            throw std::invalid_argument("problem: perturbation exponents must lie in (p, q)");
        if (t.certificate) t.certificate->validate(t.weight);
    }
    if (spec.h_certificate) spec.h_certificate->validate(*spec.h);
}

void attach_certificates(ProblemSpec& spec, const EnergyAssembly& E, int N) {
    if (!(spec.q > E.p())) return;  // the B_t^q structure needs t < q
    auto certify = [&](const WeightSpec& w, double t) {
        ClassQuery cq{WeightClass::Bt, N, E.s(), E.p(), spec.q, t};
        CheckOutcome out = check_class(w, cq);
        if (!out.admissible())
            throw std::invalid_argument("problem: weight refused for class B_t^q (" +
                                        out.refusal->binding_constraint + ")");
        return *out.certificate;
    };
    if (spec.h && spec.lambda > 0.0) spec.h_certificate = certify(*spec.h, E.p());
    for (auto& term : spec.perturbations) term.certificate = certify(term.weight, term.exponent);
}

double phi(const ProblemSpec& spec, const DiscreteFunction& u, const EnergyAssembly& E) {
    const Assembled a = assemble_terms(spec, E);
    return phi_value(spec, a, E, u.values);
}

DiscreteFunction phi_gradient(const ProblemSpec& spec, const DiscreteFunction& u,
                              const EnergyAssembly& E) {
    const Assembled a = assemble_terms(spec, E);
    DiscreteFunction out = zero_function(E.grid());
    phi_grad(spec, a, E, u.values, out.values);
    return out;
}

SolveResult minimize(const ProblemSpec& spec, const EnergyAssembly& E, const SolveConfig& cfg,
                     const std::optional<DiscreteFunction>& seed) {
    if (!(spec.q < E.p())) throw std::invalid_argument("minimize: requires q < p");
    const Assembled a = assemble_terms(spec, E);
    const Grid& g = E.grid();

    SolveResult res;
    res.method = "minimize";
    res.resonant = resonance_flag(spec, E);

    // Zero forcing has only the trivial solution: nothing to descend into.
    const bool k_zero =
        a.mk.empty() || std::all_of(a.mk.begin(), a.mk.end(), [](double v) { return v == 0.0; });
    if (k_zero && a.terms.empty()) {
        res.u = zero_function(g);
        res.trivial_refusal = true;
        return res;
    }

    const DiscreteFunction base = seed ? *seed : bump(g);
    DescentConfig dcfg{cfg.max_iterations, cfg.tolerance, cfg.armijo_c, cfg.backtrack};
    for (int restart = 0; restart <= cfg.max_restarts; ++restart) {
        std::vector<double> u = base.values;
        const double scale = std::pow(2.0, restart);
        for (auto& v : u) v *= scale;
        auto value = [&](const std::vector<double>& x) { return phi_value(spec, a, E, x); };
        auto grad = [&](const std::vector<double>& x, std::vector<double>& out) {
            phi_grad(spec, a, E, x, out);
        };
        const DescentResult d = bb_armijo_minimize(u, value, grad, dcfg);
        const double val = value(u);
        if (val < -1e-14) {
            res.u = DiscreteFunction{g, u};
            res.phi = val;
            res.residual = d.sup_grad;
            res.converged = d.converged;
            return res;
        }
        // stalled at the trivial critical point; retry from a larger seed
    }
    res.u = zero_function(g);
    res.converged = false;
    res.residual = kInf;
    return res;
}

SolveResult mountain_pass(const ProblemSpec& spec, const EnergyAssembly& E, const SolveConfig& cfg,
                          const std::optional<DiscreteFunction>& seed) {
    if (!(spec.q > E.p())) throw std::invalid_argument("mountain_pass: requires q > p");
    const Assembled a = assemble_terms(spec, E);
    const Grid& g = E.grid();
    const std::size_t n = static_cast<std::size_t>(g.n);
    const int P = cfg.path_points;

    SolveResult res;
    res.method = "mountain-pass";
    res.resonant = resonance_flag(spec, E);

    std::vector<double> dir = (seed ? *seed : bump(g)).values;
    apply_parity(dir, cfg.parity);
    auto value = [&](const std::vector<double>& x) { return phi_value(spec, a, E, x); };

    // Ray search for an endpoint below zero; the q-term dominates eventually.
    double t = 1.0;
    std::vector<double> endpoint(n);
    auto set_endpoint = [&] {
        for (std::size_t i = 0; i < n; ++i) endpoint[i] = t * dir[i];
    };
    set_endpoint();
    int doublings = 0;
    while (value(endpoint) >= 0.0) {
        t *= 2.0;
        set_endpoint();
        if (++doublings > 80)
            throw std::runtime_error("mountain_pass: ray search found no negative level");
    }

    std::vector<std::vector<double>> path;
    std::vector<double> phis;
    auto build_path = [&] {
        path.assign(static_cast<std::size_t>(P), std::vector<double>(n));
        for (int m = 0; m < P; ++m)
            for (std::size_t i = 0; i < n; ++i)
                path[static_cast<std::size_t>(m)][i] = endpoint[i] * double(m) / double(P - 1);
        phis.resize(static_cast<std::size_t>(P));
        for (int m = 0; m < P; ++m)
            phis[static_cast<std::size_t>(m)] = value(path[static_cast<std::size_t>(m)]);
    };
    build_path();

    // Stage 1: deform the path by descending its maximum, keeping the points
    // spread by arclength so the crest stays resolved.
    std::vector<double> grad_buf, trial(n);
    double alpha = 1.0;
    double best_max = kInf;
    int stall = 0;
    int reseeds = 0;
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
        const auto mit = std::max_element(phis.begin(), phis.end());
        const int m = static_cast<int>(mit - phis.begin());
        res.path_max_history.push_back(*mit);
        if (m == 0 || m == P - 1) {
            if (++reseeds > 8) break;  // degenerate geometry; report unconverged below
            t *= 2.0;
            set_endpoint();
            build_path();
            continue;
        }
        if (*mit < best_max - 1e-12 * std::fabs(*mit)) {
            best_max = *mit;
            stall = 0;
        } else if (++stall > 300) {
            break;  // pass level located; hand over to the polish
        }
        auto& u = path[static_cast<std::size_t>(m)];
        phi_grad(spec, a, E, u, grad_buf);
        apply_parity(grad_buf, cfg.parity);
        double g2 = 0.0, gsup = 0.0;
        for (double v : grad_buf) {
            g2 += v * v;
            gsup = std::max(gsup, std::fabs(v));
        }
        if (gsup < 1e-4 * (1.0 + std::fabs(*mit))) break;
        double step = alpha;
        bool accepted = false;
        double fn = *mit;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = u[i] - step * grad_buf[i];
            fn = value(trial);
            if (fn <= *mit - cfg.armijo_c * step * g2) {
                accepted = true;
                break;
            }
            step *= cfg.backtrack;
        }
        if (!accepted) break;
        alpha = std::max(step * 2.0, 1e-12);
        u = trial;
        apply_parity(u, cfg.parity);
        reparametrize(path);
        for (auto& pt : path) apply_parity(pt, cfg.parity);
        for (int mm = 0; mm < P; ++mm)
            phis[static_cast<std::size_t>(mm)] = value(path[static_cast<std::size_t>(mm)]);
    }

    // Stage 2: refine the located pass point to a genuine critical point.
    const auto mit = std::max_element(phis.begin(), phis.end());
    std::vector<double> u = path[static_cast<std::size_t>(mit - phis.begin())];
    critical_polish(spec, a, E, u, cfg, cfg.parity);

    res.u = DiscreteFunction{g, u};
    res.phi = value(u);
    phi_grad(spec, a, E, u, grad_buf);
    res.residual = sup_norm(grad_buf);
    res.converged = res.residual <= cfg.tolerance && res.phi > 0.0;
    return res;
}

bool same_solution(const SolveResult& a, const SolveResult& b, double rel) {
    const Grid& g = a.u.grid;
    std::vector<double> diff(a.u.values.size()), sum(a.u.values.size());
    for (std::size_t i = 0; i < diff.size(); ++i) {
        diff[i] = a.u.values[i] - b.u.values[i];
        sum[i] = a.u.values[i] + b.u.values[i];
    }
    const double scale = std::max(l2w(g, a.u.values), l2w(g, b.u.values));
    const double d = std::min(l2w(g, diff), l2w(g, sum));
    return d <= rel * scale;
}

MultiResult multi_solution_search(const ProblemSpec& spec, const EnergyAssembly& E,
                                  const SolveConfig& cfg, int count) {
    if (!spec.odd)
        throw std::invalid_argument("multi_solution_search: requires the odd symmetry flag");
    if (count < 1 || count > 4)
        throw std::invalid_argument("multi_solution_search: requires 1 <= count <= 4");

    MultiResult out;
    for (int lobes = 1; lobes <= count; ++lobes) {
        SolveConfig scfg = cfg;
        scfg.parity = lobes % 2 == 1 ? SolveConfig::Parity::even : SolveConfig::Parity::odd;
        SolveResult r = mountain_pass(spec, E, scfg, lobed_seed(E.grid(), lobes));
        if (!r.converged) continue;
        bool duplicate = false;
        for (const auto& kept : out.solutions)
            if (same_solution(kept, r, cfg.dedup_rel)) {
                duplicate = true;
                break;
            }
        if (!duplicate) out.solutions.push_back(std::move(r));
    }
    std::sort(out.solutions.begin(), out.solutions.end(),
              [](const SolveResult& x, const SolveResult& y) { return x.phi < y.phi; });
    out.shortfall = static_cast<int>(out.solutions.size()) < count;
    return out;
}

DiscreteFunction solve_forced(const EnergyAssembly& E, const DiscreteFunction& f,
                              const SolveConfig& cfg) {
    require_same_grid(E.grid(), f.grid, "solve_forced");
    const Grid& g = E.grid();
    const int n = g.n;
    const double p = E.p();
    std::vector<double> wf(static_cast<std::size_t>(n));
    double fscale = 0.0;
    for (int i = 0; i < n; ++i) {
        wf[static_cast<std::size_t>(i)] = g.weight(i) * f.values[static_cast<std::size_t>(i)];
        fscale = std::max(fscale, std::fabs(wf[static_cast<std::size_t>(i)]));
    }
    if (fscale == 0.0) return zero_function(g);
    const double tol = cfg.tolerance * fscale;

    std::vector<double> u(static_cast<std::size_t>(n), 0.0);
    auto value = [&](const std::vector<double>& x) {
        DiscreteFunction fx{g, x};
        double acc = E.energy(fx) / p;
        for (std::size_t i = 0; i < x.size(); ++i) acc -= wf[i] * x[i];
        return acc;
    };
    auto grad = [&](const std::vector<double>& x, std::vector<double>& out) {
        DiscreteFunction fx{g, x};
        out = E.gradient(fx).values;
        for (std::size_t i = 0; i < x.size(); ++i) out[i] -= wf[i];
    };

    // Warm start by gradient descent (the Hessian vanishes at u = 0 for
    // p > 2), then damped Newton on the convex objective; |du|^(p-2) kinks
    // for p < 2 defeat first-order steps but pose no problem to Newton.
    {
        DescentConfig warm{200, tol, cfg.armijo_c, cfg.backtrack};
        bb_armijo_minimize(u, value, grad, warm);
    }
    std::vector<double> gv(static_cast<std::size_t>(n));
    Eigen::MatrixXd H(n, n);
    for (int it = 0; it < 200; ++it) {
        grad(u, gv);
        double gsup = 0.0;
        for (double v : gv) gsup = std::max(gsup, std::fabs(v));
        if (gsup <= tol) break;

        H.setZero();
        for (int i = 0; i < n; ++i) {
            const double ui = u[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < n; ++j) {
                const double d =
                    E.pair_coeff(i, j) * dphi_p(ui - u[static_cast<std::size_t>(j)], p);
                H(i, i) += d;
                H(j, j) += d;
                H(i, j) -= d;
                H(j, i) -= d;
            }
            H(i, i) += E.tail(i) * dphi_p(ui, p);
        }
        Eigen::Map<const Eigen::VectorXd> gvec(gv.data(), n);
        Eigen::VectorXd step;
        double mu = 0.0;
        for (int attempt = 0; attempt < 6; ++attempt) {
            Eigen::MatrixXd Hmu = H;
            if (mu > 0.0)
                for (int i = 0; i < n; ++i) Hmu(i, i) += mu;
            Eigen::LDLT<Eigen::MatrixXd> ldlt(Hmu);
            step = ldlt.solve(-gvec);
            if (ldlt.info() == Eigen::Success && step.dot(-gvec) > 0.0) break;
            mu = mu == 0.0 ? 1e-12 * H.trace() / n : mu * 100.0;
        }

        const double f0 = value(u);
        const double dir_deriv = gvec.dot(step);  // negative along a descent direction
        double t = 1.0;
        std::vector<double> trial(static_cast<std::size_t>(n));
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (int i = 0; i < n; ++i)
                trial[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)] + t * step(i);
            const double ft = value(trial);
            if (ft <= f0 + cfg.armijo_c * t * dir_deriv) {
                accepted = true;
                break;
            }
            const double flat = 8.0 * std::numeric_limits<double>::epsilon() *
                                (std::fabs(f0) + std::fabs(ft));
            if (std::fabs(cfg.armijo_c * t * dir_deriv) <= flat && ft <= f0 + flat) {
                accepted = true;
                break;
            }
            t *= cfg.backtrack;
        }
        if (!accepted) break;
        u = trial;
    }
    return DiscreteFunction{g, u};
}

}  // namespace fracp
