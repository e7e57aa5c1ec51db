// Acceptance suite: every criterion prints one pass/fail line; the process
// exits with the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fracp/eigensolver.hpp"
#include "fracp/nonlinear.hpp"
#include "fracp/shapes.hpp"
#include "fracp/verifiers.hpp"
#include "fracp/weight_classes.hpp"
#include "oracles.hpp"

using namespace fracp;

namespace {

int failures = 0;

void report(int index, bool pass, const std::string& what) {
    std::printf("[%s] %2d: %s\n", pass ? "PASS" : "FAIL", index, what.c_str());
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 1. p = 2 oracle equivalence at n = 256 within 1e-6 relative and 10 s.
void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const Grid g = build_grid(-1.0, 1.0, 256);
    const auto E = EnergyAssembly::assemble(g, 0.5, 2.0);
    const EigenResult res = first_eigenpair(E, WeightSpec::constant(1.0));
    std::vector<double> mass(static_cast<std::size_t>(g.n), g.h);
    const auto pencil = oracle::dense_pencil(g, 0.5, mass);
    const double rel = std::fabs(res.lambda - pencil.values(0)) / pencil.values(0);
    const double secs = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "p=2 eigenvalue vs dense pencil: rel=%.3g (<=1e-6), %.1fs (<=10s)", rel, secs);
    report(1, res.converged && rel <= 1e-6 && secs <= 10.0, buf);
}

// 2. Gradient checks against central differences for p in {1.5, 2, 3}.
void criterion_2() {
    const Grid g = build_grid(-1.0, 1.0, 48);
    bool ok = true;
    double worst = 0.0;
    for (double p : {1.5, 2.0, 3.0}) {
        const auto E = EnergyAssembly::assemble(g, 0.5, p);
        ProblemSpec spec;
        spec.K = WeightSpec::constant(1.0);
        spec.q = p + 1.5;
        for (int k = 0; k < 20; ++k) {
            const DiscreteFunction u = random_function(g, 1000 + static_cast<unsigned>(k));
            const DiscreteFunction v = random_function(g, 2000 + static_cast<unsigned>(k));
            const double eps = 1e-6;
            DiscreteFunction up = u, um = u;
            for (int i = 0; i < g.n; ++i) {
                up.values[static_cast<std::size_t>(i)] +=
                    eps * v.values[static_cast<std::size_t>(i)];
                um.values[static_cast<std::size_t>(i)] -=
                    eps * v.values[static_cast<std::size_t>(i)];
            }
            // energy gradient
            const DiscreteFunction ge = E.gradient(u);
            double dual = 0.0;
            for (int i = 0; i < g.n; ++i)
                dual += ge.values[static_cast<std::size_t>(i)] *
                        v.values[static_cast<std::size_t>(i)];
            const double fd = (E.energy(up) - E.energy(um)) / (2.0 * p * eps);
            const double rel1 = std::fabs(fd - dual) / std::max(1e-300, std::fabs(dual));
            // phi gradient
            const DiscreteFunction gp = phi_gradient(spec, u, E);
            double dual2 = 0.0;
            for (int i = 0; i < g.n; ++i)
                dual2 += gp.values[static_cast<std::size_t>(i)] *
                         v.values[static_cast<std::size_t>(i)];
            const double fd2 = (phi(spec, up, E) - phi(spec, um, E)) / (2.0 * eps);
            const double rel2 = std::fabs(fd2 - dual2) / std::max(1e-300, std::fabs(dual2));
            worst = std::max({worst, rel1, rel2});
            ok = ok && rel1 <= 1e-6 && rel2 <= 1e-6;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "energy/phi gradients vs central differences: worst rel=%.3g (<=1e-6)", worst);
    report(2, ok, buf);
}

// 3. Homogeneity suite at 1e-10 relative.
void criterion_3() {
    const Grid g = build_grid(-1.0, 1.0, 64);
    bool ok = true;
    double worst = 0.0;
    for (double p : {1.5, 2.0, 2.5, 3.0}) {
        const auto E = EnergyAssembly::assemble(g, 0.5, p);
        const DiscreteFunction u = random_function(g, 5);
        const DiscreteFunction v = random_function(g, 6);
        const double e = E.energy(u);
        const double wa = E.weak_action(u, v);
        for (double t : {2.0, 0.125, 5.5}) {
            DiscreteFunction tu = u;
            for (auto& w : tu.values) w *= t;
            const double r1 =
                std::fabs(E.energy(tu) - std::pow(t, p) * e) / (std::pow(t, p) * e);
            const double r2 = std::fabs(E.weak_action(tu, v) - std::pow(t, p - 1.0) * wa) /
                              std::max(1e-300, std::fabs(std::pow(t, p - 1.0) * wa));
            worst = std::max({worst, r1, r2});
            ok = ok && r1 <= 1e-10 && r2 <= 1e-10;
        }
    }
    {
        const auto E = EnergyAssembly::assemble(g, 0.5, 2.0);
        const EigenResult r1 = first_eigenpair(E, WeightSpec::constant(1.0));
        const EigenResult r2 = first_eigenpair(E, WeightSpec::constant(3.0));
        const double rel = std::fabs(r2.lambda - r1.lambda / 3.0) / (r1.lambda / 3.0);
        worst = std::max(worst, rel);
        ok = ok && rel <= 1e-10;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "homogeneity identities: worst rel=%.3g (<=1e-10)", worst);
    report(3, ok, buf);
}

// 4. Weight-class feasibility boundary beta* = 1 within 1e-3, against the
//    lattice oracle and the beta < s a + 1/r criterion.
void criterion_4() {
    ClassQuery cq{WeightClass::Bq, 1, 0.5, 2.0, 2.0, 1.0};
    const auto refused = check_class(WeightSpec::power(1.2), cq);
    bool ok = refused.refusal.has_value() && refused.refusal->beta_star.has_value();
    double beta_impl = 0.0, beta_lattice = 0.0, crit = 0.0;
    if (ok) {
        beta_impl = *refused.refusal->beta_star;
        beta_lattice = oracle::bq_lattice_beta_star(1, 0.5, 2.0, 2.0, 200);
        crit = oracle::bq_lattice_criterion(1, 0.5, 2.0, 2.0, 200);
        ok = std::fabs(beta_impl - 1.0) <= 1e-3 && std::fabs(beta_impl - beta_lattice) <= 6e-3 &&
             std::fabs(beta_impl - crit) <= 6e-3;
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "Bq power boundary: beta*=%.6f (=1 within 1e-3), lattice=%.4f, criterion "
                  "sup=%.4f",
                  beta_impl, beta_lattice, crit);
    report(4, ok, buf);
}

// 5. Class inclusions: Aq -> Bq with a = 0 on 100 random admissible
//    instances; Btilde -> Bq whenever sp < N.  Zero failures.
void criterion_5() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ds(0.2, 0.8), dp(1.3, 3.0), db(0.0, 0.5);
    int a_converted = 0, a_total = 0, b_converted = 0, b_total = 0;
    bool ok = true;
    while (a_total < 100) {
        const int N = 1 + static_cast<int>(rng() % 3);
        const double s = ds(rng), p = dp(rng);
        const double ps = critical_exponent(N, s, p);
        const double q = std::isinf(ps) ? 1.0 + 2.0 * db(rng) : 1.0 + 0.5 * (ps - 1.0);
        const WeightSpec w = WeightSpec::power(db(rng));
        const auto out = check_class(w, ClassQuery{WeightClass::Aq, N, s, p, q, 1.0});
        if (!out.admissible()) continue;
        ++a_total;
        try {
            const auto bq = to_Bq(*out.certificate, w);
            if (bq.a == 0.0) ++a_converted;
        } catch (...) {
            ok = false;
        }
    }
    while (b_total < 100) {
        const int N = 2 + static_cast<int>(rng() % 2);
        const double s = ds(rng), p = 2.0;  // sp < N always here
        const double ps = critical_exponent(N, s, p);
        const double q = 1.0 + 0.4 * (ps - 1.0);
        const WeightSpec w = WeightSpec::power(db(rng));
        const auto out = check_class(w, ClassQuery{WeightClass::Btilde, N, s, p, q, 1.0});
        if (!out.admissible()) continue;
        ++b_total;
        try {
            const auto bq = to_Bq(*out.certificate, w);
            bq.validate(w);
            ++b_converted;
        } catch (...) {
            ok = false;
        }
    }
    ok = ok && a_converted == 100 && b_converted == 100;
    char buf[160];
    std::snprintf(buf, sizeof buf, "inclusions: Aq->Bq %d/100, Btilde->Bq %d/100 (zero failures)",
                  a_converted, b_converted);
    report(5, ok, buf);
}

// 6. Hardy suite across regimes and resolutions.
void criterion_6() {
    bool ok = true;
    std::string detail;
    for (double sp : {0.8, 1.0, 1.2}) {
        const double s = sp / 2.0;
        double c128 = 0.0, c256 = 0.0;
        for (int n : {128, 256}) {
            const Grid g = build_grid(-1.0, 1.0, n);
            const auto E = EnergyAssembly::assemble(g, s, 2.0);
            const HardyReport rep = hardy_constant(E, bump_family(g, 50));
            for (double r : rep.ratios) ok = ok && std::isfinite(r);
            (n == 128 ? c128 : c256) = rep.constant;
        }
        const double vary = std::fabs(c256 - c128) / c128;
        ok = ok && vary <= 0.10;
        char buf[64];
        std::snprintf(buf, sizeof buf, " sp=%.1f: %.3g/%.3g (%.1f%%)", sp, c128, c256,
                      100.0 * vary);
        detail += buf;
    }
    report(6, ok, "hardy constants stable across n in {128,256}:" + detail);
}

// 7. Moser certification of the first eigenfunction.
void criterion_7() {
    const Grid g = build_grid(-1.0, 1.0, 128);
    const auto E = EnergyAssembly::assemble(g, 0.5, 2.0);
    const WeightSpec h = WeightSpec::constant(1.0);
    const EigenResult eig = first_eigenpair(E, h);

    AdmissibilityCertificate cert;
    cert.cls = WeightClass::Aq;
    cert.N = 1;
    cert.s = 0.5;
    cert.p = 2.0;
    cert.q = 2.0;
    cert.a = 0.0;
    cert.r = 4.0;
    cert.slack = 0.5;
    cert.integrability_slack = 1.0;
    cert.b_or_tau = 3.0;

    const MoserCertificate mc = moser_certify(eig.u, eig.lambda, h, cert, {});
    const bool ok = mc.certified && mc.violation_index == -1 && mc.terminal_index >= 0 &&
                    mc.terminal_index <= 60 && mc.levels.back() <= 1e-10 &&
                    mc.direct_max <= mc.certified_bound * (1.0 + 1e-12);
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "moser certificate: terminal k=%d, bound=%.4g >= max=%.4g, recursion clean=%s",
                  mc.terminal_index, mc.certified_bound, mc.direct_max,
                  mc.violation_index == -1 ? "yes" : "no");
    report(7, ok, buf);
}

// 8. Mountain pass at q=4 (residual <= 1e-6, <= 60 s, n=128) and sublinear
//    minimization at q=1.5 (residual <= 1e-8).
void criterion_8() {
    const Grid g = build_grid(-1.0, 1.0, 128);
    const auto E = EnergyAssembly::assemble(g, 0.5, 2.0);
    ProblemSpec super;
    super.K = WeightSpec::constant(1.0);
    super.q = 4.0;

    const auto t0 = std::chrono::steady_clock::now();
    const SolveResult mp = mountain_pass(super, E);
    const double secs = seconds_since(t0);

    ProblemSpec sub;
    sub.K = WeightSpec::constant(1.0);
    sub.q = 1.5;
    const SolveResult mini = minimize(sub, E);

    const bool ok = mp.converged && mp.phi > 0.0 && mp.residual <= 1e-6 && secs <= 60.0 &&
                    mini.converged && mini.phi < 0.0 && mini.residual <= 1e-8;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "mountain pass: phi=%.4g res=%.2g %.1fs; minimize: phi=%.4g res=%.2g", mp.phi,
                  mp.residual, secs, mini.phi, mini.residual);
    report(8, ok, buf);
}

// 9. Norm trend across the K-scaling scan.
void criterion_9() {
    const Grid g = build_grid(-1.0, 1.0, 64);
    const auto E = EnergyAssembly::assemble(g, 0.5, 2.0);
    const std::vector<double> scales{1.0, 0.5, 0.25, 0.125};
    std::vector<double> sub, super;
    bool ok = true;
    for (double c : scales) {
        ProblemSpec lo;
        lo.K = WeightSpec::constant(c);
        lo.q = 1.5;
        const SolveResult rl = minimize(lo, E);
        ok = ok && rl.converged;
        sub.push_back(std::sqrt(E.energy(rl.u)));

        ProblemSpec hi;
        hi.K = WeightSpec::constant(c);
        hi.q = 4.0;
        const SolveResult rh = mountain_pass(hi, E);
        ok = ok && rh.converged;
        super.push_back(std::sqrt(E.energy(rh.u)));
    }
    for (std::size_t i = 1; i < scales.size(); ++i) {
        ok = ok && sub[i] < sub[i - 1];
        ok = ok && super[i] > super[i - 1];
    }
    char buf[220];
    std::snprintf(buf, sizeof buf,
                  "norm trend: q<p %.3g>%.3g>%.3g>%.3g; q>p %.3g<%.3g<%.3g<%.3g", sub[0], sub[1],
                  sub[2], sub[3], super[0], super[1], super[2], super[3]);
    report(9, ok, buf);
}

// 10. Homogeneity of the forced solution map at t = 8.
void criterion_10() {
    const Grid g = build_grid(-1.0, 1.0, 64);
    bool ok = true;
    double worst = 0.0;
    for (double p : {1.5, 2.0, 3.0}) {
        const auto E = EnergyAssembly::assemble(g, 0.5, p);
        const ScalingReport rep = scaling_check(E, bump(g), {8.0});
        worst = std::max(worst, rep.max_deviation);
        ok = ok && rep.max_deviation <= 1e-6;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "u(8f) = 8^(1/(p-1)) u(f): worst sup-rel=%.3g (<=1e-6)",
                  worst);
    report(10, ok, buf);
}

// 11. Multiplicity proxy: two certified distinct solutions, ordered levels.
void criterion_11() {
    const Grid g = build_grid(-1.0, 1.0, 64);
    const auto E = EnergyAssembly::assemble(g, 0.5, 2.0);
    ProblemSpec spec;
    spec.K = WeightSpec::constant(1.0);
    spec.q = 4.0;
    SolveConfig cfg;
    const MultiResult multi = multi_solution_search(spec, E, cfg, 2);
    const bool ok = multi.solutions.size() == 2 && !multi.shortfall &&
                    multi.solutions[0].phi > 0.0 &&
                    multi.solutions[0].phi < multi.solutions[1].phi &&
                    multi.solutions[0].residual <= cfg.tolerance &&
                    multi.solutions[1].residual <= cfg.tolerance &&
                    !same_solution(multi.solutions[0], multi.solutions[1], cfg.dedup_rel);
    char buf[160];
    if (multi.solutions.size() == 2)
        std::snprintf(buf, sizeof buf, "two distinct solutions: 0 < phi1=%.4g < phi2=%.4g",
                      multi.solutions[0].phi, multi.solutions[1].phi);
    else
        std::snprintf(buf, sizeof buf, "found %zu solutions (wanted 2)", multi.solutions.size());
    report(11, ok, buf);
}

// 12. Deterministic CLI artifacts.
void criterion_12(const std::string& cli) {
    bool ok = !cli.empty();
    if (ok) {
        const std::string args =
            " eig --s 0.5 --p 2.5 --n 48 --h power:0.3 --seed 11 --out /tmp/fracp_acc";
        ok = std::system((cli + args + "1 >/dev/null 2>&1").c_str()) == 0 &&
             std::system((cli + args + "2 >/dev/null 2>&1").c_str()) == 0;
        if (ok) {
            const std::string j1 = slurp("/tmp/fracp_acc1.json");
            ok = !j1.empty() && j1 == slurp("/tmp/fracp_acc2.json") &&
                 slurp("/tmp/fracp_acc1.csv") == slurp("/tmp/fracp_acc2.csv");
        }
    }
    report(12, ok, "repeated CLI runs produce byte-identical JSON/CSV artifacts");
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12(cli);
    std::printf("%s: %d/12 criteria passed\n", failures == 0 ? "OK" : "FAILED", 12 - failures);
    return failures;
}
