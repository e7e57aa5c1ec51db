// Test-side oracles, kept independent of the library's assembly paths: the
// dense pencil is built from the kernel formulas directly (own Gauss table,
// naive per-pair distances) and feasibility is scanned on a brute-force
// lattice.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "fracp/grid.hpp"

namespace oracle {

inline constexpr double kGaussNode[4] = {-0.8611363115940526, -0.3399810435848563,
                                         0.3399810435848563, 0.8611363115940526};
inline constexpr double kGaussWeight[4] = {0.3478548451374538, 0.6521451548625461,
                                           0.6521451548625461, 0.3478548451374538};

/// Dense symmetric stiffness matrix of the discrete Gagliardo form at p = 2:
/// S_ij = -c_ij off the diagonal, S_ii = sum_j c_ij + T_i.
inline Eigen::MatrixXd dense_stiffness(const fracp::Grid& g, double s) {
    const int n = g.n;
    const double sp = 2.0 * s;
    const double h = g.h;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const double xi = g.a + (i + 0.5) * h;
        for (int j = i + 1; j < n; ++j) {
            const double xj = g.a + (j + 0.5) * h;
            double cij;
            if (j == i + 1) {
                double acc = 0.0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) {
                        const double x = g.a + i * h + (kGaussNode[a] + 1.0) * h / 2.0;
                        const double y = g.a + j * h + (kGaussNode[b] + 1.0) * h / 2.0;
                        acc += kGaussWeight[a] * kGaussWeight[b] *
                               std::pow(std::fabs(x - y), -1.0 - sp);
                    }
                cij = 2.0 * acc * (h / 2.0) * (h / 2.0);
            } else {
                cij = 2.0 * h * h * std::pow(std::fabs(xi - xj), -1.0 - sp);
            }
            C(i, j) = cij;
            C(j, i) = cij;
        }
    }
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const double xi = g.a + (i + 0.5) * h;
        const double tail =
            (2.0 / sp) * h * (std::pow(xi - g.a, -sp) + std::pow(g.b - xi, -sp));
        double diag = tail;
        for (int j = 0; j < n; ++j)
            if (j != i) diag += C(i, j);
        S(i, i) = diag;
        for (int j = 0; j < n; ++j)
            if (j != i) S(i, j) = -C(i, j);
    }
    return S;
}

/// Generalized eigenvalues of (S, diag(w h)) in ascending order, plus vectors.
struct Pencil {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

inline Pencil dense_pencil(const fracp::Grid& g, double s, const std::vector<double>& mass) {
    const Eigen::MatrixXd S = dense_stiffness(g, s);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(g.n, g.n);
    for (int i = 0; i < g.n; ++i) M(i, i) = mass[static_cast<std::size_t>(i)];
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(S, M);
    return {ges.eigenvalues(), ges.eigenvectors()};
}

/// Brute-force feasibility of a power weight rho^(-beta) for class Bq on an
/// (a, r) lattice: class inequality 1/r + a/p + (q-a)/ps < 1 and
/// integrability (beta - s a) r < 1.
inline bool bq_lattice_feasible(double beta, int N, double s, double p, double q, int lattice) {
    const double sp = s * p;
    const bool ps_infinite = N <= sp;
    const double ps = ps_infinite ? 0.0 : N * p / (N - sp);
    for (int ia = 0; ia < lattice; ++ia) {
        const double a = (q - 1.0) * ia / (lattice - 1);
        for (int ir = 0; ir < lattice; ++ir) {
            // log-spaced r in (1, 1e6]
            const double r = std::pow(10.0, 6.0 * (ir + 1.0) / lattice);
            const double crit = ps_infinite ? 0.0 : (q - a) / ps;
            if (!(1.0 / r + a / p + crit < 1.0)) continue;
            if (!((beta - s * a) * r < 1.0)) continue;
            return true;
        }
    }
    return false;
}

inline double bq_lattice_beta_star(int N, double s, double p, double q, int lattice) {
    double lo = 0.0, hi = 4.0;
    while (bq_lattice_feasible(hi, N, s, p, q, lattice) && hi < 64.0) hi *= 2.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (bq_lattice_feasible(mid, N, s, p, q, lattice) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Largest beta-criterion value sup (s a + 1/r) over the feasible lattice.
inline double bq_lattice_criterion(int N, double s, double p, double q, int lattice) {
    const double sp = s * p;
    const bool ps_infinite = N <= sp;
    const double ps = ps_infinite ? 0.0 : N * p / (N - sp);
    double best = 0.0;
    for (int ia = 0; ia < lattice; ++ia) {
        const double a = (q - 1.0) * ia / (lattice - 1);
        for (int ir = 0; ir < lattice; ++ir) {
            const double r = std::pow(10.0, 6.0 * (ir + 1.0) / lattice);
            const double crit = ps_infinite ? 0.0 : (q - a) / ps;
            if (!(1.0 / r + a / p + crit < 1.0)) continue;
            best = std::max(best, s * a + 1.0 / r);
        }
    }
    return best;
}

}  // namespace oracle
