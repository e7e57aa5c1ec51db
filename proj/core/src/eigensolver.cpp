#include "fracp/eigensolver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "fracp/descent.hpp"
#include "fracp/power.hpp"
#include "fracp/shapes.hpp"

namespace fracp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double weighted_mass(const std::vector<double>& m, const std::vector<double>& u, double p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += m[i] * pow_abs(u[i], p);
    return acc;
}

void renormalize(const EnergyAssembly& E, std::vector<double>& u) {
    DiscreteFunction f{E.grid(), u};
    const double e = E.energy(f);
    if (e <= 0.0) return;
    const double scale = std::pow(E.p() / e, 1.0 / E.p());
    for (auto& v : u) v *= scale;
}

}  // namespace

EigenResult first_eigenpair(const EnergyAssembly& E, const WeightSpec& h,
                            const RayleighConfig& cfg) {
    const Grid& g = E.grid();
    const double p = E.p();
    const auto m = cell_weight_integrals(g, h);
    const double m_max = *std::max_element(m.begin(), m.end());
    if (!(m_max > 0.0))
        throw std::invalid_argument("first_eigenpair: weight is nonpositive at every node");

    DiscreteFunction u0 = cfg.seed == RayleighConfig::Seed::positive_bump
                              ? bump(g)
                              : random_function(g, cfg.seed_value);
    if (weighted_mass(m, u0.values, p) <= 0.0) {
        // sign-changing weight starving the seed: concentrate it where h > 0
        const auto it = std::max_element(m.begin(), m.end());
        u0 = zero_function(g);
        u0.values[static_cast<std::size_t>(it - m.begin())] = 1.0;
    }
    std::vector<double> u = u0.values;
    renormalize(E, u);

    EigenResult res;
    auto quotient = [&](const std::vector<double>& x) {
        DiscreteFunction f{g, x};
        const double d = weighted_mass(m, x, p);
        if (d <= 0.0) return kInf;
        return E.energy(f) / d;
    };
    auto grad = [&](const std::vector<double>& x, std::vector<double>& out) {
        DiscreteFunction f{g, x};
        const double d = weighted_mass(m, x, p);
        const double lam = E.energy(f) / d;
        DiscreteFunction ge = E.gradient(f);  // d(energy/p)
        out.resize(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            out[i] = p * (ge.values[i] - lam * m[i] * phi_p(x[i], p)) / d;
        if (cfg.record_history) res.history.push_back(lam);
    };

    DescentConfig dcfg{cfg.max_iterations, cfg.tolerance, cfg.armijo_c, cfg.backtrack};
    auto dres = bb_armijo_minimize(u, quotient, grad, dcfg,
                                   [&](std::vector<double>& x) { renormalize(E, x); });

    renormalize(E, u);
    double wsum = 0.0;
    for (int i = 0; i < g.n; ++i) wsum += g.weight(i) * u[static_cast<std::size_t>(i)];
    if (wsum < 0.0)
        for (auto& v : u) v = -v;

    res.u = DiscreteFunction{g, u};
    res.lambda = quotient(u);
    res.iterations = dres.iterations;
    res.converged = dres.converged;
    res.residual = nodal_residual(E, h, res.lambda, res.u);
    return res;
}

double nodal_residual(const EnergyAssembly& E, const WeightSpec& h, double lambda,
                      const DiscreteFunction& u) {
    const auto m = cell_weight_integrals(E.grid(), h);
    const DiscreteFunction ge = E.gradient(u);
    const double p = E.p();
    double sup = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double defect = p * ge.values[i] - lambda * p * m[i] * phi_p(u.values[i], p);
        sup = std::max(sup, std::fabs(defect));
    }
    return sup;
}

SimplicityReport simplicity_check(const EigenResult& r1, const EigenResult& r2) {
    const double ip = weighted_dot(r1.u, r2.u);
    const double n1 = std::sqrt(weighted_dot(r1.u, r1.u));
    const double n2 = std::sqrt(weighted_dot(r2.u, r2.u));
    SimplicityReport rep;
    rep.score = (n1 > 0.0 && n2 > 0.0) ? 1.0 - std::fabs(ip) / (n1 * n2) : 1.0;
    rep.lambda_gap = std::fabs(r1.lambda - r2.lambda);
    return rep;
}

namespace {

// Rayleigh quotient restricted to the span of k basis columns: reduced pair
// rows d_pair = row_i - row_j and tail rows keep every evaluation O(rows * k)
// for general p, and O(k^2) through the reduced matrices for p = 2.
class SpanQuotient {
public:
    SpanQuotient(const EnergyAssembly& E, const std::vector<double>& m,
                 const Eigen::MatrixXd& basis)
        : p_(E.p()), quadratic_(E.p() == 2.0), basis_(basis) {
        const int n = E.grid().n;
        const int k = static_cast<int>(basis.cols());
        if (quadratic_) {
            s_red_ = Eigen::MatrixXd::Zero(k, k);
            m_red_ = Eigen::MatrixXd::Zero(k, k);
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    const Eigen::RowVectorXd d = basis.row(i) - basis.row(j);
                    s_red_ += E.pair_coeff(i, j) * d.transpose() * d;
                }
                s_red_ += E.tail(i) * basis.row(i).transpose() * basis.row(i);
                m_red_ += m[static_cast<std::size_t>(i)] * basis.row(i).transpose() * basis.row(i);
            }
        } else {
            rows_.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
            coeff_.reserve(rows_.capacity());
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    rows_.push_back(basis.row(i) - basis.row(j));
                    coeff_.push_back(E.pair_coeff(i, j));
                }
                rows_.push_back(basis.row(i));
                coeff_.push_back(E.tail(i));
            }
            mass_rows_ = basis;
            mass_ = Eigen::Map<const Eigen::VectorXd>(m.data(), n);
        }
    }

    double value(const Eigen::VectorXd& c) const {
        if (quadratic_) {
            const double num = c.dot(s_red_ * c);
            const double den = c.dot(m_red_ * c);
            return den > 0.0 ? num / den : kInf;
        }
        double num = 0.0;
        for (std::size_t r = 0; r < rows_.size(); ++r) num += coeff_[r] * pow_abs(rows_[r] * c, p_);
        double den = 0.0;
        for (int i = 0; i < mass_rows_.rows(); ++i)
            den += mass_(i) * pow_abs(mass_rows_.row(i) * c, p_);
        return den > 0.0 ? num / den : kInf;
    }

    Eigen::VectorXd gradient(const Eigen::VectorXd& c) const {
        if (quadratic_) {
            const double num = c.dot(s_red_ * c);
            const double den = c.dot(m_red_ * c);
            return 2.0 / den * (s_red_ * c - (num / den) * (m_red_ * c));
        }
        double num = 0.0, den = 0.0;
        Eigen::VectorXd gnum = Eigen::VectorXd::Zero(c.size());
        Eigen::VectorXd gden = Eigen::VectorXd::Zero(c.size());
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const double t = rows_[r] * c;
            num += coeff_[r] * pow_abs(t, p_);
            gnum += coeff_[r] * p_ * phi_p(t, p_) * rows_[r].transpose();
        }
        for (int i = 0; i < mass_rows_.rows(); ++i) {
            const double t = mass_rows_.row(i) * c;
            den += mass_(i) * pow_abs(t, p_);
            gden += mass_(i) * p_ * phi_p(t, p_) * mass_rows_.row(i).transpose();
        }
        return (gnum - (num / den) * gden) / den;
    }

private:
    double p_;
    bool quadratic_;
    Eigen::MatrixXd basis_;
    Eigen::MatrixXd s_red_, m_red_;
    std::vector<Eigen::RowVectorXd> rows_;
    std::vector<double> coeff_;
    Eigen::MatrixXd mass_rows_;
    Eigen::VectorXd mass_;
};

// Locate sup R over the unit sphere of the first j reshuffled basis columns:
// sweep or sample, then refine the best candidate by projected ascent.
double sphere_supremum(const SpanQuotient& quot, const Eigen::MatrixXd& shuffle, int j,
                       std::mt19937_64& rng) {
    const int k = static_cast<int>(shuffle.rows());
    auto embed = [&](const Eigen::VectorXd& c) -> Eigen::VectorXd {
        return shuffle.leftCols(j) * c;
    };
    double best = -kInf;
    Eigen::VectorXd best_c;

    if (j == 1) {
        best_c = Eigen::VectorXd::Ones(1);
        best = quot.value(embed(best_c));
    } else if (j == 2) {
        const double pi = 3.14159265358979323846;
        for (int a = 0; a < 721; ++a) {
            const double th = pi * a / 721.0;
            Eigen::VectorXd c(2);
            c << std::cos(th), std::sin(th);
            const double v = quot.value(embed(c));
            if (v > best) {
                best = v;
                best_c = c;
            }
        }
    } else {
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int a = 0; a < 2000 + j; ++a) {
            Eigen::VectorXd c(j);
            if (a < j) {
                c.setZero();
                c(a) = 1.0;  // axis candidates keep invariant directions exact
            } else {
                for (int i = 0; i < j; ++i) c(i) = gauss(rng);
                c.normalize();
            }
            const double v = quot.value(embed(c));
            if (v > best) {
                best = v;
                best_c = c;
            }
        }
    }

    if (j == 1) return best;

    // Ascent polish in the subspace: maximize R = minimize -R on the sphere.
    std::vector<double> x(best_c.data(), best_c.data() + j);
    auto value = [&](const std::vector<double>& c) {
        Eigen::Map<const Eigen::VectorXd> cv(c.data(), j);
        return -quot.value(embed(cv));
    };
    auto grad = [&](const std::vector<double>& c, std::vector<double>& out) {
        Eigen::Map<const Eigen::VectorXd> cv(c.data(), j);
        Eigen::VectorXd gfull = -(shuffle.leftCols(j).transpose() * quot.gradient(embed(cv)));
        out.assign(gfull.data(), gfull.data() + j);
    };
    DescentConfig cfg;
    cfg.max_iterations = 200;
    cfg.tolerance = 1e-11;
    bb_armijo_minimize(x, value, grad, cfg, [&](std::vector<double>& c) {
        double nrm = 0.0;
        for (double v : c) nrm += v * v;
        nrm = std::sqrt(nrm);
        if (nrm > 0.0)
            for (double& v : c) v /= nrm;
    });
    (void)k;
    return std::max(best, -value(x));
}

}  // namespace

std::vector<double> minimax_upper_bounds(const EnergyAssembly& E, const WeightSpec& h, int k) {
    if (k < 1 || k > 8) throw std::invalid_argument("minimax_upper_bounds: requires 1 <= k <= 8");
    const Grid& g = E.grid();
    const int n = g.n;
    if (k > n) throw std::invalid_argument("minimax_upper_bounds: k exceeds grid size");
    const auto m = cell_weight_integrals(g, h);
    for (double mi : m)
        if (!(mi > 0.0))
            throw std::invalid_argument("minimax_upper_bounds: requires h > 0 at every node");

    // Basis: first k eigenvectors of the p = 2 pencil for the same (s, h).
    const EnergyAssembly E2 =
        E.p() == 2.0 ? E : EnergyAssembly::assemble(g, E.s(), 2.0);
    Eigen::MatrixXd S(n, n);
    for (int i = 0; i < n; ++i) {
        double diag = E2.tail(i);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double c = E2.pair_coeff(i, j);
            S(i, j) = -c;
            diag += c;
        }
        S(i, i) = diag;
    }
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) M(i, i) = m[static_cast<std::size_t>(i)];
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(S, M);
    if (ges.info() != Eigen::Success)
        throw std::runtime_error("minimax_upper_bounds: dense pencil solve failed");
    const Eigen::MatrixXd basis = ges.eigenvectors().leftCols(k);

    SpanQuotient quot(E, m, basis);
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<double> bounds(static_cast<std::size_t>(k));
    for (int j = 1; j <= k; ++j) {
        double lo = kInf;
        const int reshuffles = j == k ? 1 : 50;  // the full span has one sphere
        for (int rsh = 0; rsh < reshuffles; ++rsh) {
            Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(k, k);
            if (rsh > 0) {
                Eigen::MatrixXd A(k, k);
                for (int r = 0; r < k; ++r)
                    for (int c = 0; c < k; ++c) A(r, c) = gauss(rng);
                Q = Eigen::HouseholderQR<Eigen::MatrixXd>(A).householderQ();
            }
            lo = std::min(lo, sphere_supremum(quot, Q, j, rng));
        }
        bounds[static_cast<std::size_t>(j - 1)] = lo;
    }
    for (int j = 1; j < k; ++j)
        bounds[static_cast<std::size_t>(j)] =
            std::max(bounds[static_cast<std::size_t>(j)], bounds[static_cast<std::size_t>(j - 1)]);
    return bounds;
}

}  // namespace fracp
