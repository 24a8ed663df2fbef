#pragma once

// Maximum-entropy reservoir states for sets of commuting conserved
// observables, with the generalized work/heat split and the erasure-cost
// bound that follows from it.
//
// The state has the Gibbs form rho = exp(-mu - sum_k lambda_k V_k) with
// mu = ln Tr exp(-sum_k lambda_k V_k). The multipliers are found by
// minimizing the convex dual
//
//     psi(lambda) = ln Tr exp(-sum_k lambda_k V_k) + sum_k lambda_k v_k
//
// whose gradient is v_k - <V_k> and whose Hessian is the covariance matrix
// of the observables, so damped Newton converges quadratically. Natural
// units throughout (hbar = k_B = 1); entropies in nats.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "eraserlab/distribution.hpp"
#include "eraserlab/errors.hpp"

namespace eraserlab::maxent {

using ComplexMatrix = Eigen::MatrixXcd;

struct Observable {
    ComplexMatrix matrix;
    std::string label;

    void validate() const {
        const auto d = matrix.rows();
        if (d < 2 || matrix.cols() != d)
            throw dimension_mismatch("observable '" + label + "' must be square with d >= 2");
        const double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
        if (herm > 1e-12)
            throw non_hermitian_input("observable '" + label + "' deviates from Hermitian by " +
                                      std::to_string(herm));
    }
};

struct MaxEntProblem {
    std::vector<Observable> observables;
    std::vector<double> targets;

    Eigen::Index dimension() const {
        return observables.empty() ? 0 : observables.front().matrix.rows();
    }

    void validate() const {
        if (observables.empty())
            throw dimension_mismatch("at least one observable required");
        if (observables.size() != targets.size())
            throw dimension_mismatch("one target per observable required");
        const auto d = observables.front().matrix.rows();
        for (const auto& o : observables) {
            o.validate();
            if (o.matrix.rows() != d)
                throw dimension_mismatch("observables must share one dimension");
        }
        // v1 restriction: mutually commuting observables
        for (std::size_t i = 0; i < observables.size(); ++i) {
            for (std::size_t j = i + 1; j < observables.size(); ++j) {
                const auto& a = observables[i].matrix;
                const auto& b = observables[j].matrix;
                const double scale = std::max(1.0, a.cwiseAbs().maxCoeff() * b.cwiseAbs().maxCoeff());
                const double comm = (a * b - b * a).cwiseAbs().maxCoeff();
                if (comm > 1e-10 * scale)
                    throw noncommuting_observables("observables '" + observables[i].label +
                                                   "' and '" + observables[j].label +
                                                   "' do not commute");
            }
        }
    }
};

struct MaxEntState {
    std::vector<double> multipliers;
    double log_partition = 0.0;   // mu
    std::vector<double> averages; // attained <V_k>
    ComplexMatrix rho;
    double entropy_nats = 0.0;
};

struct HeatTerm {
    double du = 0.0;
    double dw = 0.0;
    double dq = 0.0;
};

struct HeatDecomposition {
    std::vector<HeatTerm> per_observable;

    double total_heat() const {
        double q = 0.0;
        for (const auto& t : per_observable) q += t.dq;
        return q;
    }
    double total_work() const {
        double w = 0.0;
        for (const auto& t : per_observable) w += t.dw;
        return w;
    }
    double total_internal() const {
        double u = 0.0;
        for (const auto& t : per_observable) u += t.du;
        return u;
    }
};

// One point of a process path: the instantaneous observables and the state.
struct PathPoint {
    std::vector<ComplexMatrix> observables;
    ComplexMatrix rho;
};

namespace detail {

// Common eigenbasis of a commuting Hermitian family, found by diagonalizing
// the first observable and recursively splitting degenerate eigenspaces with
// the remaining ones.
inline void refine_basis(ComplexMatrix& basis, Eigen::Index col0, Eigen::Index cols,
                         const std::vector<ComplexMatrix>& obs, std::size_t which) {
    if (which >= obs.size() || cols <= 1) return;
    ComplexMatrix block = basis.middleCols(col0, cols);
    ComplexMatrix sub = block.adjoint() * obs[which] * block;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sub);
    block = block * es.eigenvectors();
    basis.middleCols(col0, cols) = block;
    const auto& ev = es.eigenvalues();
    const double span = std::max(1.0, std::abs(ev(cols - 1)) + std::abs(ev(0)));
    Eigen::Index start = 0;
    for (Eigen::Index i = 1; i <= cols; ++i) {
        if (i == cols || ev(i) - ev(start) > 1e-9 * span) {
            refine_basis(basis, col0 + start, i - start, obs, which + 1);
            start = i;
        }
    }
}

struct DiagonalizedProblem {
    ComplexMatrix basis;                      // unitary, columns = joint eigenvectors
    std::vector<std::vector<double>> spectra; // spectra[k][i] = eigenvalue of V_k on vector i
};

inline DiagonalizedProblem joint_diagonalize(const MaxEntProblem& problem) {
    const auto d = problem.dimension();
    std::vector<ComplexMatrix> mats;
    mats.reserve(problem.observables.size());
    for (const auto& o : problem.observables) mats.push_back(o.matrix);

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(mats[0]);
    ComplexMatrix basis = es.eigenvectors();
    const auto& ev = es.eigenvalues();
    const double span = std::max(1.0, std::abs(ev(d - 1)) + std::abs(ev(0)));
    Eigen::Index start = 0;
    for (Eigen::Index i = 1; i <= d; ++i) {
        if (i == d || ev(i) - ev(start) > 1e-9 * span) {
            refine_basis(basis, start, i - start, mats, 1);
            start = i;
        }
    }

    DiagonalizedProblem out;
    out.basis = basis;
    out.spectra.resize(mats.size());
    for (std::size_t k = 0; k < mats.size(); ++k) {
        ComplexMatrix diag = basis.adjoint() * mats[k] * basis;
        out.spectra[k].resize(static_cast<std::size_t>(d));
        for (Eigen::Index i = 0; i < d; ++i)
            out.spectra[k][static_cast<std::size_t>(i)] = diag(i, i).real();
    }
    return out;
}

// log sum exp of -lambda . x over joint eigenvalues, plus occupation weights
struct DualEval {
    double mu;                   // ln Tr exp(-sum lambda V)
    std::vector<double> weights; // Gibbs occupation per joint eigenvector
    std::vector<double> averages;
};

inline DualEval eval_dual(const std::vector<std::vector<double>>& spectra,
                          const std::vector<double>& lambda) {
    const std::size_t d = spectra[0].size();
    const std::size_t K = spectra.size();
    std::vector<double> expo(d, 0.0);
    double mx = -1e308;
    for (std::size_t i = 0; i < d; ++i) {
        double e = 0.0;
        for (std::size_t k = 0; k < K; ++k) e -= lambda[k] * spectra[k][i];
        expo[i] = e;
        mx = std::max(mx, e);
    }
    double z = 0.0;
    for (std::size_t i = 0; i < d; ++i) z += std::exp(expo[i] - mx);
    DualEval out;
    out.mu = mx + std::log(z);
    out.weights.resize(d);
    for (std::size_t i = 0; i < d; ++i) out.weights[i] = std::exp(expo[i] - out.mu);
    out.averages.assign(K, 0.0);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t i = 0; i < d; ++i)
            out.averages[k] += out.weights[i] * spectra[k][i];
    return out;
}

} // namespace detail

// Dual objective psi(lambda); exposed so tests can probe convexity.
inline double dual_value(const MaxEntProblem& problem, const std::vector<double>& multipliers) {
    problem.validate();
    if (multipliers.size() != problem.observables.size())
        throw dimension_mismatch("one multiplier per observable required");
    auto dg = detail::joint_diagonalize(problem);
    auto ev = detail::eval_dual(dg.spectra, multipliers);
    double psi = ev.mu;
    for (std::size_t k = 0; k < multipliers.size(); ++k)
        psi += multipliers[k] * problem.targets[k];
    return psi;
}

inline double shannon_entropy(const MaxEntState& state);

// Damped Newton on the dual. Iteration cap 200.
inline MaxEntState solve_maxent(const MaxEntProblem& problem, double tol = 1e-10) {
    problem.validate();
    if (!(tol > 0.0)) throw config_invalid("tol must be > 0");

    auto dg = detail::joint_diagonalize(problem);
    const std::size_t K = dg.spectra.size();
    const std::size_t d = dg.spectra[0].size();

    // feasibility: each target strictly inside the projected joint spectrum
    for (std::size_t k = 0; k < K; ++k) {
        const auto [mn, mx] = std::minmax_element(dg.spectra[k].begin(), dg.spectra[k].end());
        if (!(problem.targets[k] > *mn && problem.targets[k] < *mx))
            throw infeasible_targets("target " + std::to_string(problem.targets[k]) +
                                     " for observable " + std::to_string(k) +
                                     " not strictly inside spectrum [" + std::to_string(*mn) +
                                     ", " + std::to_string(*mx) + "]");
    }

    std::vector<double> lambda(K, 0.0);
    auto cur = detail::eval_dual(dg.spectra, lambda);
    double psi = cur.mu; // targets contribute 0 at lambda = 0

    const int max_iter = 200;
    double residual = 0.0;
    bool converged = false;
    for (int iter = 0; iter < max_iter; ++iter) {
        Eigen::VectorXd grad(K);
        residual = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            grad(static_cast<Eigen::Index>(k)) = problem.targets[k] - cur.averages[k];
            residual = std::max(residual, std::abs(grad(static_cast<Eigen::Index>(k))));
        }
        if (residual <= tol) {
            converged = true;
            break;
        }

        // Hessian = covariance of the observables in the current Gibbs state
        Eigen::MatrixXd hess(K, K);
        for (std::size_t a = 0; a < K; ++a) {
            for (std::size_t b = a; b < K; ++b) {
                double m2 = 0.0;
                for (std::size_t i = 0; i < d; ++i)
                    m2 += cur.weights[i] * dg.spectra[a][i] * dg.spectra[b][i];
                const double cov = m2 - cur.averages[a] * cur.averages[b];
                hess(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = cov;
                hess(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = cov;
            }
        }
        // tiny ridge keeps the factorization stable near the pure-state limit
        const double ridge = 1e-14 * std::max(1.0, hess.diagonal().maxCoeff());
        for (std::size_t a = 0; a < K; ++a)
            hess(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) += ridge;

        Eigen::VectorXd step = hess.ldlt().solve(-grad);

        // backtracking line search on psi
        double t = 1.0;
        const double slope = grad.dot(step); // directional derivative of psi
        bool accepted = false;
        for (int back = 0; back < 60; ++back) {
            std::vector<double> trial(K);
            for (std::size_t k = 0; k < K; ++k)
                trial[k] = lambda[k] + t * step(static_cast<Eigen::Index>(k));
            auto ev = detail::eval_dual(dg.spectra, trial);
            double psi_trial = ev.mu;
            for (std::size_t k = 0; k < K; ++k) psi_trial += trial[k] * problem.targets[k];
            if (psi_trial <= psi + 1e-4 * t * slope) {
                lambda = std::move(trial);
                cur = std::move(ev);
                psi = psi_trial;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted)
            throw no_convergence("line search stalled at residual " + std::to_string(residual));
    }
    if (!converged)
        throw no_convergence("Newton iteration cap reached, residual " + std::to_string(residual));

    MaxEntState state;
    state.multipliers = lambda;
    state.log_partition = cur.mu;
    state.averages = cur.averages;
    ComplexMatrix w = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i)
        w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = cur.weights[i];
    state.rho = dg.basis * w * dg.basis.adjoint();
    state.entropy_nats = shannon_entropy(state);
    return state;
}

// S = mu + sum_k lambda_k <V_k>. For the Gibbs form this equals
// -Tr rho ln rho (see spectral_entropy), which tests use as the second route.
inline double shannon_entropy(const MaxEntState& state) {
    if (state.multipliers.size() != state.averages.size())
        throw dimension_mismatch("state carries mismatched multipliers/averages");
    KahanSum s;
    s.add(state.log_partition);
    for (std::size_t k = 0; k < state.multipliers.size(); ++k)
        s.add(state.multipliers[k] * state.averages[k]);
    return s.value();
}

// -Tr rho ln rho via eigendecomposition, with 0 ln 0 = 0 and eigenvalues
// below 1e-300 clamped.
inline double spectral_entropy(const ComplexMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double p = es.eigenvalues()(i);
        if (p > 1e-300) s -= p * std::log(p);
    }
    return s;
}

// Sums delta U_k = delta<V_k>, delta W_k = <delta V_k> (prior state), and
// delta Q_k = delta U_k - delta W_k over consecutive path points.
inline HeatDecomposition heat_decomposition(const std::vector<PathPoint>& path) {
    if (path.size() < 2) throw empty_path("path needs at least two points");
    const std::size_t K = path.front().observables.size();
    const auto d = path.front().rho.rows();
    for (const auto& pt : path) {
        if (pt.observables.size() != K)
            throw dimension_mismatch("observable count varies along path");
        if (pt.rho.rows() != d || pt.rho.cols() != d)
            throw dimension_mismatch("state dimension varies along path");
        for (const auto& v : pt.observables)
            if (v.rows() != d || v.cols() != d)
                throw dimension_mismatch("observable dimension varies along path");
    }

    std::vector<KahanSum> du(K), dw(K);
    for (std::size_t step = 0; step + 1 < path.size(); ++step) {
        const auto& a = path[step];
        const auto& b = path[step + 1];
        for (std::size_t k = 0; k < K; ++k) {
            const double u_new = (b.rho * b.observables[k]).trace().real();
            const double u_old = (a.rho * a.observables[k]).trace().real();
            const double w = (a.rho * (b.observables[k] - a.observables[k])).trace().real();
            du[k].add(u_new - u_old);
            dw[k].add(w);
        }
    }
    HeatDecomposition out;
    out.per_observable.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        out.per_observable[k].du = du[k].value();
        out.per_observable[k].dw = dw[k].value();
        out.per_observable[k].dq = du[k].value() - dw[k].value();
    }
    return out;
}

// sum_k lambda_k dQ_k - bits ln 2. Nonnegative means the generalized
// erasure bound is satisfied.
inline double erasure_cost_margin(const std::vector<double>& multipliers,
                                  const std::vector<double>& heats, double bits) {
    if (multipliers.size() != heats.size())
        throw length_mismatch("multipliers and heats differ in length");
    if (!(bits > 0.0)) throw config_invalid("bits must be > 0");
    KahanSum s;
    for (std::size_t k = 0; k < multipliers.size(); ++k) s.add(multipliers[k] * heats[k]);
    return s.value() - bits * std::log(2.0);
}

} // namespace eraserlab::maxent
