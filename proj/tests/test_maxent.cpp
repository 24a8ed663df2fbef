#include "eraserlab/maxent.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "eraserlab/energy_erasure.hpp"
#include "eraserlab/spin_erasure.hpp"

namespace eraserlab::maxent {
namespace {

const double kLn2 = std::log(2.0);

Observable jz_half() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 0.5;
    m(1, 1) = -0.5;
    return {m, "Jz"};
}

Observable two_level(double gap) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(1, 1) = gap;
    return {m, "H"};
}

// thermal two-level problem along an energy ramp, as a maxent path
std::vector<PathPoint> thermal_path(double beta, const std::vector<double>& gaps) {
    std::vector<PathPoint> path;
    path.reserve(gaps.size());
    for (double e : gaps) {
        PathPoint pt;
        pt.observables = {two_level(e).matrix};
        const double p1 = energy::thermal_occupation(e, beta);
        ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
        rho(0, 0) = 1.0 - p1;
        rho(1, 1) = p1;
        pt.rho = rho;
        path.push_back(std::move(pt));
    }
    return path;
}

} // namespace

TEST(SolveMaxent, MaximallyMixedQubit) {
    MaxEntProblem problem{{jz_half()}, {0.0}};
    const auto state = solve_maxent(problem, 1e-12);
    EXPECT_NEAR(state.multipliers[0], 0.0, 1e-10);
    EXPECT_NEAR(state.log_partition, kLn2, 1e-12);
    EXPECT_NEAR(state.entropy_nats, kLn2, 1e-12);
    EXPECT_NEAR(state.rho(0, 0).real(), 0.5, 1e-12);
}

TEST(SolveMaxent, InvertsClosedFormMagnetization) {
    // <Jz> = -(1/2) tanh(lambda/2); lambda = 1 at this target
    const double target = -0.5 * std::tanh(0.5);
    MaxEntProblem problem{{jz_half()}, {target}};
    const auto state = solve_maxent(problem, 1e-12);
    EXPECT_NEAR(state.multipliers[0], 1.0, 1e-9);
    EXPECT_NEAR(state.averages[0], target, 1e-12);
}

TEST(SolveMaxent, GibbsOccupationAtBetaOne) {
    const double target = std::exp(-1.0) / (1.0 + std::exp(-1.0));
    MaxEntProblem problem{{two_level(1.0)}, {target}};
    const auto state = solve_maxent(problem, 1e-12);
    EXPECT_NEAR(state.multipliers[0], 1.0, 1e-9);
}

TEST(SolveMaxent, StateInvariantsHold) {
    MaxEntProblem problem{{two_level(1.0)}, {0.2}};
    const auto state = solve_maxent(problem, 1e-12);
    // rho Hermitian, PSD, unit trace
    EXPECT_LT((state.rho - state.rho.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(state.rho.trace().real(), 1.0, 1e-10);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(state.rho);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
    // S = mu + sum lambda <V> equals -Tr rho ln rho
    EXPECT_NEAR(state.entropy_nats, spectral_entropy(state.rho), 1e-8);
}

TEST(SolveMaxent, Errors) {
    EXPECT_THROW(solve_maxent({{jz_half()}, {0.7}}, 1e-10), infeasible_targets);
    EXPECT_THROW(solve_maxent({{jz_half()}, {-0.5}}, 1e-10), infeasible_targets); // boundary
    Observable bad = jz_half();
    bad.matrix(0, 1) = 0.5; // not Hermitian
    EXPECT_THROW(solve_maxent({{bad}, {0.0}}, 1e-10), non_hermitian_input);
    Observable sx{ComplexMatrix::Zero(2, 2), "Sx"};
    sx.matrix(0, 1) = 0.5;
    sx.matrix(1, 0) = 0.5;
    EXPECT_THROW(solve_maxent({{jz_half(), sx}, {0.0, 0.0}}, 1e-10), noncommuting_observables);
    Observable big{ComplexMatrix::Identity(3, 3), "I3"};
    EXPECT_THROW(solve_maxent({{jz_half(), big}, {0.0, 1.0}}, 1e-10), dimension_mismatch);
    EXPECT_THROW(solve_maxent({{jz_half()}, {0.0, 1.0}}, 1e-10), dimension_mismatch);
    // machine-precision tolerance is unreachable: iteration cap must report
    EXPECT_THROW(solve_maxent({{jz_half()}, {0.1}}, 1e-30), no_convergence);
}

TEST(ShannonEntropy, MatchesIndependentBinaryEntropy) {
    const double p1 = std::exp(-1.0) / (1.0 + std::exp(-1.0));
    MaxEntProblem problem{{two_level(1.0)}, {p1}};
    const auto state = solve_maxent(problem, 1e-12);
    const double h2 = -p1 * std::log(p1) - (1.0 - p1) * std::log(1.0 - p1);
    EXPECT_NEAR(h2, 0.58220, 1e-5);
    EXPECT_NEAR(state.entropy_nats, h2, 1e-10);
    EXPECT_NEAR(shannon_entropy(state), h2, 1e-10);
}

TEST(ShannonEntropy, PureStateLimit) {
    // lambda -> infinity along Jz drives the entropy to zero (tanh(16) is
    // the largest argument whose target still sits strictly inside the
    // spectrum in double precision)
    MaxEntProblem problem{{jz_half()}, {-0.5 * std::tanh(16.0)}};
    const auto state = solve_maxent(problem, 1e-12);
    EXPECT_LT(state.entropy_nats, 1e-7);
    EXPECT_GE(state.entropy_nats, 0.0);
}

TEST(HeatDecomposition, FixedObservableIsPureHeat) {
    std::vector<PathPoint> path(2);
    path[0].observables = {two_level(1.0).matrix};
    path[1].observables = {two_level(1.0).matrix};
    ComplexMatrix rho0 = ComplexMatrix::Zero(2, 2);
    rho0(0, 0) = 0.5;
    rho0(1, 1) = 0.5;
    ComplexMatrix rho1 = ComplexMatrix::Zero(2, 2);
    rho1(0, 0) = 0.8;
    rho1(1, 1) = 0.2;
    path[0].rho = rho0;
    path[1].rho = rho1;
    const auto decomp = heat_decomposition(path);
    EXPECT_DOUBLE_EQ(decomp.per_observable[0].dw, 0.0);
    EXPECT_NEAR(decomp.per_observable[0].dq, 0.2 - 0.5, 1e-15);
}

TEST(HeatDecomposition, FixedStateIsPureWork) {
    std::vector<PathPoint> path(2);
    path[0].observables = {two_level(1.0).matrix};
    path[1].observables = {two_level(2.0).matrix};
    ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
    rho(0, 0) = 0.7;
    rho(1, 1) = 0.3;
    path[0].rho = rho;
    path[1].rho = rho;
    const auto decomp = heat_decomposition(path);
    EXPECT_DOUBLE_EQ(decomp.per_observable[0].dq, 0.0);
    EXPECT_NEAR(decomp.per_observable[0].dw, 0.3 * 1.0, 1e-15);
}

TEST(HeatDecomposition, QuasistaticErasureHeat) {
    // two-level gap 0 -> 25 at beta = 1 over 2e4 steps: the reservoir
    // receives ln 2 of heat
    const auto schedule = energy::GapSchedule::ramp(25.0, 20000);
    const auto path = thermal_path(1.0, schedule.energies);
    const auto decomp = heat_decomposition(path);
    EXPECT_NEAR(-decomp.total_heat(), 0.6931, 1e-3);
    // and the work matches the quasistatic integral
    const auto qs = energy::quasistatic_erase(schedule, energy::ThermalModel{1.0});
    EXPECT_NEAR(decomp.total_work(), qs.work, 1e-10);
}

TEST(HeatDecomposition, Errors) {
    EXPECT_THROW(heat_decomposition({}), empty_path);
    std::vector<PathPoint> path(1);
    path[0].observables = {two_level(1.0).matrix};
    path[0].rho = ComplexMatrix::Identity(2, 2) * 0.5;
    EXPECT_THROW(heat_decomposition(path), empty_path);
    std::vector<PathPoint> bad(2);
    bad[0].observables = {two_level(1.0).matrix};
    bad[0].rho = ComplexMatrix::Identity(2, 2) * 0.5;
    bad[1].observables = {two_level(1.0).matrix, jz_half().matrix};
    bad[1].rho = bad[0].rho;
    EXPECT_THROW(heat_decomposition(bad), dimension_mismatch);
}

TEST(ErasureCostMargin, CanonicalSplits) {
    // pure heat, pure spintherm, and the half-half Lostaglio split
    EXPECT_NEAR(erasure_cost_margin({1.0}, {kLn2}, 1.0), 0.0, 1e-15);
    EXPECT_NEAR(erasure_cost_margin({1.0}, {kLn2}, 1.0), 0.0, 1e-15);
    EXPECT_NEAR(erasure_cost_margin({1.0, 1.0}, {kLn2 / 2, kLn2 / 2}, 1.0), 0.0, 1e-15);
    EXPECT_THROW(erasure_cost_margin({1.0}, {0.1, 0.2}, 1.0), length_mismatch);
}

// --- properties ---------------------------------------------------------

TEST(MaxEntProperties, DualConvexityAtSolution) {
    // psi at the solver output never exceeds psi at perturbed multipliers
    ComplexMatrix v2 = ComplexMatrix::Zero(3, 3);
    v2(0, 0) = 1.0;
    v2(1, 1) = 2.0;
    v2(2, 2) = 4.0;
    ComplexMatrix v1 = ComplexMatrix::Zero(3, 3);
    v1(0, 0) = -0.5;
    v1(1, 1) = 0.5;
    v1(2, 2) = 1.5;
    MaxEntProblem problem{{{v1, "a"}, {v2, "b"}}, {0.4, 2.1}};
    const auto state = solve_maxent(problem, 1e-12);
    const double psi_star = dual_value(problem, state.multipliers);
    std::mt19937_64 gen(3);
    std::normal_distribution<double> normal(0.0, 0.3);
    for (int i = 0; i < 100; ++i) {
        auto lam = state.multipliers;
        for (auto& l : lam) l += normal(gen);
        EXPECT_LE(psi_star, dual_value(problem, lam) + 1e-11);
    }
}

TEST(MaxEntProperties, GibbsRecovery) {
    // a single Hamiltonian observable reproduces the canonical state with
    // lambda equal to the generating beta
    ComplexMatrix h = ComplexMatrix::Zero(4, 4);
    h(0, 0) = 0.0;
    h(1, 1) = 0.7;
    h(2, 2) = 1.3;
    h(3, 3) = 2.9;
    // rotate into a non-diagonal basis with a fixed unitary
    ComplexMatrix gen = ComplexMatrix::Zero(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            gen(r, c) = std::complex<double>(std::sin(0.3 * (r + 1) * (c + 2)),
                                             0.2 * std::cos(1.1 * r - c));
    ComplexMatrix herm = gen + gen.adjoint();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm);
    ComplexMatrix u = es.eigenvectors();
    ComplexMatrix hrot = u * h * u.adjoint();
    hrot = 0.5 * (hrot + hrot.adjoint()); // clean rounding

    const double beta_true = 0.9;
    double z = 0.0, avg = 0.0;
    for (int i = 0; i < 4; ++i) z += std::exp(-beta_true * h(i, i).real());
    for (int i = 0; i < 4; ++i)
        avg += h(i, i).real() * std::exp(-beta_true * h(i, i).real()) / z;

    MaxEntProblem problem{{{hrot, "H"}}, {avg}};
    const auto state = solve_maxent(problem, 1e-12);
    EXPECT_NEAR(state.multipliers[0], beta_true, 1e-9);
    // canonical density matrix reproduced entrywise
    ComplexMatrix rho_exact = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) rho_exact(i, i) = std::exp(-beta_true * h(i, i).real()) / z;
    rho_exact = u * rho_exact * u.adjoint();
    EXPECT_LT((state.rho - rho_exact).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(MaxEntProperties, FirstLawClosure) {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<PathPoint> path;
        for (int t = 0; t < 5; ++t) {
            PathPoint pt;
            ComplexMatrix v = ComplexMatrix::Zero(2, 2);
            v(0, 0) = uni(gen);
            v(1, 1) = uni(gen) + 1.0;
            pt.observables = {v};
            const double p = 0.2 + 0.6 * uni(gen);
            ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
            rho(0, 0) = 1.0 - p;
            rho(1, 1) = p;
            pt.rho = rho;
            path.push_back(std::move(pt));
        }
        const auto decomp = heat_decomposition(path);
        for (const auto& term : decomp.per_observable)
            EXPECT_DOUBLE_EQ(term.du, term.dw + term.dq);
    }
}

TEST(MaxEntProperties, ErasureBoundForReversiblePaths) {
    // energy route: quasistatic erasure, bits = erased entropy / ln 2
    const auto schedule = energy::GapSchedule::ramp(25.0, 20000);
    const auto qs = energy::quasistatic_erase(schedule, energy::ThermalModel{1.0});
    const double p = qs.error_prob;
    const double h2 = p > 0.0 ? -p * std::log(p) - (1.0 - p) * std::log(1.0 - p) : 0.0;
    const double bits = (kLn2 - h2) / kLn2;
    EXPECT_GE(erasure_cost_margin({1.0}, {qs.heat_to_reservoir}, bits), -1e-9);

    // spin route: mean spintherm of the discrete protocol, reset_low
    for (double gh : {0.05, 0.1, 0.5, 1.0, 2.0, 5.0}) {
        spin::SpinProtocolConfig config;
        config.reservoir = {gh, 1.0};
        const auto pmf = spin::exact_spinlabor_distribution(config);
        const auto ledger = spin::first_law_ledger(pmf.mean(), config);
        EXPECT_GE(erasure_cost_margin({gh}, {ledger.spintherm_to_reservoir}, 1.0), -1e-9)
            << "gamma hbar = " << gh;
    }
}

} // namespace eraserlab::maxent
