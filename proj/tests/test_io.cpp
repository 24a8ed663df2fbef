#include "eraserlab/io.hpp"
#include "eraserlab/json_io.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

namespace eraserlab {
namespace {

namespace fs = std::filesystem;

fs::path temp_dir() {
    auto dir = fs::temp_directory_path() / "eraserlab_io_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST(FmtDouble, RoundTripsExactly) {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> uni(-1e6, 1e6);
    std::vector<double> cases = {0.0, 1.0, -0.5, 1e-300, 6.93147180559945e-1, 1.0 / 3.0};
    for (int i = 0; i < 200; ++i) cases.push_back(uni(gen) * std::pow(10.0, i % 30 - 15));
    for (double x : cases) {
        const std::string s = io::fmt_double(x);
        EXPECT_EQ(std::stod(s), x) << s;
    }
}

TEST(AtomicWrite, LeavesNoTempBehind) {
    const auto dir = temp_dir();
    const auto target = dir / "a.txt";
    io::atomic_write_text(target, "hello\n");
    EXPECT_EQ(slurp(target), "hello\n");
    EXPECT_FALSE(fs::exists(dir / "a.txt.tmp"));
    fs::remove(target);
}

TEST(CsvWriter, FormatsRfc4180) {
    io::CsvWriter csv({"a", "b,comma", "c\"quote"});
    csv.row({1.5, -2.0, 0.25});
    EXPECT_EQ(csv.str(), "a,\"b,comma\",\"c\"\"quote\"\n1.5,-2,0.25\n");
}

TEST(JsonIo, MaxentProblemRoundTrip) {
    maxent::MaxEntProblem p;
    maxent::ComplexMatrix m(2, 2);
    m << std::complex<double>(0.5, 0.0), std::complex<double>(0.1, -0.2),
        std::complex<double>(0.1, 0.2), std::complex<double>(-0.5, 0.0);
    p.observables.push_back({m, "V"});
    p.targets = {0.05};
    const auto j = json_io::to_json(p);
    const auto back = json_io::maxent_problem_from_json(j);
    EXPECT_EQ(back.observables[0].label, "V");
    EXPECT_LT((back.observables[0].matrix - m).cwiseAbs().maxCoeff(), 1e-16);
    EXPECT_EQ(back.targets, p.targets);
}

TEST(JsonIo, MaxentStateRoundTrip) {
    maxent::MaxEntProblem p;
    maxent::ComplexMatrix m = maxent::ComplexMatrix::Zero(2, 2);
    m(0, 0) = 0.5;
    m(1, 1) = -0.5;
    p.observables.push_back({m, "Jz"});
    p.targets = {-0.2};
    const auto state = maxent::solve_maxent(p, 1e-12);
    const auto back = json_io::maxent_state_from_json(json_io::to_json(state));
    EXPECT_EQ(back.multipliers, state.multipliers);
    EXPECT_EQ(back.log_partition, state.log_partition);
    EXPECT_EQ(back.entropy_nats, state.entropy_nats);
    EXPECT_LT((back.rho - state.rho).cwiseAbs().maxCoeff(), 1e-16);
}

TEST(JsonIo, SpinlaborPmfSchema) {
    spin::SpinProtocolConfig config;
    config.reservoir = {1.0, 1.0};
    const auto pmf = spin::exact_spinlabor_distribution(config);
    const auto j = json_io::to_json(pmf);
    EXPECT_TRUE(j.contains("gamma"));
    EXPECT_TRUE(j.contains("hbar"));
    EXPECT_TRUE(j.contains("values"));
    EXPECT_TRUE(j.contains("probs"));
    EXPECT_TRUE(j.contains("tail_bound"));
    const auto back = json_io::spinlabor_distribution_from_json(j);
    EXPECT_EQ(back.dist.values, pmf.dist.values);
    EXPECT_EQ(back.dist.probs, pmf.dist.probs);
    EXPECT_EQ(back.gamma, pmf.gamma);
}

TEST(JsonIo, ScheduleAndDistribution) {
    const auto s = energy::GapSchedule::ramp(5.0, 30);
    const auto back = json_io::gap_schedule_from_json(json_io::to_json(s));
    EXPECT_EQ(back.energies, s.energies);
    DiscreteDistribution d{{0.0, 1.0}, {0.5, 0.5}};
    const auto db = json_io::distribution_from_json(json_io::to_json(d));
    EXPECT_EQ(db.values, d.values);
}

TEST(JsonIo, EngineConfigRoundTrip) {
    engine::EngineConfig c;
    c.backend = engine::ErasureBackend::spin_protocol;
    c.beta = 2.0;
    c.gamma = 0.5;
    c.heat_per_stroke = 0.1;
    c.cycles = 42;
    const auto back = json_io::engine_config_from_json(json_io::to_json(c));
    EXPECT_EQ(back.backend, c.backend);
    EXPECT_EQ(back.beta, c.beta);
    EXPECT_EQ(back.cycles, c.cycles);
    EXPECT_THROW(json_io::engine_config_from_json({{"beta", 1.0},
                                                   {"gamma", 1.0},
                                                   {"heat_per_stroke", 0.0},
                                                   {"cycles", 1},
                                                   {"backend", "warp_drive"}}),
                 config_invalid);
}

TEST(StateDump, RoundTrip) {
    const auto bath = central::BathSpec::uniform_bath(5, 1.0);
    auto run = central::erase_cycles(bath, 2, true);
    const auto& state = run.ensemble.front().state;
    const auto dir = temp_dir();
    const auto path = dir / "state.bin";
    io::write_state_dump(path, state);
    const auto back = io::read_state_dump(path);
    EXPECT_EQ(back.n_spins, state.n_spins);
    ASSERT_EQ(back.sectors.size(), state.sectors.size());
    for (const auto& [key, amp] : state.sectors) {
        ASSERT_TRUE(back.sectors.count(key));
        EXPECT_EQ((back.sectors.at(key) - amp).norm(), 0.0);
    }
    fs::remove(path);
}

TEST(StateDump, RejectsForeignFile) {
    const auto dir = temp_dir();
    const auto path = dir / "not_a_dump.bin";
    io::atomic_write_text(path, "plain text");
    EXPECT_THROW(io::read_state_dump(path), config_invalid);
    fs::remove(path);
}

} // namespace eraserlab
