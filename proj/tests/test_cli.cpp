// End-to-end checks of the eraserlab binary: exit codes, validation
// behavior, reproducibility of output files.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(ERASERLAB_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return res;
    while (fgets(buf.data(), static_cast<int>(buf.size()), pipe)) res.output += buf.data();
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

fs::path temp_dir() {
    auto dir = fs::temp_directory_path() / "eraserlab_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(Cli, EraseEnergyPrintsLandauerWork) {
    const auto res = run_cli("erase-energy --beta 1 --emax 25 --steps 20000");
    EXPECT_EQ(res.exit_code, 0) << res.output;
    EXPECT_NE(res.output.find("W = 0.6933"), std::string::npos) << res.output;
}

TEST(Cli, EraseSpinJarzynskiCheck) {
    const auto res = run_cli("erase-spin --gamma 1 --check-jarzynski");
    EXPECT_EQ(res.exit_code, 0) << res.output;
    EXPECT_NE(res.output.find("A = 1.2048242148"), std::string::npos) << res.output;
    EXPECT_NE(res.output.find("lhs = 1.2048242148"), std::string::npos) << res.output;
}

TEST(Cli, NegativeGammaIsValidationError) {
    const auto res = run_cli("erase-spin --gamma -1");
    EXPECT_EQ(res.exit_code, 2);
    EXPECT_NE(res.output.find("gamma must be > 0"), std::string::npos) << res.output;
}

TEST(Cli, ValidationFailureLeavesNoOutput) {
    const auto out = temp_dir() / "never_written.csv";
    fs::remove(out);
    const auto res = run_cli("erase-spin --gamma -1 --out " + out.string());
    EXPECT_EQ(res.exit_code, 2);
    EXPECT_FALSE(fs::exists(out));
}

TEST(Cli, EmptySweepGridRejected) {
    const auto res = run_cli("sweep --experiment erase-spin --parameter eps --grid ,");
    EXPECT_EQ(res.exit_code, 2);
    EXPECT_NE(res.output.find("grid is empty"), std::string::npos) << res.output;
}

TEST(Cli, UnknownSweepParameterRejected) {
    const auto res = run_cli("sweep --experiment erase-spin --parameter flux --grid 0.1,0.2");
    EXPECT_EQ(res.exit_code, 2);
    EXPECT_NE(res.output.find("unsupported experiment/parameter"), std::string::npos);
}

TEST(Cli, SweepTailBoundsHoldRowWise) {
    const auto out = temp_dir() / "tail.csv";
    const auto res = run_cli(
        "sweep --experiment erase-spin --parameter eps --grid 0.1:2.0:0.1 --gamma 1 --out " +
        out.string());
    EXPECT_EQ(res.exit_code, 0) << res.output;
    std::ifstream in(out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "eps,P,bound_A");
    int rows = 0;
    while (std::getline(in, line)) {
        double eps = 0, p = 0, bound = 0;
        ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf", &eps, &p, &bound), 3) << line;
        EXPECT_LE(p, bound) << line;
        ++rows;
    }
    EXPECT_EQ(rows, 20);
    fs::remove(out);
}

TEST(Cli, SweepJarzynskiColumns) {
    const auto out = temp_dir() / "gh.csv";
    const auto res = run_cli(
        "sweep --experiment erase-spin --parameter gamma-hbar --grid 0.05,0.1,0.5,1,2,5 --out " +
        out.string());
    EXPECT_EQ(res.exit_code, 0) << res.output;
    std::ifstream in(out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "gamma_hbar,lhs,A,abs_dev");
    while (std::getline(in, line)) {
        double gh = 0, lhs = 0, a = 0, dev = 0;
        ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &gh, &lhs, &a, &dev), 4);
        EXPECT_LT(dev, 1e-9) << line;
    }
    fs::remove(out);
}

TEST(Cli, ReproducibleOutputBytes) {
    const auto a = temp_dir() / "ledger_a.csv";
    const auto b = temp_dir() / "ledger_b.csv";
    const std::string flags =
        "engine --backend spin_protocol --beta 1 --gamma 1 --heat 0.6931 --cycles 200 --seed 7";
    EXPECT_EQ(run_cli(flags + " --out " + a.string()).exit_code, 0);
    EXPECT_EQ(run_cli(flags + " --out " + b.string()).exit_code, 0);
    const auto sa = slurp(a), sb = slurp(b);
    EXPECT_FALSE(sa.empty());
    EXPECT_EQ(sa, sb);
    fs::remove(a);
    fs::remove(b);
}

TEST(Cli, WorkerCountDoesNotChangeBytes) {
    const auto a = temp_dir() / "w1.csv";
    const auto b = temp_dir() / "w3.csv";
    const std::string flags = "erase-energy --beta 1 --emax 5 --steps 40 --samples 400 --seed 11";
    EXPECT_EQ(run_cli(flags + " --workers 1 --out " + a.string()).exit_code, 0);
    EXPECT_EQ(run_cli(flags + " --workers 3 --out " + b.string()).exit_code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    fs::remove(a);
    fs::remove(b);
}

TEST(Cli, FluctTailTableAllHold) {
    const auto res = run_cli("fluct --beta 1 --steps 20 --emax 10");
    EXPECT_EQ(res.exit_code, 0) << res.output;
    EXPECT_NE(res.output.find("tail_ok = 10/10"), std::string::npos) << res.output;
}

TEST(Cli, CentralSpinReportColumns) {
    const auto out = temp_dir() / "cycles.csv";
    const auto res =
        run_cli("central-spin --spins 6 --cycles 2 --pulse --out " + out.string());
    EXPECT_EQ(res.exit_code, 0) << res.output;
    std::ifstream in(out);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "cycle,error_prob,brightness_before,brightness_after");
    fs::remove(out);
}

TEST(Cli, MaxentSolveFromJson) {
    const auto dir = temp_dir();
    const auto problem = dir / "problem.json";
    const auto solution = dir / "solution.json";
    // spin-1/2 Jz with target -(1/2) tanh(1/2): lambda = 1
    std::ofstream(problem) << R"({
      "dim": 2,
      "observables": [{"label": "Jz", "matrix": [[0.5,0],[0,0],[0,0],[-0.5,0]]}],
      "targets": [-0.23105857863000487]
    })";
    const auto res =
        run_cli("maxent --problem " + problem.string() + " --out " + solution.string());
    EXPECT_EQ(res.exit_code, 0) << res.output;
    const auto text = slurp(solution);
    EXPECT_NE(text.find("\"multipliers\""), std::string::npos);
    EXPECT_NE(text.find("0.9999999"), std::string::npos) << text; // lambda ~ 1
    fs::remove(problem);
    fs::remove(solution);
}

TEST(Cli, MaxentUnreachableToleranceExitsThree) {
    const auto dir = temp_dir();
    const auto problem = dir / "p3.json";
    std::ofstream(problem) << R"({
      "dim": 2,
      "observables": [{"label": "Jz", "matrix": [[0.5,0],[0,0],[0,0],[-0.5,0]]}],
      "targets": [0.1]
    })";
    const auto res = run_cli("maxent --problem " + problem.string() + " --tol 1e-30");
    EXPECT_EQ(res.exit_code, 3) << res.output;
    fs::remove(problem);
}

TEST(Cli, JsonConfigFileProvidesDefaults) {
    const auto dir = temp_dir();
    const auto cfg = dir / "cfg.json";
    std::ofstream(cfg) << R"({"erase-spin": {"gamma": 2.0}})";
    const auto res = run_cli("--config " + cfg.string() + " erase-spin");
    EXPECT_EQ(res.exit_code, 0) << res.output;
    // ln2 / 2 = 0.3466 shows the config value was picked up
    EXPECT_NE(res.output.find("bound = 0.346574"), std::string::npos) << res.output;
    // command line still wins
    const auto over = run_cli("--config " + cfg.string() + " erase-spin --gamma 1");
    EXPECT_NE(over.output.find("bound = 0.693147"), std::string::npos) << over.output;
    fs::remove(cfg);
}

TEST(Cli, OutDirEnvironmentSetsDefaultDirectory) {
    const auto dir = temp_dir() / "envout";
    fs::create_directories(dir);
    const std::string cmd = "ERASERLAB_OUT_DIR=" + dir.string() + " " +
                            std::string(ERASERLAB_CLI_PATH) +
                            " erase-energy --beta 1 --emax 5 --steps 50 --out rel.csv 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    std::array<char, 512> buf{};
    while (fgets(buf.data(), static_cast<int>(buf.size()), pipe)) {
    }
    EXPECT_EQ(WEXITSTATUS(pclose(pipe)), 0);
    EXPECT_TRUE(fs::exists(dir / "rel.csv"));
    fs::remove_all(dir);
}

} // namespace
