// eraserlab: command-line driver for the erasure-thermodynamics library.
//
// Subcommands: maxent, erase-energy, erase-spin, central-spin, engine,
// fluct, sweep. Exit codes: 0 success, 2 validation error, 3 numerical
// non-convergence. Output files are written atomically and are byte-stable
// for a fixed configuration and seed.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eraserlab/central_spin.hpp"
#include "eraserlab/energy_erasure.hpp"
#include "eraserlab/errors.hpp"
#include "eraserlab/io.hpp"
#include "eraserlab/json_io.hpp"
#include "eraserlab/maxent.hpp"
#include "eraserlab/she_engine.hpp"
#include "eraserlab/spin_erasure.hpp"

namespace el = eraserlab;
using nlohmann::json;

namespace {

// JSON config files for CLI11: top-level keys feed the main app, one nested
// object per subcommand. Command-line flags take precedence as usual.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
        json j = json::object();
        for (const CLI::Option* opt : app->get_options({})) {
            if (!opt->get_lnames().empty() && opt->get_configurable()) {
                if (!opt->results().empty())
                    j[opt->get_lnames()[0]] = opt->results().size() == 1
                                                  ? json(opt->results()[0])
                                                  : json(opt->results());
                else if (default_also)
                    j[opt->get_lnames()[0]] = opt->get_default_str();
            }
        }
        return j.dump(2) + "\n";
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json j;
        input >> j;
        std::vector<CLI::ConfigItem> out;
        collect(j, {}, out);
        return out;
    }

private:
    static std::string scalar(const json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        return v.dump();
    }

    static void collect(const json& j, std::vector<std::string> parents,
                        std::vector<CLI::ConfigItem>& out) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_object()) {
                auto deeper = parents;
                deeper.push_back(key);
                collect(value, deeper, out);
            } else {
                CLI::ConfigItem item;
                item.parents = parents;
                item.name = key;
                if (value.is_array())
                    for (const auto& v : value) item.inputs.push_back(scalar(v));
                else
                    item.inputs.push_back(scalar(value));
                out.push_back(std::move(item));
            }
        }
    }
};

std::filesystem::path resolve_out(const std::string& out) {
    std::filesystem::path p(out);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("ERASERLAB_OUT_DIR")) p = std::filesystem::path(dir) / p;
    }
    return p;
}

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> grid;
    if (spec.find(':') != std::string::npos) {
        double a = 0, b = 0, step = 0;
        if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &a, &b, &step) != 3 || !(step > 0))
            throw el::config_invalid("grid must be start:stop:step with step > 0");
        const int n = static_cast<int>(std::floor((b - a) / step + 1e-9));
        for (int i = 0; i <= n; ++i) grid.push_back(a + i * step);
        return grid;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        grid.push_back(std::stod(item));
    }
    return grid;
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

// ---------------------------------------------------------------- maxent

struct MaxentParams {
    std::string problem_path;
    double tol = 1e-10;
    std::string out;
};

void run_maxent(const MaxentParams& p) {
    std::ifstream in(p.problem_path);
    if (!in) throw el::config_invalid("cannot open problem file " + p.problem_path);
    json j;
    in >> j;
    const auto problem = el::json_io::maxent_problem_from_json(j);
    problem.validate();
    const auto state = el::maxent::solve_maxent(problem, p.tol);
    double residual = 0.0;
    for (std::size_t k = 0; k < problem.targets.size(); ++k)
        residual = std::max(residual, std::abs(state.averages[k] - problem.targets[k]));
    std::cout << "S = " << num(state.entropy_nats) << "  mu = " << num(state.log_partition)
              << "  residual = " << num(residual) << "\n";
    if (!p.out.empty())
        el::io::atomic_write_text(resolve_out(p.out), el::json_io::to_json(state).dump(2) + "\n");
}

// ---------------------------------------------------------- erase-energy

struct EraseEnergyParams {
    double beta = 1.0;
    double emax = 25.0;
    int steps = 20000;
    double estart = 1e-3;
    int samples = 0;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string out;
};

void run_erase_energy(const EraseEnergyParams& p) {
    const el::energy::ThermalModel model{p.beta};
    model.validate();
    const auto schedule = el::energy::GapSchedule::ramp(p.emax, p.steps, p.estart);
    const auto qs = el::energy::quasistatic_erase(schedule, model);
    std::cout << "W = " << num(qs.work) << "  Q_R = " << num(qs.heat_to_reservoir)
              << "  p_err = " << num(qs.error_prob) << "\n";
    if (!p.out.empty()) {
        if (p.samples > 0) {
            const auto batch =
                el::energy::sample_batch(schedule, model, p.samples, p.seed, p.workers);
            el::io::CsvWriter csv({"seed", "W", "Q_R", "final_bit"});
            for (int i = 0; i < p.samples; ++i) {
                const auto& r = batch[static_cast<std::size_t>(i)];
                csv.row_strings({el::io::fmt_int(static_cast<long long>(
                                     el::derive_stream_seed(p.seed, static_cast<std::uint64_t>(i)))),
                                 el::io::fmt_double(r.work),
                                 el::io::fmt_double(r.heat_to_reservoir),
                                 el::io::fmt_int(r.final_bit)});
            }
            csv.write(resolve_out(p.out));
        } else {
            el::io::CsvWriter csv({"W", "Q_R", "p_err"});
            csv.row({qs.work, qs.heat_to_reservoir, qs.error_prob});
            csv.write(resolve_out(p.out));
        }
    }
}

// ------------------------------------------------------------ erase-spin

struct EraseSpinParams {
    double gamma = 1.0;
    double hbar = 1.0;
    double trunc_tol = 1e-15;
    std::string reset = "low";
    bool check_jarzynski = false;
    int samples = 0;
    std::uint64_t seed = 1;
    std::string out;
};

el::spin::SpinProtocolConfig spin_config(const EraseSpinParams& p) {
    el::spin::SpinProtocolConfig config;
    config.reservoir = {p.gamma, p.hbar};
    config.truncation_tol = p.trunc_tol;
    if (p.reset == "low")
        config.reset = el::spin::ResetConvention::reset_low;
    else if (p.reset == "high")
        config.reset = el::spin::ResetConvention::reset_high;
    else
        throw el::config_invalid("reset must be 'low' or 'high'");
    config.validate();
    return config;
}

void run_erase_spin(const EraseSpinParams& p) {
    const auto config = spin_config(p);
    const auto pmf = el::spin::exact_spinlabor_distribution(config);
    const double mean = pmf.mean();
    const auto ledger = el::spin::first_law_ledger(mean, config);
    if (p.check_jarzynski) {
        const auto jz = el::spin::jarzynski_like_check(pmf, config.reservoir);
        std::cout << "lhs = " << el::io::fmt_double(jz.lhs) << "  A = "
                  << el::io::fmt_double(jz.expected)
                  << "  |lhs-A| = " << num(std::abs(jz.lhs - jz.expected)) << "\n";
    } else {
        std::cout << "<L_s> = " << num(mean) << "  bound = " << num(std::log(2.0) / p.gamma)
                  << "  <Q_s> = " << num(ledger.spintherm_to_reservoir)
                  << "  P(0) = " << num(pmf.dist.probs.front()) << "\n";
    }
    if (!p.out.empty()) {
        if (p.samples > 0) {
            const auto samples = el::spin::sample_spinlabor(config, p.samples, p.seed);
            el::io::CsvWriter csv({"seed", "L_s"});
            for (int i = 0; i < p.samples; ++i)
                csv.row_strings({el::io::fmt_int(static_cast<long long>(
                                     el::derive_stream_seed(p.seed, static_cast<std::uint64_t>(i)))),
                                 el::io::fmt_double(samples[static_cast<std::size_t>(i)])});
            csv.write(resolve_out(p.out));
        } else {
            el::io::atomic_write_text(resolve_out(p.out),
                                      el::json_io::to_json(pmf).dump(2) + "\n");
        }
    }
}

// ---------------------------------------------------------- central-spin

struct CentralParams {
    int spins = 8;
    double coupling = 1.0;
    int cycles = 1;
    bool pulse = false;
    std::string out;
    std::string dump_state;
};

void run_central(const CentralParams& p) {
    const auto bath = el::central::BathSpec::uniform_bath(p.spins, p.coupling);
    bath.validate();
    if (p.cycles < 1) throw el::config_invalid("cycles must be >= 1");
    const auto result = el::central::erase_cycles(bath, p.cycles, p.pulse);
    const auto& last = result.records.back();
    std::cout << "cycles = " << p.cycles << "  error_prob = " << num(last.error_prob)
              << "  refail_prob = " << num(last.refail_prob)
              << "  brightness = " << num(last.brightness_after) << "\n";
    if (!p.out.empty()) {
        el::io::CsvWriter csv({"cycle", "error_prob", "brightness_before", "brightness_after"});
        for (const auto& r : result.records)
            csv.row_strings({el::io::fmt_int(r.cycle), el::io::fmt_double(r.error_prob),
                             el::io::fmt_double(r.brightness_before),
                             el::io::fmt_double(r.brightness_after)});
        csv.write(resolve_out(p.out));
    }
    if (!p.dump_state.empty()) {
        // dump the dominant branch of the final ensemble
        const el::central::Branch* best = nullptr;
        for (const auto& b : result.ensemble)
            if (!best || b.probability > best->probability) best = &b;
        if (best) el::io::write_state_dump(resolve_out(p.dump_state), best->state);
    }
}

// ---------------------------------------------------------------- engine

struct EngineParams {
    std::string backend = "ideal_bound";
    double beta = 1.0;
    double gamma = 1.0;
    double heat = 0.0;
    int cycles = 1;
    int spins = 8;
    std::string reset = "low";
    std::uint64_t seed = 1;
    std::string out;
};

void run_engine(const EngineParams& p) {
    el::engine::EngineConfig config;
    if (p.backend == "ideal_bound")
        config.backend = el::engine::ErasureBackend::ideal_bound;
    else if (p.backend == "spin_protocol")
        config.backend = el::engine::ErasureBackend::spin_protocol;
    else if (p.backend == "central_spin")
        config.backend = el::engine::ErasureBackend::central_spin;
    else
        throw el::config_invalid("backend must be ideal_bound, spin_protocol or central_spin");
    config.beta = p.beta;
    config.gamma = p.gamma;
    config.heat_per_stroke = p.heat;
    config.cycles = p.cycles;
    config.bath_spins = p.spins;
    config.reset = p.reset == "high" ? el::spin::ResetConvention::reset_high
                                     : el::spin::ResetConvention::reset_low;
    config.validate();
    const auto ledger = el::engine::run_cycles(config, p.seed);
    const double eff = el::engine::efficiency(ledger);
    const double ds = el::engine::entropy_audit(ledger);
    std::cout << "efficiency = " << num(eff) << "  entropy_production = " << num(ds)
              << "  W_total = " << num(ledger.total_work())
              << "  <Q_s> = " << num(ledger.total_spintherm() / std::max(1, p.cycles)) << "\n";
    if (!p.out.empty()) {
        el::io::CsvWriter csv(
            {"cycle", "W", "Q", "L_s", "Q_s", "dS_thermal", "dS_spin", "dS_memory"});
        for (const auto& r : ledger.rows)
            csv.row_strings({el::io::fmt_int(r.cycle), el::io::fmt_double(r.work),
                             el::io::fmt_double(r.heat), el::io::fmt_double(r.spinlabor),
                             el::io::fmt_double(r.spintherm), el::io::fmt_double(r.ds_thermal),
                             el::io::fmt_double(r.ds_spin), el::io::fmt_double(r.ds_memory)});
        csv.write(resolve_out(p.out));
    }
}

// ----------------------------------------------------------------- fluct

struct FluctParams {
    double beta = 1.0;
    double emax = 10.0;
    int steps = 20;
    double estart = 0.05;
    std::string eps_grid = "0.1:1.0:0.1";
    std::string out;
};

void run_fluct(const FluctParams& p) {
    const el::energy::ThermalModel model{p.beta};
    model.validate();
    const auto schedule = el::energy::GapSchedule::ramp(p.emax, p.steps, p.estart);
    const auto grid = parse_grid(p.eps_grid);
    if (grid.empty()) throw el::config_invalid("eps grid is empty");
    const auto dists = el::energy::work_distribution_exact(schedule, model);
    const double z_ratio = el::energy::partition_function(schedule.energies.back(), p.beta) /
                           el::energy::partition_function(0.0, p.beta);
    const double dev = el::energy::jarzynski_check(dists.work, p.beta, z_ratio);
    int holds = 0;
    el::io::CsvWriter csv({"eps", "P", "bound"});
    for (double eps : grid) {
        const auto tail = el::energy::landauer_violation_tail(dists.heat, p.beta, eps);
        if (tail.probability < tail.bound) ++holds;
        csv.row({eps, tail.probability, tail.bound});
    }
    std::cout << "jarzynski_dev = " << num(dev) << "  tail_ok = " << holds << "/" << grid.size()
              << "\n";
    if (!p.out.empty()) csv.write(resolve_out(p.out));
}

// ----------------------------------------------------------------- sweep

struct SweepParams {
    std::string experiment;
    std::string parameter;
    std::string grid_spec;
    int workers = 1;
    std::uint64_t seed = 1;
    std::string out;
    // experiment knobs
    double beta = 1.0;
    double gamma = 1.0;
    double hbar = 1.0;
    double emax = 10.0;
    int steps = 20;
};

void run_sweep(const SweepParams& p) {
    const auto grid = parse_grid(p.grid_spec);
    if (grid.empty()) throw el::config_invalid("sweep grid is empty");

    std::vector<std::string> columns;
    std::function<std::vector<double>(double)> point;

    if (p.experiment == "erase-spin" && p.parameter == "eps") {
        el::spin::SpinProtocolConfig config;
        config.reservoir = {p.gamma, p.hbar};
        config.validate();
        auto pmf = std::make_shared<el::spin::SpinlaborDistribution>(
            el::spin::exact_spinlabor_distribution(config));
        const bool tight = p.gamma * p.hbar < 1.0;
        columns = tight ? std::vector<std::string>{"eps", "P", "bound_A", "bound_tight"}
                        : std::vector<std::string>{"eps", "P", "bound_A"};
        point = [pmf, config, tight](double eps) {
            const auto t = el::spin::violation_tail(*pmf, config.reservoir, eps);
            std::vector<double> row{eps, t.probability, t.bound_exponential};
            if (tight) row.push_back(t.bound_tight.value_or(0.0));
            return row;
        };
    } else if (p.experiment == "erase-spin" && p.parameter == "gamma-hbar") {
        columns = {"gamma_hbar", "lhs", "A", "abs_dev"};
        point = [](double gh) {
            el::spin::SpinProtocolConfig config;
            config.reservoir = {gh, 1.0};
            config.validate();
            const auto pmf = el::spin::exact_spinlabor_distribution(config);
            const auto jz = el::spin::jarzynski_like_check(pmf, config.reservoir);
            return std::vector<double>{gh, jz.lhs, jz.expected, std::abs(jz.lhs - jz.expected)};
        };
    } else if (p.experiment == "fluct" && p.parameter == "eps") {
        const el::energy::ThermalModel model{p.beta};
        model.validate();
        const auto schedule = el::energy::GapSchedule::ramp(p.emax, p.steps, 0.05);
        auto dists = std::make_shared<el::energy::WorkHeatDistributions>(
            el::energy::work_distribution_exact(schedule, model));
        const double beta = p.beta;
        columns = {"eps", "P", "bound"};
        point = [dists, beta](double eps) {
            const auto t = el::energy::landauer_violation_tail(dists->heat, beta, eps);
            return std::vector<double>{eps, t.probability, t.bound};
        };
    } else if (p.experiment == "erase-energy" && p.parameter == "beta") {
        const double emax = p.emax;
        const int steps = p.steps;
        columns = {"beta", "W", "Q_R", "p_err"};
        point = [emax, steps](double beta) {
            const el::energy::ThermalModel model{beta};
            model.validate();
            const auto schedule = el::energy::GapSchedule::ramp(emax, steps);
            const auto qs = el::energy::quasistatic_erase(schedule, model);
            return std::vector<double>{beta, qs.work, qs.heat_to_reservoir, qs.error_prob};
        };
    } else {
        throw el::unknown_parameter("unsupported experiment/parameter pair '" + p.experiment +
                                    "/" + p.parameter + "'");
    }

    std::vector<std::vector<double>> rows(grid.size());
    const int workers = std::max(1, p.workers);
    if (workers == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) rows[i] = point(grid[i]);
    } else {
        std::vector<std::future<void>> futs;
        const std::size_t per = (grid.size() + workers - 1) / static_cast<std::size_t>(workers);
        for (int w = 0; w < workers; ++w) {
            const std::size_t b = static_cast<std::size_t>(w) * per;
            const std::size_t e = std::min(grid.size(), b + per);
            if (b >= e) break;
            futs.push_back(std::async(std::launch::async, [&, b, e] {
                for (std::size_t i = b; i < e; ++i) rows[i] = point(grid[i]);
            }));
        }
        for (auto& f : futs) f.get();
    }

    el::io::CsvWriter csv(columns);
    for (const auto& r : rows) csv.row(r);
    std::cout << "sweep " << p.experiment << "/" << p.parameter << ": " << grid.size()
              << " points\n";
    if (!p.out.empty()) csv.write(resolve_out(p.out));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"eraserlab: thermodynamics of information erasure"};
    app.require_subcommand(1);
    app.set_config("--config")->check(CLI::ExistingFile);
    app.config_formatter(std::make_shared<JsonConfig>());

    MaxentParams maxent_p;
    auto* cmd_maxent = app.add_subcommand("maxent", "solve a maximum-entropy reservoir problem");
    cmd_maxent->add_option("--problem", maxent_p.problem_path, "problem JSON file")->required();
    cmd_maxent->add_option("--tol", maxent_p.tol, "target residual tolerance");
    cmd_maxent->add_option("--out", maxent_p.out, "solution JSON path");

    EraseEnergyParams energy_p;
    auto* cmd_energy =
        app.add_subcommand("erase-energy", "Landauer erasure by raising an energy gap");
    cmd_energy->add_option("--beta", energy_p.beta, "inverse temperature");
    cmd_energy->add_option("--emax", energy_p.emax, "final gap");
    cmd_energy->add_option("--steps", energy_p.steps, "schedule steps");
    cmd_energy->add_option("--estart", energy_p.estart, "start of the geometric section");
    cmd_energy->add_option("--samples", energy_p.samples, "trajectory samples to write");
    cmd_energy->add_option("--seed", energy_p.seed, "master seed");
    cmd_energy->add_option("--workers", energy_p.workers, "worker threads");
    cmd_energy->add_option("--out", energy_p.out, "output CSV path");

    EraseSpinParams spin_p;
    auto* cmd_spin =
        app.add_subcommand("erase-spin", "erasure against a spin reservoir in steps of hbar");
    cmd_spin->add_option("--gamma", spin_p.gamma, "inverse spin temperature");
    cmd_spin->add_option("--hbar", spin_p.hbar, "angular momentum quantum");
    cmd_spin->add_option("--trunc-tol", spin_p.trunc_tol, "Bernoulli truncation tolerance");
    cmd_spin->add_option("--reset", spin_p.reset, "reset convention: low or high");
    cmd_spin->add_flag("--check-jarzynski", spin_p.check_jarzynski,
                       "print the Jarzynski-like equality check");
    cmd_spin->add_option("--samples", spin_p.samples, "spinlabor samples to write");
    cmd_spin->add_option("--seed", spin_p.seed, "master seed");
    cmd_spin->add_option("--out", spin_p.out, "output path (JSON PMF or CSV samples)");

    CentralParams central_p;
    auto* cmd_central =
        app.add_subcommand("central-spin", "fixed-point erasure via a central spin bath");
    cmd_central->add_option("--spins", central_p.spins, "bath spin count");
    cmd_central->add_option("--coupling", central_p.coupling, "uniform exchange coupling");
    cmd_central->add_option("--cycles", central_p.cycles, "erasure cycles");
    cmd_central->add_flag("--pulse", central_p.pulse, "apply designed magnetic pulses");
    cmd_central->add_option("--out", central_p.out, "cycle report CSV path");
    cmd_central->add_option("--dump-state", central_p.dump_state, "binary state dump path");

    EngineParams engine_p;
    auto* cmd_engine = app.add_subcommand("engine", "run the spin-heat engine ledger");
    cmd_engine->add_option("--backend", engine_p.backend,
                           "ideal_bound, spin_protocol or central_spin");
    cmd_engine->add_option("--beta", engine_p.beta, "thermal inverse temperature");
    cmd_engine->add_option("--gamma", engine_p.gamma, "spin inverse temperature");
    cmd_engine->add_option("--heat", engine_p.heat, "heat per stroke Q");
    cmd_engine->add_option("--cycles", engine_p.cycles, "engine cycles");
    cmd_engine->add_option("--spins", engine_p.spins, "bath spins for central_spin backend");
    cmd_engine->add_option("--reset", engine_p.reset, "reset convention: low or high");
    cmd_engine->add_option("--seed", engine_p.seed, "master seed");
    cmd_engine->add_option("--out", engine_p.out, "ledger CSV path");

    FluctParams fluct_p;
    auto* cmd_fluct =
        app.add_subcommand("fluct", "fluctuation checks for the energy erasure protocol");
    cmd_fluct->add_option("--beta", fluct_p.beta, "inverse temperature");
    cmd_fluct->add_option("--emax", fluct_p.emax, "final gap");
    cmd_fluct->add_option("--steps", fluct_p.steps, "schedule steps (<= 24)");
    cmd_fluct->add_option("--estart", fluct_p.estart, "start of the geometric section");
    cmd_fluct->add_option("--eps-grid", fluct_p.eps_grid, "eps grid, start:stop:step or list");
    cmd_fluct->add_option("--out", fluct_p.out, "tail table CSV path");

    SweepParams sweep_p;
    auto* cmd_sweep = app.add_subcommand("sweep", "sweep one parameter of an experiment");
    cmd_sweep->add_option("--experiment", sweep_p.experiment, "erase-spin, fluct or erase-energy")
        ->required();
    cmd_sweep->add_option("--parameter", sweep_p.parameter, "parameter to sweep")->required();
    cmd_sweep->add_option("--grid", sweep_p.grid_spec, "grid, start:stop:step or comma list")
        ->required();
    cmd_sweep->add_option("--workers", sweep_p.workers, "worker threads");
    cmd_sweep->add_option("--seed", sweep_p.seed, "master seed");
    cmd_sweep->add_option("--out", sweep_p.out, "output CSV path");
    cmd_sweep->add_option("--beta", sweep_p.beta, "inverse temperature");
    cmd_sweep->add_option("--gamma", sweep_p.gamma, "inverse spin temperature");
    cmd_sweep->add_option("--hbar", sweep_p.hbar, "angular momentum quantum");
    cmd_sweep->add_option("--emax", sweep_p.emax, "final gap");
    cmd_sweep->add_option("--steps", sweep_p.steps, "schedule steps");

    try {
        app.parse(argc, argv);
        if (cmd_maxent->parsed()) run_maxent(maxent_p);
        if (cmd_energy->parsed()) run_erase_energy(energy_p);
        if (cmd_spin->parsed()) run_erase_spin(spin_p);
        if (cmd_central->parsed()) run_central(central_p);
        if (cmd_engine->parsed()) run_engine(engine_p);
        if (cmd_fluct->parsed()) run_fluct(fluct_p);
        if (cmd_sweep->parsed()) run_sweep(sweep_p);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const el::numerical_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const el::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
