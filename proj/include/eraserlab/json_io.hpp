#pragma once

// JSON (de)serialization of the public problem and result types. Complex
// matrices travel as row-major arrays of [re, im] pairs.

#include <string>
#include <vector>

#include <json.hpp>

#include "eraserlab/central_spin.hpp"
#include "eraserlab/energy_erasure.hpp"
#include "eraserlab/errors.hpp"
#include "eraserlab/maxent.hpp"
#include "eraserlab/she_engine.hpp"
#include "eraserlab/spin_erasure.hpp"

namespace eraserlab::json_io {

using nlohmann::json;

inline json matrix_to_json(const maxent::ComplexMatrix& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            out.push_back({m(r, c).real(), m(r, c).imag()});
    return out;
}

inline maxent::ComplexMatrix matrix_from_json(const json& j, Eigen::Index dim) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(dim * dim))
        throw config_invalid("matrix must hold dim*dim [re, im] pairs");
    maxent::ComplexMatrix m(dim, dim);
    std::size_t i = 0;
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c, ++i) {
            const auto& cell = j[i];
            if (!cell.is_array() || cell.size() != 2)
                throw config_invalid("matrix entries must be [re, im] pairs");
            m(r, c) = std::complex<double>(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    return m;
}

inline json to_json(const maxent::MaxEntProblem& p) {
    json obs = json::array();
    for (const auto& o : p.observables)
        obs.push_back({{"label", o.label}, {"matrix", matrix_to_json(o.matrix)}});
    return {{"dim", p.dimension()}, {"observables", obs}, {"targets", p.targets}};
}

inline maxent::MaxEntProblem maxent_problem_from_json(const json& j) {
    maxent::MaxEntProblem p;
    const auto dim = j.at("dim").get<Eigen::Index>();
    for (const auto& o : j.at("observables")) {
        maxent::Observable obs;
        obs.label = o.value("label", "");
        obs.matrix = matrix_from_json(o.at("matrix"), dim);
        p.observables.push_back(std::move(obs));
    }
    p.targets = j.at("targets").get<std::vector<double>>();
    return p;
}

inline json to_json(const maxent::MaxEntState& s) {
    return {{"multipliers", s.multipliers},
            {"log_partition", s.log_partition},
            {"averages", s.averages},
            {"entropy_nats", s.entropy_nats},
            {"dim", s.rho.rows()},
            {"rho", matrix_to_json(s.rho)}};
}

inline maxent::MaxEntState maxent_state_from_json(const json& j) {
    maxent::MaxEntState s;
    s.multipliers = j.at("multipliers").get<std::vector<double>>();
    s.log_partition = j.at("log_partition").get<double>();
    s.averages = j.at("averages").get<std::vector<double>>();
    s.entropy_nats = j.at("entropy_nats").get<double>();
    s.rho = matrix_from_json(j.at("rho"), j.at("dim").get<Eigen::Index>());
    return s;
}

inline json to_json(const energy::GapSchedule& s) { return {{"energies", s.energies}}; }

inline energy::GapSchedule gap_schedule_from_json(const json& j) {
    energy::GapSchedule s;
    s.energies = j.at("energies").get<std::vector<double>>();
    s.validate();
    return s;
}

inline json to_json(const DiscreteDistribution& d) {
    return {{"values", d.values}, {"probs", d.probs}};
}

inline DiscreteDistribution distribution_from_json(const json& j) {
    DiscreteDistribution d;
    d.values = j.at("values").get<std::vector<double>>();
    d.probs = j.at("probs").get<std::vector<double>>();
    d.validate();
    return d;
}

inline json to_json(const spin::SpinlaborDistribution& d) {
    return {{"gamma", d.gamma},
            {"hbar", d.hbar},
            {"values", d.dist.values},
            {"probs", d.dist.probs},
            {"tail_bound", d.tail_mean_bound}};
}

inline spin::SpinlaborDistribution spinlabor_distribution_from_json(const json& j) {
    spin::SpinlaborDistribution d;
    d.gamma = j.at("gamma").get<double>();
    d.hbar = j.at("hbar").get<double>();
    d.dist.values = j.at("values").get<std::vector<double>>();
    d.dist.probs = j.at("probs").get<std::vector<double>>();
    d.tail_mean_bound = j.at("tail_bound").get<double>();
    d.factors = static_cast<int>(d.dist.values.size()) - 1;
    d.dist.validate();
    return d;
}

inline json to_json(const central::BathSpec& b) {
    return {{"couplings", b.couplings}, {"max_spins", b.max_spins}};
}

inline central::BathSpec bath_from_json(const json& j) {
    central::BathSpec b;
    b.couplings = j.at("couplings").get<std::vector<double>>();
    b.max_spins = j.value("max_spins", 16);
    b.validate();
    return b;
}

inline json to_json(const central::PulseSpec& p) { return {{"phases", p.phases}}; }

inline central::PulseSpec pulse_from_json(const json& j) {
    central::PulseSpec p;
    p.phases = j.at("phases").get<std::vector<double>>();
    return p;
}

inline json to_json(const engine::EngineConfig& c) {
    return {{"beta", c.beta},
            {"gamma", c.gamma},
            {"heat_per_stroke", c.heat_per_stroke},
            {"backend", engine::backend_name(c.backend)},
            {"cycles", c.cycles},
            {"hbar", c.hbar},
            {"reset", c.reset == spin::ResetConvention::reset_high ? "reset_high" : "reset_low"},
            {"bath_spins", c.bath_spins}};
}

inline engine::EngineConfig engine_config_from_json(const json& j) {
    engine::EngineConfig c;
    c.beta = j.at("beta").get<double>();
    c.gamma = j.at("gamma").get<double>();
    c.heat_per_stroke = j.at("heat_per_stroke").get<double>();
    const std::string b = j.at("backend").get<std::string>();
    if (b == "ideal_bound")
        c.backend = engine::ErasureBackend::ideal_bound;
    else if (b == "spin_protocol")
        c.backend = engine::ErasureBackend::spin_protocol;
    else if (b == "central_spin")
        c.backend = engine::ErasureBackend::central_spin;
    else
        throw config_invalid("unknown backend '" + b + "'");
    c.cycles = j.at("cycles").get<int>();
    c.hbar = j.value("hbar", 1.0);
    const std::string r = j.value("reset", "reset_low");
    if (r == "reset_low")
        c.reset = spin::ResetConvention::reset_low;
    else if (r == "reset_high")
        c.reset = spin::ResetConvention::reset_high;
    else
        throw config_invalid("unknown reset convention '" + r + "'");
    c.bath_spins = j.value("bath_spins", 8);
    return c;
}

} // namespace eraserlab::json_io
