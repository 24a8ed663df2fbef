#pragma once

// Sector-resolved state-vector simulation of fixed-point erasure: a memory
// spin exchanges angular momentum with N bath spins under
//
//     H = sum_k g_k (sp_M sm_k + sm_M sp_k),
//
// which conserves total J_z, so the state factorizes into sectors labeled by
// (memory bit, magnon number n). Amplitudes are stored per sector over the
// C(N, n) basis of n-flipped bath configurations; evolution couples only
// (down, n) <-> (up, n+1) pairs. Pairs are exponentiated exactly by dense
// eigendecomposition for N <= 12 and by Lanczos stepping above that.
//
// |up>|0> is an exact fixed point; |down>|0> flops into |up>|1_bright> at
// t* = pi / (2 g sqrt(N)) for uniform couplings. Diagonal magnetic pulses
// re-phase the bath so that previously written one-magnon states become dark
// and repeated erasure cycles stay near the fixed point.

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "eraserlab/errors.hpp"
#include "eraserlab/rng.hpp"

namespace eraserlab::central {

using Complex = std::complex<double>;

struct BathSpec {
    std::vector<double> couplings; // g_k > 0
    int max_spins = 16;

    int size() const { return static_cast<int>(couplings.size()); }

    void validate() const {
        if (couplings.empty()) throw invalid_bath("bath needs at least one spin");
        if (size() > max_spins)
            throw invalid_bath("bath exceeds configured maximum of " +
                               std::to_string(max_spins) + " spins");
        for (double g : couplings)
            if (!(g > 0.0) || !std::isfinite(g)) throw invalid_bath("couplings must be > 0");
    }

    bool uniform(double tol = 1e-12) const {
        for (double g : couplings)
            if (std::abs(g - couplings.front()) > tol * std::abs(couplings.front())) return false;
        return true;
    }

    static BathSpec uniform_bath(int n_spins, double g = 1.0) {
        BathSpec b;
        b.couplings.assign(static_cast<std::size_t>(n_spins), g);
        return b;
    }
};

struct PulseSpec {
    std::vector<double> phases; // radians, one per bath spin
};

namespace detail {

inline std::uint64_t binom(int n, int k) {
    static const auto table = [] {
        std::array<std::array<std::uint64_t, 25>, 25> t{};
        for (int i = 0; i < 25; ++i) {
            t[static_cast<std::size_t>(i)][0] = 1;
            for (int j = 1; j <= i; ++j)
                t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    t[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
                    (j <= i - 1 ? t[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)]
                                : 0);
        }
        return t;
    }();
    if (k < 0 || k > n) return 0;
    return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

// n-flip configurations as bitmasks in increasing numeric order
inline std::vector<std::uint32_t> configs(int n_spins, int flips) {
    std::vector<std::uint32_t> out;
    out.reserve(binom(n_spins, flips));
    if (flips == 0) {
        out.push_back(0);
        return out;
    }
    if (flips > n_spins) return out;
    std::uint32_t v = (1u << flips) - 1u;
    const std::uint32_t limit = 1u << n_spins;
    while (v < limit) {
        out.push_back(v);
        std::uint32_t t = v | (v - 1u);
        v = (t + 1u) | (((~t & (t + 1u)) - 1u) >> (std::countr_zero(v) + 1));
        if (v == 0) break; // flips == n_spins wrapped around
    }
    return out;
}

// combinadic rank of mask among equal-popcount masks in numeric order
inline std::size_t config_index(std::uint32_t mask) {
    std::size_t idx = 0;
    int i = 1;
    while (mask) {
        idx += binom(std::countr_zero(mask), i);
        ++i;
        mask &= mask - 1u;
    }
    return idx;
}

} // namespace detail

// (memory bit, magnon count), ordered by magnons then memory with down first
struct SectorKey {
    int magnons = 0;
    bool memory_up = true;

    friend bool operator<(const SectorKey& a, const SectorKey& b) {
        if (a.magnons != b.magnons) return a.magnons < b.magnons;
        return a.memory_up < b.memory_up;
    }
    friend bool operator==(const SectorKey& a, const SectorKey& b) {
        return a.magnons == b.magnons && a.memory_up == b.memory_up;
    }
};

struct SectorState {
    int n_spins = 0;
    std::map<SectorKey, Eigen::VectorXcd> sectors;

    static SectorState product_state(const BathSpec& bath, bool memory_up, int magnons = 0) {
        bath.validate();
        if (magnons < 0 || magnons > bath.size())
            throw invalid_bath("magnon count outside [0, N]");
        SectorState s;
        s.n_spins = bath.size();
        Eigen::VectorXcd amp =
            Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(detail::binom(s.n_spins, magnons)));
        amp(0) = 1.0;
        s.sectors[{magnons, memory_up}] = amp;
        return s;
    }

    double norm_squared() const {
        double s = 0.0;
        for (const auto& [key, amp] : sectors) s += amp.squaredNorm();
        return s;
    }

    double population(bool memory_up) const {
        double s = 0.0;
        for (const auto& [key, amp] : sectors)
            if (key.memory_up == memory_up) s += amp.squaredNorm();
        return s;
    }

    double sector_population(const SectorKey& key) const {
        auto it = sectors.find(key);
        return it == sectors.end() ? 0.0 : it->second.squaredNorm();
    }

    // <J_z> of memory plus bath, in units hbar = 1
    double total_jz() const {
        double s = 0.0;
        for (const auto& [key, amp] : sectors) {
            const double jz = (key.memory_up ? 0.5 : -0.5) + 0.5 * n_spins - key.magnons;
            s += jz * amp.squaredNorm();
        }
        return s;
    }

    void scale(double factor) {
        for (auto& [key, amp] : sectors) amp *= factor;
    }

    // component with the given memory bit, re-tagged to a fresh memory bit;
    // weight returned is the squared norm of the component
    std::optional<std::pair<double, SectorState>> memory_component(bool take_up,
                                                                   bool fresh_up) const {
        SectorState out;
        out.n_spins = n_spins;
        double w = 0.0;
        for (const auto& [key, amp] : sectors) {
            if (key.memory_up != take_up) continue;
            const double p = amp.squaredNorm();
            if (p == 0.0) continue;
            w += p;
            out.sectors[{key.magnons, fresh_up}] = amp;
        }
        if (w <= 0.0) return std::nullopt;
        out.scale(1.0 / std::sqrt(w));
        return std::make_pair(w, out);
    }

    void prune_empty(double tol = 0.0) {
        for (auto it = sectors.begin(); it != sectors.end();) {
            if (it->second.squaredNorm() <= tol)
                it = sectors.erase(it);
            else
                ++it;
        }
    }
};

namespace detail {

// Exchange block A: maps (down, n-1) configurations into (up, n)
// configurations; A[i(S' + k), j(S')] = g_k for k not in S'.
struct PairBlock {
    std::vector<std::uint32_t> up_configs;   // popcount e
    std::vector<std::uint32_t> down_configs; // popcount e-1
    Eigen::Index up_dim() const { return static_cast<Eigen::Index>(up_configs.size()); }
    Eigen::Index down_dim() const { return static_cast<Eigen::Index>(down_configs.size()); }
};

inline PairBlock pair_block(int n_spins, int excitation) {
    PairBlock b;
    if (excitation <= n_spins) b.up_configs = configs(n_spins, excitation);
    if (excitation >= 1 && excitation - 1 <= n_spins)
        b.down_configs = configs(n_spins, excitation - 1);
    return b;
}

// y = H x in the [up block; down block] layout
inline Eigen::VectorXcd pair_matvec(const BathSpec& bath, const PairBlock& blk,
                                    const Eigen::VectorXcd& x) {
    const Eigen::Index nu = blk.up_dim();
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(x.size());
    const int n = bath.size();
    for (Eigen::Index j = 0; j < blk.down_dim(); ++j) {
        const std::uint32_t sp = blk.down_configs[static_cast<std::size_t>(j)];
        const Complex xj = x(nu + j);
        for (int k = 0; k < n; ++k) {
            if (sp & (1u << k)) continue;
            const std::uint32_t s = sp | (1u << k);
            const auto i = static_cast<Eigen::Index>(config_index(s));
            const double g = bath.couplings[static_cast<std::size_t>(k)];
            y(i) += g * xj;
            y(nu + j) += g * x(i);
        }
    }
    return y;
}

inline Eigen::MatrixXd pair_hamiltonian(const BathSpec& bath, const PairBlock& blk) {
    const Eigen::Index nu = blk.up_dim();
    const Eigen::Index dim = nu + blk.down_dim();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    const int n = bath.size();
    for (Eigen::Index j = 0; j < blk.down_dim(); ++j) {
        const std::uint32_t sp = blk.down_configs[static_cast<std::size_t>(j)];
        for (int k = 0; k < n; ++k) {
            if (sp & (1u << k)) continue;
            const auto i = static_cast<Eigen::Index>(config_index(sp | (1u << k)));
            const double g = bath.couplings[static_cast<std::size_t>(k)];
            h(i, nu + j) = g;
            h(nu + j, i) = g;
        }
    }
    return h;
}

inline Eigen::VectorXcd dense_expm(const Eigen::MatrixXd& h, const Eigen::VectorXcd& x, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const Eigen::MatrixXd& v = es.eigenvectors();
    Eigen::VectorXd a = v.transpose() * x.real();
    Eigen::VectorXd b = v.transpose() * x.imag();
    Eigen::VectorXcd c(a.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double ph = -es.eigenvalues()(i) * t;
        c(i) = Complex(a(i), b(i)) * Complex(std::cos(ph), std::sin(ph));
    }
    Eigen::VectorXcd out(a.size());
    out.real() = v * c.real();
    out.imag() = v * c.imag();
    return out;
}

// Krylov approximation of e^{-iHt} x with full reorthogonalization. Splits
// the step in half when the a posteriori error estimate misses tol at the
// iteration cap.
template <typename MatVec>
Eigen::VectorXcd lanczos_expm(const MatVec& matvec, const Eigen::VectorXcd& x, double t,
                              double tol = 1e-10, int max_krylov = 90, int depth = 0) {
    const double beta0 = x.norm();
    if (beta0 == 0.0 || t == 0.0) return x;
    if (depth > 24) throw no_convergence("Lanczos step splitting failed to converge");

    std::vector<Eigen::VectorXcd> basis;
    basis.push_back(x / beta0);
    std::vector<double> alpha, beta;

    auto tridiag_exp_e1 = [&](std::size_t m) -> Eigen::VectorXcd {
        Eigen::MatrixXd tm = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                                   static_cast<Eigen::Index>(m));
        for (std::size_t i = 0; i < m; ++i) {
            tm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = alpha[i];
            if (i + 1 < m) {
                tm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = beta[i];
                tm(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = beta[i];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tm);
        Eigen::VectorXcd phase(static_cast<Eigen::Index>(m));
        for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(m); ++i) {
            const double ph = -es.eigenvalues()(i) * t;
            phase(i) = Complex(std::cos(ph), std::sin(ph)) * es.eigenvectors()(0, i);
        }
        return es.eigenvectors() * phase; // e^{-iTt} e1
    };

    for (int j = 0; j < max_krylov; ++j) {
        Eigen::VectorXcd w = matvec(basis.back());
        const double a = basis.back().dot(w).real(); // <v_j, H v_j>
        alpha.push_back(a);
        w -= a * basis.back();
        if (j > 0) w -= beta[static_cast<std::size_t>(j - 1)] * basis[static_cast<std::size_t>(j - 1)];
        for (const auto& v : basis) w -= v.dot(w) * v; // full reorthogonalization
        const double b = w.norm();
        const std::size_t m = alpha.size();
        Eigen::VectorXcd small_vec = tridiag_exp_e1(m);
        const double err = b * std::abs(small_vec(static_cast<Eigen::Index>(m - 1)));
        if (b < 1e-14 || err < tol) {
            Eigen::VectorXcd out = Eigen::VectorXcd::Zero(x.size());
            for (std::size_t i = 0; i < m; ++i)
                out += (beta0 * small_vec(static_cast<Eigen::Index>(i))) * basis[i];
            return out;
        }
        beta.push_back(b);
        basis.push_back(w / b);
    }
    // halve the step
    Eigen::VectorXcd half = lanczos_expm(matvec, x, 0.5 * t, 0.5 * tol, max_krylov, depth + 1);
    return lanczos_expm(matvec, half, 0.5 * t, 0.5 * tol, max_krylov, depth + 1);
}

} // namespace detail

// e^{-iHt} applied sector-pair by sector-pair. Norm and total J_z are
// conserved to the solver tolerance.
inline SectorState evolve_hyperfine(const SectorState& state, const BathSpec& bath, double t) {
    bath.validate();
    if (state.n_spins != bath.size())
        throw dimension_mismatch("state and bath disagree on spin count");
    if (!(t >= 0.0)) throw config_invalid("t must be >= 0");

    const int n = bath.size();
    SectorState out;
    out.n_spins = n;

    // collect excitation numbers with support
    std::vector<int> excitations;
    for (const auto& [key, amp] : state.sectors) {
        const int e = key.magnons + (key.memory_up ? 0 : 1);
        bool seen = false;
        for (int x : excitations) seen |= (x == e);
        if (!seen) excitations.push_back(e);
    }

    for (int e : excitations) {
        auto blk = detail::pair_block(n, e);
        const Eigen::Index dim = blk.up_dim() + blk.down_dim();
        if (dim > (Eigen::Index{1} << 18))
            throw dimension_overflow("sector pair dimension " + std::to_string(dim) +
                                     " exceeds budget");
        Eigen::VectorXcd joint = Eigen::VectorXcd::Zero(dim);
        if (auto it = state.sectors.find({e, true}); it != state.sectors.end() && blk.up_dim() > 0)
            joint.head(blk.up_dim()) = it->second;
        if (auto it = state.sectors.find({e - 1, false});
            it != state.sectors.end() && blk.down_dim() > 0)
            joint.tail(blk.down_dim()) = it->second;

        Eigen::VectorXcd evolved;
        if (blk.down_dim() == 0 || blk.up_dim() == 0) {
            evolved = joint; // nothing to exchange with; sector is frozen
        } else if (n <= 12) {
            evolved = detail::dense_expm(detail::pair_hamiltonian(bath, blk), joint, t);
        } else {
            evolved = detail::lanczos_expm(
                [&](const Eigen::VectorXcd& v) { return detail::pair_matvec(bath, blk, v); },
                joint, t);
        }
        if (blk.up_dim() > 0) out.sectors[{e, true}] = evolved.head(blk.up_dim());
        if (blk.down_dim() > 0) out.sectors[{e - 1, false}] = evolved.tail(blk.down_dim());
    }
    out.prune_empty(1e-32);
    return out;
}

// Time of maximal transfer out of |down>|bright n-state>. Uniform couplings
// give the closed form pi / (2 g sqrt((n+1)(N-n))); otherwise the transfer
// probability is scanned on a time grid around the uniform estimate.
inline double half_flop_time(const BathSpec& bath, int n) {
    bath.validate();
    const int nsp = bath.size();
    if (n < 0 || n > nsp - 1) throw config_invalid("n must lie in [0, N-1]");
    if (bath.uniform()) {
        const double g = bath.couplings.front();
        return M_PI / (2.0 * g * std::sqrt((n + 1.0) * (nsp - n)));
    }
    // numerical fallback: scan around the rms-coupling estimate
    double g2 = 0.0;
    for (double g : bath.couplings) g2 += g * g;
    const double g_rms = std::sqrt(g2 / nsp);
    const double t_ref = M_PI / (2.0 * g_rms * std::sqrt((n + 1.0) * (nsp - n)));
    SectorState probe = SectorState::product_state(bath, false, 0);
    if (n > 0) {
        // build an n-magnon bright-ish reference by repeated half flops
        for (int i = 0; i < n; ++i) {
            probe = evolve_hyperfine(probe, bath, half_flop_time(bath, 0));
            auto comp = probe.memory_component(true, false);
            if (!comp) throw no_convergence("bright-state construction lost support");
            probe = comp->second;
        }
    }
    const int grid = 4096;
    double best_t = 0.0, best_p = -1.0;
    for (int i = 1; i <= grid; ++i) {
        const double t = 2.0 * t_ref * i / grid;
        SectorState evolved = evolve_hyperfine(probe, bath, t);
        const double p = evolved.population(true);
        if (p > best_p) {
            best_p = p;
            best_t = t;
        }
    }
    return best_t;
}

// Diagonal pulse: multiplies each configuration amplitude by
// exp(i sum_k phi_k s_k) with s_k = +1/2 for an unflipped bath spin and
// -1/2 for a flipped one. Populations are untouched.
inline SectorState apply_pulse(const SectorState& state, const PulseSpec& pulse) {
    if (static_cast<int>(pulse.phases.size()) != state.n_spins)
        throw length_mismatch("pulse needs one phase per bath spin");
    for (double p : pulse.phases)
        if (!std::isfinite(p)) throw length_mismatch("pulse phases must be finite");

    double half_sum = 0.0;
    for (double p : pulse.phases) half_sum += 0.5 * p;

    SectorState out = state;
    for (auto& [key, amp] : out.sectors) {
        const auto cfgs = detail::configs(state.n_spins, key.magnons);
        for (std::size_t i = 0; i < cfgs.size(); ++i) {
            double theta = half_sum;
            std::uint32_t m = cfgs[i];
            while (m) {
                theta -= pulse.phases[static_cast<std::size_t>(std::countr_zero(m))];
                m &= m - 1u;
            }
            amp(static_cast<Eigen::Index>(i)) *= Complex(std::cos(theta), std::sin(theta));
        }
    }
    return out;
}

// A pure branch of a classical mixture, tracked explicitly.
struct Branch {
    double probability = 1.0;
    SectorState state;
};

using BranchEnsemble = std::vector<Branch>;

namespace detail {

// Coupling image of the up-memory sectors into the down space: for each
// occupied (up, n >= 1) sector, image[S'] = sum_{k not in S'} g_k psi_{S'+k}.
// The brightness is the total squared norm of these images; a dark state has
// brightness zero and is frozen by the evolution while the memory stays up.
template <typename PhaseFn>
double brightness_impl(const BranchEnsemble& branches, const BathSpec& bath, PhaseFn&& phase) {
    double total = 0.0;
    const int nsp = bath.size();
    for (const auto& [prob, state] : branches) {
        for (const auto& [key, amp] : state.sectors) {
            if (!key.memory_up || key.magnons < 1) continue;
            const auto downs = configs(nsp, key.magnons - 1);
            for (std::size_t j = 0; j < downs.size(); ++j) {
                Complex img = 0.0;
                const std::uint32_t sp = downs[j];
                for (int k = 0; k < nsp; ++k) {
                    if (sp & (1u << k)) continue;
                    const std::uint32_t s = sp | (1u << k);
                    img += bath.couplings[static_cast<std::size_t>(k)] *
                           amp(static_cast<Eigen::Index>(config_index(s))) *
                           phase(k);
                }
                total += prob * std::norm(img);
            }
        }
    }
    return total;
}

} // namespace detail

inline double brightness(const BranchEnsemble& branches, const BathSpec& bath) {
    bath.validate();
    return detail::brightness_impl(branches, bath, [](int) { return Complex(1.0, 0.0); });
}

inline double brightness(const SectorState& state, const BathSpec& bath) {
    return brightness({Branch{1.0, state}}, bath);
}

// Phases minimizing the brightness of the up-memory sectors, found by
// coordinate descent with the analytic per-phase minimum, from the zero
// pulse plus 10 seeded random restarts. For a uniform one-magnon bright
// state the minimum is exactly zero (any phase pattern cancelling
// sum_k g_k c_k e^{-i phi_k}, e.g. alternating 0, pi for even N).
inline PulseSpec design_pulse(const BranchEnsemble& branches, const BathSpec& bath) {
    bath.validate();
    const int nsp = bath.size();
    bool has_up = false;
    for (const auto& b : branches) has_up |= b.state.population(true) > 0.0;
    if (!has_up) throw no_up_sector_support("no up-memory support to darken");

    // brightness scale for the accept-as-dark test
    double g2 = 0.0, upnorm = 0.0;
    for (double g : bath.couplings) g2 += g * g;
    for (const auto& b : branches) upnorm += b.probability * b.state.population(true);
    const double scale = std::max(1e-300, g2 * upnorm);

    const double base = brightness(branches, bath);
    PulseSpec zero;
    zero.phases.assign(static_cast<std::size_t>(nsp), 0.0);
    if (base <= 1e-16 * scale) return zero; // already dark

    // The pulse multiplies the amplitude of config S' + k by e^{-i phi_k}
    // relative to its S' siblings, so the image sums carry z_k = e^{-i phi_k}.
    auto eval = [&](const std::vector<Complex>& z) {
        return detail::brightness_impl(branches, bath,
                                       [&](int k) { return z[static_cast<std::size_t>(k)]; });
    };

    std::vector<Complex> best_z(static_cast<std::size_t>(nsp), Complex(1.0, 0.0));
    double best_val = base;

    RngStream rng(0x5eedu);
    for (int restart = 0; restart <= 10; ++restart) {
        std::vector<Complex> z(static_cast<std::size_t>(nsp), Complex(1.0, 0.0));
        if (restart > 0)
            for (auto& zk : z) {
                const double phi = 2.0 * M_PI * rng.next_uniform();
                zk = Complex(std::cos(phi), std::sin(phi));
            }
        double val = eval(z);
        for (int sweep = 0; sweep < 200; ++sweep) {
            const double before = val;
            for (int jco = 0; jco < nsp; ++jco) {
                // B(z_j) = const + 2 Re(z_j w); minimize over |z_j| = 1
                Complex w = 0.0;
                for (const auto& [prob, state] : branches) {
                    for (const auto& [key, amp] : state.sectors) {
                        if (!key.memory_up || key.magnons < 1) continue;
                        const auto downs = detail::configs(nsp, key.magnons - 1);
                        for (std::size_t jd = 0; jd < downs.size(); ++jd) {
                            const std::uint32_t sp = downs[jd];
                            if (sp & (1u << jco)) continue;
                            const std::uint32_t sj = sp | (1u << jco);
                            const Complex aj =
                                bath.couplings[static_cast<std::size_t>(jco)] *
                                amp(static_cast<Eigen::Index>(detail::config_index(sj)));
                            Complex rest = 0.0;
                            for (int k = 0; k < nsp; ++k) {
                                if (k == jco || (sp & (1u << k))) continue;
                                const std::uint32_t s = sp | (1u << k);
                                rest += bath.couplings[static_cast<std::size_t>(k)] *
                                        amp(static_cast<Eigen::Index>(detail::config_index(s))) *
                                        z[static_cast<std::size_t>(k)];
                            }
                            w += prob * aj * std::conj(rest);
                        }
                    }
                }
                if (std::abs(w) > 0.0) z[static_cast<std::size_t>(jco)] = -std::conj(w) / std::abs(w);
            }
            val = eval(z);
            if (before - val <= 1e-15 * (1.0 + before)) break;
        }
        if (val < best_val) {
            best_val = val;
            best_z = z;
        }
    }

    PulseSpec out;
    out.phases.resize(static_cast<std::size_t>(nsp));
    for (int k = 0; k < nsp; ++k)
        out.phases[static_cast<std::size_t>(k)] = -std::arg(best_z[static_cast<std::size_t>(k)]);
    return out;
}

inline PulseSpec design_pulse(const SectorState& state, const BathSpec& bath) {
    return design_pulse(BranchEnsemble{Branch{1.0, state}}, bath);
}

struct CycleRecord {
    int cycle = 0;
    double error_prob = 0.0;        // total down-memory population at cycle end
    double refail_prob = 0.0;       // population that left the reset state of
                                    // branches entering the cycle already erased
    double brightness_before = 0.0; // end of evolution, before any pulse
    double brightness_after = 0.0;
    double evolve_time = 0.0;
    int dominant_magnons = 0;
    double branch_entropy = 0.0; // Shannon entropy of branch probabilities, nats
};

struct EraseCycleResult {
    BranchEnsemble ensemble;
    std::vector<CycleRecord> records;

    std::vector<double> error_probs() const {
        std::vector<double> out;
        out.reserve(records.size());
        for (const auto& r : records) out.push_back(r.error_prob);
        return out;
    }
};

// Repeated fixed-point erasure of fresh bits. Each cycle re-randomizes the
// memory to the maximally mixed state (modeling a new bit), evolves for the
// half-flop time of the dominant down sector, and optionally applies a
// designed pulse so the written bath states are dark for the next cycle.
// Mixtures are handled as ensembles of pure branches.
inline EraseCycleResult erase_cycles(BranchEnsemble initial, const BathSpec& bath, int cycles,
                                     bool use_pulse, double prune_tol = 1e-14) {
    bath.validate();
    if (cycles < 0) throw config_invalid("cycles must be >= 0");
    for (const auto& b : initial)
        if (b.state.n_spins != bath.size())
            throw dimension_mismatch("branch and bath disagree on spin count");

    EraseCycleResult result;
    result.ensemble = std::move(initial);

    for (int cycle = 1; cycle <= cycles; ++cycle) {
        // fresh maximally mixed bit: split each branch by memory, keep the
        // bath, attach a fresh up/down memory with probability 1/2 each
        BranchEnsemble randomized;
        // first/second half of entries track the fresh memory bit (up first)
        for (const auto& [p, psi] : result.ensemble) {
            for (bool take_up : {true, false}) {
                for (bool fresh_up : {true, false}) {
                    auto comp = psi.memory_component(take_up, fresh_up);
                    if (!comp) continue;
                    randomized.push_back({p * comp->first * 0.5, std::move(comp->second)});
                }
            }
        }

        // dominant down sector by weighted magnon populations
        std::map<int, double> down_weight;
        for (const auto& [p, psi] : randomized)
            for (const auto& [key, amp] : psi.sectors)
                if (!key.memory_up) down_weight[key.magnons] += p * amp.squaredNorm();
        int n_dom = 0;
        double w_dom = -1.0;
        for (const auto& [nmag, w] : down_weight) {
            if (w > w_dom + 1e-15) {
                w_dom = w;
                n_dom = nmag;
            }
        }
        n_dom = std::min(n_dom, bath.size() - 1);

        const double t = half_flop_time(bath, n_dom);

        CycleRecord rec;
        rec.cycle = cycle;
        rec.dominant_magnons = n_dom;
        rec.evolve_time = t;

        BranchEnsemble evolved;
        evolved.reserve(randomized.size());
        double err = 0.0, refail = 0.0;
        for (auto& [p, psi] : randomized) {
            const bool fresh_up = psi.population(true) > 0.5; // pure by construction
            SectorState next = evolve_hyperfine(psi, bath, t);
            const double down = next.population(false);
            err += p * down;
            if (fresh_up) refail += p * down;
            evolved.push_back({p, std::move(next)});
        }
        rec.error_prob = err;
        rec.refail_prob = refail;
        rec.brightness_before = brightness(evolved, bath);

        if (use_pulse) {
            const PulseSpec pulse = design_pulse(evolved, bath);
            for (auto& b : evolved) b.state = apply_pulse(b.state, pulse);
            rec.brightness_after = brightness(evolved, bath);
        } else {
            rec.brightness_after = rec.brightness_before;
        }

        // prune negligible branches, renormalize
        BranchEnsemble kept;
        double total = 0.0;
        for (auto& b : evolved)
            if (b.probability >= prune_tol) {
                total += b.probability;
                kept.push_back(std::move(b));
            }
        if (kept.empty() || total <= 0.0) throw no_convergence("all branches pruned");
        for (auto& b : kept) b.probability /= total;

        double entropy = 0.0;
        for (const auto& b : kept)
            if (b.probability > 0.0) entropy -= b.probability * std::log(b.probability);
        rec.branch_entropy = entropy;

        result.ensemble = std::move(kept);
        result.records.push_back(rec);
    }
    return result;
}

inline EraseCycleResult erase_cycles(const BathSpec& bath, int cycles, bool use_pulse,
                                     double prune_tol = 1e-14) {
    bath.validate();
    // fully polarized bath; the memory bit is immediately re-randomized at
    // the start of cycle 1, so its initial value is immaterial
    BranchEnsemble init{Branch{1.0, SectorState::product_state(bath, true, 0)}};
    return erase_cycles(std::move(init), bath, cycles, use_pulse, prune_tol);
}

} // namespace eraserlab::central
