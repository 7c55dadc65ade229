// protosim.hpp
// Seeded Monte Carlo simulation of the repeated protocol games: multi-round
// identification (forgery) attempts and two-box gambling sessions.
//
// Reproducibility contract: the generator is SplitMix64 (rng.hpp) and every
// trial runs on its own stream seeded by trial_seed(master_seed, trial
// index), so results are bit-identical across runs and across any degree of
// parallelism. All statistics are derived from integer counters, never from
// order-dependent floating-point accumulation.
//
// Per-round draw order (one Wiesner trial): Alice's bit; Trent's state
// (two doubles for haar, one bit for two_point); the ancilla state likewise
// (swap variant only); Bob's bit (uniform_guess only); the pass Bernoulli.
// Verification outcomes are Bernoulli draws from the exact pass probability
// computed by gamelib, not collapse sequences.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qgames/gamelib.hpp"
#include "qgames/jsonio.hpp"
#include "qgames/rng.hpp"

namespace qgames::protosim {

using gamelib::GvwSetup;
using gamelib::WiesnerVariant;
using qcore::Cplx;
using qcore::StateVector;

enum class TrentPolicy { Haar, TwoPoint };
enum class BobPolicy { UniformGuess, FixedBit, CopyAfterMeasure };

struct SimConfig {
    std::uint64_t trials = 1;
    std::uint32_t rounds_per_trial = 1;  // ignored by the single-shot GVW protocol
    std::uint64_t master_seed = 0;
    TrentPolicy trent_policy = TrentPolicy::Haar;
    BobPolicy bob_policy = BobPolicy::UniformGuess;
    WiesnerVariant variant = WiesnerVariant::Hadamard;

    void validate() const {
        if (trials < 1) throw std::invalid_argument("SimConfig: trials must be >= 1");
        if (rounds_per_trial < 1) throw std::invalid_argument("SimConfig: rounds must be >= 1");
    }
};

struct ProtocolResult {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double success_rate = 0.0;
    double std_error = 0.0;      // sqrt(p(1-p)/trials), normal approximation
    double per_round_rate = 0.0; // geometric mean success_rate^(1/rounds)
    double mean_gain_a = 0.0;    // GVW only; zero for identification runs
    double mean_gain_b = 0.0;
    std::uint64_t seed_used = 0;
};

inline jsonio::Value result_json(const ProtocolResult& r) {
    jsonio::Value v = jsonio::Value::object();
    v.add("trials", r.trials);
    v.add("successes", r.successes);
    v.add("success_rate", r.success_rate);
    v.add("std_error", r.std_error);
    v.add("per_round_rate", r.per_round_rate);
    v.add("mean_gain_a", r.mean_gain_a);
    v.add("mean_gain_b", r.mean_gain_b);
    v.add("seed_used", r.seed_used);
    return v;
}

inline std::string to_json(const ProtocolResult& r) { return result_json(r).dump(); }

// Haar-uniform qubit state: polar z uniform on [-1,1], azimuth uniform on
// [0, 2pi), state (cos(theta/2), e^{i phi} sin(theta/2)).
inline StateVector haar_state(rng::SplitMix64& g) {
    const double z = 2.0 * g.next_double() - 1.0;
    const double phi = 2.0 * std::numbers::pi * g.next_double();
    const double half = 0.5 * std::acos(z);
    return StateVector({Cplx(std::cos(half), 0.0),
                        std::sin(half) * std::exp(Cplx(0.0, phi))});
}

namespace detail {

inline StateVector two_point_state(int bit) { return StateVector::basis(2, bit); }

// Exact pass probabilities for the 16 discrete two_point configurations,
// indexed [alice][bob][trent][ancilla] (ancilla fixed to 0 for hadamard).
struct TwoPointTable {
    std::array<double, 16> pass{};

    explicit TwoPointTable(WiesnerVariant variant) {
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int t = 0; t < 2; ++t) {
                    if (variant == WiesnerVariant::Swap) {
                        for (int anc = 0; anc < 2; ++anc) {
                            const gamelib::WiesnerRound round(variant, two_point_state(t),
                                                              two_point_state(anc), a, b);
                            pass[index(a, b, t, anc)] = gamelib::wiesner_round(round).trent_pass;
                        }
                    } else {
                        const gamelib::WiesnerRound round(variant, two_point_state(t),
                                                          std::nullopt, a, b);
                        pass[index(a, b, t, 0)] = gamelib::wiesner_round(round).trent_pass;
                    }
                }
    }

    static std::size_t index(int a, int b, int t, int anc) {
        return static_cast<std::size_t>(a * 8 + b * 4 + t * 2 + anc);
    }
};

inline int bob_bit(BobPolicy policy, int alice_bit, rng::SplitMix64& g) {
    switch (policy) {
        case BobPolicy::UniformGuess: return g.next_bit();
        case BobPolicy::FixedBit: return 0;
        case BobPolicy::CopyAfterMeasure: return alice_bit;  // coordinated control
    }
    return 0;
}

inline bool wiesner_trial(const SimConfig& cfg, const TwoPointTable* table,
                          rng::SplitMix64& g) {
    for (std::uint32_t r = 0; r < cfg.rounds_per_trial; ++r) {
        const int alice = g.next_bit();
        double pass = 0.0;
        if (cfg.trent_policy == TrentPolicy::TwoPoint) {
            const int t = g.next_bit();
            const int anc = (cfg.variant == WiesnerVariant::Swap) ? g.next_bit() : 0;
            const int bob = bob_bit(cfg.bob_policy, alice, g);
            pass = table->pass[TwoPointTable::index(alice, bob, t, anc)];
        } else {
            const StateVector trent = haar_state(g);
            std::optional<StateVector> ancilla;
            if (cfg.variant == WiesnerVariant::Swap) ancilla = haar_state(g);
            const int bob = bob_bit(cfg.bob_policy, alice, g);
            const gamelib::WiesnerRound round(cfg.variant, trent, ancilla, alice, bob);
            pass = gamelib::wiesner_round(round).trent_pass;
        }
        if (!(g.next_double() < pass)) return false;
    }
    return true;
}

// Chunked deterministic execution: counters merge exactly whatever the
// thread count, because trial streams depend only on the trial index.
// per_chunk(slot, lo, hi) must write only to its own slot.
template <typename TrialCounter>
inline void run_chunks(std::uint64_t trials, unsigned threads, TrialCounter&& per_chunk) {
    const unsigned n = std::max(1u, threads);
    if (n == 1 || trials < 2 * n) {
        per_chunk(0u, std::uint64_t{0}, trials);
        return;
    }
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (trials + n - 1) / n;
    for (unsigned k = 0; k < n; ++k) {
        const std::uint64_t lo = k * chunk;
        const std::uint64_t hi = std::min(trials, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&per_chunk, k, lo, hi] { per_chunk(k, lo, hi); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace detail

// Repeated identification sub-games: a trial succeeds iff every round's
// verification passes.
inline ProtocolResult simulate_wiesner(const SimConfig& cfg, unsigned threads = 1) {
    cfg.validate();
    std::optional<detail::TwoPointTable> table;
    if (cfg.trent_policy == TrentPolicy::TwoPoint) table.emplace(cfg.variant);

    std::vector<std::uint64_t> chunk_successes(std::max(1u, threads), 0);
    detail::run_chunks(cfg.trials, threads,
                       [&](unsigned slot, std::uint64_t lo, std::uint64_t hi) {
                           std::uint64_t local = 0;
                           for (std::uint64_t t = lo; t < hi; ++t) {
                               rng::SplitMix64 g(rng::trial_seed(cfg.master_seed, t));
                               if (detail::wiesner_trial(cfg, table ? &*table : nullptr, g))
                                   ++local;
                           }
                           chunk_successes[slot] = local;
                       });

    std::uint64_t successes = 0;
    for (std::uint64_t s : chunk_successes) successes += s;

    ProtocolResult out;
    out.trials = cfg.trials;
    out.successes = successes;
    out.success_rate = static_cast<double>(successes) / static_cast<double>(cfg.trials);
    out.std_error =
        std::sqrt(out.success_rate * (1.0 - out.success_rate) / static_cast<double>(cfg.trials));
    out.per_round_rate = std::pow(out.success_rate, 1.0 / static_cast<double>(cfg.rounds_per_trial));
    out.seed_used = cfg.master_seed;
    return out;
}

// One gambling session per trial: Bob verifies with probability v, otherwise
// opens box B; gains follow the two payoff rules. Success counts Bob's wins.
inline ProtocolResult simulate_gvw(const GvwSetup& setup, const SimConfig& cfg,
                                   unsigned threads = 1) {
    cfg.validate();
    const gamelib::GvwProbs probs = gamelib::gvw_outcome_probs(setup.alice_state);

    struct Counts {
        std::uint64_t open_win = 0, open_loss = 0, verify_fail = 0, verify_pass = 0;
    };
    std::vector<Counts> chunks(std::max(1u, threads));
    detail::run_chunks(cfg.trials, threads,
                       [&](unsigned slot, std::uint64_t lo, std::uint64_t hi) {
                           Counts local;
                           for (std::uint64_t t = lo; t < hi; ++t) {
                               rng::SplitMix64 g(rng::trial_seed(cfg.master_seed, t));
                               const bool verify = g.next_double() < setup.verify_prob;
                               if (verify) {
                                   if (g.next_double() < probs.pass) ++local.verify_pass;
                                   else ++local.verify_fail;
                               } else {
                                   if (g.next_double() < probs.find_in_b) ++local.open_win;
                                   else ++local.open_loss;
                               }
                           }
                           chunks[slot] = local;
                       });

    Counts total;
    for (const Counts& c : chunks) {
        total.open_win += c.open_win;
        total.open_loss += c.open_loss;
        total.verify_fail += c.verify_fail;
        total.verify_pass += c.verify_pass;
    }

    ProtocolResult out;
    out.trials = cfg.trials;
    out.successes = total.open_win + total.verify_fail;
    out.success_rate = static_cast<double>(out.successes) / static_cast<double>(cfg.trials);
    out.std_error =
        std::sqrt(out.success_rate * (1.0 - out.success_rate) / static_cast<double>(cfg.trials));
    out.per_round_rate = out.success_rate;
    const double gain_b =
        (static_cast<double>(total.open_win) - static_cast<double>(total.open_loss) -
         static_cast<double>(total.verify_pass) +
         setup.reward_r * static_cast<double>(total.verify_fail)) /
        static_cast<double>(cfg.trials);
    out.mean_gain_b = gain_b;
    out.mean_gain_a = -gain_b;
    out.seed_used = cfg.master_seed;
    return out;
}

struct ExponentFit {
    double per_round = 0.0;  // e^slope of the log-rate regression
    double r_squared = 0.0;
};

// Least-squares fit of log(rate) against the round count n. Rates must be
// positive; callers drop sub-floor points (rate < 1/trials) before fitting.
inline ExponentFit exponent_fit(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3) throw std::invalid_argument("exponent_fit: need at least 3 points");
    double mean_n = 0.0, mean_y = 0.0;
    for (const auto& [n, rate] : points) {
        if (!(rate > 0.0)) throw std::invalid_argument("exponent_fit: rates must be positive");
        mean_n += n;
        mean_y += std::log(rate);
    }
    mean_n /= static_cast<double>(points.size());
    mean_y /= static_cast<double>(points.size());

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [n, rate] : points) {
        const double dx = n - mean_n;
        const double dy = std::log(rate) - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("exponent_fit: degenerate round counts");
    const double slope = sxy / sxx;
    double ss_res = 0.0;
    for (const auto& [n, rate] : points) {
        const double pred = mean_y + slope * (n - mean_n);
        const double resid = std::log(rate) - pred;
        ss_res += resid * resid;
    }
    const double r2 = (syy == 0.0) ? 1.0 : 1.0 - ss_res / syy;
    return {std::exp(slope), r2};
}

}  // namespace qgames::protosim
