// gamelib.hpp
// Constructors and evaluators for the concrete games: the spin-flip penny
// game, the Prisoner's Dilemma table, the two quantum identification games
// (controlled-swap and controlled-Hadamard variants), and the two-box
// gambling protocol. Banknote records — the serialized per-round data an
// issuer keeps for authentication — round-trip through JSON.

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qgames/equilibria.hpp"
#include "qgames/gamemodel.hpp"
#include "qgames/jsonio.hpp"
#include "qgames/qcore.hpp"

namespace qgames::gamelib {

using gamemodel::Player;
using gamemodel::QuantumGame;
using gamemodel::Strategy;
using gamemodel::StrategyKind;
using qcore::Cplx;
using qcore::DensityMatrix;
using qcore::StateVector;
using qcore::Unitary;

// ---------------------------------------------------------------------------
// Penny flip (spin-flip game).
// ---------------------------------------------------------------------------

namespace detail {

inline gamemodel::StrategySpace penny_space(bool quantum_side) {
    gamemodel::StrategySpace s;
    s.move_ops = {qcore::noflip_gate(), qcore::flip_gate()};
    s.move_labels = {"N", "F"};
    if (quantum_side) {
        s.allowed = {StrategyKind::PureClassical, StrategyKind::MixedClassical,
                     StrategyKind::QuantumUnitary, StrategyKind::GeneralChannel};
    } else {
        s.allowed = {StrategyKind::PureClassical, StrategyKind::MixedClassical,
                     StrategyKind::GeneralChannel};
    }
    return s;
}

inline QuantumGame make_penny_flip(std::string name, gamemodel::TurnSchedule schedule) {
    // Player A is the classical player (sets the spin up, wins on D = down);
    // player B is the quantum player (wins on U = up).
    gamemodel::PayoffRule payoff;
    payoff.payoff_a = {-1.0, 1.0};
    payoff.payoff_b = {1.0, -1.0};

    gamemodel::StrategySpace space_a = penny_space(false);
    space_a.search_domain = gamemodel::SearchDomain{
        StrategyKind::MixedClassical, {{0.0, 1.0}}};
    gamemodel::StrategySpace space_b = penny_space(true);
    gamemodel::SearchDomain u2_box{StrategyKind::QuantumUnitary, {}};
    for (const gamemodel::Player p : schedule) {
        if (p != gamemodel::Player::B) continue;
        u2_box.box.push_back({0.0, std::numbers::pi / 2.0});
        u2_box.box.push_back({0.0, 2.0 * std::numbers::pi});
        u2_box.box.push_back({0.0, 2.0 * std::numbers::pi});
    }
    space_b.search_domain = std::move(u2_box);

    return QuantumGame(std::move(name),
                       qcore::density_from_pure(StateVector::basis(2, 0)), std::move(schedule),
                       std::move(space_a), std::move(space_b), std::move(payoff),
                       /*zero_sum=*/true, {"U", "D"});
}

}  // namespace detail

// The three-move game: B moves first and last, A (the classical player)
// moves in between. Outcome U pays B (+1) and A (-1).
inline QuantumGame penny_flip() {
    return detail::make_penny_flip("penny-flip", {Player::B, Player::A, Player::B});
}

// The truncated two-move game analyzed for mixed equilibria: B moves, then A.
inline QuantumGame penny_flip_two_move() {
    return detail::make_penny_flip("penny-flip-2move", {Player::B, Player::A});
}

// B's winning strategy: U(1/sqrt2, 1/sqrt2) twice. The first move reaches the
// simultaneous F/N eigenstate, the second inverts the first.
inline Strategy penny_flip_optimal_q() {
    const double r = 1.0 / std::sqrt(2.0);
    return gamemodel::QuantumUnitary{
        {gamemodel::u2(Cplx(r, 0.0), Cplx(r, 0.0)), gamemodel::u2(Cplx(r, 0.0), Cplx(r, 0.0))}};
}

// The classical 2x4 strategy table of the three-move game: rows are A's pure
// moves (N, F), columns are B's pure move pairs, entries are A's payoffs.
inline equilibria::BimatrixGame penny_flip_table() {
    const QuantumGame game = penny_flip();
    std::vector<double> pay_a, pay_b;
    std::vector<std::string> col_labels;
    for (std::size_t row = 0; row < 2; ++row) {
        for (std::size_t first = 0; first < 2; ++first)
            for (std::size_t second = 0; second < 2; ++second) {
                const auto res = gamemodel::play(game, gamemodel::PureClassical{{row}},
                                                 gamemodel::PureClassical{{first, second}});
                pay_a.push_back(res.payoff.a);
                pay_b.push_back(res.payoff.b);
            }
    }
    for (std::size_t first = 0; first < 2; ++first)
        for (std::size_t second = 0; second < 2; ++second)
            col_labels.push_back(std::string(first ? "F" : "N") + (second ? "F" : "N"));
    return equilibria::BimatrixGame(2, 4, std::move(pay_a), std::move(pay_b), {"N", "F"},
                                    std::move(col_labels));
}

// ---------------------------------------------------------------------------
// Prisoner's Dilemma.
// ---------------------------------------------------------------------------

inline equilibria::BimatrixGame prisoners_dilemma() {
    return equilibria::BimatrixGame(2, 2, {3.0, 0.0, 5.0, 1.0}, {3.0, 5.0, 0.0, 1.0},
                                    {"C", "D"}, {"C", "D"});
}

// ---------------------------------------------------------------------------
// Quantum identification (counterfeit-proof money) rounds.
// ---------------------------------------------------------------------------

enum class WiesnerVariant { Swap, Hadamard };

inline const char* variant_name(WiesnerVariant v) {
    return v == WiesnerVariant::Swap ? "swap" : "hadamard";
}

// One identification sub-game. The arbiter's secret qubit is trent_state;
// the swap variant also carries the ancillary qubit. alice_bit / bob_bit are
// the players' control strategies (0 = leave, 1 = act).
struct WiesnerRound {
    WiesnerVariant variant = WiesnerVariant::Swap;
    StateVector trent_state;
    std::optional<StateVector> ancilla_state;
    int alice_bit = 0;
    int bob_bit = 0;

    WiesnerRound(WiesnerVariant v, StateVector trent, std::optional<StateVector> ancilla,
                 int alice, int bob)
        : variant(v),
          trent_state(std::move(trent)),
          ancilla_state(std::move(ancilla)),
          alice_bit(alice),
          bob_bit(bob) {
        if (trent_state.dim() != 2)
            throw std::invalid_argument("WiesnerRound: trent_state must be one qubit");
        if ((variant == WiesnerVariant::Swap) != ancilla_state.has_value())
            throw std::invalid_argument(
                "WiesnerRound: ancilla present iff variant is swap");
        if (ancilla_state && ancilla_state->dim() != 2)
            throw std::invalid_argument("WiesnerRound: ancilla_state must be one qubit");
        if ((alice_bit != 0 && alice_bit != 1) || (bob_bit != 0 && bob_bit != 1))
            throw std::invalid_argument("WiesnerRound: bits must be 0 or 1");
    }
};

struct WiesnerOutcome {
    double trent_pass = 0.0;       // probability the arbiter's check passes
    DensityMatrix final_board;     // board after both controlled gates
};

// Build the round circuit (Alice's controlled gate, then Bob's), evolve the
// board, and project the arbiter's reduced qubit back onto the recorded
// secret state. Bob wins the round iff the check passes.
inline WiesnerOutcome wiesner_round(const WiesnerRound& r) {
    using qcore::apply_unitary;
    using qcore::controlled_gate;
    using qcore::density_from_pure;
    using qcore::partial_trace;
    using qcore::projective_overlap;
    using qcore::tensor;

    const Unitary gate = controlled_gate(r.variant == WiesnerVariant::Swap
                                             ? qcore::swap_gate()
                                             : qcore::hadamard_gate());

    // Targets: [T] for the Hadamard variant, [T, T'] for the swap variant.
    DensityMatrix targets =
        r.variant == WiesnerVariant::Swap
            ? tensor(density_from_pure(r.trent_state), density_from_pure(*r.ancilla_state))
            : density_from_pure(r.trent_state);
    const std::size_t target_dim = targets.dim();

    const auto control_round = [&](int bit, const DensityMatrix& tgt) {
        const DensityMatrix board =
            tensor(density_from_pure(StateVector::basis(2, static_cast<std::size_t>(bit))), tgt);
        return apply_unitary(board, gate);
    };

    // Alice's move; her control qubit stays a basis state, so it traces out
    // cleanly before Bob's control comes in.
    const DensityMatrix after_alice = control_round(r.alice_bit, targets);
    const DensityMatrix targets_after_alice = partial_trace(after_alice, 1, {2, target_dim});
    const DensityMatrix final_board = control_round(r.bob_bit, targets_after_alice);

    // The arbiter inspects only his own qubit.
    const std::vector<std::size_t> dims = r.variant == WiesnerVariant::Swap
                                              ? std::vector<std::size_t>{2, 2, 2}
                                              : std::vector<std::size_t>{2, 2};
    const DensityMatrix trent_qubit = partial_trace(final_board, 1, dims);
    return WiesnerOutcome{projective_overlap(trent_qubit, r.trent_state), final_board};
}

// ---------------------------------------------------------------------------
// The Hadamard variant acts on the secret polarization as a Moebius map of
// the projective coordinate: |0> + z|I>  ->  |0> + (1-z)/(1+z) |I>, with the
// point at infinity encoding |I>.
// ---------------------------------------------------------------------------

struct ExtendedCplx {
    bool is_inf = false;
    Cplx value{0.0, 0.0};

    static ExtendedCplx inf() { return {true, {0.0, 0.0}}; }
    static ExtendedCplx of(Cplx z) { return {false, z}; }
};

inline ExtendedCplx hadamard_mobius(ExtendedCplx z) {
    if (z.is_inf) return ExtendedCplx::of(Cplx(-1.0, 0.0));
    if (z.value == Cplx(-1.0, 0.0)) return ExtendedCplx::inf();
    return ExtendedCplx::of((Cplx(1.0, 0.0) - z.value) / (Cplx(1.0, 0.0) + z.value));
}

// ---------------------------------------------------------------------------
// Two-box gambling (coin-tossing protocol).
// ---------------------------------------------------------------------------

// Alice splits a particle over boxes A and B with the given amplitudes (in
// the (|a>, |b>) basis), Bob either opens box B or asks for verification
// with probability v, and a failed verification pays him R units.
struct GvwSetup {
    StateVector alice_state;
    double reward_r = 2.0;
    double verify_prob = 0.0;

    GvwSetup(StateVector state, double r, double v)
        : alice_state(std::move(state)), reward_r(r), verify_prob(v) {
        if (alice_state.dim() != 2)
            throw std::invalid_argument("GvwSetup: state must live on the two boxes");
        if (!(r > 0.0) || !std::isfinite(r))
            throw std::invalid_argument("GvwSetup: reward must be finite and positive");
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("GvwSetup: verify probability outside [0,1]");
    }
};

inline StateVector gvw_honest_state() {
    const double r = 1.0 / std::sqrt(2.0);
    return StateVector({Cplx(r, 0.0), Cplx(r, 0.0)});
}

struct GvwProbs {
    double find_in_b = 0.0;  // Bob opens box B and finds the particle
    double pass = 0.0;       // verification projects back onto the honest state
};

inline GvwProbs gvw_outcome_probs(const StateVector& alice) {
    const double find = std::norm(alice[1]);
    const double pass = std::norm(qcore::inner(gvw_honest_state(), alice));
    return {find, pass};
}

// Exact expected gains, Bob first. Open branch (probability 1-v): +1 on
// finding the particle in box B, otherwise -1. Verification branch
// (probability v): +R when the projective test onto the honest state fails,
// otherwise -1. Alice's gain is the negative.
inline gamemodel::PayoffPair gvw_expected_gains(
    const GvwSetup& s,
    const std::optional<std::vector<std::pair<double, StateVector>>>& alice_mixed = std::nullopt) {
    double bob = 0.0;
    if (alice_mixed) {
        if (alice_mixed->empty())
            throw std::invalid_argument("gvw_expected_gains: empty mixed distribution");
        double total = 0.0;
        for (const auto& [w, state] : *alice_mixed) {
            if (!(w >= -1e-12))
                throw std::invalid_argument("gvw_expected_gains: negative weight");
            if (state.dim() != 2)
                throw std::invalid_argument("gvw_expected_gains: state must be two-box");
            total += w;
            const GvwProbs p = gvw_outcome_probs(state);
            const double open_gain = p.find_in_b * 1.0 + (1.0 - p.find_in_b) * -1.0;
            const double verify_gain = (1.0 - p.pass) * s.reward_r + p.pass * -1.0;
            bob += w * ((1.0 - s.verify_prob) * open_gain + s.verify_prob * verify_gain);
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw std::invalid_argument("gvw_expected_gains: weights do not sum to 1");
    } else {
        const GvwProbs p = gvw_outcome_probs(s.alice_state);
        const double open_gain = p.find_in_b * 1.0 + (1.0 - p.find_in_b) * -1.0;
        const double verify_gain = (1.0 - p.pass) * s.reward_r + p.pass * -1.0;
        bob = (1.0 - s.verify_prob) * open_gain + s.verify_prob * verify_gain;
    }
    return {-bob, bob};
}

// ---------------------------------------------------------------------------
// Banknote records: what the issuer stores per sub-game so a note can be
// authenticated later by replaying the rounds against a claimant's bits.
// ---------------------------------------------------------------------------

struct BanknoteEntry {
    WiesnerVariant variant = WiesnerVariant::Swap;
    StateVector trent_state;
    std::optional<StateVector> ancilla_state;
    int alice_bit = 0;
};

namespace detail {

inline jsonio::Value amps_json(const StateVector& s) {
    jsonio::Value arr = jsonio::Value::array();
    for (std::size_t i = 0; i < s.dim(); ++i) {
        jsonio::Value pair = jsonio::Value::array();
        pair.push(s[i].real());
        pair.push(s[i].imag());
        arr.push(std::move(pair));
    }
    return arr;
}

inline StateVector amps_from_json(const nlohmann::json& j) {
    std::vector<Cplx> amps;
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::invalid_argument("banknote: amplitude must be a [re, im] pair");
        amps.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return StateVector(std::move(amps));
}

}  // namespace detail

inline std::string banknote_to_json(std::span<const BanknoteEntry> rounds) {
    jsonio::Value arr = jsonio::Value::array();
    for (const BanknoteEntry& e : rounds) {
        jsonio::Value round = jsonio::Value::object();
        round.add("variant", variant_name(e.variant));
        round.add("trent_state", detail::amps_json(e.trent_state));
        if (e.ancilla_state) round.add("ancilla_state", detail::amps_json(*e.ancilla_state));
        round.add("alice_bit", static_cast<std::int64_t>(e.alice_bit));
        arr.push(std::move(round));
    }
    return arr.dump();
}

inline std::vector<BanknoteEntry> banknote_from_json(const std::string& text) {
    const nlohmann::json doc = nlohmann::json::parse(text);
    if (!doc.is_array()) throw std::invalid_argument("banknote: top level must be an array");
    std::vector<BanknoteEntry> out;
    for (const auto& j : doc) {
        const std::string variant = j.at("variant").get<std::string>();
        BanknoteEntry e{
            variant == "swap" ? WiesnerVariant::Swap : WiesnerVariant::Hadamard,
            detail::amps_from_json(j.at("trent_state")),
            std::nullopt,
            j.at("alice_bit").get<int>(),
        };
        if (variant != "swap" && variant != "hadamard")
            throw std::invalid_argument("banknote: unknown variant " + variant);
        if (j.contains("ancilla_state"))
            e.ancilla_state = detail::amps_from_json(j.at("ancilla_state"));
        if ((e.variant == WiesnerVariant::Swap) != e.ancilla_state.has_value())
            throw std::invalid_argument("banknote: ancilla present iff variant is swap");
        out.push_back(std::move(e));
    }
    return out;
}

// Authentication replays every recorded round against the claimant's bits;
// the note verifies only if every check passes, so the success probability
// is the product of the per-round pass probabilities.
inline double authenticate(std::span<const BanknoteEntry> rounds, std::span<const int> bob_bits) {
    if (rounds.size() != bob_bits.size())
        throw std::invalid_argument("authenticate: bit count != round count");
    double p = 1.0;
    for (std::size_t i = 0; i < rounds.size(); ++i) {
        const WiesnerRound round(rounds[i].variant, rounds[i].trent_state,
                                 rounds[i].ancilla_state, rounds[i].alice_bit, bob_bits[i]);
        p *= wiesner_round(round).trent_pass;
    }
    return p;
}

}  // namespace qgames::gamelib
