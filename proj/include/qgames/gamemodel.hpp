// gamemodel.hpp
// The formal two-player quantum game: board Hilbert space, initial density
// matrix, per-player strategy spaces and payoff functions, and the play
// pipeline that evolves the board through the turn schedule and scores the
// final state. Payoffs are exact expectations over the final density matrix;
// sampling lives in protosim.

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qgames/qcore.hpp"

namespace qgames::gamemodel {

using qcore::Channel;
using qcore::Cplx;
using qcore::DensityMatrix;
using qcore::Matrix;
using qcore::StateVector;
using qcore::Unitary;

enum class Player { A, B };

inline Player other(Player p) { return p == Player::A ? Player::B : Player::A; }

// ---------------------------------------------------------------------------
// Strategies.
// ---------------------------------------------------------------------------

// A fixed sequence of moves from the game's classical move alphabet, one per
// owned turn.
struct PureClassical {
    std::vector<std::size_t> moves;
};

// A classical randomization, in one of two forms:
//   * per_turn: a distribution over the move alphabet applied independently
//     on every owned turn (the "flips with probability p" matrix);
//   * sequences: an explicit distribution over pure move sequences.
// Exactly one form must be populated.
struct MixedClassical {
    std::vector<double> per_turn;
    std::vector<std::pair<double, std::vector<std::size_t>>> sequences;

    static MixedClassical flip(double p) {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("MixedClassical::flip: p outside [0,1]");
        MixedClassical m;
        m.per_turn = {1.0 - p, p};
        return m;
    }
};

// One unitary per owned turn.
struct QuantumUnitary {
    std::vector<Unitary> ops;
};

// One CPTP channel per owned turn; the most general admissible move.
struct GeneralChannel {
    std::vector<Channel> ops;
};

using Strategy = std::variant<PureClassical, MixedClassical, QuantumUnitary, GeneralChannel>;

enum class StrategyKind { PureClassical, MixedClassical, QuantumUnitary, GeneralChannel };

inline StrategyKind kind_of(const Strategy& s) {
    return static_cast<StrategyKind>(s.index());
}

inline const char* kind_name(StrategyKind k) {
    switch (k) {
        case StrategyKind::PureClassical: return "pure-classical";
        case StrategyKind::MixedClassical: return "mixed-classical";
        case StrategyKind::QuantumUnitary: return "quantum-unitary";
        case StrategyKind::GeneralChannel: return "general-channel";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Game definition.
// ---------------------------------------------------------------------------

using TurnSchedule = std::vector<Player>;

struct PayoffRule {
    std::vector<double> payoff_a;  // indexed by computational-basis outcome
    std::vector<double> payoff_b;
};

struct ParamInterval {
    double lo = 0.0;
    double hi = 0.0;
};

// A declarative box over one of the strategy parametrizations, used by the
// equilibrium search to enumerate a player's space without reflection:
//   * MixedClassical: one parameter, the per-turn flip probability;
//   * QuantumUnitary: (alpha, phi1, phi2) per owned turn.
struct SearchDomain {
    StrategyKind kind = StrategyKind::MixedClassical;
    std::vector<ParamInterval> box;
};

// What a player is allowed to submit: permitted strategy kinds, the
// classical move alphabet (unitaries with display labels), and the default
// parameter domain for search.
struct StrategySpace {
    std::vector<StrategyKind> allowed;
    std::vector<Unitary> move_ops;
    std::vector<std::string> move_labels;
    std::optional<SearchDomain> search_domain;

    bool permits(StrategyKind k) const {
        for (StrategyKind a : allowed)
            if (a == k) return true;
        return false;
    }
};

struct PayoffPair {
    double a = 0.0;
    double b = 0.0;
};

class QuantumGame {
public:
    QuantumGame(std::string name, DensityMatrix initial, TurnSchedule schedule,
                StrategySpace space_a, StrategySpace space_b, PayoffRule payoff,
                bool zero_sum, std::vector<std::string> outcome_labels = {})
        : name_(std::move(name)),
          initial_(std::move(initial)),
          schedule_(std::move(schedule)),
          space_a_(std::move(space_a)),
          space_b_(std::move(space_b)),
          payoff_(std::move(payoff)),
          zero_sum_(zero_sum),
          outcome_labels_(std::move(outcome_labels)) {
        if (schedule_.empty()) throw std::invalid_argument("QuantumGame: empty turn schedule");
        const std::size_t d = initial_.dim();
        if (payoff_.payoff_a.size() != d || payoff_.payoff_b.size() != d)
            throw std::invalid_argument("QuantumGame: payoff vectors must cover all outcomes");
        for (std::size_t k = 0; k < d; ++k) {
            if (!std::isfinite(payoff_.payoff_a[k]) || !std::isfinite(payoff_.payoff_b[k]))
                throw std::invalid_argument("QuantumGame: non-finite payoff");
            if (zero_sum_ && std::abs(payoff_.payoff_a[k] + payoff_.payoff_b[k]) > 1e-12)
                throw std::invalid_argument("QuantumGame: zero-sum payoffs must cancel");
        }
        for (const auto& space : {std::cref(space_a_), std::cref(space_b_)})
            for (const Unitary& u : space.get().move_ops)
                if (u.dim() != d)
                    throw std::invalid_argument("QuantumGame: move alphabet dim mismatch");
        if (!outcome_labels_.empty() && outcome_labels_.size() != d)
            throw std::invalid_argument("QuantumGame: outcome label count mismatch");
    }

    const std::string& name() const { return name_; }
    std::size_t dim() const { return initial_.dim(); }
    const DensityMatrix& initial() const { return initial_; }
    const TurnSchedule& schedule() const { return schedule_; }
    const StrategySpace& space(Player p) const { return p == Player::A ? space_a_ : space_b_; }
    const PayoffRule& payoff() const { return payoff_; }
    bool zero_sum() const { return zero_sum_; }
    const std::vector<std::string>& outcome_labels() const { return outcome_labels_; }

    std::size_t turns(Player p) const {
        std::size_t n = 0;
        for (Player q : schedule_)
            if (q == p) ++n;
        return n;
    }

private:
    std::string name_;
    DensityMatrix initial_;
    TurnSchedule schedule_;
    StrategySpace space_a_, space_b_;
    PayoffRule payoff_;
    bool zero_sum_;
    std::vector<std::string> outcome_labels_;
};

// ---------------------------------------------------------------------------
// The U(a,b) family and the mixed-move channel.
// ---------------------------------------------------------------------------

// U(a,b) = [[a, b], [conj(b), -conj(a)]], defined for |a|^2 + |b|^2 = 1.
inline Unitary u2(Cplx a, Cplx b) {
    if (std::abs(std::norm(a) + std::norm(b) - 1.0) > qcore::kValidationTol)
        throw std::invalid_argument("u2: |a|^2 + |b|^2 != 1");
    Matrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = std::conj(b);
    m(1, 1) = -std::conj(a);
    return Unitary(std::move(m));
}

// Search parametrization: a = cos(alpha) e^{i phi1}, b = sin(alpha) e^{i phi2}
// with alpha in [0, pi/2] and phi in [0, 2pi).
inline Unitary u2_from_angles(double alpha, double phi1, double phi2) {
    const Cplx a = std::cos(alpha) * std::exp(Cplx(0.0, phi1));
    const Cplx b = std::sin(alpha) * std::exp(Cplx(0.0, phi2));
    return u2(a, b);
}

// The mixed classical move as a channel: flip with probability p, stay with
// probability 1-p.
inline Channel flip_channel(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("flip_channel: p outside [0,1]");
    return Channel::from_convex({{p, qcore::flip_gate()}, {1.0 - p, qcore::noflip_gate()}});
}

// ---------------------------------------------------------------------------
// Play.
// ---------------------------------------------------------------------------

namespace detail {

inline void validate_strategy(const QuantumGame& game, Player player, const Strategy& s) {
    const StrategySpace& space = game.space(player);
    const char* who = (player == Player::A) ? "player A" : "player B";
    const StrategyKind k = kind_of(s);
    if (!space.permits(k))
        throw std::invalid_argument(std::string("play: strategy kind ") + kind_name(k) +
                                    " not permitted for " + who + " in game " + game.name());
    const std::size_t turns = game.turns(player);

    if (const auto* pure = std::get_if<PureClassical>(&s)) {
        if (pure->moves.size() != turns)
            throw std::invalid_argument(std::string("play: ") + who + " move count " +
                                        std::to_string(pure->moves.size()) + " != turn count " +
                                        std::to_string(turns));
        for (std::size_t m : pure->moves)
            if (m >= space.move_ops.size())
                throw std::invalid_argument(std::string("play: ") + who + " move index out of range");
    } else if (const auto* mixed = std::get_if<MixedClassical>(&s)) {
        const bool has_per_turn = !mixed->per_turn.empty();
        const bool has_sequences = !mixed->sequences.empty();
        if (has_per_turn == has_sequences)
            throw std::invalid_argument("play: MixedClassical must use exactly one form");
        if (has_per_turn) {
            if (mixed->per_turn.size() != space.move_ops.size())
                throw std::invalid_argument(std::string("play: ") + who +
                                            " per-turn distribution size != move alphabet size");
            double total = 0.0;
            for (double w : mixed->per_turn) {
                if (!(w >= -1e-12)) throw std::invalid_argument("play: negative move probability");
                total += w;
            }
            if (std::abs(total - 1.0) > 1e-12)
                throw std::invalid_argument("play: move probabilities do not sum to 1");
        } else {
            double total = 0.0;
            for (const auto& [w, seq] : mixed->sequences) {
                if (!(w >= -1e-12)) throw std::invalid_argument("play: negative sequence weight");
                total += w;
                if (seq.size() != turns)
                    throw std::invalid_argument(std::string("play: ") + who +
                                                " sequence length != turn count");
                for (std::size_t m : seq)
                    if (m >= space.move_ops.size())
                        throw std::invalid_argument(std::string("play: ") + who +
                                                    " move index out of range");
            }
            if (std::abs(total - 1.0) > 1e-12)
                throw std::invalid_argument("play: sequence weights do not sum to 1");
        }
    } else if (const auto* q = std::get_if<QuantumUnitary>(&s)) {
        if (q->ops.size() != turns)
            throw std::invalid_argument(std::string("play: ") + who + " unitary count " +
                                        std::to_string(q->ops.size()) + " != turn count " +
                                        std::to_string(turns));
        for (const Unitary& u : q->ops)
            if (u.dim() != game.dim())
                throw std::invalid_argument(std::string("play: ") + who +
                                            " unitary dim != board dim");
    } else if (const auto* c = std::get_if<GeneralChannel>(&s)) {
        if (c->ops.size() != turns)
            throw std::invalid_argument(std::string("play: ") + who + " channel count " +
                                        std::to_string(c->ops.size()) + " != turn count " +
                                        std::to_string(turns));
        for (const Channel& ch : c->ops)
            if (ch.dim() != game.dim())
                throw std::invalid_argument(std::string("play: ") + who +
                                            " channel dim != board dim");
    }
}

// Per-turn distributions become a reusable convex channel over the alphabet.
inline Channel per_turn_channel(const StrategySpace& space, const std::vector<double>& dist) {
    std::vector<std::pair<double, Unitary>> parts;
    parts.reserve(dist.size());
    for (std::size_t m = 0; m < dist.size(); ++m) parts.emplace_back(dist[m], space.move_ops[m]);
    return Channel::from_convex(std::move(parts));
}

inline DensityMatrix evolve(const QuantumGame& game, const Strategy& s_a, const Strategy& s_b);

// Average the final states of the pure substitutions of a sequence-form
// mixture (channels act linearly, so this is exact).
inline DensityMatrix evolve_sequence_mixture(const QuantumGame& game, Player who,
                                     const MixedClassical& mixed, const Strategy& other_s) {
    Matrix acc(game.dim(), game.dim());
    for (const auto& [w, seq] : mixed.sequences) {
        if (w == 0.0) continue;
        const Strategy pure = PureClassical{seq};
        const DensityMatrix part = (who == Player::A) ? evolve(game, pure, other_s)
                                                      : evolve(game, other_s, pure);
        acc += Cplx(w, 0.0) * part.mat();
    }
    return DensityMatrix(std::move(acc));
}

inline DensityMatrix evolve(const QuantumGame& game, const Strategy& s_a, const Strategy& s_b) {
    if (const auto* ma = std::get_if<MixedClassical>(&s_a); ma && !ma->sequences.empty())
        return evolve_sequence_mixture(game, Player::A, *ma, s_b);
    if (const auto* mb = std::get_if<MixedClassical>(&s_b); mb && !mb->sequences.empty())
        return evolve_sequence_mixture(game, Player::B, *mb, s_a);

    // Per-player cached channel for per-turn mixtures.
    std::optional<Channel> mix_a, mix_b;
    if (const auto* ma = std::get_if<MixedClassical>(&s_a))
        mix_a = per_turn_channel(game.space(Player::A), ma->per_turn);
    if (const auto* mb = std::get_if<MixedClassical>(&s_b))
        mix_b = per_turn_channel(game.space(Player::B), mb->per_turn);

    DensityMatrix rho = game.initial();
    std::size_t idx_a = 0, idx_b = 0;
    for (Player turn : game.schedule()) {
        const Strategy& s = (turn == Player::A) ? s_a : s_b;
        const StrategySpace& space = game.space(turn);
        std::size_t& idx = (turn == Player::A) ? idx_a : idx_b;
        if (const auto* pure = std::get_if<PureClassical>(&s)) {
            rho = qcore::apply_unitary(rho, space.move_ops[pure->moves[idx]]);
        } else if (std::holds_alternative<MixedClassical>(s)) {
            rho = qcore::apply_channel(rho, (turn == Player::A) ? *mix_a : *mix_b);
        } else if (const auto* q = std::get_if<QuantumUnitary>(&s)) {
            rho = qcore::apply_unitary(rho, q->ops[idx]);
        } else {
            rho = qcore::apply_channel(rho, std::get<GeneralChannel>(s).ops[idx]);
        }
        ++idx;
    }
    return rho;
}

}  // namespace detail

struct PlayResult {
    DensityMatrix final_state;
    PayoffPair payoff;
};

// Evolve the initial state through the schedule under (s_a, s_b) and score
// the final state: payoff = sum_k P(outcome k) * payoff(k).
inline PlayResult play(const QuantumGame& game, const Strategy& s_a, const Strategy& s_b) {
    detail::validate_strategy(game, Player::A, s_a);
    detail::validate_strategy(game, Player::B, s_b);
    DensityMatrix final_state = detail::evolve(game, s_a, s_b);
    const auto probs = qcore::measure_probs(final_state);
    PayoffPair pay;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        pay.a += probs[k] * game.payoff().payoff_a[k];
        pay.b += probs[k] * game.payoff().payoff_b[k];
    }
    return PlayResult{std::move(final_state), pay};
}

inline double expected_payoff_a(const QuantumGame& game, const Strategy& s_a, const Strategy& s_b) {
    return play(game, s_a, s_b).payoff.a;
}

inline double expected_payoff_b(const QuantumGame& game, const Strategy& s_a, const Strategy& s_b) {
    return play(game, s_a, s_b).payoff.b;
}

}  // namespace qgames::gamemodel
