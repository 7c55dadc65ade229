#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>

#include "qgames/gamelib.hpp"
#include "qgames/gamemodel.hpp"
#include "testutil.hpp"

using namespace qgames;
using namespace qgames::gamemodel;
using qgames::qcore::Cplx;
using qgames::qcore::Matrix;
using qgames::qcore::max_abs_diff;
using testutil::SplitMix64;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Strategy random_penny_strategy(SplitMix64& g, std::size_t turns, bool quantum_allowed) {
    const int pick = static_cast<int>(g.next() % (quantum_allowed ? 4 : 3));
    switch (pick) {
        case 0: {
            PureClassical s;
            for (std::size_t t = 0; t < turns; ++t) s.moves.push_back(g.next() % 2);
            return s;
        }
        case 1:
            return MixedClassical::flip(g.next_double());
        case 2: {
            GeneralChannel s;
            for (std::size_t t = 0; t < turns; ++t) s.ops.push_back(flip_channel(g.next_double()));
            return s;
        }
        default: {
            QuantumUnitary s;
            for (std::size_t t = 0; t < turns; ++t)
                s.ops.push_back(u2_from_angles(g.next_double() * std::numbers::pi / 2.0,
                                               g.next_double() * 2.0 * std::numbers::pi,
                                               g.next_double() * 2.0 * std::numbers::pi));
            return s;
        }
    }
}

}  // namespace

TEST_CASE("u2 family") {
    SECTION("U(1,0) is the phase flip") {
        const auto u = u2(Cplx(1.0, 0.0), Cplx(0.0, 0.0));
        CHECK(u(0, 0) == Cplx(1.0, 0.0));
        CHECK(u(0, 1) == Cplx(0.0, 0.0));
        CHECK(u(1, 0) == Cplx(0.0, 0.0));
        CHECK(u(1, 1) == Cplx(-1.0, 0.0));
    }
    SECTION("U(0,1) is the spin flip F") {
        const auto u = u2(Cplx(0.0, 0.0), Cplx(1.0, 0.0));
        CHECK(max_abs_diff(u.mat(), qcore::flip_gate().mat()) == 0.0);
    }
    SECTION("U(1/sqrt2, 1/sqrt2) squares to the identity") {
        const auto u = u2(Cplx(kInvSqrt2, 0.0), Cplx(kInvSqrt2, 0.0));
        CHECK(max_abs_diff(u.mat() * u.mat(), Matrix::identity(2)) < 1e-15);
    }
    SECTION("non-normalized pair is rejected") {
        CHECK_THROWS_AS(u2(Cplx(1.0, 0.0), Cplx(0.5, 0.0)), std::invalid_argument);
    }
    SECTION("angle parametrization covers the family") {
        SplitMix64 g(31);
        for (int i = 0; i < 20; ++i) {
            const double alpha = g.next_double() * std::numbers::pi / 2.0;
            const double p1 = g.next_double() * 2.0 * std::numbers::pi;
            const double p2 = g.next_double() * 2.0 * std::numbers::pi;
            const auto u = u2_from_angles(alpha, p1, p2);
            CHECK(std::abs(u(0, 0)) == Catch::Approx(std::cos(alpha)).margin(1e-12));
            CHECK(std::abs(u(0, 1)) == Catch::Approx(std::sin(alpha)).margin(1e-12));
        }
    }
}

TEST_CASE("flip_channel") {
    SplitMix64 g(32);
    const auto rho = testutil::random_density(g, 2);
    SECTION("p = 0 acts as deterministic N") {
        const auto out = qcore::apply_channel(rho, flip_channel(0.0));
        CHECK(max_abs_diff(out.mat(), rho.mat()) < 1e-15);
    }
    SECTION("p = 1 acts as deterministic F") {
        const auto out = qcore::apply_channel(rho, flip_channel(1.0));
        CHECK(max_abs_diff(out.mat(), qcore::apply_unitary(rho, qcore::flip_gate()).mat()) <
              1e-15);
    }
    SECTION("p = 1/2 averages the diagonal") {
        const auto out = qcore::apply_channel(rho, flip_channel(0.5));
        const double avg = 0.5 * (rho(0, 0).real() + rho(1, 1).real());
        CHECK(out(0, 0).real() == Catch::Approx(avg).margin(1e-12));
        CHECK(out(1, 1).real() == Catch::Approx(avg).margin(1e-12));
    }
    SECTION("p outside [0,1] is rejected") {
        CHECK_THROWS_AS(flip_channel(-0.1), std::invalid_argument);
        CHECK_THROWS_AS(flip_channel(1.1), std::invalid_argument);
    }
}

TEST_CASE("play on the three-move game") {
    const auto game = gamelib::penny_flip();

    SECTION("flip-then-stay beats a non-flipping opponent: U, D, D, D") {
        const auto res = play(game, PureClassical{{0}}, PureClassical{{1, 0}});
        CHECK(res.payoff.a == 1.0);
        CHECK(res.payoff.b == -1.0);
        const auto probs = qcore::measure_probs(res.final_state);
        CHECK(probs[1] == Catch::Approx(1.0));  // spin ends down
    }
    SECTION("the optimal quantum pair wins against every mixture") {
        const auto q = gamelib::penny_flip_optimal_q();
        for (int k = 0; k <= 100; ++k) {
            const double p = static_cast<double>(k) / 100.0;
            const auto res = play(game, GeneralChannel{{flip_channel(p)}}, q);
            REQUIRE(std::abs(res.payoff.a - (-1.0)) < 1e-12);
        }
    }
    SECTION("turn-count mismatch is rejected") {
        CHECK_THROWS_WITH(play(game, PureClassical{{0, 0}}, PureClassical{{0, 0}}),
                          Catch::Matchers::ContainsSubstring("turn count"));
    }
    SECTION("board-dimension mismatch is rejected") {
        QuantumUnitary big{{qcore::identity_gate(4), qcore::identity_gate(4)}};
        CHECK_THROWS_WITH(play(game, PureClassical{{0}}, big),
                          Catch::Matchers::ContainsSubstring("dim"));
    }
    SECTION("disallowed strategy kind is rejected") {
        // The classical player may not submit unitaries in this game.
        QuantumUnitary q{{qcore::identity_gate(2)}};
        CHECK_THROWS_WITH(play(game, q, PureClassical{{0, 0}}),
                          Catch::Matchers::ContainsSubstring("not permitted"));
    }
}

TEST_CASE("two-move guarantees") {
    const auto game = gamelib::penny_flip_two_move();
    SplitMix64 g(33);

    SECTION("p = 1/2 guarantees payoff 0 against any unitary") {
        for (int i = 0; i < 100; ++i) {
            const auto q = QuantumUnitary{{u2_from_angles(
                g.next_double() * std::numbers::pi / 2.0,
                g.next_double() * 2.0 * std::numbers::pi,
                g.next_double() * 2.0 * std::numbers::pi)}};
            CHECK(std::abs(expected_payoff_a(game, MixedClassical::flip(0.5), q)) < 1e-12);
        }
    }
    SECTION("best pure flip exploits |a|^2 != |b|^2 up to |aa - bb|") {
        for (int i = 0; i < 100; ++i) {
            const double alpha = g.next_double() * std::numbers::pi / 2.0;
            const auto q = QuantumUnitary{{u2_from_angles(
                alpha, g.next_double() * 2.0 * std::numbers::pi,
                g.next_double() * 2.0 * std::numbers::pi)}};
            const double aa = std::cos(alpha) * std::cos(alpha);
            const double bb = 1.0 - aa;
            const double best = std::max(expected_payoff_a(game, MixedClassical::flip(0.0), q),
                                         expected_payoff_a(game, MixedClassical::flip(1.0), q));
            CHECK(best == Catch::Approx(std::abs(aa - bb)).margin(1e-12));
        }
    }
    SECTION("best endpoint unitary exploits p != 1/2 up to |2p - 1|") {
        for (int i = 0; i < 100; ++i) {
            const double p = g.next_double();
            const auto a1 = QuantumUnitary{{u2(Cplx(1.0, 0.0), Cplx(0.0, 0.0))}};
            const auto b1 = QuantumUnitary{{u2(Cplx(0.0, 0.0), Cplx(1.0, 0.0))}};
            const double best = std::max(expected_payoff_b(game, MixedClassical::flip(p), a1),
                                         expected_payoff_b(game, MixedClassical::flip(p), b1));
            CHECK(best == Catch::Approx(std::abs(2.0 * p - 1.0)).margin(1e-12));
        }
    }
}

TEST_CASE("zero-sum invariant under fuzzed strategy pairs") {
    const auto game = gamelib::penny_flip();
    SplitMix64 g(34);
    for (int i = 0; i < 100; ++i) {
        const auto sa = random_penny_strategy(g, 1, false);
        const auto sb = random_penny_strategy(g, 2, true);
        const auto res = play(game, sa, sb);
        REQUIRE(std::abs(res.payoff.a + res.payoff.b) < 1e-12);
    }
}

TEST_CASE("classical strategies embed as unitary sequences") {
    const auto game = gamelib::penny_flip();
    SplitMix64 g(35);
    for (int i = 0; i < 50; ++i) {
        const std::size_t m1 = g.next() % 2, m2 = g.next() % 2, ma = g.next() % 2;
        const auto pure_res =
            play(game, PureClassical{{ma}}, PureClassical{{m1, m2}});
        const QuantumUnitary embedded{
            {game.space(Player::B).move_ops[m1], game.space(Player::B).move_ops[m2]}};
        const auto embedded_res = play(game, PureClassical{{ma}}, embedded);
        REQUIRE(max_abs_diff(pure_res.final_state.mat(), embedded_res.final_state.mat()) < 1e-12);
    }
}

TEST_CASE("mixed strategies are the convex combination of their pure plays") {
    const auto game = gamelib::penny_flip();
    SplitMix64 g(36);
    for (int i = 0; i < 25; ++i) {
        const double p = g.next_double();
        const auto sb = random_penny_strategy(g, 2, true);
        const auto mixed = play(game, GeneralChannel{{flip_channel(p)}}, sb).final_state;
        const auto pure_n = play(game, PureClassical{{0}}, sb).final_state;
        const auto pure_f = play(game, PureClassical{{1}}, sb).final_state;
        Matrix expect = Cplx(p, 0.0) * pure_f.mat() + Cplx(1.0 - p, 0.0) * pure_n.mat();
        REQUIRE(max_abs_diff(mixed.mat(), expect) < 1e-12);
    }

    SECTION("sequence-form mixtures agree with per-turn mixtures") {
        const double p = 0.3;
        MixedClassical seq;
        seq.sequences = {{(1 - p) * (1 - p), {0, 0}},
                         {(1 - p) * p, {0, 1}},
                         {p * (1 - p), {1, 0}},
                         {p * p, {1, 1}}};
        const auto a = MixedClassical::flip(0.7);
        const auto via_seq = play(game, a, seq).final_state;
        const auto via_per_turn = play(game, a, MixedClassical::flip(p)).final_state;
        REQUIRE(max_abs_diff(via_seq.mat(), via_per_turn.mat()) < 1e-12);
    }
}

TEST_CASE("play is bit-deterministic") {
    const auto game = gamelib::penny_flip();
    const auto sa = MixedClassical::flip(0.371);
    const auto sb = gamelib::penny_flip_optimal_q();
    const auto r1 = play(game, sa, sb);
    const auto r2 = play(game, sa, sb);
    CHECK(std::memcmp(&r1.payoff.a, &r2.payoff.a, sizeof(double)) == 0);
    CHECK(std::memcmp(&r1.payoff.b, &r2.payoff.b, sizeof(double)) == 0);
}

TEST_CASE("optimal pair is an equilibrium against every mixture (101-point grid)") {
    const auto game = gamelib::penny_flip();
    const auto q = gamelib::penny_flip_optimal_q();
    for (int k = 0; k <= 100; ++k) {
        const double p = static_cast<double>(k) / 100.0;
        REQUIRE(expected_payoff_a(game, MixedClassical::flip(p), q) ==
                Catch::Approx(-1.0).margin(1e-12));
    }
}

TEST_CASE("zero-sum payoff rule validation") {
    gamemodel::PayoffRule bad;
    bad.payoff_a = {1.0, -1.0};
    bad.payoff_b = {1.0, 1.0};
    gamemodel::StrategySpace space;
    space.allowed = {StrategyKind::PureClassical};
    space.move_ops = {qcore::noflip_gate()};
    space.move_labels = {"N"};
    CHECK_THROWS_AS(QuantumGame("bad", qcore::DensityMatrix::maximally_mixed(2),
                                {Player::A}, space, space, bad, /*zero_sum=*/true),
                    std::invalid_argument);
}
