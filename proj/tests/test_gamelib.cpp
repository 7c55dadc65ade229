#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>

#include "qgames/gamelib.hpp"
#include "testutil.hpp"

using namespace qgames;
using namespace qgames::gamelib;
using gamemodel::MixedClassical;
using gamemodel::Player;
using gamemodel::PureClassical;
using qgames::qcore::Cplx;
using qgames::qcore::StateVector;
using testutil::SplitMix64;

TEST_CASE("penny flip reproduces the classical payoff table") {
    const auto game = penny_flip();
    // Rows: A plays N, F. Columns: B plays NN, NF, FN, FF. Entries: A's payoff.
    const std::array<std::array<double, 4>, 2> table = {{{-1, 1, 1, -1}, {1, -1, -1, 1}}};
    for (std::size_t row = 0; row < 2; ++row)
        for (std::size_t first = 0; first < 2; ++first)
            for (std::size_t second = 0; second < 2; ++second) {
                const auto res = gamemodel::play(game, PureClassical{{row}},
                                                 PureClassical{{first, second}});
                REQUIRE(res.payoff.a == table[row][first * 2 + second]);
                REQUIRE(res.payoff.b == -table[row][first * 2 + second]);
            }
}

TEST_CASE("worked classical examples") {
    const auto game = penny_flip();
    SECTION("B = [N,N] vs A = [N]: spin stays up, A loses") {
        CHECK(gamemodel::play(game, PureClassical{{0}}, PureClassical{{0, 0}}).payoff.a == -1.0);
    }
    SECTION("B = [F,F] vs A = [N]: flips cancel, A loses") {
        CHECK(gamemodel::play(game, PureClassical{{0}}, PureClassical{{1, 1}}).payoff.a == -1.0);
    }
    SECTION("B = [N,F] vs A = [F]: spin ends up, A loses") {
        CHECK(gamemodel::play(game, PureClassical{{1}}, PureClassical{{0, 1}}).payoff.a == -1.0);
    }
}

TEST_CASE("optimal quantum strategy") {
    const auto game = penny_flip();
    const auto q = penny_flip_optimal_q();

    SECTION("wins against both deterministic mixtures") {
        CHECK(gamemodel::expected_payoff_a(game, gamemodel::GeneralChannel{{gamemodel::flip_channel(0.0)}},
                                           q) == Catch::Approx(-1.0).margin(1e-12));
        CHECK(gamemodel::expected_payoff_a(game, gamemodel::GeneralChannel{{gamemodel::flip_channel(1.0)}},
                                           q) == Catch::Approx(-1.0).margin(1e-12));
    }
    SECTION("the intermediate state is invariant under any mixture of F and N") {
        const auto& u1 = std::get<gamemodel::QuantumUnitary>(q).ops[0];
        const auto rho1 =
            qcore::apply_unitary(qcore::density_from_pure(StateVector::basis(2, 0)), u1);
        SplitMix64 g(51);
        for (int i = 0; i < 20; ++i) {
            const auto rho2 = qcore::apply_channel(rho1, gamemodel::flip_channel(g.next_double()));
            REQUIRE(qcore::max_abs_diff(rho2.mat(), rho1.mat()) < 1e-12);
        }
    }
}

TEST_CASE("Prisoner's Dilemma table") {
    const auto pd = prisoners_dilemma();
    SECTION("exact table values") {
        CHECK(pd.a(0, 0) == 3.0);
        CHECK(pd.b(0, 0) == 3.0);
        CHECK(pd.a(0, 1) == 0.0);
        CHECK(pd.b(0, 1) == 5.0);
        CHECK(pd.a(1, 0) == 5.0);
        CHECK(pd.b(1, 0) == 0.0);
        CHECK(pd.a(1, 1) == 1.0);
        CHECK(pd.b(1, 1) == 1.0);
    }
    SECTION("the game is symmetric: payoff_b is the transpose of payoff_a") {
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) REQUIRE(pd.b(r, c) == pd.a(c, r));
    }
    SECTION("dominance pins (D,D)") {
        CHECK(equilibria::pure_nash(pd) == std::vector<equilibria::Cell>{{1, 1}});
    }
}

TEST_CASE("identification rounds pass with certainty when bits match") {
    SplitMix64 g(52);
    for (int i = 0; i < 100; ++i) {
        const int bit = static_cast<int>(g.next() % 2);
        const auto trent = testutil::random_state(g, 2);
        const WiesnerRound swap_round(WiesnerVariant::Swap, trent, testutil::random_state(g, 2),
                                      bit, bit);
        REQUIRE(wiesner_round(swap_round).trent_pass == Catch::Approx(1.0).margin(1e-12));
        const WiesnerRound had_round(WiesnerVariant::Hadamard, trent, std::nullopt, bit, bit);
        REQUIRE(wiesner_round(had_round).trent_pass == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("identification rounds on mismatched bits") {
    SplitMix64 g(53);
    SECTION("hadamard variant with |0> secret passes half the time") {
        const WiesnerRound round(WiesnerVariant::Hadamard, StateVector::basis(2, 0), std::nullopt,
                                 1, 0);
        CHECK(wiesner_round(round).trent_pass == Catch::Approx(0.5).margin(1e-12));
    }
    SECTION("swap variant passes with the squared overlap of the two secrets") {
        for (int i = 0; i < 50; ++i) {
            const auto trent = testutil::random_state(g, 2);
            const auto ancilla = testutil::random_state(g, 2);
            const int alice = static_cast<int>(g.next() % 2);
            const WiesnerRound round(WiesnerVariant::Swap, trent, ancilla, alice, 1 - alice);
            const double expect = std::norm(qcore::inner(trent, ancilla));
            REQUIRE(wiesner_round(round).trent_pass == Catch::Approx(expect).margin(1e-12));
        }
    }
    SECTION("swap circuit with Alice acting alone leaves the ancilla on Trent's wire") {
        const auto trent = testutil::random_state(g, 2);
        const auto ancilla = testutil::random_state(g, 2);
        const WiesnerRound round(WiesnerVariant::Swap, trent, ancilla, 1, 0);
        const auto outcome = wiesner_round(round);
        const auto reduced = qcore::partial_trace(outcome.final_board, 1, {2, 2, 2});
        CHECK(qcore::max_abs_diff(reduced.mat(), qcore::density_from_pure(ancilla).mat()) <
              1e-12);
    }
}

TEST_CASE("hadamard_mobius") {
    SECTION("fixed values") {
        CHECK(hadamard_mobius(ExtendedCplx::of({0.0, 0.0})).value == Cplx(1.0, 0.0));
        CHECK(hadamard_mobius(ExtendedCplx::of({1.0, 0.0})).value == Cplx(0.0, 0.0));
        CHECK(hadamard_mobius(ExtendedCplx::inf()).value == Cplx(-1.0, 0.0));
        CHECK(hadamard_mobius(ExtendedCplx::of({-1.0, 0.0})).is_inf);
    }
    SECTION("is an involution on the extended plane") {
        SplitMix64 g(54);
        for (int i = 0; i < 100; ++i) {
            ExtendedCplx z;
            if (i == 0) {
                z = ExtendedCplx::inf();
            } else {
                z = ExtendedCplx::of(Cplx((g.next_double() - 0.5) * 10.0,
                                          (g.next_double() - 0.5) * 10.0));
            }
            const auto back = hadamard_mobius(hadamard_mobius(z));
            if (z.is_inf) {
                REQUIRE(back.is_inf);
            } else {
                REQUIRE_FALSE(back.is_inf);
                REQUIRE(std::abs(back.value - z.value) < 1e-12);
            }
        }
    }
    SECTION("matches the controlled-Hadamard circuit projectively") {
        SplitMix64 g(55);
        for (int i = 0; i < 20; ++i) {
            const Cplx z((g.next_double() - 0.5) * 4.0, (g.next_double() - 0.5) * 4.0);
            const double n = std::sqrt(1.0 + std::norm(z));
            const StateVector secret({Cplx(1.0 / n, 0.0), z / n});
            const WiesnerRound round(WiesnerVariant::Hadamard, secret, std::nullopt, 1, 0);
            const auto outcome = wiesner_round(round);
            const auto reduced = qcore::partial_trace(outcome.final_board, 1, {2, 2});
            const Cplx w = hadamard_mobius(ExtendedCplx::of(z)).value;
            const double wn = std::sqrt(1.0 + std::norm(w));
            const StateVector expect({Cplx(1.0 / wn, 0.0), w / wn});
            REQUIRE(qcore::projective_overlap(reduced, expect) ==
                    Catch::Approx(1.0).margin(1e-12));
        }
    }
}

TEST_CASE("two-box gambling expected gains") {
    SECTION("honest state loses Bob exactly v, fair at v = 0") {
        for (double v : {0.0, 0.25, 0.5, 1.0}) {
            const GvwSetup s(gvw_honest_state(), 2.0, v);
            const auto pay = gvw_expected_gains(s);
            CHECK(pay.b == Catch::Approx(-v).margin(1e-12));
            CHECK(pay.a == Catch::Approx(v).margin(1e-12));
        }
    }
    SECTION("all-in-A against a never-verifying Bob wins every unit") {
        const GvwSetup s(StateVector::basis(2, 0), 2.0, 0.0);
        CHECK(gvw_expected_gains(s).b == -1.0);
    }
    SECTION("all-in-A against an always-verifying Bob pays (R-1)/2") {
        const GvwSetup s(StateVector::basis(2, 0), 3.0, 1.0);
        CHECK(gvw_expected_gains(s).b == Catch::Approx((3.0 - 1.0) / 2.0).margin(1e-12));
    }
    SECTION("gains are zero-sum for random setups") {
        SplitMix64 g(56);
        for (int i = 0; i < 50; ++i) {
            const GvwSetup s(testutil::random_state(g, 2), 0.5 + 3.0 * g.next_double(),
                             g.next_double());
            const auto pay = gvw_expected_gains(s);
            REQUIRE(std::abs(pay.a + pay.b) < 1e-12);
        }
    }
    SECTION("cheating toward box A trades find-probability against detection") {
        double prev_find = 1.0, prev_fail = -1.0;
        for (int k = 0; k <= 10; ++k) {
            // Real interpolation from the honest split toward all-in-A.
            const double t = static_cast<double>(k) / 10.0;
            const double angle = (1.0 - t) * (std::numbers::pi / 4.0);
            const StateVector state({Cplx(std::cos(angle), 0.0), Cplx(std::sin(angle), 0.0)});
            const auto probs = gvw_outcome_probs(state);
            if (k > 0) {
                REQUIRE(probs.find_in_b < prev_find);
                REQUIRE(1.0 - probs.pass > prev_fail);
            }
            prev_find = probs.find_in_b;
            prev_fail = 1.0 - probs.pass;
        }
    }
    SECTION("mixed Alice gains are the weighted average") {
        const GvwSetup s(gvw_honest_state(), 2.0, 0.4);
        const std::vector<std::pair<double, StateVector>> dist = {
            {0.25, StateVector::basis(2, 0)}, {0.75, gvw_honest_state()}};
        const auto mixed = gvw_expected_gains(s, dist);
        const auto part_a = gvw_expected_gains(GvwSetup(StateVector::basis(2, 0), 2.0, 0.4));
        const auto part_h = gvw_expected_gains(GvwSetup(gvw_honest_state(), 2.0, 0.4));
        CHECK(mixed.b == Catch::Approx(0.25 * part_a.b + 0.75 * part_h.b).margin(1e-12));
    }
    SECTION("invalid mixed distributions are rejected") {
        const GvwSetup s(gvw_honest_state(), 2.0, 0.4);
        const std::vector<std::pair<double, StateVector>> bad = {
            {0.4, gvw_honest_state()}, {0.4, StateVector::basis(2, 0)}};
        CHECK_THROWS_AS(gvw_expected_gains(s, bad), std::invalid_argument);
    }
    SECTION("setup validation") {
        CHECK_THROWS_AS(GvwSetup(gvw_honest_state(), -1.0, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(GvwSetup(gvw_honest_state(), 1.0, 1.5), std::invalid_argument);
    }
}

TEST_CASE("banknote records") {
    SplitMix64 g(57);
    SECTION("JSON round trip is exact") {
        std::vector<BanknoteEntry> rounds;
        for (int i = 0; i < 8; ++i) {
            const bool swap = (g.next() % 2) == 0;
            BanknoteEntry e{swap ? WiesnerVariant::Swap : WiesnerVariant::Hadamard,
                            testutil::random_state(g, 2), std::nullopt,
                            static_cast<int>(g.next() % 2)};
            if (swap) e.ancilla_state = testutil::random_state(g, 2);
            rounds.push_back(std::move(e));
        }
        const auto text = banknote_to_json(rounds);
        const auto parsed = banknote_from_json(text);
        REQUIRE(parsed.size() == rounds.size());
        for (std::size_t i = 0; i < rounds.size(); ++i) {
            REQUIRE(parsed[i].variant == rounds[i].variant);
            REQUIRE(parsed[i].alice_bit == rounds[i].alice_bit);
            for (std::size_t k = 0; k < 2; ++k)
                REQUIRE(parsed[i].trent_state[k] == rounds[i].trent_state[k]);
            REQUIRE(parsed[i].ancilla_state.has_value() == rounds[i].ancilla_state.has_value());
        }
        // Serializing the parse is byte-identical.
        REQUIRE(banknote_to_json(parsed) == text);
    }
    SECTION("authentication multiplies the per-round pass probabilities") {
        std::vector<BanknoteEntry> rounds;
        std::vector<int> matching;
        for (int i = 0; i < 5; ++i) {
            rounds.push_back(BanknoteEntry{WiesnerVariant::Hadamard,
                                           testutil::random_state(g, 2), std::nullopt,
                                           static_cast<int>(g.next() % 2)});
            matching.push_back(rounds.back().alice_bit);
        }
        CHECK(authenticate(rounds, matching) == Catch::Approx(1.0).margin(1e-12));

        std::vector<int> flipped = matching;
        flipped[2] = 1 - flipped[2];
        const WiesnerRound lone(rounds[2].variant, rounds[2].trent_state, std::nullopt,
                                rounds[2].alice_bit, flipped[2]);
        CHECK(authenticate(rounds, flipped) ==
              Catch::Approx(wiesner_round(lone).trent_pass).margin(1e-12));
    }
    SECTION("malformed records are rejected") {
        CHECK_THROWS_AS(banknote_from_json("{\"not\":\"an array\"}"), std::invalid_argument);
        CHECK_THROWS_AS(
            banknote_from_json(
                R"([{"variant":"swap","trent_state":[[1,0],[0,0]],"alice_bit":0}])"),
            std::invalid_argument);  // swap requires the ancilla
    }
}

TEST_CASE("round validation") {
    CHECK_THROWS_AS(WiesnerRound(WiesnerVariant::Hadamard, StateVector::basis(2, 0),
                                 StateVector::basis(2, 0), 0, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(WiesnerRound(WiesnerVariant::Swap, StateVector::basis(2, 0), std::nullopt,
                                 0, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(WiesnerRound(WiesnerVariant::Hadamard, StateVector::basis(2, 0),
                                 std::nullopt, 2, 0),
                    std::invalid_argument);
}
