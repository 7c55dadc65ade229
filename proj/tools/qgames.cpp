// qgames.cpp
// Command-line front end: construct games, play strategy profiles, run
// equilibrium searches and protocol simulations, and print machine-readable
// results. JSON goes to standard output only; logs and warnings go to
// standard error. Every JSON document carries a run manifest whose checksum
// (FNV-1a 64 over the serialized "result" object) pins the output, and all
// numbers are printed with 17 significant digits so reruns are byte-exact.
//
// Exit codes: 0 success, 2 unknown entity, 3 invalid input, 4 internal
// invariant violation.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgames/equilibria.hpp"
#include "qgames/gamelib.hpp"
#include "qgames/gamemodel.hpp"
#include "qgames/jsonio.hpp"
#include "qgames/market.hpp"
#include "qgames/protosim.hpp"
#include "qgames/qcore.hpp"

namespace {

using namespace qgames;
using jsonio::Value;

constexpr const char* kSchema = "qgames/1";
constexpr const char* kVersion = "1.0.0";

struct UnknownEntityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Output assembly.
// ---------------------------------------------------------------------------

void emit(const std::string& command, Value parameters, std::optional<std::uint64_t> seed,
          const Value& result) {
    Value manifest = Value::object();
    manifest.add("command", command);
    manifest.add("parameters", std::move(parameters));
    if (seed) manifest.add("seed", *seed);
    else manifest.add("seed", nullptr);
    manifest.add("version", kVersion);
    manifest.add("checksum", jsonio::fnv1a64_hex(result.dump()));

    Value doc = Value::object();
    doc.add("schema", kSchema);
    doc.add("result", result);
    doc.add("manifest", std::move(manifest));
    std::fputs(doc.dump().c_str(), stdout);
    std::fputc('\n', stdout);
}

// ---------------------------------------------------------------------------
// Strategy spec mini-grammar: "pure:<moves>", "mixed:<p>",
// "u2:<alpha>,<phi1>,<phi2>[;u2:...]". Parse errors report the byte offset.
// ---------------------------------------------------------------------------

[[noreturn]] void parse_fail(const std::string& spec, std::size_t pos, const std::string& what) {
    throw std::invalid_argument("strategy spec \"" + spec + "\": parse error at position " +
                                std::to_string(pos) + ": " + what);
}

double parse_number(const std::string& spec, std::size_t pos, std::size_t len) {
    const std::string token = spec.substr(pos, len);
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0')
        parse_fail(spec, pos, "expected a number, got \"" + token + "\"");
    return v;
}

gamemodel::Strategy parse_strategy(const std::string& spec, const gamemodel::StrategySpace& space,
                                   std::size_t turns) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string::npos) parse_fail(spec, 0, "expected pure:, mixed: or u2:");
    const std::string kind = spec.substr(0, colon);

    if (kind == "pure") {
        gamemodel::PureClassical out;
        std::size_t pos = colon + 1;
        while (true) {
            std::size_t comma = spec.find(',', pos);
            const std::string token =
                spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
            if (token.empty()) parse_fail(spec, pos, "empty move");
            bool found = false;
            for (std::size_t m = 0; m < space.move_labels.size(); ++m) {
                if (space.move_labels[m] == token) {
                    out.moves.push_back(m);
                    found = true;
                    break;
                }
            }
            if (!found) parse_fail(spec, pos, "unknown move \"" + token + "\"");
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (out.moves.size() != turns)
            parse_fail(spec, colon + 1,
                       "expected " + std::to_string(turns) + " moves, got " +
                           std::to_string(out.moves.size()));
        return out;
    }

    if (kind == "mixed") {
        const double p = parse_number(spec, colon + 1, std::string::npos);
        if (!(p >= 0.0 && p <= 1.0)) parse_fail(spec, colon + 1, "probability outside [0,1]");
        if (space.move_ops.size() != 2)
            parse_fail(spec, 0, "mixed:<p> needs a two-move alphabet");
        return gamemodel::MixedClassical::flip(p);
    }

    if (kind == "u2") {
        gamemodel::QuantumUnitary out;
        std::size_t pos = 0;
        while (pos < spec.size()) {
            std::size_t semi = spec.find(';', pos);
            const std::size_t seg_end = (semi == std::string::npos) ? spec.size() : semi;
            if (spec.compare(pos, 3, "u2:") != 0) parse_fail(spec, pos, "expected u2:");
            std::size_t cursor = pos + 3;
            double angles[3];
            for (int k = 0; k < 3; ++k) {
                std::size_t comma = spec.find(',', cursor);
                const std::size_t tok_end =
                    (k == 2) ? seg_end : (comma == std::string::npos ? seg_end : comma);
                if (k < 2 && (comma == std::string::npos || comma >= seg_end))
                    parse_fail(spec, cursor, "expected three comma-separated angles");
                angles[k] = parse_number(spec, cursor, tok_end - cursor);
                cursor = tok_end + 1;
            }
            out.ops.push_back(gamemodel::u2_from_angles(angles[0], angles[1], angles[2]));
            pos = (semi == std::string::npos) ? spec.size() : semi + 1;
        }
        if (out.ops.size() != turns)
            parse_fail(spec, 0,
                       "expected " + std::to_string(turns) + " u2 segments, got " +
                           std::to_string(out.ops.size()));
        return out;
    }

    parse_fail(spec, 0, "unknown strategy kind \"" + kind + "\"");
}

// ---------------------------------------------------------------------------
// Game registry.
// ---------------------------------------------------------------------------

struct GameInfo {
    std::string name;
    std::string kind;  // "quantum" or "bimatrix"
    std::string description;
};

const std::vector<GameInfo>& game_registry() {
    static const std::vector<GameInfo> games = {
        {"penny-flip", "quantum", "three-move spin-flip game (B, A, B)"},
        {"penny-flip-2move", "quantum", "truncated two-move spin-flip game (B, A)"},
        {"pd", "bimatrix", "Prisoner's Dilemma, payoffs (3,3)/(0,5)/(5,0)/(1,1)"},
    };
    return games;
}

gamemodel::QuantumGame make_quantum_game(const std::string& name) {
    if (name == "penny-flip") return gamelib::penny_flip();
    if (name == "penny-flip-2move") return gamelib::penny_flip_two_move();
    if (name == "pd") return equilibria::embed_bimatrix(gamelib::prisoners_dilemma(), "pd");
    throw UnknownEntityError("unknown game \"" + name + "\" (see list-games)");
}

// ---------------------------------------------------------------------------
// play
// ---------------------------------------------------------------------------

int run_play(const std::string& game_name, const std::string& spec_a, const std::string& spec_b) {
    const auto game = make_quantum_game(game_name);
    const auto sa = parse_strategy(spec_a, game.space(gamemodel::Player::A),
                                   game.turns(gamemodel::Player::A));
    const auto sb = parse_strategy(spec_b, game.space(gamemodel::Player::B),
                                   game.turns(gamemodel::Player::B));
    const auto res = gamemodel::play(game, sa, sb);

    Value result = Value::object();
    result.add("game", game_name);
    result.add("strategy_a", spec_a);
    result.add("strategy_b", spec_b);
    result.add("payoff_a", res.payoff.a);
    result.add("payoff_b", res.payoff.b);
    Value probs = Value::array();
    for (double p : qcore::measure_probs(res.final_state)) probs.push(p);
    result.add("final_probs", std::move(probs));
    Value labels = Value::array();
    for (const auto& l : game.outcome_labels()) labels.push(l);
    result.add("outcome_labels", std::move(labels));

    Value params = Value::object();
    params.add("game", game_name);
    params.add("a", spec_a);
    params.add("b", spec_b);
    emit("play", std::move(params), std::nullopt, result);
    return 0;
}

// ---------------------------------------------------------------------------
// nash
// ---------------------------------------------------------------------------

Value cells_json(const std::vector<equilibria::Cell>& cells) {
    Value arr = Value::array();
    for (const auto& [r, c] : cells) {
        Value pair = Value::array();
        pair.push(static_cast<std::uint64_t>(r));
        pair.push(static_cast<std::uint64_t>(c));
        arr.push(std::move(pair));
    }
    return arr;
}

Value bimatrix_report(const equilibria::BimatrixGame& g, double epsilon) {
    using namespace equilibria;
    const auto [dom_rows, dom_cols] = dominant_strategies(g);
    const auto nash = pure_nash(g);
    const auto front = pareto_front(g);

    const auto in_cells = [](const std::vector<Cell>& cells, Cell c) {
        return std::find(cells.begin(), cells.end(), c) != cells.end();
    };
    const auto in_list = [](const std::vector<std::size_t>& xs, std::size_t x) {
        return std::find(xs.begin(), xs.end(), x) != xs.end();
    };

    Value profiles = Value::array();
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c) {
            double best_a = -std::numeric_limits<double>::infinity();
            double best_b = best_a;
            for (std::size_t r2 = 0; r2 < g.rows(); ++r2) best_a = std::max(best_a, g.a(r2, c));
            for (std::size_t c2 = 0; c2 < g.cols(); ++c2) best_b = std::max(best_b, g.b(r, c2));
            if (g.a(r, c) < best_a - epsilon || g.b(r, c) < best_b - epsilon) continue;
            Value p = Value::object();
            p.add("row", static_cast<std::uint64_t>(r));
            p.add("col", static_cast<std::uint64_t>(c));
            if (!g.row_labels().empty()) p.add("row_label", g.row_labels()[r]);
            if (!g.col_labels().empty()) p.add("col_label", g.col_labels()[c]);
            p.add("payoff_a", g.a(r, c));
            p.add("payoff_b", g.b(r, c));
            p.add("dominant_a", in_list(dom_rows, r));
            p.add("dominant_b", in_list(dom_cols, c));
            p.add("nash", true);
            p.add("pareto", in_cells(front, {r, c}));
            profiles.push(std::move(p));
        }

    Value report = Value::object();
    report.add("kind", "bimatrix");
    report.add("epsilon", epsilon);
    report.add("profiles", std::move(profiles));
    report.add("dominant_rows", [&] {
        Value v = Value::array();
        for (std::size_t r : dom_rows) v.push(static_cast<std::uint64_t>(r));
        return v;
    }());
    report.add("dominant_cols", [&] {
        Value v = Value::array();
        for (std::size_t c : dom_cols) v.push(static_cast<std::uint64_t>(c));
        return v;
    }());
    report.add("pure_nash", cells_json(nash));
    report.add("pareto_front", cells_json(front));
    if (g.rows() == 2 && g.cols() == 2) {
        const auto mixed = mixed_nash_2x2(g);
        Value arr = Value::array();
        for (const auto& p : mixed.profiles) {
            Value prof = Value::object();
            Value rd = Value::array(), cd = Value::array();
            for (double x : p.row_dist) rd.push(x);
            for (double x : p.col_dist) cd.push(x);
            prof.add("row_dist", std::move(rd));
            prof.add("col_dist", std::move(cd));
            arr.push(std::move(prof));
        }
        report.add("mixed_nash", std::move(arr));
        report.add("degenerate", mixed.degenerate);
    }
    return report;
}

Value domain_json(const equilibria::StrategyDomain& d) {
    Value v = Value::object();
    v.add("kind", d.kind == gamemodel::StrategyKind::MixedClassical ? "mixed" : "u2");
    Value box = Value::array();
    for (const auto& iv : d.box) {
        Value pair = Value::array();
        pair.push(iv.lo);
        pair.push(iv.hi);
        box.push(std::move(pair));
    }
    v.add("box", std::move(box));
    return v;
}

Value grid_report(const gamemodel::QuantumGame& game, std::size_t resolution, double epsilon) {
    using namespace equilibria;
    const auto domain_a = mixed_domain();
    const auto domain_b = u2_domain(game.turns(gamemodel::Player::B));
    const auto report = grid_nash(game, domain_a, domain_b, resolution, epsilon);

    Value profiles = Value::array();
    for (const auto& p : report.profiles) {
        Value v = Value::object();
        v.add("index_a", static_cast<std::uint64_t>(p.index_a));
        v.add("index_b", static_cast<std::uint64_t>(p.index_b));
        Value pa = Value::array(), pb = Value::array();
        for (double x : p.params_a) pa.push(x);
        for (double x : p.params_b) pb.push(x);
        v.add("params_a", std::move(pa));
        v.add("params_b", std::move(pb));
        v.add("payoff_a", p.payoffs.a);
        v.add("payoff_b", p.payoffs.b);
        v.add("dominant_a", p.flags.dominant_a);
        v.add("dominant_b", p.flags.dominant_b);
        v.add("nash", p.flags.nash);
        v.add("pareto", p.flags.pareto);
        profiles.push(std::move(v));
    }

    Value out = Value::object();
    out.add("kind", "grid");
    out.add("epsilon", epsilon);
    out.add("resolution", static_cast<std::uint64_t>(report.grid_meta.resolution));
    out.add("domain_a", domain_json(report.grid_meta.domain_a));
    out.add("domain_b", domain_json(report.grid_meta.domain_b));
    out.add("points_a", static_cast<std::uint64_t>(report.grid_meta.points_a));
    out.add("points_b", static_cast<std::uint64_t>(report.grid_meta.points_b));
    out.add("profiles", std::move(profiles));
    return out;
}

int run_nash(const std::string& game_name, std::size_t resolution, double epsilon) {
    Value result = Value::object();
    result.add("game", game_name);
    if (game_name == "pd") {
        const auto pd = gamelib::prisoners_dilemma();
        Value report = bimatrix_report(pd, epsilon);
        // Splice report fields after "game".
        result.add("report", std::move(report));
    } else if (game_name == "penny-flip" || game_name == "penny-flip-2move") {
        result.add("report", grid_report(make_quantum_game(game_name), resolution, epsilon));
    } else {
        throw UnknownEntityError("unknown game \"" + game_name + "\" (see list-games)");
    }

    Value params = Value::object();
    params.add("game", game_name);
    params.add("resolution", static_cast<std::uint64_t>(resolution));
    params.add("epsilon", epsilon);
    emit("nash", std::move(params), std::nullopt, result);
    return 0;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

qcore::StateVector parse_alice(const std::string& spec) {
    if (spec == "honest") return gamelib::gvw_honest_state();
    if (spec == "a") return qcore::StateVector::basis(2, 0);
    if (spec == "b") return qcore::StateVector::basis(2, 1);
    if (spec.rfind("t:", 0) == 0) {
        char* end = nullptr;
        const double t = std::strtod(spec.c_str() + 2, &end);
        if (*end != '\0' || !(t >= 0.0 && t <= 1.0))
            throw std::invalid_argument("--alice t:<x> needs x in [0,1]");
        // Real interpolation from the honest split toward all-in-A.
        const double angle = (1.0 - t) * (std::numbers::pi / 4.0);
        return qcore::StateVector(
            {qcore::Cplx(std::cos(angle), 0.0), qcore::Cplx(std::sin(angle), 0.0)});
    }
    throw std::invalid_argument("--alice must be honest, a, b, or t:<x>");
}

struct SimulateOptions {
    std::string protocol;
    std::string variant = "hadamard";
    std::string trent = "haar";
    std::string bob = "uniform";
    std::uint64_t trials = 100000;
    std::uint32_t rounds = 1;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string sweep;
    std::string alice = "honest";
    double verify_prob = 0.0;
    double reward = 2.0;
};

protosim::SimConfig wiesner_config(const SimulateOptions& opt) {
    protosim::SimConfig cfg;
    cfg.trials = opt.trials;
    cfg.rounds_per_trial = opt.rounds;
    cfg.master_seed = opt.seed;
    if (opt.variant == "hadamard") cfg.variant = gamelib::WiesnerVariant::Hadamard;
    else if (opt.variant == "swap") cfg.variant = gamelib::WiesnerVariant::Swap;
    else throw std::invalid_argument("--variant must be hadamard or swap");
    if (opt.trent == "haar") cfg.trent_policy = protosim::TrentPolicy::Haar;
    else if (opt.trent == "two-point") cfg.trent_policy = protosim::TrentPolicy::TwoPoint;
    else throw std::invalid_argument("--trent must be haar or two-point");
    if (opt.bob == "uniform") cfg.bob_policy = protosim::BobPolicy::UniformGuess;
    else if (opt.bob == "fixed") cfg.bob_policy = protosim::BobPolicy::FixedBit;
    else if (opt.bob == "copy") cfg.bob_policy = protosim::BobPolicy::CopyAfterMeasure;
    else throw std::invalid_argument("--bob must be uniform, fixed, or copy");
    return cfg;
}

void add_result_fields(Value& v, const protosim::ProtocolResult& r) {
    v.add("trials", r.trials);
    v.add("successes", r.successes);
    v.add("success_rate", r.success_rate);
    v.add("std_error", r.std_error);
    v.add("per_round_rate", r.per_round_rate);
    v.add("mean_gain_a", r.mean_gain_a);
    v.add("mean_gain_b", r.mean_gain_b);
    v.add("seed_used", r.seed_used);
}

int run_simulate(const SimulateOptions& opt) {
    if (opt.protocol == "wiesner") {
        auto cfg = wiesner_config(opt);
        if (!opt.sweep.empty()) {
            const std::size_t dots = opt.sweep.find("..");
            if (dots == std::string::npos)
                throw std::invalid_argument("--sweep must look like n1..n2");
            const long n1 = std::strtol(opt.sweep.c_str(), nullptr, 10);
            const long n2 = std::strtol(opt.sweep.c_str() + dots + 2, nullptr, 10);
            if (n1 < 1 || n2 < n1) throw std::invalid_argument("--sweep needs 1 <= n1 <= n2");

            std::string csv = "n,rate,std_error\n";
            for (long n = n1; n <= n2; ++n) {
                cfg.rounds_per_trial = static_cast<std::uint32_t>(n);
                const auto res = protosim::simulate_wiesner(cfg, opt.threads);
                if (res.success_rate < 1.0 / static_cast<double>(cfg.trials) &&
                    res.success_rate > 0.0)
                    std::fprintf(stderr, "warning: n=%ld rate below the 1/trials floor\n", n);
                if (res.successes == 0)
                    std::fprintf(stderr, "warning: n=%ld had zero successes\n", n);
                csv += std::to_string(n) + "," + jsonio::format_double(res.success_rate) + "," +
                       jsonio::format_double(res.std_error) + "\n";
            }
            std::fputs(csv.c_str(), stdout);

            Value manifest = Value::object();
            manifest.add("command", "simulate");
            Value params = Value::object();
            params.add("protocol", opt.protocol);
            params.add("variant", opt.variant);
            params.add("trent", opt.trent);
            params.add("bob", opt.bob);
            params.add("trials", opt.trials);
            params.add("sweep", opt.sweep);
            manifest.add("parameters", std::move(params));
            manifest.add("seed", opt.seed);
            manifest.add("version", kVersion);
            manifest.add("checksum", jsonio::fnv1a64_hex(csv));
            std::fprintf(stderr, "%s\n", manifest.dump().c_str());
            return 0;
        }

        const auto res = protosim::simulate_wiesner(cfg, opt.threads);
        Value result = Value::object();
        result.add("protocol", "wiesner");
        result.add("variant", opt.variant);
        result.add("trent_policy", opt.trent);
        result.add("bob_policy", opt.bob);
        result.add("rounds", static_cast<std::uint64_t>(opt.rounds));
        add_result_fields(result, res);

        Value params = Value::object();
        params.add("protocol", opt.protocol);
        params.add("variant", opt.variant);
        params.add("trent", opt.trent);
        params.add("bob", opt.bob);
        params.add("rounds", static_cast<std::uint64_t>(opt.rounds));
        params.add("trials", opt.trials);
        emit("simulate", std::move(params), opt.seed, result);
        return 0;
    }

    if (opt.protocol == "gvw") {
        if (!opt.sweep.empty())
            throw std::invalid_argument("--sweep applies to the wiesner protocol only");
        const gamelib::GvwSetup setup(parse_alice(opt.alice), opt.reward, opt.verify_prob);
        protosim::SimConfig cfg;
        cfg.trials = opt.trials;
        cfg.master_seed = opt.seed;
        const auto res = protosim::simulate_gvw(setup, cfg, opt.threads);

        Value result = Value::object();
        result.add("protocol", "gvw");
        result.add("alice", opt.alice);
        result.add("v", opt.verify_prob);
        result.add("r", opt.reward);
        add_result_fields(result, res);

        Value params = Value::object();
        params.add("protocol", opt.protocol);
        params.add("alice", opt.alice);
        params.add("v", opt.verify_prob);
        params.add("r", opt.reward);
        params.add("trials", opt.trials);
        emit("simulate", std::move(params), opt.seed, result);
        return 0;
    }

    throw UnknownEntityError("unknown protocol \"" + opt.protocol +
                             "\" (expected wiesner or gvw)");
}

// ---------------------------------------------------------------------------
// market
// ---------------------------------------------------------------------------

int run_market(double m, double theta, double hbar_e, double big_theta, unsigned levels) {
    const market::RiskOscillator osc(m, theta, hbar_e, big_theta);
    Value result = Value::object();
    result.add("m", m);
    result.add("theta", theta);
    result.add("hbar_e", hbar_e);
    result.add("big_theta", big_theta);
    result.add("omega", market::omega(theta));
    result.add("hbar_eff", market::hbar_eff(hbar_e, big_theta));
    result.add("e0", market::risk_spectrum(osc, 0));
    result.add("h_e", market::min_risk_inclination(osc));
    Value ladder = Value::array();
    for (unsigned n = 0; n < levels; ++n)
        ladder.push(market::risk_spectrum(osc, static_cast<int>(n)));
    result.add("levels", std::move(ladder));

    Value params = Value::object();
    params.add("m", m);
    params.add("theta", theta);
    params.add("hbar_e", hbar_e);
    params.add("big_theta", big_theta);
    params.add("levels", static_cast<std::uint64_t>(levels));
    emit("market", std::move(params), std::nullopt, result);
    return 0;
}

// ---------------------------------------------------------------------------
// list-games
// ---------------------------------------------------------------------------

int run_list_games() {
    Value games = Value::array();
    for (const auto& g : game_registry()) {
        Value v = Value::object();
        v.add("name", g.name);
        v.add("kind", g.kind);
        v.add("description", g.description);
        games.push(std::move(v));
    }
    Value protocols = Value::array();
    {
        Value w = Value::object();
        w.add("name", "wiesner");
        w.add("description", "multi-round identification (forgery) game; variants swap/hadamard");
        protocols.push(std::move(w));
        Value g = Value::object();
        g.add("name", "gvw");
        g.add("description", "two-box gambling protocol with verification reward R");
        protocols.push(std::move(g));
    }
    Value result = Value::object();
    result.add("games", std::move(games));
    result.add("protocols", std::move(protocols));
    emit("list-games", Value::object(), std::nullopt, result);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum game theory toolkit"};
    app.require_subcommand(1);

    // play
    std::string play_game, play_a, play_b;
    auto* play_cmd = app.add_subcommand("play", "play one strategy profile of a game");
    play_cmd->add_option("game", play_game, "game name (see list-games)")->required();
    play_cmd->add_option("--a", play_a, "player A strategy spec")->required();
    play_cmd->add_option("--b", play_b, "player B strategy spec")->required();

    // nash
    std::string nash_game;
    std::size_t nash_resolution = equilibria::kDefaultResolution;
    double nash_epsilon = equilibria::kDefaultEpsilon;
    auto* nash_cmd = app.add_subcommand("nash", "equilibrium report for a game");
    nash_cmd->add_option("game", nash_game, "game name")->required();
    nash_cmd->add_option("--resolution", nash_resolution, "grid points per parameter dimension");
    nash_cmd->add_option("--epsilon", nash_epsilon, "epsilon-Nash tolerance");

    // simulate
    SimulateOptions sim;
    auto* sim_cmd = app.add_subcommand("simulate", "run a seeded protocol simulation");
    sim_cmd->add_option("protocol", sim.protocol, "wiesner or gvw")->required();
    sim_cmd->add_option("--variant", sim.variant, "wiesner circuit variant: hadamard|swap");
    sim_cmd->add_option("--trent", sim.trent, "arbiter polarization policy: haar|two-point");
    sim_cmd->add_option("--bob", sim.bob, "forger policy: uniform|fixed|copy");
    sim_cmd->add_option("--rounds", sim.rounds, "sub-games per trial");
    sim_cmd->add_option("--trials", sim.trials, "Monte Carlo trials");
    sim_cmd->add_option("--seed", sim.seed, "master seed");
    sim_cmd->add_option("--threads", sim.threads, "worker threads (result-invariant)");
    sim_cmd->add_option("--sweep", sim.sweep, "round sweep n1..n2; emits CSV");
    sim_cmd->add_option("--alice", sim.alice, "gvw: honest|a|b|t:<x>");
    sim_cmd->add_option("--v", sim.verify_prob, "gvw: Bob's verification probability");
    sim_cmd->add_option("--r", sim.reward, "gvw: verification reward R");

    // market
    double mk_m = 1.0, mk_theta = 1.0, mk_hbar = 1.0, mk_big = 0.0;
    unsigned mk_levels = 5;
    auto* mk_cmd = app.add_subcommand("market", "risk-oscillator spectrum report");
    mk_cmd->add_option("--m", mk_m, "risk asymmetry");
    mk_cmd->add_option("--theta", mk_theta, "characteristic transaction time");
    mk_cmd->add_option("--hbar-e", mk_hbar, "risk quantum");
    mk_cmd->add_option("--big-theta", mk_big, "noncommutativity parameter");
    mk_cmd->add_option("--levels", mk_levels, "number of ladder levels to print");

    auto* list_cmd = app.add_subcommand("list-games", "list known games and protocols");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }

    try {
        if (play_cmd->parsed()) return run_play(play_game, play_a, play_b);
        if (nash_cmd->parsed()) return run_nash(nash_game, nash_resolution, nash_epsilon);
        if (sim_cmd->parsed()) return run_simulate(sim);
        if (mk_cmd->parsed()) return run_market(mk_m, mk_theta, mk_hbar, mk_big, mk_levels);
        if (list_cmd->parsed()) return run_list_games();
        std::cerr << "error: no command\n";
        return 3;
    } catch (const UnknownEntityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
