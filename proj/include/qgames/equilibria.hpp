// equilibria.hpp
// Solution concepts: weak dominance, pure Nash, Pareto optimality, exact
// mixed Nash for 2x2 bimatrix games by support enumeration, and grid-based
// epsilon-Nash search over the parametrized strategy spaces of a quantum
// game. Grid searches certify grid-relative equilibria only; continuum
// claims are checked against analytic identities in the tests.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qgames/gamemodel.hpp"

namespace qgames::equilibria {

using gamemodel::Player;
using gamemodel::QuantumGame;
using gamemodel::Strategy;
using gamemodel::StrategyKind;

// ---------------------------------------------------------------------------
// Bimatrix games.
// ---------------------------------------------------------------------------

class BimatrixGame {
public:
    BimatrixGame(std::size_t rows, std::size_t cols, std::vector<double> payoff_a,
                 std::vector<double> payoff_b, std::vector<std::string> row_labels = {},
                 std::vector<std::string> col_labels = {})
        : rows_(rows),
          cols_(cols),
          payoff_a_(std::move(payoff_a)),
          payoff_b_(std::move(payoff_b)),
          row_labels_(std::move(row_labels)),
          col_labels_(std::move(col_labels)) {
        if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("BimatrixGame: empty game");
        if (payoff_a_.size() != rows_ * cols_ || payoff_b_.size() != rows_ * cols_)
            throw std::invalid_argument("BimatrixGame: payoff shape mismatch");
        for (std::size_t k = 0; k < payoff_a_.size(); ++k)
            if (!std::isfinite(payoff_a_[k]) || !std::isfinite(payoff_b_[k]))
                throw std::invalid_argument("BimatrixGame: non-finite payoff");
        if (!row_labels_.empty() && row_labels_.size() != rows_)
            throw std::invalid_argument("BimatrixGame: row label count mismatch");
        if (!col_labels_.empty() && col_labels_.size() != cols_)
            throw std::invalid_argument("BimatrixGame: col label count mismatch");
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double a(std::size_t r, std::size_t c) const { return payoff_a_[r * cols_ + c]; }
    double b(std::size_t r, std::size_t c) const { return payoff_b_[r * cols_ + c]; }
    const std::vector<std::string>& row_labels() const { return row_labels_; }
    const std::vector<std::string>& col_labels() const { return col_labels_; }

private:
    std::size_t rows_, cols_;
    std::vector<double> payoff_a_, payoff_b_;
    std::vector<std::string> row_labels_, col_labels_;
};

struct MixedProfile {
    std::vector<double> row_dist;
    std::vector<double> col_dist;
};

using Cell = std::pair<std::size_t, std::size_t>;

// Weakly dominant rows and columns: at least as good as every alternative
// against every opponent move.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> dominant_strategies(
    const BimatrixGame& g) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t r = 0; r < g.rows(); ++r) {
        bool dom = true;
        for (std::size_t c = 0; dom && c < g.cols(); ++c)
            for (std::size_t r2 = 0; dom && r2 < g.rows(); ++r2)
                if (g.a(r, c) < g.a(r2, c)) dom = false;
        if (dom) rows.push_back(r);
    }
    for (std::size_t c = 0; c < g.cols(); ++c) {
        bool dom = true;
        for (std::size_t r = 0; dom && r < g.rows(); ++r)
            for (std::size_t c2 = 0; dom && c2 < g.cols(); ++c2)
                if (g.b(r, c) < g.b(r, c2)) dom = false;
        if (dom) cols.push_back(c);
    }
    return {rows, cols};
}

// Cells where no unilateral deviation strictly improves the deviator.
inline std::vector<Cell> pure_nash(const BimatrixGame& g) {
    std::vector<Cell> out;
    for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < g.cols(); ++c) {
            bool nash = true;
            for (std::size_t r2 = 0; nash && r2 < g.rows(); ++r2)
                if (g.a(r2, c) > g.a(r, c)) nash = false;
            for (std::size_t c2 = 0; nash && c2 < g.cols(); ++c2)
                if (g.b(r, c2) > g.b(r, c)) nash = false;
            if (nash) out.emplace_back(r, c);
        }
    }
    return out;
}

// Cells not Pareto-dominated: no other cell is at least as good for both
// players and strictly better for one.
inline std::vector<Cell> pareto_front(const BimatrixGame& g) {
    std::vector<Cell> out;
    for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < g.cols(); ++c) {
            bool dominated = false;
            for (std::size_t r2 = 0; !dominated && r2 < g.rows(); ++r2)
                for (std::size_t c2 = 0; !dominated && c2 < g.cols(); ++c2) {
                    if (r2 == r && c2 == c) continue;
                    const bool ge_both = g.a(r2, c2) >= g.a(r, c) && g.b(r2, c2) >= g.b(r, c);
                    const bool gt_one = g.a(r2, c2) > g.a(r, c) || g.b(r2, c2) > g.b(r, c);
                    if (ge_both && gt_one) dominated = true;
                }
            if (!dominated) out.emplace_back(r, c);
        }
    }
    return out;
}

struct MixedNashResult {
    std::vector<MixedProfile> profiles;
    bool degenerate = false;
};

// All equilibria of a 2x2 game by support enumeration: pure supports plus
// the interior indifference solution when it lies strictly inside (0,1)^2.
// Degenerate games (underdetermined indifference equations) report the
// extreme points of the equilibrium component and set the degenerate flag.
inline MixedNashResult mixed_nash_2x2(const BimatrixGame& g) {
    if (g.rows() != 2 || g.cols() != 2)
        throw std::invalid_argument("mixed_nash_2x2: game must be 2x2");
    constexpr double kTol = 1e-12;
    MixedNashResult out;

    const auto add_pure = [&](std::size_t r, std::size_t c) {
        MixedProfile p;
        p.row_dist = {r == 0 ? 1.0 : 0.0, r == 0 ? 0.0 : 1.0};
        p.col_dist = {c == 0 ? 1.0 : 0.0, c == 0 ? 0.0 : 1.0};
        out.profiles.push_back(std::move(p));
    };
    for (const Cell& cell : pure_nash(g)) add_pure(cell.first, cell.second);

    // Interior support {0,1} x {0,1}: x = P(row 0) makes B indifferent,
    // y = P(col 0) makes A indifferent.
    const double db = g.b(0, 0) - g.b(0, 1) - g.b(1, 0) + g.b(1, 1);
    const double da = g.a(0, 0) - g.a(1, 0) - g.a(0, 1) + g.a(1, 1);
    const double nb = g.b(1, 1) - g.b(1, 0);
    const double na = g.a(1, 1) - g.a(0, 1);
    const bool b_underdetermined = std::abs(db) <= kTol && std::abs(nb) <= kTol;
    const bool a_underdetermined = std::abs(da) <= kTol && std::abs(na) <= kTol;
    if (b_underdetermined || a_underdetermined) {
        // A continuum of indifference solutions; its extreme points are
        // covered by the pure-support scan above.
        out.degenerate = true;
        return out;
    }
    if (std::abs(db) > kTol && std::abs(da) > kTol) {
        const double x = nb / db;
        const double y = na / da;
        if (x > kTol && x < 1.0 - kTol && y > kTol && y < 1.0 - kTol) {
            MixedProfile p;
            p.row_dist = {x, 1.0 - x};
            p.col_dist = {y, 1.0 - y};
            out.profiles.push_back(std::move(p));
        }
    }
    return out;
}

inline std::pair<double, double> mixed_payoff(const BimatrixGame& g, const MixedProfile& p) {
    double pa = 0.0, pb = 0.0;
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c) {
            const double w = p.row_dist[r] * p.col_dist[c];
            pa += w * g.a(r, c);
            pb += w * g.b(r, c);
        }
    return {pa, pb};
}

// ---------------------------------------------------------------------------
// Embedding a bimatrix game as a quantum game (one classical move each on a
// rows x cols board; outcome index = row * cols + col).
// ---------------------------------------------------------------------------

inline QuantumGame embed_bimatrix(const BimatrixGame& g, std::string name = "bimatrix") {
    using namespace gamemodel;
    const std::size_t rows = g.rows(), cols = g.cols();

    const auto shift_to = [](std::size_t dim, std::size_t target) {
        qcore::Matrix m = qcore::Matrix::identity(dim);
        if (target != 0) {
            m(0, 0) = 0.0;
            m(target, target) = 0.0;
            m(0, target) = 1.0;
            m(target, 0) = 1.0;
        }
        return qcore::Unitary(std::move(m));
    };

    StrategySpace sa, sb;
    sa.allowed = {StrategyKind::PureClassical, StrategyKind::MixedClassical};
    sb.allowed = sa.allowed;
    if (rows == 2)
        sa.search_domain = gamemodel::SearchDomain{StrategyKind::MixedClassical, {{0.0, 1.0}}};
    if (cols == 2)
        sb.search_domain = gamemodel::SearchDomain{StrategyKind::MixedClassical, {{0.0, 1.0}}};
    std::vector<std::string> outcome_labels(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string label = g.row_labels().empty() ? "r" + std::to_string(r)
                                                         : g.row_labels()[r];
        sa.move_ops.push_back(qcore::tensor(shift_to(rows, r), qcore::identity_gate(cols)));
        sa.move_labels.push_back(label);
    }
    for (std::size_t c = 0; c < cols; ++c) {
        const std::string label = g.col_labels().empty() ? "c" + std::to_string(c)
                                                         : g.col_labels()[c];
        sb.move_ops.push_back(qcore::tensor(qcore::identity_gate(rows), shift_to(cols, c)));
        sb.move_labels.push_back(label);
    }
    PayoffRule payoff;
    bool zero_sum = true;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            payoff.payoff_a.push_back(g.a(r, c));
            payoff.payoff_b.push_back(g.b(r, c));
            zero_sum = zero_sum && std::abs(g.a(r, c) + g.b(r, c)) <= 1e-12;
            const std::string rl = g.row_labels().empty() ? "r" + std::to_string(r)
                                                          : g.row_labels()[r];
            const std::string cl = g.col_labels().empty() ? "c" + std::to_string(c)
                                                          : g.col_labels()[c];
            outcome_labels[r * cols + c] = rl + cl;
        }

    return QuantumGame(std::move(name),
                       qcore::density_from_pure(qcore::StateVector::basis(rows * cols, 0)),
                       TurnSchedule{Player::A, Player::B}, std::move(sa), std::move(sb),
                       std::move(payoff), zero_sum, std::move(outcome_labels));
}

// ---------------------------------------------------------------------------
// Grid search over parametrized strategy domains.
// ---------------------------------------------------------------------------

using gamemodel::ParamInterval;
using StrategyDomain = gamemodel::SearchDomain;

inline StrategyDomain mixed_domain(double lo = 0.0, double hi = 1.0) {
    return StrategyDomain{StrategyKind::MixedClassical, {{lo, hi}}};
}

inline StrategyDomain u2_domain(std::size_t turns) {
    StrategyDomain d;
    d.kind = StrategyKind::QuantumUnitary;
    for (std::size_t t = 0; t < turns; ++t) {
        d.box.push_back({0.0, std::numbers::pi / 2.0});  // alpha
        d.box.push_back({0.0, 2.0 * std::numbers::pi});  // phi1
        d.box.push_back({0.0, 2.0 * std::numbers::pi});  // phi2
    }
    return d;
}

// Fix a domain to a single point (used to pin one side of a search).
inline StrategyDomain point_domain(StrategyKind kind, std::vector<double> params) {
    StrategyDomain d;
    d.kind = kind;
    for (double x : params) d.box.push_back({x, x});
    return d;
}

inline Strategy realize_strategy(const StrategyDomain& d, std::span<const double> params) {
    if (params.size() != d.box.size())
        throw std::invalid_argument("realize_strategy: parameter count mismatch");
    switch (d.kind) {
        case StrategyKind::MixedClassical:
            if (params.size() != 1)
                throw std::invalid_argument("realize_strategy: mixed domain takes one parameter");
            return gamemodel::MixedClassical::flip(params[0]);
        case StrategyKind::QuantumUnitary: {
            if (params.size() % 3 != 0)
                throw std::invalid_argument(
                    "realize_strategy: unitary domain takes three parameters per turn");
            gamemodel::QuantumUnitary q;
            for (std::size_t t = 0; t < params.size(); t += 3)
                q.ops.push_back(gamemodel::u2_from_angles(params[t], params[t + 1], params[t + 2]));
            return q;
        }
        default:
            throw std::invalid_argument("realize_strategy: unsupported strategy kind");
    }
}

namespace detail {

struct Grid {
    std::vector<std::vector<double>> axes;  // per-parameter grid values
    std::vector<std::size_t> shape;
    std::size_t total = 1;
};

inline Grid make_grid(const StrategyDomain& d, std::size_t resolution) {
    if (resolution < 2) throw std::invalid_argument("grid: resolution must be >= 2");
    if (d.box.empty()) throw std::invalid_argument("grid: empty domain");
    Grid g;
    for (const ParamInterval& iv : d.box) {
        if (!(iv.hi >= iv.lo)) throw std::invalid_argument("grid: empty interval");
        std::vector<double> axis;
        if (iv.hi == iv.lo) {
            axis.push_back(iv.lo);
        } else {
            for (std::size_t k = 0; k < resolution; ++k)
                axis.push_back(iv.lo + (iv.hi - iv.lo) * static_cast<double>(k) /
                                           static_cast<double>(resolution - 1));
        }
        g.shape.push_back(axis.size());
        g.total *= axis.size();
        g.axes.push_back(std::move(axis));
    }
    return g;
}

// Lexicographic point of the grid: last axis varies fastest.
inline std::vector<double> grid_point(const Grid& g, std::size_t flat) {
    std::vector<double> xs(g.axes.size());
    for (std::size_t k = g.axes.size(); k-- > 0;) {
        xs[k] = g.axes[k][flat % g.shape[k]];
        flat /= g.shape[k];
    }
    return xs;
}

}  // namespace detail

struct ProfileFlags {
    bool dominant_a = false;
    bool dominant_b = false;
    bool nash = false;
    bool pareto = false;
};

struct GridProfile {
    std::size_t index_a = 0;  // flat lexicographic grid index
    std::size_t index_b = 0;
    std::vector<double> params_a;
    std::vector<double> params_b;
    gamemodel::PayoffPair payoffs;
    ProfileFlags flags;
};

struct GridMeta {
    std::size_t resolution = 0;
    double epsilon = 0.0;
    StrategyDomain domain_a, domain_b;
    std::size_t points_a = 0, points_b = 0;
};

struct EquilibriumReport {
    std::vector<GridProfile> profiles;  // epsilon-Nash profiles, annotated
    GridMeta grid_meta;
};

inline constexpr double kDefaultEpsilon = 1e-6;
inline constexpr std::size_t kDefaultResolution = 21;

// Enumerate the product grid, flag epsilon-Nash profiles (no grid deviation
// improves either player by more than epsilon), and annotate each flagged
// profile with dominance and Pareto flags relative to the grid.
inline EquilibriumReport grid_nash(const QuantumGame& game, const StrategyDomain& domain_a,
                                   const StrategyDomain& domain_b,
                                   std::size_t resolution = kDefaultResolution,
                                   double epsilon = kDefaultEpsilon) {
    const detail::Grid ga = detail::make_grid(domain_a, resolution);
    const detail::Grid gb = detail::make_grid(domain_b, resolution);
    if (ga.total * gb.total > 50'000'000)
        throw std::invalid_argument("grid_nash: grid too large; lower the resolution");

    std::vector<Strategy> strat_a, strat_b;
    strat_a.reserve(ga.total);
    strat_b.reserve(gb.total);
    for (std::size_t i = 0; i < ga.total; ++i)
        strat_a.push_back(realize_strategy(domain_a, detail::grid_point(ga, i)));
    for (std::size_t j = 0; j < gb.total; ++j)
        strat_b.push_back(realize_strategy(domain_b, detail::grid_point(gb, j)));

    std::vector<double> pay_a(ga.total * gb.total), pay_b(ga.total * gb.total);
    for (std::size_t i = 0; i < ga.total; ++i)
        for (std::size_t j = 0; j < gb.total; ++j) {
            const auto res = gamemodel::play(game, strat_a[i], strat_b[j]);
            pay_a[i * gb.total + j] = res.payoff.a;
            pay_b[i * gb.total + j] = res.payoff.b;
        }

    // Best responses per opponent point.
    std::vector<double> best_a(gb.total, -std::numeric_limits<double>::infinity());
    std::vector<double> best_b(ga.total, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < ga.total; ++i)
        for (std::size_t j = 0; j < gb.total; ++j) {
            best_a[j] = std::max(best_a[j], pay_a[i * gb.total + j]);
            best_b[i] = std::max(best_b[i], pay_b[i * gb.total + j]);
        }

    EquilibriumReport report;
    report.grid_meta = {resolution, epsilon, domain_a, domain_b, ga.total, gb.total};

    const auto row_dominant = [&](std::size_t i) {
        for (std::size_t j = 0; j < gb.total; ++j)
            if (pay_a[i * gb.total + j] < best_a[j]) return false;
        return true;
    };
    const auto col_dominant = [&](std::size_t j) {
        for (std::size_t i = 0; i < ga.total; ++i)
            if (pay_b[i * gb.total + j] < best_b[i]) return false;
        return true;
    };
    const auto pareto_undominated = [&](std::size_t i, std::size_t j) {
        const double a0 = pay_a[i * gb.total + j], b0 = pay_b[i * gb.total + j];
        for (std::size_t k = 0; k < pay_a.size(); ++k) {
            if (pay_a[k] >= a0 && pay_b[k] >= b0 && (pay_a[k] > a0 || pay_b[k] > b0))
                return false;
        }
        return true;
    };

    for (std::size_t i = 0; i < ga.total; ++i)
        for (std::size_t j = 0; j < gb.total; ++j) {
            const double a0 = pay_a[i * gb.total + j], b0 = pay_b[i * gb.total + j];
            if (a0 < best_a[j] - epsilon || b0 < best_b[i] - epsilon) continue;
            GridProfile p;
            p.index_a = i;
            p.index_b = j;
            p.params_a = detail::grid_point(ga, i);
            p.params_b = detail::grid_point(gb, j);
            p.payoffs = {a0, b0};
            p.flags.nash = true;
            p.flags.dominant_a = row_dominant(i);
            p.flags.dominant_b = col_dominant(j);
            p.flags.pareto = pareto_undominated(i, j);
            report.profiles.push_back(std::move(p));
        }
    return report;
}

// Argmax of the responder's expected payoff over the grid against a fixed
// opponent strategy; ties break lexicographically by grid index.
inline std::pair<Strategy, double> best_response(const QuantumGame& game, Player responder,
                                                 const Strategy& opponent,
                                                 const StrategyDomain& domain,
                                                 std::size_t resolution = kDefaultResolution) {
    const detail::Grid grid = detail::make_grid(domain, resolution);
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < grid.total; ++i) {
        const Strategy s = realize_strategy(domain, detail::grid_point(grid, i));
        const double v = (responder == Player::A)
                             ? gamemodel::expected_payoff_a(game, s, opponent)
                             : gamemodel::expected_payoff_b(game, opponent, s);
        if (v > best) {
            best = v;
            best_index = i;
        }
    }
    return {realize_strategy(domain, detail::grid_point(grid, best_index)), best};
}

}  // namespace qgames::equilibria
