#pragma once

// Stochastic mean-payoff games built from operator systems, with exact
// limiting-average and discounted values over pure stationary strategies.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tropisolve/budget.hpp"
#include "tropisolve/numeric.hpp"
#include "tropisolve/tropical.hpp"

namespace tropisolve {

enum class VertexKind { Max, Min, Stoch };

struct GameEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    Rational payoff;
    std::optional<Rational> prob;  // STOCH vertices only

    friend bool operator==(const GameEdge&, const GameEdge&) = default;
};

struct Game {
    std::vector<std::string> names;
    std::vector<VertexKind> kinds;
    std::vector<GameEdge> edges;

    std::size_t size() const noexcept { return kinds.size(); }
    /// Indices into `edges` leaving v, in input order.
    std::vector<std::size_t> out_edges(std::size_t v) const;
    /// Throws PreconditionError on a vertex without out-edges, a STOCH vertex
    /// whose probabilities are missing, nonpositive or do not sum to 1, or a
    /// player vertex with a probability label.
    void validate() const;

    friend bool operator==(const Game&, const Game&) = default;
};

using ValueVector = std::vector<Rational>;

/// One vertex per component; Max -> MAX, Min -> MIN, Avg -> STOCH with
/// probabilities w/sum(w) and the average's offset added to each out-edge.
Game build_game(const OperatorSystem& o);

/// `vertices: v1:MAX v2:MIN v3:STOCH`, then `v1 -> v2 payoff 3/2` and
/// `v3 -> v1 payoff 0 prob 1/3`.
Game parse_game(std::string_view text);
std::string print_game(const Game& g);

/// Per player vertex, the chosen position in out_edges(v); ignored elsewhere.
using Strategy = std::vector<std::size_t>;

/// Number of pure stationary strategy pairs, saturating.
std::uint64_t strategy_pair_count(const Game& g);

/// Values of the Markov chain induced by fixing both players' choices.
ValueVector chain_limiting_average(const Game& g, const Strategy& choice);
ValueVector chain_discounted(const Game& g, const Strategy& choice, const Rational& beta);

/// max over MAX strategies of min over MIN strategies, per vertex.
ValueVector limiting_average_values(const Game& g, const Budget& budget = {});
ValueVector discounted_values(const Game& g, const Rational& beta, const Budget& budget = {});

/// Exact check of v(u) = max/min/expectation over out-edges of
/// (1-beta)*payoff + beta*v(target).
bool satisfies_discount_equation(const Game& g, const Rational& beta, const ValueVector& v);

struct GameCrossCheck {
    ValueVector nu1;
    std::optional<PrimalWitness> primal;   // x < o(x)
    std::optional<DualCertificate> dual;   // y >= o(y)
};

/// Throws ConsistencyError unless (nu1 > 0 everywhere) <=> primal satisfiable
/// and (nu1 <= 0 somewhere) <=> dual satisfiable.
GameCrossCheck cross_check_duality(const OperatorSystem& o, const Budget& budget = {});

std::string vertex_kind_name(VertexKind k);

}  // namespace tropisolve
