#include <catch_amalgamated.hpp>

#include <functional>

#include "tropisolve/games.hpp"
#include "tropisolve/generators.hpp"

using namespace tropisolve;

namespace {

Rational q(long long n, long long d = 1) { return Rational(n, d); }

// Play from v under a deterministic choice: prefix payoffs, then cycle payoffs.
struct Lasso {
    std::vector<Rational> prefix;
    std::vector<Rational> cycle;
};

Lasso lasso(const Game& g, const Strategy& s, std::size_t v) {
    std::vector<long> seen(g.size(), -1);
    std::vector<Rational> pay;
    while (seen[v] < 0) {
        seen[v] = static_cast<long>(pay.size());
        const GameEdge& e = g.edges[g.out_edges(v)[s[v]]];
        pay.push_back(e.payoff);
        v = e.to;
    }
    const auto start = static_cast<std::size_t>(seen[v]);
    return {{pay.begin(), pay.begin() + static_cast<long>(start)}, {pay.begin() + static_cast<long>(start), pay.end()}};
}

Rational cycle_mean(const Lasso& l) {
    Rational s;
    for (const auto& r : l.cycle) s += r;
    return s / Rational(static_cast<long long>(l.cycle.size()));
}

// (1-b) * sum b^i r_i over the eventually periodic stream.
Rational geometric(const Lasso& l, const Rational& b) {
    Rational head, pw(1);
    for (const auto& r : l.prefix) {
        head += pw * r;
        pw *= b;
    }
    Rational cyc, cpw(1);
    for (const auto& r : l.cycle) {
        cyc += cpw * r;
        cpw *= b;
    }
    return (Rational(1) - b) * (head + pw * cyc / (Rational(1) - cpw));
}

// Every combination of choices at player vertices.
void for_each_choice(const Game& g, const std::function<void(const Strategy&)>& f) {
    Strategy s(g.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
        if (v == g.size()) {
            f(s);
            return;
        }
        const std::size_t deg = g.kinds[v] == VertexKind::Stoch ? 1 : g.out_edges(v).size();
        for (std::size_t i = 0; i < deg; ++i) {
            s[v] = i;
            rec(v + 1);
        }
    };
    rec(0);
}

// max over MAX choices of min over MIN choices, vertex by vertex, for a
// per-pair value function.
ValueVector maxmin(const Game& g, const std::function<Rational(const Strategy&, std::size_t)>& value) {
    std::vector<std::size_t> maxv, minv;
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (g.kinds[v] == VertexKind::Max) maxv.push_back(v);
        if (g.kinds[v] == VertexKind::Min) minv.push_back(v);
    }
    ValueVector best(g.size());
    std::vector<bool> have_best(g.size(), false);
    Strategy s(g.size(), 0);
    std::function<void(std::size_t)> outer = [&](std::size_t i) {
        if (i < maxv.size()) {
            for (std::size_t c = 0; c < g.out_edges(maxv[i]).size(); ++c) {
                s[maxv[i]] = c;
                outer(i + 1);
            }
            return;
        }
        ValueVector worst(g.size());
        std::vector<bool> have(g.size(), false);
        std::function<void(std::size_t)> inner = [&](std::size_t j) {
            if (j < minv.size()) {
                for (std::size_t c = 0; c < g.out_edges(minv[j]).size(); ++c) {
                    s[minv[j]] = c;
                    inner(j + 1);
                }
                return;
            }
            for (std::size_t v = 0; v < g.size(); ++v) {
                const Rational x = value(s, v);
                if (!have[v] || x < worst[v]) worst[v] = x;
                have[v] = true;
            }
        };
        inner(0);
        for (std::size_t v = 0; v < g.size(); ++v) {
            if (!have_best[v] || worst[v] > best[v]) best[v] = worst[v];
            have_best[v] = true;
        }
    };
    outer(0);
    return best;
}

Game deterministic_game(gen::Rng& rng, std::size_t n) {
    Game g;
    for (std::size_t v = 0; v < n; ++v) {
        g.names.push_back("v" + std::to_string(v + 1));
        g.kinds.push_back(gen::coin(rng) ? VertexKind::Max : VertexKind::Min);
        const int deg = gen::uniform_int(rng, 1, 2);
        for (int d = 0; d < deg; ++d)
            g.edges.push_back({v, static_cast<std::size_t>(gen::uniform_int(rng, 0, static_cast<int>(n) - 1)),
                               Rational(gen::uniform_int(rng, -3, 3)), std::nullopt});
    }
    return g;
}

// Stationary distribution of an irreducible chain by the tree formula:
// mu(i) proportional to the sum over spanning trees directed into i of the
// product of their edge probabilities.
std::vector<Rational> tree_stationary(const std::vector<std::vector<Rational>>& p) {
    const std::size_t n = p.size();
    std::vector<Rational> w(n);
    std::vector<std::size_t> succ(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t root, std::size_t v) {
        if (v == n) {
            Rational prod(1);
            for (std::size_t u = 0; u < n; ++u) {
                if (u == root) continue;
                // Must reach the root without cycling.
                std::size_t x = u;
                for (std::size_t steps = 0; x != root && steps <= n; ++steps) x = succ[x];
                if (x != root) return;
                prod *= p[u][succ[u]];
            }
            w[root] += prod;
            return;
        }
        if (v == root) {
            rec(root, v + 1);
            return;
        }
        for (std::size_t t = 0; t < n; ++t) {
            if (t == v || p[v][t].is_zero()) continue;
            succ[v] = t;
            rec(root, v + 1);
        }
    };
    for (std::size_t r = 0; r < n; ++r) rec(r, 0);
    Rational total;
    for (const auto& x : w) total += x;
    for (auto& x : w) x /= total;
    return w;
}

}  // namespace

TEST_CASE("build_game examples") {
    const Game a = build_game(parse_operator_system("x1 := max(x1 + 1)\n"));
    REQUIRE(a.size() == 1);
    CHECK(a.kinds[0] == VertexKind::Max);
    REQUIRE(a.edges.size() == 1);
    CHECK(a.edges[0].to == 0);
    CHECK(a.edges[0].payoff == q(1));

    const Game b = build_game(parse_operator_system("x1 := max(x1)\nx2 := max(x2)\nx3 := avg(2: x1, 1: x2)\n"));
    CHECK(b.kinds[2] == VertexKind::Stoch);
    const auto out = b.out_edges(2);
    REQUIRE(out.size() == 2);
    CHECK(b.edges[out[0]].prob == q(2, 3));
    CHECK(b.edges[out[1]].prob == q(1, 3));
    CHECK(b.edges[out[0]].payoff == q(0));

    const Game c = build_game(parse_operator_system("x1 := min(x1, x2 + 5)\nx2 := max(x1 - 5)\n"));
    CHECK(c.kinds[0] == VertexKind::Min);
    CHECK(c.edges[c.out_edges(0)[0]].payoff == q(0));
    CHECK(c.edges[c.out_edges(0)[1]].payoff == q(5));
    CHECK(c.edges[c.out_edges(1)[0]].payoff == q(-5));

    const Game d = build_game(parse_operator_system("x1 := avg(1: x1, 1: x2) + 2\nx2 := max(x2)\n"));
    for (const auto e : d.out_edges(0)) CHECK(d.edges[e].payoff == q(2));

    CHECK_THROWS_AS(build_game(parse_operator_system("x1 := max(x1 - eps)\n")), PreconditionError);
}

TEST_CASE("limiting average examples") {
    CHECK(limiting_average_values(build_game(parse_operator_system("x1 := max(x1 + 1)\n"))) == ValueVector{q(1)});
    const Game two = parse_game("vertices: v1:MAX v2:MAX\nv1 -> v2 payoff 1\nv2 -> v1 payoff -1\n");
    CHECK(limiting_average_values(two) == ValueVector{q(0), q(0)});
    const Game st = parse_game(
        "vertices: v1:STOCH v2:MAX v3:MAX\n"
        "v1 -> v2 payoff 0 prob 1/2\nv1 -> v3 payoff 0 prob 1/2\n"
        "v2 -> v2 payoff 2\nv3 -> v3 payoff 4\n");
    CHECK(limiting_average_values(st) == ValueVector{q(3), q(2), q(4)});
}

TEST_CASE("discounted examples") {
    const Game one = build_game(parse_operator_system("x1 := max(x1 + 1)\n"));
    CHECK(discounted_values(one, q(1, 2)) == ValueVector{q(1)});
    const Game two = parse_game("vertices: v1:MAX v2:MAX\nv1 -> v2 payoff 1\nv2 -> v1 payoff -1\n");
    const auto v = discounted_values(two, q(1, 2));
    CHECK(v[0] == q(1, 3));
    CHECK(v[1] == q(-1, 3));
    // beta = 0: the best immediate payoff.
    const Game g = parse_game(
        "vertices: a:MAX b:MIN\na -> b payoff 5\na -> a payoff 1\nb -> a payoff -2\nb -> b payoff 3\n");
    CHECK(discounted_values(g, q(0)) == ValueVector{q(5), q(-2)});
    CHECK_THROWS_AS(discounted_values(g, q(1)), PreconditionError);
    CHECK_THROWS_AS(discounted_values(g, q(-1, 2)), PreconditionError);
}

TEST_CASE("cross_check_duality examples") {
    const auto up = cross_check_duality(parse_operator_system("x1 := max(x1 + 1)\n"));
    CHECK(up.nu1 == ValueVector{q(1)});
    CHECK(up.primal);
    CHECK_FALSE(up.dual);
    const auto down = cross_check_duality(parse_operator_system("x1 := max(x1 - 1)\n"));
    CHECK(down.nu1 == ValueVector{q(-1)});
    CHECK_FALSE(down.primal);
    CHECK(down.dual);
    const auto zero = cross_check_duality(parse_operator_system("x1 := max(x1)\n"));
    CHECK(zero.nu1 == ValueVector{q(0)});
    CHECK_FALSE(zero.primal);
    REQUIRE(zero.dual);
    CHECK(zero.dual->y[0] == ExtEps(EpsNum(0)));
}

TEST_CASE("game text format") {
    const char* text = "vertices: v1:MAX v2:MIN v3:STOCH\nv1 -> v2 payoff 3/2\nv2 -> v3 payoff 0\n"
                       "v3 -> v1 payoff 0 prob 1/3\nv3 -> v2 payoff -1 prob 2/3\n";
    const Game g = parse_game(text);
    CHECK(parse_game(print_game(g)) == g);
    CHECK_THROWS_AS(parse_game("vertices: a:MAX b:MAX\na -> b payoff 1\n"), PreconditionError);
    CHECK_THROWS_AS(parse_game("vertices: a:STOCH\na -> a payoff 1 prob 1/2\n"), PreconditionError);
    CHECK_THROWS_AS(parse_game("vertices: a:MAX\na -> a payoff 1 prob 1\n"), PreconditionError);
    CHECK_THROWS_AS(parse_game("vertices: a:MAX\na -> b payoff 1\n"), Error);
}

TEST_CASE("property: deterministic games agree with cycle means and geometric sums") {
    gen::Rng rng(71);
    for (int i = 0; i < 60; ++i) {
        const Game g = deterministic_game(rng, static_cast<std::size_t>(gen::uniform_int(rng, 1, 4)));
        const auto mean = maxmin(g, [&](const Strategy& s, std::size_t v) { return cycle_mean(lasso(g, s, v)); });
        CHECK(limiting_average_values(g) == mean);
        for (const Rational& b : {q(0), q(1, 2), q(9, 10)}) {
            const auto disc = maxmin(g, [&](const Strategy& s, std::size_t v) { return geometric(lasso(g, s, v), b); });
            CHECK(discounted_values(g, b) == disc);
        }
        // Per-pair chain values match the lasso oracle as well.
        for_each_choice(g, [&](const Strategy& s) {
            const auto avg = chain_limiting_average(g, s);
            for (std::size_t v = 0; v < g.size(); ++v) CHECK(avg[v] == cycle_mean(lasso(g, s, v)));
        });
    }
}

TEST_CASE("property: irreducible chains agree with the tree formula") {
    gen::Rng rng(72);
    for (int i = 0; i < 40; ++i) {
        const auto n = static_cast<std::size_t>(gen::uniform_int(rng, 2, 4));
        Game g;
        std::vector<std::vector<Rational>> p(n, std::vector<Rational>(n));
        std::vector<std::vector<Rational>> r(n, std::vector<Rational>(n));
        for (std::size_t v = 0; v < n; ++v) {
            g.names.push_back("s" + std::to_string(v));
            g.kinds.push_back(VertexKind::Stoch);
            // A ring edge keeps the chain irreducible; one more random target.
            std::vector<std::size_t> targets = {(v + 1) % n, static_cast<std::size_t>(gen::uniform_int(rng, 0, static_cast<int>(n) - 1))};
            if (targets[1] == targets[0]) targets.pop_back();
            std::vector<int> w;
            int total = 0;
            for (std::size_t k = 0; k < targets.size(); ++k) total += w.emplace_back(gen::uniform_int(rng, 1, 3));
            for (std::size_t k = 0; k < targets.size(); ++k) {
                const Rational pay(gen::uniform_int(rng, -4, 4));
                const Rational pr(w[k], total);
                g.edges.push_back({v, targets[k], pay, pr});
                p[v][targets[k]] = pr;
                r[v][targets[k]] = pay;
            }
        }
        g.validate();
        const auto mu = tree_stationary(p);
        Rational gain;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) gain += mu[a] * p[a][b] * r[a][b];
        CHECK(limiting_average_values(g) == ValueVector(n, gain));
    }
}

TEST_CASE("property: discount equation, maxmin order and probability conservation") {
    gen::Rng rng(73);
    for (int i = 0; i < 40; ++i) {
        const Game g = gen::random_game(rng);
        for (std::size_t v = 0; v < g.size(); ++v) {
            if (g.kinds[v] != VertexKind::Stoch) continue;
            Rational s;
            for (const auto e : g.out_edges(v)) s += *g.edges[e].prob;
            CHECK(s == q(1));
        }
        for (const Rational& b : {q(0), q(1, 3), q(9, 10)}) CHECK(satisfies_discount_equation(g, b, discounted_values(g, b)));

        const auto nu = limiting_average_values(g);
        const auto direct = maxmin(g, [&](const Strategy& s, std::size_t v) { return chain_limiting_average(g, s)[v]; });
        CHECK(nu == direct);
    }
}

TEST_CASE("property: built games keep probabilities exact") {
    gen::Rng rng(74);
    for (int i = 0; i < 100; ++i) {
        const Game g = build_game(gen::random_operator_system(rng));
        CHECK_NOTHROW(g.validate());
    }
}

TEST_CASE("property: discounted values approach the limiting average") {
    gen::Rng rng(75);
    int monotone = 0, total = 0;
    for (int i = 0; i < 40; ++i) {
        const Game g = gen::random_game(rng, 3, 2, 3);
        const auto nu = limiting_average_values(g);
        std::vector<Rational> prev(g.size(), Rational(-1));
        bool ok = true;
        for (const Rational& b : {q(9, 10), q(99, 100), q(999, 1000)}) {
            const auto vb = discounted_values(g, b);
            for (std::size_t v = 0; v < g.size(); ++v) {
                const Rational gap = (vb[v] - nu[v]).abs();
                if (prev[v] >= Rational(0) && gap > prev[v]) ok = false;
                prev[v] = gap;
            }
        }
        monotone += ok ? 1 : 0;
        ++total;
    }
    CHECK(monotone == total);
}
