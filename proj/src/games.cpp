#include "tropisolve/games.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "linalg.hpp"

namespace tropisolve {

std::string vertex_kind_name(VertexKind k) {
    switch (k) {
        case VertexKind::Max: return "MAX";
        case VertexKind::Min: return "MIN";
        case VertexKind::Stoch: return "STOCH";
    }
    return "?";
}

std::vector<std::size_t> Game::out_edges(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (edges[e].from == v) out.push_back(e);
    return out;
}

void Game::validate() const {
    if (names.size() != kinds.size()) throw PreconditionError("game has mismatched name and vertex counts");
    for (const auto& e : edges)
        if (e.from >= size() || e.to >= size()) throw PreconditionError("edge references an unknown vertex");
    for (std::size_t v = 0; v < size(); ++v) {
        const auto out = out_edges(v);
        if (out.empty()) throw PreconditionError("vertex " + names[v] + " has no out-edge");
        if (kinds[v] == VertexKind::Stoch) {
            Rational total;
            for (auto e : out) {
                if (!edges[e].prob || edges[e].prob->sign() <= 0)
                    throw PreconditionError("STOCH vertex " + names[v] + " has an edge without positive probability");
                total += *edges[e].prob;
            }
            if (total != Rational(1))
                throw PreconditionError("probabilities at " + names[v] + " sum to " + total.to_string());
        } else {
            for (auto e : out)
                if (edges[e].prob) throw PreconditionError("player vertex " + names[v] + " has a probability label");
        }
    }
}

Game build_game(const OperatorSystem& o) {
    o.validate();
    if (o.has_eps()) throw PreconditionError("games need rational offsets; the system carries eps terms");
    Game g;
    g.names = o.names;
    for (std::size_t i = 0; i < o.size(); ++i) {
        const Operator& op = o.ops[i];
        switch (op.kind) {
            case Operator::Kind::Max:
            case Operator::Kind::Min:
                g.kinds.push_back(op.kind == Operator::Kind::Max ? VertexKind::Max : VertexKind::Min);
                for (const auto& a : op.args) g.edges.push_back({i, a.var, a.offset.real(), std::nullopt});
                break;
            case Operator::Kind::Avg: {
                g.kinds.push_back(VertexKind::Stoch);
                const Rational total = op.total_weight();
                for (const auto& a : op.args) g.edges.push_back({i, a.var, op.offset.real(), a.weight / total});
                break;
            }
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

struct Word {
    std::string text;
    std::size_t col;
};

std::vector<Word> words(std::string_view line) {
    std::vector<Word> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return out;
}

Rational parse_number(const Word& w, std::size_t line_no) {
    try {
        return Rational::parse(w.text);
    } catch (const Error& e) {
        throw ParseError(std::string("malformed rational: ") + e.what(), line_no, w.col);
    }
}

}  // namespace

Game parse_game(std::string_view text) {
    Game g;
    std::map<std::string, std::size_t, std::less<>> index;
    bool have_header = false;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        ++line_no;
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
        const auto w = words(line);
        if (w.empty()) continue;
        if (!have_header) {
            if (w[0].text != "vertices:") throw ParseError("expected 'vertices:' header", line_no, w[0].col);
            for (std::size_t k = 1; k < w.size(); ++k) {
                const auto colon = w[k].text.rfind(':');
                if (colon == std::string::npos || colon == 0)
                    throw ParseError("expected name:KIND", line_no, w[k].col);
                const std::string name = w[k].text.substr(0, colon);
                const std::string kind = w[k].text.substr(colon + 1);
                VertexKind vk;
                if (kind == "MAX")
                    vk = VertexKind::Max;
                else if (kind == "MIN")
                    vk = VertexKind::Min;
                else if (kind == "STOCH")
                    vk = VertexKind::Stoch;
                else
                    throw ParseError("unknown vertex kind '" + kind + "'", line_no, w[k].col + colon + 1);
                if (!index.emplace(name, g.size()).second)
                    throw ParseError("vertex '" + name + "' declared twice", line_no, w[k].col);
                g.names.push_back(name);
                g.kinds.push_back(vk);
            }
            have_header = true;
            continue;
        }
        if (w.size() != 5 && w.size() != 7) throw ParseError("expected 'u -> v payoff q [prob p]'", line_no, w[0].col);
        auto vertex = [&](const Word& x) {
            auto it = index.find(x.text);
            if (it == index.end()) throw ParseError("unknown vertex '" + x.text + "'", line_no, x.col);
            return it->second;
        };
        if (w[1].text != "->") throw ParseError("expected '->'", line_no, w[1].col);
        if (w[3].text != "payoff") throw ParseError("expected 'payoff'", line_no, w[3].col);
        GameEdge e{vertex(w[0]), vertex(w[2]), parse_number(w[4], line_no), std::nullopt};
        if (w.size() == 7) {
            if (w[5].text != "prob") throw ParseError("expected 'prob'", line_no, w[5].col);
            e.prob = parse_number(w[6], line_no);
        }
        g.edges.push_back(std::move(e));
    }
    if (!have_header) throw ParseError("missing 'vertices:' header", 0, 0);
    g.validate();
    return g;
}

std::string print_game(const Game& g) {
    std::ostringstream os;
    os << "vertices:";
    for (std::size_t v = 0; v < g.size(); ++v) os << ' ' << g.names[v] << ':' << vertex_kind_name(g.kinds[v]);
    os << '\n';
    for (const auto& e : g.edges) {
        os << g.names[e.from] << " -> " << g.names[e.to] << " payoff " << e.payoff;
        if (e.prob) os << " prob " << *e.prob;
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Values

namespace {

struct Chain {
    detail::Matrix p;
    std::vector<Rational> r;  // expected one-step payoff
};

Chain induced_chain(const Game& g, const Strategy& choice) {
    const std::size_t n = g.size();
    Chain c{detail::Matrix(n, std::vector<Rational>(n)), std::vector<Rational>(n)};
    for (std::size_t v = 0; v < n; ++v) {
        const auto out = g.out_edges(v);
        if (g.kinds[v] == VertexKind::Stoch) {
            for (auto e : out) {
                const Rational& pr = *g.edges[e].prob;
                c.p[v][g.edges[e].to] += pr;
                c.r[v] += pr * g.edges[e].payoff;
            }
        } else {
            const auto& e = g.edges[out.at(choice.at(v))];
            c.p[v][e.to] += Rational(1);
            c.r[v] = e.payoff;
        }
    }
    return c;
}

std::vector<std::vector<bool>> reachability(const detail::Matrix& p) {
    const std::size_t n = p.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> stack{s};
        reach[s][s] = true;
        while (!stack.empty()) {
            const auto u = stack.back();
            stack.pop_back();
            for (std::size_t w = 0; w < n; ++w)
                if (!p[u][w].is_zero() && !reach[s][w]) {
                    reach[s][w] = true;
                    stack.push_back(w);
                }
        }
    }
    return reach;
}

// Calls visit(choice) for every pure stationary pair; MAX choices vary in the
// outer loop. visit receives the index of the current MAX profile.
template <class Visit>
void for_each_pair(const Game& g, const Budget& budget, Visit&& visit) {
    g.validate();
    const auto pairs = strategy_pair_count(g);
    if (pairs > budget.strategy_pairs)
        throw BudgetExceeded("strategy pair count " + std::to_string(pairs) + " exceeds budget " +
                             std::to_string(budget.strategy_pairs));
    std::vector<std::size_t> max_v;
    std::vector<std::size_t> min_v;
    std::vector<std::size_t> degree(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) {
        degree[v] = g.out_edges(v).size();
        if (g.kinds[v] == VertexKind::Max) max_v.push_back(v);
        if (g.kinds[v] == VertexKind::Min) min_v.push_back(v);
    }
    Strategy choice(g.size(), 0);
    // Odometer over a vertex list; returns false after the last profile.
    auto advance = [&](const std::vector<std::size_t>& vs) {
        for (auto v : vs) {
            if (++choice[v] < degree[v]) return true;
            choice[v] = 0;
        }
        return false;
    };
    std::size_t profile = 0;
    do {
        do {
            visit(profile, choice);
        } while (advance(min_v));
        ++profile;
    } while (advance(max_v));
}

template <class Eval>
ValueVector maxmin(const Game& g, const Budget& budget, Eval&& eval) {
    std::optional<ValueVector> best;
    std::optional<ValueVector> worst;  // min over MIN profiles for the current MAX profile
    std::size_t current = 0;
    auto flush = [&]() {
        if (!worst) return;
        if (!best) {
            best = *worst;
        } else {
            for (std::size_t v = 0; v < g.size(); ++v) (*best)[v] = max((*best)[v], (*worst)[v]);
        }
        worst.reset();
    };
    for_each_pair(g, budget, [&](std::size_t profile, const Strategy& choice) {
        if (profile != current) {
            flush();
            current = profile;
        }
        ValueVector val = eval(choice);
        if (!worst) {
            worst = std::move(val);
        } else {
            for (std::size_t v = 0; v < g.size(); ++v) (*worst)[v] = min((*worst)[v], val[v]);
        }
    });
    flush();
    return best ? *best : ValueVector{};
}

}  // namespace

std::uint64_t strategy_pair_count(const Game& g) {
    std::uint64_t n = 1;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (g.kinds[v] != VertexKind::Stoch) n = saturating_mul(n, g.out_edges(v).size());
    return n;
}

ValueVector chain_limiting_average(const Game& g, const Strategy& choice) {
    const std::size_t n = g.size();
    const Chain c = induced_chain(g, choice);
    const auto reach = reachability(c.p);

    // Closed classes: v is recurrent iff everything it reaches reaches back.
    std::vector<bool> recurrent(n, true);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w = 0; w < n; ++w)
            if (reach[v][w] && !reach[w][v]) recurrent[v] = false;

    ValueVector gain(n);
    std::vector<bool> assigned(n, false);
    for (std::size_t v = 0; v < n; ++v) {
        if (!recurrent[v] || assigned[v]) continue;
        std::vector<std::size_t> cls;
        for (std::size_t w = 0; w < n; ++w)
            if (reach[v][w]) cls.push_back(w);
        // Stationary distribution: mu (I - P) = 0 with one equation replaced
        // by sum(mu) = 1.
        const std::size_t k = cls.size();
        detail::Matrix a(k, std::vector<Rational>(k));
        std::vector<Rational> b(k);
        for (std::size_t row = 0; row + 1 < k; ++row) {
            const std::size_t w = cls[row];
            for (std::size_t col = 0; col < k; ++col) a[row][col] = c.p[cls[col]][w];
            a[row][row] -= Rational(1);
        }
        for (std::size_t col = 0; col < k; ++col) a[k - 1][col] = Rational(1);
        b[k - 1] = Rational(1);
        const auto mu = detail::solve_linear(std::move(a), std::move(b));
        Rational g_c;
        for (std::size_t i = 0; i < k; ++i) g_c += mu[i] * c.r[cls[i]];
        for (auto w : cls) {
            gain[w] = g_c;
            assigned[w] = true;
        }
    }

    // Transient states: (I - P_TT) g_T = P_TR g_R.
    std::vector<std::size_t> transient;
    std::vector<std::size_t> pos(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        if (!recurrent[v]) {
            pos[v] = transient.size();
            transient.push_back(v);
        }
    if (!transient.empty()) {
        const std::size_t k = transient.size();
        detail::Matrix a(k, std::vector<Rational>(k));
        std::vector<Rational> b(k);
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t t = transient[i];
            a[i][i] = Rational(1);
            for (std::size_t w = 0; w < n; ++w) {
                if (c.p[t][w].is_zero()) continue;
                if (recurrent[w])
                    b[i] += c.p[t][w] * gain[w];
                else
                    a[i][pos[w]] -= c.p[t][w];
            }
        }
        const auto gt = detail::solve_linear(std::move(a), std::move(b));
        for (std::size_t i = 0; i < k; ++i) gain[transient[i]] = gt[i];
    }
    return gain;
}

ValueVector chain_discounted(const Game& g, const Strategy& choice, const Rational& beta) {
    const std::size_t n = g.size();
    const Chain c = induced_chain(g, choice);
    detail::Matrix a(n, std::vector<Rational>(n));
    std::vector<Rational> b(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = -beta * c.p[i][j];
        a[i][i] += Rational(1);
        b[i] = (Rational(1) - beta) * c.r[i];
    }
    return detail::solve_linear(std::move(a), std::move(b));
}

ValueVector limiting_average_values(const Game& g, const Budget& budget) {
    return maxmin(g, budget, [&](const Strategy& s) { return chain_limiting_average(g, s); });
}

ValueVector discounted_values(const Game& g, const Rational& beta, const Budget& budget) {
    if (beta.sign() < 0 || beta >= Rational(1)) throw PreconditionError("discount factor must lie in [0, 1)");
    return maxmin(g, budget, [&](const Strategy& s) { return chain_discounted(g, s, beta); });
}

bool satisfies_discount_equation(const Game& g, const Rational& beta, const ValueVector& v) {
    if (v.size() != g.size()) throw DimensionMismatch("value vector has the wrong dimension");
    for (std::size_t u = 0; u < g.size(); ++u) {
        std::optional<Rational> acc;
        for (auto e : g.out_edges(u)) {
            const auto& edge = g.edges[e];
            const Rational term = (Rational(1) - beta) * edge.payoff + beta * v[edge.to];
            switch (g.kinds[u]) {
                case VertexKind::Max: acc = acc ? max(*acc, term) : term; break;
                case VertexKind::Min: acc = acc ? min(*acc, term) : term; break;
                case VertexKind::Stoch: acc = acc.value_or(Rational(0)) + *edge.prob * term; break;
            }
        }
        if (!acc || *acc != v[u]) return false;
    }
    return true;
}

GameCrossCheck cross_check_duality(const OperatorSystem& o, const Budget& budget) {
    GameCrossCheck r;
    r.nu1 = limiting_average_values(build_game(o), budget);
    r.primal = solve_primal(o, true, budget);
    r.dual = solve_dual(o, false, budget);
    const bool all_positive = std::all_of(r.nu1.begin(), r.nu1.end(), [](const Rational& v) { return v.sign() > 0; });
    if (all_positive != r.primal.has_value())
        throw ConsistencyError(all_positive ? "game values are positive but x < o(x) is unsatisfiable"
                                            : "x < o(x) is satisfiable but some game value is <= 0");
    if (all_positive == r.dual.has_value())
        throw ConsistencyError(all_positive ? "game values are positive but y >= o(y) is satisfiable"
                                            : "some game value is <= 0 but y >= o(y) is unsatisfiable");
    return r;
}

}  // namespace tropisolve
