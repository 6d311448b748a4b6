#include "tropisolve/generators.hpp"

namespace tropisolve::gen {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Rational small_rational(Rng& rng, int max_num, int max_den) {
    return Rational(uniform_int(rng, -max_num, max_num), uniform_int(rng, 1, max_den));
}

namespace {

Relation random_rel(Rng& rng) { return coin(rng) ? Relation::Gt : Relation::Geq; }

// Nonnegative coefficients on a random subset of columns other than k; the
// column k entry is set by the caller.
std::map<std::size_t, Rational> nonneg_row(Rng& rng, std::size_t n, std::size_t k, int bound) {
    std::map<std::size_t, Rational> row;
    for (std::size_t j = 0; j < n; ++j)
        if (j != k && coin(rng)) row[j] = Rational(uniform_int(rng, 0, bound));
    return row;
}

Formula horn_formula(Rng& rng, const HornShape& shape, bool restricted) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(shape.max_vars)));
    const auto m = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(shape.max_clauses)));
    Formula f(default_var_names(n));
    for (std::size_t c = 0; c < m; ++c) {
        const auto k = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(n) - 1));
        const auto lits = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(shape.max_literals)));
        const int positive = restricted && coin(rng) ? uniform_int(rng, 0, static_cast<int>(lits) - 1) : -1;
        Clause clause;
        for (std::size_t l = 0; l < lits; ++l) {
            auto row = nonneg_row(rng, n, k, shape.coeff_bound);
            const bool negative_k = restricted ? static_cast<int>(l) == positive : coin(rng);
            if (negative_k)
                row[k] = Rational(uniform_int(rng, -shape.coeff_bound, -1));
            else if (coin(rng))
                row[k] = Rational(uniform_int(rng, 0, shape.coeff_bound));
            clause.literals.emplace_back(std::move(row), random_rel(rng),
                                         Rational(uniform_int(rng, -shape.const_bound, shape.const_bound)));
        }
        f.add_clause(std::move(clause));
    }
    return f;
}

}  // namespace

Formula random_restricted_horn(Rng& rng, const HornShape& shape) { return horn_formula(rng, shape, true); }

Formula random_horn(Rng& rng, const HornShape& shape) { return horn_formula(rng, shape, false); }

Clause random_horn_clause(Rng& rng, std::size_t num_vars, std::size_t max_literals, int coeff_bound,
                          int const_bound) {
    const auto k = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(num_vars) - 1));
    const auto lits = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(max_literals)));
    Clause clause;
    for (std::size_t l = 0; l < lits; ++l) {
        auto row = nonneg_row(rng, num_vars, k, coeff_bound);
        const int ak = uniform_int(rng, -coeff_bound, coeff_bound);
        if (ak != 0) row[k] = Rational(ak);
        bool constant = true;
        for (const auto& [j, a] : row) constant = constant && a.is_zero();
        if (constant) row[k] = Rational(-1);
        clause.literals.emplace_back(std::move(row), random_rel(rng), Rational(uniform_int(rng, -const_bound, const_bound)));
    }
    return clause;
}

Clause random_tropical_clause(Rng& rng, std::size_t num_vars, std::size_t max_literals, int coeff_bound,
                              int const_bound) {
    const auto k = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(num_vars) - 1));
    const auto lits = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(max_literals)));
    Clause clause;
    for (std::size_t l = 0; l < lits; ++l) {
        std::map<std::size_t, Rational> row;
        int total = 0;
        for (std::size_t j = 0; j < num_vars; ++j) {
            if (j == k || !coin(rng) || total >= coeff_bound) continue;
            const int a = uniform_int(rng, 1, coeff_bound - total);
            row[j] = Rational(a);
            total += a;
        }
        if (total == 0) {
            // Fall back to a difference constraint against some other column.
            const std::size_t j = (k + 1 + static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(num_vars) - 2))) %
                                  num_vars;
            if (j == k) {
                row.clear();
            } else {
                row[j] = Rational(1);
                total = 1;
            }
        }
        if (total > 0) row[k] = Rational(-total);
        clause.literals.emplace_back(std::move(row), random_rel(rng), Rational(uniform_int(rng, -const_bound, const_bound)));
    }
    return clause;
}

OperatorSystem random_operator_system(Rng& rng, const OperatorShape& shape) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(shape.max_dim)));
    OperatorSystem o;
    o.names = default_var_names(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto arity = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(shape.max_arity)));
        const int kind = uniform_int(rng, 0, 2);
        if (kind == 2) {
            std::vector<std::pair<Rational, std::size_t>> args;
            for (std::size_t l = 0; l < arity; ++l)
                args.emplace_back(Rational(uniform_int(rng, 1, shape.max_weight)),
                                  static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(n) - 1)));
            o.ops.push_back(
                Operator::avg(std::move(args), EpsNum(Rational(uniform_int(rng, -shape.offset_bound, shape.offset_bound)))));
        } else {
            std::vector<std::pair<std::size_t, EpsNum>> args;
            for (std::size_t l = 0; l < arity; ++l)
                args.emplace_back(static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(n) - 1)),
                                  EpsNum(Rational(uniform_int(rng, -shape.offset_bound, shape.offset_bound))));
            o.ops.push_back(kind == 0 ? Operator::max(std::move(args)) : Operator::min(std::move(args)));
        }
    }
    return o;
}

CspInstance random_csp(Rng& rng, std::size_t max_vars, std::size_t max_atoms) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 2, static_cast<int>(max_vars)));
    const auto m = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(max_atoms)));
    CspInstance inst;
    for (std::size_t i = 0; i < n; ++i) inst.names.push_back(std::string(1, static_cast<char>('a' + i)));
    for (std::size_t a = 0; a < m; ++a) {
        const auto kind = static_cast<AtomKind>(uniform_int(rng, 0, 4));
        CspAtom atom{kind, {}};
        for (std::size_t i = 0; i < atom_arity(kind); ++i)
            atom.vars.push_back(static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(n) - 1)));
        inst.atoms.push_back(std::move(atom));
    }
    return inst;
}

Game random_game(Rng& rng, std::size_t max_vertices, std::size_t max_degree, int payoff_bound) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(max_vertices)));
    Game g;
    for (std::size_t v = 0; v < n; ++v) {
        g.names.push_back("v" + std::to_string(v + 1));
        g.kinds.push_back(static_cast<VertexKind>(uniform_int(rng, 0, 2)));
    }
    for (std::size_t v = 0; v < n; ++v) {
        const auto deg = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(max_degree)));
        std::vector<int> weights;
        int total = 0;
        for (std::size_t e = 0; e < deg; ++e) {
            weights.push_back(uniform_int(rng, 1, 3));
            total += weights.back();
        }
        for (std::size_t e = 0; e < deg; ++e) {
            GameEdge edge{v, static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(n) - 1)),
                          Rational(uniform_int(rng, -payoff_bound, payoff_bound)), std::nullopt};
            if (g.kinds[v] == VertexKind::Stoch) edge.prob = Rational(weights[e], total);
            g.edges.push_back(std::move(edge));
        }
    }
    return g;
}

namespace {

Literal lit(std::initializer_list<std::pair<std::size_t, Rational>> terms, Relation rel, Rational bound) {
    std::map<std::size_t, Rational> coeffs;
    for (const auto& [j, a] : terms) coeffs[j] += a;
    return Literal(std::move(coeffs), rel, std::move(bound));
}

Rational positive_rational(Rng& rng) { return Rational(uniform_int(rng, 1, 6), uniform_int(rng, 1, 4)); }

}  // namespace

ZeroPlusCase crafted_zero_plus(Rng& rng, bool satisfiable, std::size_t index) {
    const Relation ge = Relation::Geq;
    const Relation gt = Relation::Gt;
    const Rational one(1);
    const Rational q = small_rational(rng);
    ZeroPlusCase zc;
    zc.expected = satisfiable;
    auto unit = [&](Literal l) { zc.formula.add_clause(Clause{{std::move(l)}}); };
    const std::size_t family = index % 5;
    // Variables: x = 0, t = 1 (or x = 0, y = 1, t = 2).
    if (satisfiable && family == 4) {
        zc.formula = Formula({"x", "y", "t"});
        zc.t_index = 2;
    } else {
        zc.formula = Formula({"x", "t"});
        zc.t_index = 1;
    }
    const std::size_t x = 0;
    const std::size_t t = zc.t_index;
    if (satisfiable) {
        switch (family) {
            case 0: {  // x = q + p t, t > 0
                Rational p = small_rational(rng);
                if (p.is_zero()) p = one;
                zc.family = "line";
                unit(lit({{x, one}, {t, -p}}, ge, q));
                unit(lit({{x, -one}, {t, p}}, ge, -q));
                unit(lit({{t, one}}, gt, 0));
                zc.known_witness = {EpsNum(q, p), EpsNum::epsilon()};
                break;
            }
            case 1:  // q + t <= x <= q + 2t
                zc.family = "widening-interval";
                unit(lit({{x, one}, {t, -one}}, ge, q));
                unit(lit({{x, -one}, {t, Rational(2)}}, ge, -q));
                zc.known_witness = {EpsNum(q, Rational(3, 2)), EpsNum::epsilon()};
                break;
            case 2:  // q < x < q + t
                zc.family = "open-sliver";
                unit(lit({{x, one}}, gt, q));
                unit(lit({{x, -one}, {t, one}}, gt, -q));
                zc.known_witness = {EpsNum(q, Rational(1, 2)), EpsNum::epsilon()};
                break;
            case 3:  // (x >= q + 1 | x <= q - t) & x <= q
                zc.family = "disjunctive-shadow";
                zc.formula.add_clause(Clause{{lit({{x, one}}, ge, q + one), lit({{x, -one}, {t, -one}}, ge, -q)}});
                unit(lit({{x, -one}}, ge, -q));
                zc.known_witness = {EpsNum(q, -one), EpsNum::epsilon()};
                break;
            default: {  // y >= x + t, x >= p, y <= p + 1
                const Rational p = small_rational(rng);
                zc.family = "gap-pair";
                unit(lit({{1, one}, {x, -one}, {t, -one}}, ge, 0));
                unit(lit({{x, one}}, ge, p));
                unit(lit({{1, -one}}, ge, -(p + one)));
                zc.known_witness = {EpsNum(p), EpsNum(p, one), EpsNum::epsilon()};
                break;
            }
        }
    } else {
        switch (family) {
            case 0:  // t >= r with r > 0
                zc.family = "threshold";
                unit(lit({{t, one}}, ge, positive_rational(rng)));
                break;
            case 1:  // q <= x <= q - t
                zc.family = "closing-interval";
                unit(lit({{x, one}}, ge, q));
                unit(lit({{x, -one}, {t, -one}}, ge, -q));
                break;
            case 2:  // x > q + t and x < q + t/2
                zc.family = "crossed-bounds";
                unit(lit({{x, one}, {t, -one}}, gt, q));
                unit(lit({{x, -one}, {t, Rational(1, 2)}}, gt, -q));
                break;
            case 3:  // (t >= r | x >= q + 1) & x <= q
                zc.family = "vanishing-branch";
                zc.formula.add_clause(Clause{{lit({{t, one}}, ge, positive_rational(rng)), lit({{x, one}}, ge, q + one)}});
                unit(lit({{x, -one}}, ge, -q));
                break;
            default: {  // q + p t <= x <= q + p' t with p' < p
                const Rational p = small_rational(rng);
                const Rational p2 = p - positive_rational(rng);
                zc.family = "diverging-rays";
                unit(lit({{x, one}, {t, -p}}, ge, q));
                unit(lit({{x, -one}, {t, p2}}, ge, -q));
                break;
            }
        }
    }
    return zc;
}

Formula max_atoms_formula(const Rational& c) {
    Formula f(default_var_names(3));
    const Rational one(1);
    f.add_clause(Clause{{lit({{1, one}, {0, -one}}, Relation::Geq, c), lit({{2, one}, {0, -one}}, Relation::Geq, c)}});
    return f;
}

}  // namespace tropisolve::gen
