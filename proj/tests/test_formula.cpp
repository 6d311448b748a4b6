#include <catch_amalgamated.hpp>

#include "tropisolve/formula.hpp"
#include "tropisolve/generators.hpp"
#include "tropisolve/horn_solver.hpp"
#include "tropisolve/lp.hpp"

using namespace tropisolve;

namespace {

std::vector<Rational> q(std::initializer_list<int> xs) {
    std::vector<Rational> v;
    for (int x : xs) v.emplace_back(x);
    return v;
}

// Up to `limit` satisfying points, one per feasible disjunct selection.
std::vector<std::vector<Rational>> sample_points(const Formula& f, std::size_t limit) {
    std::vector<std::vector<Rational>> pts;
    const auto clauses = formula_disjunctions(f);
    for_each_feasible_selection(LinSystem(f.num_vars()), clauses, 1'000'000, [&](const Selection& s) {
        std::vector<Row> rows;
        for (std::size_t c = 0; c < clauses.size(); ++c)
            for (const auto& r : clauses[c][s.choices[c]]) rows.push_back(r);
        pts.push_back(instantiate(s.witness, choose_epsilon(rows, s.witness)));
        return pts.size() < limit;
    });
    return pts;
}

}  // namespace

TEST_CASE("parse examples") {
    const Formula mc = parse_formula("x2 - x1 >= 3 | x3 - x1 >= 3\n");
    REQUIRE(mc.clauses().size() == 1);
    REQUIRE(mc.clauses()[0].literals.size() == 2);
    CHECK(mc.clauses()[0].literals[0].bound() == Rational(3));

    const Formula le = parse_formula("x1 <= 0");
    const Literal& l = le.clauses()[0].literals[0];
    CHECK(l.coeff(0) == Rational(-1));
    CHECK(l.relation() == Relation::Geq);
    CHECK(l.bound() == Rational(0));

    const Formula gt = parse_formula("2*x1 + 3*x2 > 1/2");
    const Literal& g = gt.clauses()[0].literals[0];
    CHECK(g.coeffs().size() == 2);
    CHECK(g.coeff(0) == Rational(2));
    CHECK(g.coeff(1) == Rational(3));
    CHECK(g.strict());
    CHECK(g.bound() == Rational(1, 2));
}

TEST_CASE("parse normalizes both-sided expressions and rejects bad input") {
    const Formula f = parse_formula("# comment\n\nx1 < x2 + 1   # trailing\n");
    const Literal& l = f.clauses()[0].literals[0];
    CHECK(l.coeff(0) == Rational(-1));
    CHECK(l.coeff(1) == Rational(1));
    CHECK(l.strict());
    CHECK(l.bound() == Rational(-1));

    CHECK_THROWS_AS(parse_formula("x1 = 0"), ParseError);
    CHECK_THROWS_AS(parse_formula("x1 >= 1/0"), ParseError);
    CHECK_THROWS_AS(parse_formula("x1 >= "), ParseError);
    CHECK_THROWS_AS(parse_formula("x1 >= 1 |"), ParseError);
    try {
        parse_formula("x1 >= 0\nx2 == 1\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 4);
    }
}

TEST_CASE("print-parse round trip") {
    gen::Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const Formula f = gen::random_horn(rng);
        const std::string once = print_formula(f);
        const Formula back = parse_formula(once);
        CHECK(print_formula(back) == once);
        CHECK(back == f);
    }
    const Formula named = parse_formula("vars: a b c\nc - b >= 1 | a > 0\n");
    CHECK(print_formula(parse_formula(print_formula(named))) == print_formula(named));
}

TEST_CASE("horn_columns examples") {
    const Formula mc = parse_formula("vars: x1 x2 x3\nx2 - x1 >= 3 | x3 - x1 >= 3");
    CHECK(horn_columns(mc.clauses()[0], 3) == std::vector<std::size_t>{0});
    const Formula one = parse_formula("vars: x1 x2 x3\nx1 >= 0");
    CHECK(horn_columns(one.clauses()[0], 3) == std::vector<std::size_t>{0, 1, 2});
    const Formula bad = parse_formula("-x1 + x2 >= 0 | x1 - x2 >= 0");
    CHECK(horn_columns(bad.clauses()[0], 2).empty());
    CHECK_FALSE(is_horn(bad));
}

TEST_CASE("restricted Horn examples") {
    CHECK_FALSE(is_restricted_horn(parse_formula("x1 < x2 | x1 < x3")));
    CHECK(is_horn(parse_formula("x1 < x2 | x1 < x3")));
    const Formula f = parse_formula("x1 >= 1 | x2 >= 1\nx1 <= 0\n");
    const auto report = restricted_horn_report(f);
    REQUIRE(report.restricted);
    REQUIRE(report.witnesses.size() == 2);
    CHECK_FALSE(report.witnesses[0].positive_literal.has_value());
    CHECK(report.witnesses[1].positive_literal == 0u);
    CHECK_FALSE(is_restricted_horn(parse_formula("x2 - x1 >= 3 | x3 - x1 >= 3")));
}

TEST_CASE("tropical convexity examples") {
    CHECK(is_tropically_convex_syntactic(parse_formula("x - 1/2*y - 1/2*z <= 0")));
    CHECK(is_tropically_convex_syntactic(parse_formula("x2 - x1 >= 3 | x3 - x1 >= 3")));
    CHECK_FALSE(is_tropically_convex_syntactic(parse_formula("x1 >= 1")));
    CHECK_FALSE(is_tropically_convex_syntactic(parse_formula("-x1 + x2 + x3 >= 0")));
}

TEST_CASE("semantic max-closure examples") {
    CHECK(is_max_closed_semantic(parse_formula("x2 - x1 >= 3 | x3 - x1 >= 3")));
    CHECK(is_max_closed_semantic(parse_formula("-x1 + x2 + x3 >= 0")));
    CHECK_FALSE(is_max_closed_semantic(parse_formula("x1 <= 0 | x2 <= 0")));
    // The pair from the counterexample: both satisfy, their max does not.
    const Formula f = parse_formula("x1 <= 0 | x2 <= 0");
    CHECK(eval_point(f, q({0, 1})));
    CHECK(eval_point(f, q({1, 0})));
    CHECK_FALSE(eval_point(f, pointwise_max(q({0, 1}), q({1, 0}))));
    // Not Horn but max-closed: the set is all of Q.
    CHECK(is_max_closed_semantic(parse_formula("x1 - x2 >= 0 | x2 - x1 >= 0")));
    CHECK_FALSE(is_max_closed_semantic(parse_formula("x1 - x2 > 0 | x2 - x1 > 0")));
    CHECK_THROWS_AS(is_max_closed_semantic(parse_formula("x1+x2+x3+x4+x5+x6+x7 >= 0")), PreconditionError);
}

TEST_CASE("point evaluation and translation") {
    const Formula m0 = parse_formula("x1 <= x2 | x1 <= x3");
    CHECK(eval_point(m0, q({0, 1, -5})));
    CHECK_FALSE(eval_point(m0, q({0, -1, -5})));
    CHECK(shift_point(q({0, 1, -5}), Rational(7)) == q({7, 8, 2}));
    CHECK_THROWS_AS(eval_point(m0, q({0, 1})), DimensionMismatch);
}

TEST_CASE("property: tropical formulas are translation invariant on satisfying points") {
    gen::Rng rng(21);
    int checked = 0;
    for (int i = 0; i < 60; ++i) {
        const std::size_t n = static_cast<std::size_t>(gen::uniform_int(rng, 2, 4));
        Formula f(default_var_names(n));
        const int m = gen::uniform_int(rng, 1, 4);
        for (int c = 0; c < m; ++c) f.add_clause(gen::random_tropical_clause(rng, n, 3, 3, 3));
        REQUIRE(is_tropically_convex_syntactic(f));
        for (const auto& x : sample_points(f, 4)) {
            REQUIRE(eval_point(f, x));
            const Rational c = gen::small_rational(rng, 9, 5);
            CHECK(eval_point(f, shift_point(x, c)));
            ++checked;
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("property: Horn formulas are closed under max of satisfying points") {
    gen::Rng rng(22);
    int pairs = 0;
    for (int i = 0; i < 80; ++i) {
        const Formula f = gen::random_horn(rng);
        const auto pts = sample_points(f, 6);
        for (std::size_t a = 0; a < pts.size(); ++a)
            for (std::size_t b = a + 1; b < pts.size(); ++b) {
                CHECK(eval_point(f, pointwise_max(pts[a], pts[b])));
                ++pairs;
            }
    }
    CHECK(pairs > 100);
}

TEST_CASE("property: classifier soundness") {
    gen::Rng rng(23);
    for (int i = 0; i < 300; ++i) {
        gen::HornShape shape;
        shape.max_vars = 4;
        const Formula f = gen::coin(rng) ? gen::random_horn(rng, shape) : gen::random_restricted_horn(rng, shape);
        CHECK(is_horn(f));
        if (is_restricted_horn(f)) CHECK(is_horn(f));
        if (is_tropically_convex_syntactic(f))
            for (const auto& c : f.clauses()) CHECK_FALSE(horn_columns(c, f.num_vars()).empty());
    }
}

TEST_CASE("property: random Horn formulas pass the semantic check") {
    gen::Rng rng(24);
    gen::HornShape shape;
    shape.max_vars = 3;
    shape.max_clauses = 4;
    for (int i = 0; i < 40; ++i) CHECK(is_max_closed_semantic(gen::random_horn(rng, shape)));
}
