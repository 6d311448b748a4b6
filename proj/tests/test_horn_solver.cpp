#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "tropisolve/generators.hpp"
#include "tropisolve/horn_solver.hpp"

using namespace tropisolve;

TEST_CASE("solve_restricted examples") {
    const Formula f = parse_formula("x1 >= 1 | x2 >= 1\nx1 <= 0\n");
    const auto r = solve_restricted(f);
    REQUIRE(r.sat);
    CHECK(verify_witness(f, r.witness));
    CHECK(r.witness == std::vector<Rational>{Rational(-1), Rational(2)});
    REQUIRE(r.trace.removed.size() == 1);
    CHECK(r.trace.removed[0].clause == 0);
    CHECK(r.trace.removed[0].literal == 0);
    CHECK(r.trace.removed[0].pass == 1);
    CHECK(r.trace.psi.size() == 2);  // x1 <= 0 and the surviving x2 >= 1

    const Formula g = parse_formula("x1 <= 0\nx2 <= 0\nx1 >= 1 | x2 >= 1\n");
    const auto u = solve_restricted(g);
    CHECK_FALSE(u.sat);
    CHECK(u.trace.removed.size() == 2);
    CHECK(u.trace.emptied_clause == 2u);

    const auto e = solve_restricted(Formula(default_var_names(3)));
    REQUIRE(e.sat);
    CHECK(e.witness == std::vector<Rational>(3, Rational(0)));

    CHECK_THROWS_AS(solve_restricted(parse_formula("x2 - x1 >= 3 | x3 - x1 >= 3")), PreconditionError);
}

TEST_CASE("brute_force_sat examples") {
    const Formula cyc = parse_formula(
        "x2 - x1 >= 1 | x3 - x1 >= 1\n"
        "x3 - x2 >= 1 | x1 - x2 >= 1\n"
        "x1 - x3 >= 1 | x2 - x3 >= 1\n");
    CHECK_FALSE(brute_force_sat(cyc).sat);

    const Formula one = parse_formula("x1 >= 0 | x1 >= 5");
    const auto r = brute_force_sat(one);
    REQUIRE(r.sat);
    CHECK(verify_witness(one, r.witness));

    CHECK_FALSE(brute_force_sat(parse_formula("x < y\ny < x\n")).sat);

    Budget tiny;
    tiny.selections = 4;
    CHECK_THROWS_AS(brute_force_sat(cyc, tiny), BudgetExceeded);
}

TEST_CASE("verify_witness examples") {
    const Formula mc = parse_formula("vars: x1 x2 x3\nx2 - x1 >= 3 | x3 - x1 >= 3");
    CHECK(verify_witness(mc, std::vector<Rational>{0, 3, 0}));
    CHECK_FALSE(verify_witness(mc, std::vector<Rational>{0, 2, 2}));
    CHECK(verify_witness(Formula(default_var_names(2)), std::vector<Rational>{5, 7}));
}

TEST_CASE("strict literals are honored exactly") {
    // x > 0 forces the witness off the boundary; x < 1/1000 keeps it tight.
    const Formula f = parse_formula("x > 0\nx < 1/1000 | y >= 2\ny <= 1\n");
    const auto r = solve_restricted(f);
    REQUIRE(r.sat);
    CHECK(verify_witness(f, r.witness));
    CHECK_FALSE(solve_restricted(parse_formula("x > 0\nx <= 0 | y > 0\ny <= 0\n")).sat);
}

TEST_CASE("property: oracle agreement and trace invariants") {
    gen::Rng rng(404);
    int sat = 0;
    for (int i = 0; i < 300; ++i) {
        const Formula f = gen::random_restricted_horn(rng);
        REQUIRE(is_restricted_horn(f));
        const auto fast = solve_restricted(f);
        const auto slow = brute_force_sat(f);
        REQUIRE(fast.sat == slow.sat);
        if (fast.sat) {
            ++sat;
            CHECK(verify_witness(f, fast.witness));
            CHECK(verify_witness(f, slow.witness));
        }
        // Each literal is removed at most once, passes never decrease, and the
        // loop runs at most one pass per literal plus the final quiet pass.
        std::size_t literals = 0;
        for (const auto& c : f.clauses()) literals += c.literals.size();
        std::set<std::pair<std::size_t, std::size_t>> seen;
        std::size_t last_pass = 0;
        for (const auto& r : fast.trace.removed) {
            CHECK(seen.insert({r.clause, r.literal}).second);
            CHECK(r.pass >= last_pass);
            last_pass = r.pass;
        }
        CHECK(fast.trace.removed.size() <= literals);
        CHECK(fast.trace.passes <= literals + 1);
    }
    CHECK(sat > 30);
    CHECK(sat < 290);
}

TEST_CASE("property: the witness dominates each single-literal solution") {
    // Surviving negative literals are satisfiable with the unit part; the
    // returned point is their max, so it still satisfies every one of them.
    gen::Rng rng(405);
    for (int i = 0; i < 200; ++i) {
        const Formula f = gen::random_restricted_horn(rng);
        const auto r = solve_restricted(f);
        if (!r.sat) continue;
        std::set<std::pair<std::size_t, std::size_t>> removed;
        for (const auto& x : r.trace.removed) removed.insert({x.clause, x.literal});
        const auto report = restricted_horn_report(f);
        for (std::size_t c = 0; c < f.clauses().size(); ++c) {
            const auto& clause = f.clauses()[c];
            if (clause.literals.size() - std::count_if(removed.begin(), removed.end(),
                                                       [&](const auto& p) { return p.first == c; }) <= 1)
                continue;
            for (std::size_t l = 0; l < clause.literals.size(); ++l) {
                if (removed.count({c, l}) || report.witnesses[c].positive_literal == l) continue;
                CHECK(clause.literals[l].eval(r.witness));
            }
        }
    }
}
