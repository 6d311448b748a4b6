#include <catch_amalgamated.hpp>

#include "tropisolve/generators.hpp"
#include "tropisolve/lp.hpp"

using namespace tropisolve;

TEST_CASE("generators are deterministic by seed") {
    gen::Rng a(5), b(5);
    for (int i = 0; i < 20; ++i) {
        CHECK(gen::random_horn(a) == gen::random_horn(b));
        CHECK(gen::random_operator_system(a) == gen::random_operator_system(b));
        CHECK(gen::random_csp(a) == gen::random_csp(b));
        CHECK(gen::random_game(a) == gen::random_game(b));
    }
}

TEST_CASE("generated instances respect their shapes") {
    gen::Rng rng(6);
    gen::HornShape shape;
    for (int i = 0; i < 100; ++i) {
        const Formula f = gen::random_restricted_horn(rng, shape);
        CHECK(f.num_vars() <= shape.max_vars);
        CHECK(f.clauses().size() <= shape.max_clauses);
        CHECK(is_restricted_horn(f));
        for (const auto& c : f.clauses()) {
            CHECK(c.literals.size() <= shape.max_literals);
            for (const auto& l : c.literals) CHECK(l.bound().abs() <= Rational(shape.const_bound));
        }
        const Clause t = gen::random_tropical_clause(rng, 3, 3, 3, 3);
        for (const auto& l : t.literals) {
            Rational sum;
            for (const auto& [j, a] : l.coeffs()) sum += a;
            CHECK(sum.is_zero());
        }
        const auto o = gen::random_operator_system(rng);
        CHECK_NOTHROW(o.validate());
        CHECK_FALSE(o.has_eps());
        CHECK_NOTHROW(gen::random_game(rng).validate());
        const Rational r = gen::small_rational(rng, 5, 4);
        CHECK(r.abs() <= Rational(5));
    }
}

TEST_CASE("crafted 0+ witnesses satisfy their formulas for small t") {
    gen::Rng rng(7);
    for (std::size_t i = 0; i < 25; ++i) {
        const auto z = gen::crafted_zero_plus(rng, true, i);
        CHECK(z.expected);
        REQUIRE(z.known_witness.size() == z.formula.num_vars());
        CHECK(z.known_witness[z.t_index] == EpsNum::epsilon());
        for (const Rational& t : {Rational(1, 100), Rational(1, 10000)})
            CHECK(eval_point(z.formula, instantiate(z.known_witness, t)));
        const auto u = gen::crafted_zero_plus(rng, false, i);
        CHECK_FALSE(u.expected);
        CHECK(u.family != z.family);
    }
}

TEST_CASE("max_atoms_formula shape") {
    const Formula f = gen::max_atoms_formula(Rational(3));
    CHECK(f.var_names() == std::vector<std::string>{"x1", "x2", "x3"});
    REQUIRE(f.clauses().size() == 1);
    CHECK(f.clauses()[0].literals.size() == 2);
    CHECK(is_horn(f));
    CHECK_FALSE(is_restricted_horn(f));
}
