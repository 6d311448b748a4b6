#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "tropisolve/numeric.hpp"

using namespace tropisolve;

namespace {

// Reference fraction on 128-bit integers; enough for the small operands below.
struct Frac {
    __int128 n;
    __int128 d;
};

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Frac make(__int128 n, __int128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const __int128 g = gcd128(n, d);
    return g == 0 ? Frac{0, 1} : Frac{n / g, d / g};
}

Frac add(Frac a, Frac b) { return make(a.n * b.d + b.n * a.d, a.d * b.d); }
Frac sub(Frac a, Frac b) { return make(a.n * b.d - b.n * a.d, a.d * b.d); }
Frac mul(Frac a, Frac b) { return make(a.n * b.n, a.d * b.d); }
Frac div(Frac a, Frac b) { return make(a.n * b.d, a.d * b.n); }

bool same(const Rational& r, Frac f) {
    return r == Rational(static_cast<long long>(f.n), static_cast<long long>(f.d));
}

}  // namespace

TEST_CASE("rational arithmetic examples") {
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(6, -4).denominator() == 2);
    CHECK(Rational::parse("-10/4") == Rational(-5, 2));
    CHECK(Rational::parse("7").is_integer());
    CHECK_THROWS_AS(Rational(1) / Rational(0), DivisionByZero);
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Rational::parse("abc"), ParseError);
    CHECK_THROWS_AS(Rational(1, 0), DivisionByZero);
}

TEST_CASE("rational arithmetic matches a 128-bit reference") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> num(-1000, 1000);
    std::uniform_int_distribution<long long> den(1, 1000);
    for (int i = 0; i < 2000; ++i) {
        const long long an = num(rng), ad = den(rng), bn = num(rng), bd = den(rng);
        const Rational a(an, ad), b(bn, bd);
        const Frac fa = make(an, ad), fb = make(bn, bd);
        CHECK(same(a + b, add(fa, fb)));
        CHECK(same(a - b, sub(fa, fb)));
        CHECK(same(a * b, mul(fa, fb)));
        if (bn != 0) CHECK(same(a / b, div(fa, fb)));
        // Canonical form.
        CHECK(a.denominator() > 0);
        CHECK(gcd(a.numerator(), a.denominator()) == 1);
        // Order agrees with cross multiplication.
        const bool lt = static_cast<__int128>(an) * bd < static_cast<__int128>(bn) * ad;
        CHECK((a < b) == lt);
    }
}

TEST_CASE("eps_compare is lexicographic") {
    CHECK(eps_compare(EpsNum(0, 1), EpsNum(1, 0)) == Ordering::less);
    CHECK(eps_compare(EpsNum(3, -5), EpsNum(3, -5)) == Ordering::equal);
    CHECK(eps_compare(EpsNum(Rational(1, 2), 100), EpsNum(Rational(1, 2), 99)) == Ordering::greater);
    CHECK(EpsNum() < EpsNum::epsilon());
    CHECK(EpsNum::epsilon() < EpsNum(Rational(1, 1000000)));
}

TEST_CASE("eps module operations") {
    CHECK(Rational(2) * EpsNum(1, Rational(-1, 2)) == EpsNum(2, -1));
    CHECK(EpsNum(1, 0) - EpsNum(0, 1) == EpsNum(1, -1));
    CHECK(EpsNum::parse("1/2 - 3*eps") == EpsNum(Rational(1, 2), -3));
    CHECK(EpsNum::parse("-eps") == EpsNum(0, -1));
    CHECK(EpsNum::parse("3") == EpsNum(3));
    CHECK(EpsNum(Rational(1, 2), -3).to_string() == "1/2 - 3*eps");
    CHECK(EpsNum::parse(EpsNum(Rational(-2, 3), Rational(5, 7)).to_string()) == EpsNum(Rational(-2, 3), Rational(5, 7)));
    CHECK(EpsNum(2, -1).at(Rational(1, 2)) == Rational(3, 2));
}

TEST_CASE("eps order is compatible with the module structure") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(-6, 6);
    std::uniform_int_distribution<int> pos(1, 6);
    for (int i = 0; i < 1000; ++i) {
        const EpsNum x(d(rng), d(rng)), y(d(rng), d(rng)), z(d(rng), d(rng));
        const Rational r(pos(rng), pos(rng));
        if (!(x < y)) continue;
        CHECK(r * x < r * y);
        CHECK(x + z < y + z);
        // Small concrete eps preserves strict order.
        CHECK(x.at(Rational(1, 100)) < y.at(Rational(1, 100)));
    }
}

TEST_CASE("extended values and the +inf > +inf stipulation") {
    const ExtVal inf = ExtVal::pos_inf();
    CHECK(ext_strict_gt(inf, inf));
    CHECK_FALSE(ext_strict_gt(ExtVal(Rational(0)), ExtVal(Rational(0))));
    CHECK(ext_strict_gt(inf, ExtVal(Rational(1000000000))));
    CHECK_FALSE(ext_strict_gt(ExtVal(Rational(5)), inf));
    CHECK(ExtVal(Rational(5)) < inf);
    CHECK((inf + Rational(-3)).is_inf());
    CHECK(scale(Rational(1, 2), inf).is_inf());
    CHECK(scale(Rational(1, 2), ExtVal(Rational(4))) == ExtVal(Rational(2)));
    for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b) CHECK((ExtVal(Rational(a)) <= ExtVal(Rational(b))) == (a <= b));
}
