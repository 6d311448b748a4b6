#pragma once

// Exact number systems: rationals, the lexicographic plane Q + Q*eps, and
// values extended by +infinity.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include "tropisolve/error.hpp"

namespace tropisolve {

/// Arbitrary-precision rational, always in canonical form
/// (positive denominator, coprime numerator and denominator).
class Rational {
public:
    Rational() = default;
    Rational(int n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(long long n);       // NOLINT(google-explicit-constructor)
    Rational(long long num, long long den);
    explicit Rational(mpq_class v);

    /// Accepts `p`, `-p`, `p/q` (q != 0; the result is normalized).
    static Rational parse(std::string_view text);

    const mpq_class& get() const noexcept { return v_; }

    int sign() const noexcept { return sgn(v_); }
    bool is_zero() const noexcept { return sign() == 0; }
    bool is_integer() const noexcept;
    Rational abs() const { return Rational(mpq_class(::abs(v_))); }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }
    double to_double() const { return v_.get_d(); }

    std::string to_string() const { return v_.get_str(); }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// Element a + b*eps of the ordered Q-vector space V, with 0 < eps << 1.
/// Ordered lexicographically on (real, eps).
class EpsNum {
public:
    EpsNum() = default;
    EpsNum(Rational real) : real_(std::move(real)) {}  // NOLINT(google-explicit-constructor)
    EpsNum(int real) : real_(real) {}                  // NOLINT(google-explicit-constructor)
    EpsNum(Rational real, Rational eps) : real_(std::move(real)), eps_(std::move(eps)) {}

    static EpsNum epsilon() { return {Rational(0), Rational(1)}; }

    /// Accepts `a + b*eps`; either term may be omitted (`eps`, `-1/2*eps`, `3`).
    static EpsNum parse(std::string_view text);

    const Rational& real() const noexcept { return real_; }
    const Rational& eps() const noexcept { return eps_; }
    bool is_rational() const noexcept { return eps_.is_zero(); }
    int sign() const noexcept { return real_.sign() != 0 ? real_.sign() : eps_.sign(); }

    /// Value at a concrete positive eps = t.
    Rational at(const Rational& t) const { return real_ + eps_ * t; }

    std::string to_string() const;

    friend EpsNum operator+(const EpsNum& x, const EpsNum& y) { return {x.real_ + y.real_, x.eps_ + y.eps_}; }
    friend EpsNum operator-(const EpsNum& x, const EpsNum& y) { return {x.real_ - y.real_, x.eps_ - y.eps_}; }
    friend EpsNum operator*(const Rational& r, const EpsNum& x) { return {r * x.real_, r * x.eps_}; }
    EpsNum operator-() const { return {-real_, -eps_}; }
    EpsNum& operator+=(const EpsNum& o) { real_ += o.real_; eps_ += o.eps_; return *this; }
    EpsNum& operator-=(const EpsNum& o) { real_ -= o.real_; eps_ -= o.eps_; return *this; }

    friend bool operator==(const EpsNum&, const EpsNum&) = default;
    friend std::strong_ordering operator<=>(const EpsNum& x, const EpsNum& y) {
        if (auto c = x.real_ <=> y.real_; c != 0) return c;
        return x.eps_ <=> y.eps_;
    }

private:
    Rational real_;
    Rational eps_;
};

std::ostream& operator<<(std::ostream& os, const EpsNum& x);

enum class Ordering { less, equal, greater };

Ordering eps_compare(const EpsNum& x, const EpsNum& y);

/// T extended by +infinity (no -infinity). Finite values compare through T;
/// every finite value is below +infinity.
template <class T>
class Extended {
public:
    Extended() : value_(T{}) {}
    Extended(T v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

    static Extended pos_inf() {
        Extended e;
        e.value_.reset();
        return e;
    }

    bool is_inf() const noexcept { return !value_.has_value(); }
    bool is_finite() const noexcept { return value_.has_value(); }
    const T& value() const { return *value_; }

    /// +inf absorbs any finite summand.
    friend Extended operator+(const Extended& x, const T& k) {
        if (x.is_inf()) return x;
        return Extended(*x.value_ + k);
    }

    friend bool operator==(const Extended&, const Extended&) = default;
    friend std::strong_ordering operator<=>(const Extended& x, const Extended& y) {
        if (x.is_inf() || y.is_inf()) {
            if (x.is_inf() && y.is_inf()) return std::strong_ordering::equal;
            return x.is_inf() ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        return *x.value_ <=> *y.value_;
    }

    std::string to_string() const { return is_inf() ? std::string("+inf") : value_->to_string(); }

private:
    std::optional<T> value_;
};

/// Scaling by a positive rational keeps +inf.
template <class T>
Extended<T> scale(const Rational& r, const Extended<T>& x) {
    if (x.is_inf()) return x;
    return Extended<T>(r * x.value());
}

using ExtVal = Extended<Rational>;
using ExtEps = Extended<EpsNum>;

/// x > y with the stipulation +inf > +inf.
template <class T>
bool ext_strict_gt(const Extended<T>& x, const Extended<T>& y) {
    if (x.is_inf()) return true;
    if (y.is_inf()) return false;
    return x.value() > y.value();
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Extended<T>& x) {
    return os << x.to_string();
}

}  // namespace tropisolve

template <>
struct std::hash<tropisolve::Rational> {
    std::size_t operator()(const tropisolve::Rational& r) const noexcept {
        const auto h1 = mpz_get_ui(r.get().get_num_mpz_t());
        const auto h2 = mpz_get_ui(r.get().get_den_mpz_t());
        return std::hash<unsigned long>{}(h1) ^ (std::hash<unsigned long>{}(h2) * 31u) ^
               static_cast<std::size_t>(r.sign());
    }
};
