#include "tropisolve/numeric.hpp"

#include <cctype>
#include <string>

#include "tropisolve/budget.hpp"

namespace tropisolve {

static_assert(sizeof(long) == sizeof(long long), "64-bit long expected");

Rational::Rational(long long n) : v_(static_cast<long>(n)) {}

Rational::Rational(long long num, long long den) {
    if (den == 0) throw DivisionByZero();
    v_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

bool Rational::is_integer() const noexcept { return v_.get_den() == 1; }

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    std::string_view s = trim(text);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    const auto slash = s.find('/');
    const std::string_view num = s.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw ParseError("malformed rational '" + std::string(text) + "'", 0, 0);
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw ParseError("malformed rational '" + std::string(text) + "': zero denominator", 0, 0);
    if (negative) n = -n;
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(std::move(q));
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw DivisionByZero();
    return Rational(mpq_class(a.v_ / b.v_));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero();
    v_ /= o.v_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::string EpsNum::to_string() const {
    if (eps_.is_zero()) return real_.to_string();
    std::string eps_term;
    const Rational mag = eps_.abs();
    eps_term = mag == Rational(1) ? std::string("eps") : mag.to_string() + "*eps";
    if (real_.is_zero()) return (eps_.sign() < 0 ? "-" : "") + eps_term;
    return real_.to_string() + (eps_.sign() < 0 ? " - " : " + ") + eps_term;
}

EpsNum EpsNum::parse(std::string_view text) {
    // Sum of signed terms, each `q`, `eps`, or `q*eps`.
    Rational real;
    Rational eps;
    std::string_view s = trim(text);
    if (s.empty()) throw ParseError("empty value", 0, 0);
    std::size_t i = 0;
    bool first = true;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        int sign = 1;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw ParseError("expected '+' or '-' in '" + std::string(text) + "'", 0, 0);
        }
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string_view term = trim(s.substr(i, j - i));
        if (term.empty()) throw ParseError("missing term in '" + std::string(text) + "'", 0, 0);
        Rational coeff(sign);
        bool is_eps = false;
        if (term == "eps") {
            is_eps = true;
        } else if (term.size() > 3 && term.substr(term.size() - 3) == "eps") {
            std::string_view head = trim(term.substr(0, term.size() - 3));
            if (head.empty() || head.back() != '*')
                throw ParseError("malformed eps term '" + std::string(term) + "'", 0, 0);
            head.remove_suffix(1);
            coeff = coeff * Rational::parse(head);
            is_eps = true;
        } else {
            coeff = coeff * Rational::parse(term);
        }
        (is_eps ? eps : real) += coeff;
        first = false;
        i = j;
    }
    return {real, eps};
}

std::ostream& operator<<(std::ostream& os, const EpsNum& x) { return os << x.to_string(); }

Ordering eps_compare(const EpsNum& x, const EpsNum& y) {
    const auto c = x <=> y;
    if (c < 0) return Ordering::less;
    if (c > 0) return Ordering::greater;
    return Ordering::equal;
}

Budget parse_budget(const std::string& text, Budget base) {
    auto to_count = [&](const std::string& v) -> std::uint64_t {
        if (!all_digits(v)) throw ParseError("malformed budget '" + text + "'", 0, 0);
        const auto n = std::stoull(v);
        if (n == 0) throw ParseError("budgets must be positive", 0, 0);
        return n;
    };
    const std::string s(trim(text));
    if (s.find('=') == std::string::npos) {
        const auto n = to_count(s);
        base.selections = base.patterns = base.strategy_pairs = n;
        return base;
    }
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto comma = s.find(',', pos);
        const std::string item(trim(std::string_view(s).substr(pos, comma - pos)));
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("malformed budget item '" + item + "'", 0, 0);
        const std::string key(trim(std::string_view(item).substr(0, eq)));
        const auto n = to_count(std::string(trim(std::string_view(item).substr(eq + 1))));
        if (key == "selection" || key == "selections") base.selections = n;
        else if (key == "pattern" || key == "patterns") base.patterns = n;
        else if (key == "strategy" || key == "strategies") base.strategy_pairs = n;
        else throw ParseError("unknown budget key '" + key + "'", 0, 0);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return base;
}

}  // namespace tropisolve
