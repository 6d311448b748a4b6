#include <algorithm>
#include <cctype>
#include <sstream>

#include "tropisolve/formula.hpp"

namespace tropisolve {

namespace {

enum class Tok { Num, Ident, Plus, Minus, Star, Slash, Rel, Bar, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t col;  // 1-based
};

class LineLexer {
public:
    LineLexer(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        std::size_t i = 0;
        while (i < line_.size()) {
            const char c = line_[i];
            const std::size_t col = i + 1;
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t j = i;
                while (j < line_.size() && std::isdigit(static_cast<unsigned char>(line_[j]))) ++j;
                out.push_back({Tok::Num, std::string(line_.substr(i, j - i)), col});
                i = j;
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t j = i;
                while (j < line_.size() &&
                       (std::isalnum(static_cast<unsigned char>(line_[j])) || line_[j] == '_'))
                    ++j;
                out.push_back({Tok::Ident, std::string(line_.substr(i, j - i)), col});
                i = j;
            } else if (c == '+') {
                out.push_back({Tok::Plus, "+", col});
                ++i;
            } else if (c == '-') {
                out.push_back({Tok::Minus, "-", col});
                ++i;
            } else if (c == '*') {
                out.push_back({Tok::Star, "*", col});
                ++i;
            } else if (c == '/') {
                out.push_back({Tok::Slash, "/", col});
                ++i;
            } else if (c == '|') {
                out.push_back({Tok::Bar, "|", col});
                ++i;
            } else if (c == '<' || c == '>' || c == '=' || c == '!') {
                std::size_t j = i;
                while (j < line_.size() && (line_[j] == '<' || line_[j] == '>' || line_[j] == '=' || line_[j] == '!'))
                    ++j;
                std::string sym(line_.substr(i, j - i));
                if (sym != ">=" && sym != "<=" && sym != ">" && sym != "<")
                    throw ParseError("unknown relation symbol '" + sym + "'", line_no_, col);
                out.push_back({Tok::Rel, sym, col});
                i = j;
            } else {
                throw ParseError(std::string("unexpected character '") + c + "'", line_no_, col);
            }
        }
        out.push_back({Tok::End, "", line_.size() + 1});
        return out;
    }

private:
    std::string_view line_;
    std::size_t line_no_;
};

struct Affine {
    std::map<std::size_t, Rational> coeffs;
    Rational constant;
};

class LineParser {
public:
    LineParser(std::vector<Token> toks, std::size_t line_no, Formula& f)
        : toks_(std::move(toks)), line_no_(line_no), f_(f) {}

    Clause clause() {
        Clause c;
        c.literals.push_back(literal());
        while (peek().kind == Tok::Bar) {
            ++pos_;
            c.literals.push_back(literal());
        }
        if (peek().kind != Tok::End) fail("expected '|' or end of line");
        return c;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_no_, peek().col); }

    Literal literal() {
        Affine lhs = expr();
        if (peek().kind != Tok::Rel) fail("expected a relation (>=, >, <=, <)");
        const std::string rel = peek().text;
        ++pos_;
        Affine rhs = expr();
        // lhs - rhs (rel) 0
        std::map<std::size_t, Rational> coeffs = lhs.coeffs;
        for (const auto& [j, a] : rhs.coeffs) coeffs[j] -= a;
        Rational k = lhs.constant - rhs.constant;
        const bool flip = rel[0] == '<';
        const Relation r = rel.size() == 2 ? Relation::Geq : Relation::Gt;
        if (flip) {
            for (auto& [j, a] : coeffs) a = -a;
            return Literal(std::move(coeffs), r, k);
        }
        return Literal(std::move(coeffs), r, -k);
    }

    Affine expr() {
        Affine out;
        int sign = 1;
        if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            sign = peek().kind == Tok::Minus ? -1 : 1;
            ++pos_;
        }
        term(out, sign);
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            sign = peek().kind == Tok::Minus ? -1 : 1;
            ++pos_;
            term(out, sign);
        }
        return out;
    }

    void term(Affine& acc, int sign) {
        if (peek().kind == Tok::Ident) {
            acc.coeffs[f_.var(peek().text)] += Rational(sign);
            ++pos_;
            return;
        }
        if (peek().kind != Tok::Num) fail("expected a number or a variable");
        std::string num = peek().text;
        const std::size_t col = peek().col;
        ++pos_;
        if (peek().kind == Tok::Slash) {
            ++pos_;
            if (peek().kind != Tok::Num) fail("malformed rational: expected a denominator");
            num += "/" + peek().text;
            ++pos_;
        }
        Rational q;
        try {
            q = Rational::parse(num);
        } catch (const ParseError& e) {
            throw ParseError(std::string("malformed rational: ") + e.what(), line_no_, col);
        }
        q *= Rational(sign);
        if (peek().kind == Tok::Star) {
            ++pos_;
            if (peek().kind != Tok::Ident) fail("expected a variable after '*'");
            acc.coeffs[f_.var(peek().text)] += q;
            ++pos_;
            return;
        }
        acc.constant += q;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t line_no_;
    Formula& f_;
};

std::string_view strip_comment(std::string_view line) {
    const auto hash = line.find('#');
    return hash == std::string_view::npos ? line : line.substr(0, hash);
}

bool blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

std::string_view ltrim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    return s;
}

}  // namespace

Formula parse_formula(std::string_view text) {
    Formula f;
    std::size_t line_no = 0;
    bool seen_clause = false;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        ++line_no;
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        line = strip_comment(line);
        if (blank(line)) continue;
        const std::string_view body = ltrim(line);
        if (body.substr(0, 5) == "vars:") {
            if (seen_clause || f.num_vars() > 0)
                throw ParseError("'vars:' must precede all clauses", line_no, line.size() - body.size() + 1);
            auto toks = LineLexer(body.substr(5), line_no).run();
            for (const auto& t : toks) {
                if (t.kind == Tok::End) break;
                if (t.kind != Tok::Ident) throw ParseError("expected a variable name", line_no, t.col + 5);
                if (f.find_var(t.text)) throw ParseError("duplicate variable '" + t.text + "'", line_no, t.col + 5);
                f.var(t.text);
            }
            continue;
        }
        LineParser p(LineLexer(line, line_no).run(), line_no, f);
        f.add_clause(p.clause());
        seen_clause = true;
    }
    return f;
}

std::string print_literal(const Literal& lit, std::span<const std::string> names) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [j, a] : lit.coeffs()) {
        const Rational mag = a.abs();
        if (first) {
            if (a.sign() < 0) os << '-';
        } else {
            os << (a.sign() < 0 ? " - " : " + ");
        }
        if (mag != Rational(1)) os << mag << '*';
        os << names[j];
        first = false;
    }
    if (first) os << '0';
    os << (lit.strict() ? " > " : " >= ") << lit.bound();
    return os.str();
}

std::string print_clause(const Clause& clause, std::span<const std::string> names) {
    if (clause.literals.empty()) return "FALSE";
    std::string out;
    for (std::size_t i = 0; i < clause.literals.size(); ++i) {
        if (i) out += " | ";
        out += print_literal(clause.literals[i], names);
    }
    return out;
}

std::string print_formula(const Formula& f) {
    // Variables are indexed by first occurrence on parse; declare them
    // explicitly when the printed text would not reproduce that order.
    std::vector<std::size_t> order;
    std::vector<bool> seen(f.num_vars(), false);
    for (const auto& c : f.clauses())
        for (const auto& l : c.literals)
            for (const auto& [j, a] : l.coeffs())
                if (!seen[j]) {
                    seen[j] = true;
                    order.push_back(j);
                }
    bool need_decl = order.size() != f.num_vars();
    for (std::size_t i = 0; !need_decl && i < order.size(); ++i) need_decl = order[i] != i;

    std::string out;
    if (need_decl) {
        out += "vars:";
        for (const auto& n : f.var_names()) out += " " + n;
        out += "\n";
    }
    for (const auto& c : f.clauses()) out += print_clause(c, f.var_names()) + "\n";
    return out;
}

}  // namespace tropisolve
