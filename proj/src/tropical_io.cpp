#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "tropisolve/tropical.hpp"

namespace tropisolve {

namespace {

class Cursor {
public:
    Cursor(std::string_view line, std::size_t line_no) : s_(line), line_no_(line_no) {}

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool at_end() {
        skip_ws();
        return i_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    bool accept(std::string_view tok) {
        skip_ws();
        if (s_.substr(i_, tok.size()) != tok) return false;
        i_ += tok.size();
        return true;
    }
    void expect(std::string_view tok) {
        if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
    }
    std::string ident() {
        skip_ws();
        const std::size_t start = i_;
        if (i_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
            ++i_;
            while (i_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '#'))
                ++i_;
        }
        if (start == i_) fail("expected an identifier");
        return std::string(s_.substr(start, i_ - start));
    }
    bool at_digit() {
        skip_ws();
        return i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]));
    }
    /// Unsigned `p` or `p/q`.
    Rational rational() {
        skip_ws();
        const std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_) fail("expected a number");
        if (i_ < s_.size() && s_[i_] == '/') {
            ++i_;
            const std::size_t d = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (d == i_) fail("malformed rational: expected a denominator");
        }
        try {
            return Rational::parse(s_.substr(start, i_ - start));
        } catch (const ParseError& e) {
            throw ParseError(std::string("malformed rational: ") + e.what(), line_no_, start + 1);
        }
    }
    /// Zero or more `+ term` / `- term` with term = q | eps | q*eps.
    EpsNum offset() {
        EpsNum out;
        for (;;) {
            int sign = 0;
            if (accept("+"))
                sign = 1;
            else if (accept("-"))
                sign = -1;
            else
                return out;
            if (accept("eps")) {
                out += Rational(sign) * EpsNum::epsilon();
                continue;
            }
            Rational q = rational();
            if (accept("*")) {
                expect("eps");
                out += Rational(sign) * EpsNum(Rational(0), q);
            } else {
                out += EpsNum(Rational(sign) * q);
            }
        }
    }
    [[noreturn]] void fail(const std::string& what) {
        skip_ws();
        throw ParseError(what, line_no_, i_ + 1);
    }
    std::size_t pos() const { return i_ + 1; }

private:
    std::string_view s_;
    std::size_t line_no_;
    std::size_t i_ = 0;
};

struct Line {
    std::string_view text;
    std::size_t no;
};

std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        ++no;
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (auto h = line.find('#'); h != std::string_view::npos) {
            // '#' is also legal inside generated names such as x#1; a comment
            // starts at a '#' that does not follow an identifier character.
            std::size_t p = h;
            while (p != std::string_view::npos && p > 0 &&
                   (std::isalnum(static_cast<unsigned char>(line[p - 1])) || line[p - 1] == '_'))
                p = line.find('#', p + 1);
            if (p != std::string_view::npos) line = line.substr(0, p);
        }
        if (std::all_of(line.begin(), line.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }))
            continue;
        out.push_back({line, no});
    }
    return out;
}

std::string offset_suffix(const EpsNum& k) {
    std::string out;
    if (!k.real().is_zero()) out += (k.real().sign() < 0 ? " - " : " + ") + k.real().abs().to_string();
    if (!k.eps().is_zero()) {
        out += k.eps().sign() < 0 ? " - " : " + ";
        if (k.eps().abs() != Rational(1)) out += k.eps().abs().to_string() + "*";
        out += "eps";
    }
    return out;
}

}  // namespace

OperatorSystem parse_operator_system(std::string_view text) {
    const auto lines = content_lines(text);
    OperatorSystem o;
    std::map<std::string, std::size_t, std::less<>> index;
    for (const auto& l : lines) {
        Cursor c(l.text, l.no);
        const std::size_t col = c.pos();
        std::string name = c.ident();
        if (index.count(name)) throw ParseError("component '" + name + "' defined twice", l.no, col);
        index.emplace(name, o.names.size());
        o.names.push_back(std::move(name));
    }
    auto lookup = [&](Cursor& c, std::size_t line_no) {
        const std::size_t col = c.pos();
        c.skip_ws();
        const std::size_t at = c.pos();
        std::string name = c.ident();
        auto it = index.find(name);
        if (it == index.end())
            throw ParseError("variable '" + name + "' has no defining line", line_no, std::max(col, at));
        return it->second;
    };
    for (const auto& l : lines) {
        Cursor c(l.text, l.no);
        c.ident();
        c.expect(":=");
        Operator op;
        if (c.accept("avg")) {
            op.kind = Operator::Kind::Avg;
            c.expect("(");
            do {
                Rational w = c.rational();
                if (w.is_zero()) c.fail("average weights must be positive");
                c.expect(":");
                op.args.push_back({lookup(c, l.no), EpsNum(), w});
            } while (c.accept(","));
            c.expect(")");
            op.offset = c.offset();
        } else {
            if (c.accept("max"))
                op.kind = Operator::Kind::Max;
            else if (c.accept("min"))
                op.kind = Operator::Kind::Min;
            else
                c.fail("expected max, min or avg");
            c.expect("(");
            do {
                const std::size_t v = lookup(c, l.no);
                op.args.push_back({v, c.offset(), Rational(1)});
            } while (c.accept(","));
            c.expect(")");
        }
        if (!c.at_end()) c.fail("unexpected trailing input");
        o.ops.push_back(std::move(op));
    }
    return o;
}

std::string print_operator(const Operator& op, std::span<const std::string> names) {
    std::string out;
    switch (op.kind) {
        case Operator::Kind::Max: out = "max("; break;
        case Operator::Kind::Min: out = "min("; break;
        case Operator::Kind::Avg: out = "avg("; break;
    }
    for (std::size_t l = 0; l < op.args.size(); ++l) {
        if (l) out += ", ";
        const auto& a = op.args[l];
        if (op.kind == Operator::Kind::Avg)
            out += a.weight.to_string() + ": " + names[a.var];
        else
            out += names[a.var] + offset_suffix(a.offset);
    }
    out += ")";
    if (op.kind == Operator::Kind::Avg) out += offset_suffix(op.offset);
    return out;
}

std::string print_operator_system(const OperatorSystem& o) {
    std::string out;
    for (std::size_t i = 0; i < o.size(); ++i) out += o.names[i] + " := " + print_operator(o.ops[i], o.names) + "\n";
    return out;
}

std::size_t atom_arity(AtomKind k) { return k == AtomKind::S3 || k == AtomKind::M0 ? 3 : 2; }

std::string atom_name(AtomKind k) {
    switch (k) {
        case AtomKind::LT: return "LT";
        case AtomKind::TPlus1: return "T+1";
        case AtomKind::TMinus1: return "T-1";
        case AtomKind::S3: return "S3";
        case AtomKind::M0: return "M0";
    }
    return "?";
}

CspInstance parse_csp(std::string_view text) {
    CspInstance inst;
    std::map<std::string, std::size_t, std::less<>> index;
    for (const auto& l : content_lines(text)) {
        Cursor c(l.text, l.no);
        const std::size_t col = (c.skip_ws(), c.pos());
        AtomKind kind;
        if (c.accept("LT"))
            kind = AtomKind::LT;
        else if (c.accept("T+1"))
            kind = AtomKind::TPlus1;
        else if (c.accept("T-1"))
            kind = AtomKind::TMinus1;
        else if (c.accept("S3"))
            kind = AtomKind::S3;
        else if (c.accept("M0"))
            kind = AtomKind::M0;
        else
            throw ParseError("unknown atom kind", l.no, col);
        c.expect("(");
        CspAtom atom{kind, {}};
        do {
            std::string name = c.ident();
            auto [it, fresh] = index.emplace(name, inst.names.size());
            if (fresh) inst.names.push_back(std::move(name));
            atom.vars.push_back(it->second);
        } while (c.accept(","));
        c.expect(")");
        if (atom.vars.size() != atom_arity(kind))
            throw ParseError(atom_name(kind) + " takes " + std::to_string(atom_arity(kind)) + " arguments", l.no, col);
        if (!c.at_end()) c.fail("unexpected trailing input");
        inst.atoms.push_back(std::move(atom));
    }
    return inst;
}

std::string print_csp(const CspInstance& inst) {
    std::ostringstream os;
    for (const auto& a : inst.atoms) {
        os << atom_name(a.kind) << '(';
        for (std::size_t i = 0; i < a.vars.size(); ++i) os << (i ? "," : "") << inst.names[a.vars[i]];
        os << ")\n";
    }
    return os.str();
}

}  // namespace tropisolve
