#include "tropisolve/ppcompile.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include <json.hpp>

#include "tropisolve/lp.hpp"

namespace tropisolve {

std::string pp_rel_name(PPRel r) {
    switch (r) {
        case PPRel::Lt: return "Lt";
        case PPRel::One: return "One";
        case PPRel::NegOne: return "NegOne";
        case PPRel::S1: return "S1";
        case PPRel::S2: return "S2";
        case PPRel::M0: return "M0";
        case PPRel::TPlus: return "T+1";
        case PPRel::TMinus: return "T-1";
        case PPRel::S3: return "S3";
    }
    return "?";
}

std::size_t pp_rel_arity(PPRel r) {
    switch (r) {
        case PPRel::One:
        case PPRel::NegOne: return 1;
        case PPRel::S2:
        case PPRel::M0:
        case PPRel::S3: return 3;
        default: return 2;
    }
}

namespace {

constexpr PPRel kAllRels[] = {PPRel::Lt, PPRel::One,   PPRel::NegOne, PPRel::S1, PPRel::S2,
                              PPRel::M0, PPRel::TPlus, PPRel::TMinus, PPRel::S3};

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

std::string atom_text(const PPAtom& a) { return pp_rel_name(a.rel) + "(" + join(a.args, ",") + ")"; }

}  // namespace

std::string print_pp(const PPFormula& pp) {
    std::string out;
    if (!pp.constants.empty()) out += "CONST " + join(pp.constants, " ") + "\n";
    if (!pp.bound_vars.empty()) out += "EXISTS " + join(pp.bound_vars, " ") + " . ";
    if (pp.atoms.empty()) {
        out += "TRUE";
    } else {
        std::vector<std::string> parts;
        for (const auto& a : pp.atoms) parts.push_back(atom_text(a));
        out += join(parts, " & ");
    }
    return out + "\n";
}

std::string pp_to_json(const PPFormula& pp, int indent) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const auto& a : pp.atoms) atoms.push_back({{"rel", pp_rel_name(a.rel)}, {"args", a.args}});
    const nlohmann::json j = {{"free", pp.free_vars},
                              {"constants", pp.constants},
                              {"exists", pp.bound_vars},
                              {"atoms", atoms},
                              {"atom_count", pp.atom_count()}};
    return j.dump(indent);
}

PPFormula pp_from_json(const std::string& text) {
    PPFormula pp;
    try {
        const auto j = nlohmann::json::parse(text);
        pp.free_vars = j.at("free").get<std::vector<std::string>>();
        pp.constants = j.at("constants").get<std::vector<std::string>>();
        pp.bound_vars = j.at("exists").get<std::vector<std::string>>();
        for (const auto& a : j.at("atoms")) {
            const auto name = a.at("rel").get<std::string>();
            const auto* rel = std::find_if(std::begin(kAllRels), std::end(kAllRels),
                                           [&](PPRel r) { return pp_rel_name(r) == name; });
            if (rel == std::end(kAllRels)) throw ParseError("unknown relation '" + name + "'", 0, 0);
            pp.atoms.push_back({*rel, a.at("args").get<std::vector<std::string>>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad pp JSON: ") + e.what(), 0, 0);
    }
    return pp;
}

// ---------------------------------------------------------------------------
// Compilation

namespace {

// A literal as beta * x' (< | <=) sum_j alpha_j x_j - c over integers, with
// beta > 0 and every alpha_j >= 0.
struct Normalized {
    std::map<std::size_t, mpz_class> alpha;
    mpz_class beta;
    mpz_class c;
    bool strict = false;
};

struct PreparedClause {
    bool tautology = false;
    std::size_t k = 0;
    std::vector<Normalized> lits;
};

std::size_t bit_length(const mpz_class& v) { return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2); }
bool bit(const mpz_class& v, std::size_t q) { return mpz_tstbit(v.get_mpz_t(), q) != 0; }

std::size_t ceil_log2(const mpz_class& v) {
    std::size_t m = 0;
    mpz_class p = 1;
    while (p < v) {
        p <<= 1;
        ++m;
    }
    return m;
}

PreparedClause prepare(const Clause& clause, std::size_t num_vars) {
    PreparedClause out;
    const auto cols = horn_columns(clause, num_vars);
    if (cols.empty() && num_vars > 0) throw PreconditionError("clause is not Horn");
    // Prefer a column carrying a negative coefficient, then the first
    // variable in the clause.
    std::optional<std::size_t> k;
    for (const auto& lit : clause.literals)
        for (const auto& [j, a] : lit.coeffs())
            if (a.sign() < 0) k = j;
    if (!k)
        for (const auto& lit : clause.literals)
            if (!lit.coeffs().empty() && (!k || lit.coeffs().begin()->first < *k)) k = lit.coeffs().begin()->first;
    out.k = k.value_or(0);

    for (const auto& lit : clause.literals) {
        if (lit.coeffs().empty()) {
            const int s = (-lit.bound()).sign();
            if (s > 0 || (s == 0 && !lit.strict())) out.tautology = true;
            continue;
        }
        mpz_class scale = lit.bound().denominator();
        for (const auto& [j, a] : lit.coeffs()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), a.denominator().get_mpz_t());
        auto integer = [&](const Rational& q) {
            const Rational s = q * Rational(mpq_class(scale));
            return s.numerator();
        };
        Normalized n;
        n.strict = lit.strict();
        n.c = integer(lit.bound());
        mpz_class ak = 0;
        for (const auto& [j, a] : lit.coeffs()) {
            if (j == out.k)
                ak = integer(a);
            else
                n.alpha[j] = integer(a);
        }
        if (ak < 0) {
            n.beta = -ak;
        } else {
            n.beta = 1;
            if (ak + 1 != 0) n.alpha[out.k] = ak + 1;
        }
        out.lits.push_back(std::move(n));
    }
    return out;
}

class Compiler {
public:
    explicit Compiler(const Formula& f) : f_(f) {
        pp_.free_vars = f.var_names();
        taken_.insert(f.var_names().begin(), f.var_names().end());
        one_ = reserve("_one");
        neg_one_ = reserve("_neg_one");
    }

    PPFormula finish() {
        std::vector<PPAtom> head;
        if (used_one_) {
            pp_.constants.push_back(one_);
            head.push_back({PPRel::One, {one_}});
        }
        if (used_neg_one_) {
            pp_.constants.push_back(neg_one_);
            head.push_back({PPRel::NegOne, {neg_one_}});
        }
        pp_.atoms.insert(pp_.atoms.begin(), head.begin(), head.end());
        return std::move(pp_);
    }

protected:
    std::string reserve(std::string base) {
        while (taken_.count(base)) base += "_";
        taken_.insert(base);
        return base;
    }
    std::string fresh() {
        std::string name;
        do {
            name = "_t" + std::to_string(++counter_);
        } while (taken_.count(name));
        taken_.insert(name);
        pp_.bound_vars.push_back(name);
        return name;
    }
    void emit(PPRel rel, std::vector<std::string> args) { pp_.atoms.push_back({rel, std::move(args)}); }
    const std::string& one() {
        used_one_ = true;
        return one_;
    }
    const std::string& neg_one() {
        used_neg_one_ = true;
        return neg_one_;
    }
    const std::string& name(std::size_t j) const { return f_.var_names()[j]; }

    // x_k <= t_1 or ... or x_k <= t_m, joined by a chain of M0 atoms.
    void join_targets(const std::string& head, std::vector<std::string> targets) {
        if (targets.size() == 2) {
            emit(PPRel::M0, {head, targets[0], targets[1]});
            return;
        }
        const std::string t = fresh();
        emit(PPRel::M0, {head, t, targets.back()});
        targets.pop_back();
        join_targets(t, std::move(targets));
    }

    const Formula& f_;
    PPFormula pp_;
    std::set<std::string> taken_;
    std::size_t counter_ = 0;
    std::string one_;
    std::string neg_one_;
    bool used_one_ = false;
    bool used_neg_one_ = false;
};

class Gamma0Compiler : public Compiler {
public:
    using Compiler::Compiler;

    void clause(const Clause& c) {
        const auto prep = prepare(c, f_.num_vars());
        if (prep.tautology) return;
        if (prep.lits.empty()) {
            // 2 * 1 <= 1 is false.
            emit(PPRel::S1, {one(), one()});
            return;
        }
        const std::string& xk = name(prep.k);
        std::vector<std::string> targets;
        for (const auto& lit : prep.lits)
            targets.push_back(literal(lit, prep.lits.size() == 1 ? std::optional<std::string>(xk) : std::nullopt));
        if (targets.size() >= 2) join_targets(xk, std::move(targets));
    }

private:
    // d with d <= 2^q * v, built by S2 self-sums and shared across clauses.
    std::string doubled(const std::string& v, std::size_t q) {
        auto& chain = doubles_[v];
        if (chain.empty()) chain.push_back(v);
        while (chain.size() <= q) {
            const std::string d = fresh();
            emit(PPRel::S2, {d, chain.back(), chain.back()});
            chain.push_back(d);
        }
        return chain[q];
    }

    struct Item {
        std::optional<std::size_t> var;  // nullopt: x' itself
        int constant = 0;                // +1: uses the 1 variable, -1: the -1 variable
        std::size_t q = 0;
    };

    // beta x' (<|<=) sum alpha x - c realized as
    // 2^M x' (<|<=) sum alpha x + (2^M - beta) x' - c.
    std::string literal(const Normalized& lit, std::optional<std::string> target) {
        const std::size_t m = ceil_log2(lit.beta);
        const mpz_class gamma = (mpz_class(1) << m) - lit.beta;
        std::vector<Item> items;
        for (const auto& [j, a] : lit.alpha)
            for (std::size_t q = 0; q < bit_length(a); ++q)
                if (bit(a, q)) items.push_back({j, 0, q});
        for (std::size_t q = 0; q < bit_length(gamma); ++q)
            if (bit(gamma, q)) items.push_back({std::nullopt, 0, q});
        const mpz_class abs_c = abs(lit.c);
        for (std::size_t q = 0; q < bit_length(abs_c); ++q)
            if (bit(abs_c, q)) items.push_back({std::nullopt, lit.c > 0 ? -1 : 1, q});

        auto realize = [&](const Item& it, const std::string& x) {
            if (it.constant > 0) return doubled(one(), it.q);
            if (it.constant < 0) return doubled(neg_one(), it.q);
            return doubled(it.var ? name(*it.var) : x, it.q);
        };

        if (!target && !lit.strict && m == 0 && items.size() == 1) return realize(items[0], "");

        const std::string x = target ? *target : fresh();
        std::string lhs = x;
        for (std::size_t i = 0; i < m; ++i) {
            const std::string u = fresh();
            emit(PPRel::S1, {lhs, u});
            lhs = u;
        }
        std::vector<std::string> zs;
        for (const auto& it : items) zs.push_back(realize(it, x));

        std::string y = lhs;
        if (lit.strict) {
            if (zs.size() == 1) {
                emit(PPRel::Lt, {lhs, zs[0]});
                return x;
            }
            y = fresh();
            emit(PPRel::Lt, {lhs, y});
        }
        if (zs.empty()) {
            emit(PPRel::S2, {y, one(), neg_one()});
        } else if (zs.size() == 1) {
            emit(PPRel::M0, {y, zs[0], zs[0]});
        } else {
            std::string acc = y;
            for (std::size_t i = 0; i + 2 < zs.size(); ++i) {
                const std::string t = fresh();
                emit(PPRel::S2, {acc, zs[i], t});
                acc = t;
            }
            emit(PPRel::S2, {acc, zs[zs.size() - 2], zs.back()});
        }
        return x;
    }

    std::map<std::string, std::vector<std::string>> doubles_;
};

class GammaTCompiler : public Compiler {
public:
    using Compiler::Compiler;

    void clause(const Clause& c) {
        for (const auto& lit : c.literals)
            if (!lit.coeff_sum().is_zero()) throw PreconditionError("clause is not tropically convex");
        const auto prep = prepare(c, f_.num_vars());
        if (prep.tautology) return;
        if (prep.lits.empty()) {
            const std::string t = fresh();
            emit(PPRel::Lt, {t, t});
            return;
        }
        const std::string& xk = name(prep.k);
        std::vector<std::string> targets;
        for (const auto& lit : prep.lits)
            targets.push_back(literal(lit, prep.lits.size() == 1 ? std::optional<std::string>(xk) : std::nullopt));
        if (targets.size() >= 2) join_targets(xk, std::move(targets));
    }

private:
    // Placeholders resolved when a candidate gadget is committed.
    static constexpr char kMark = '\x01';
    static std::string placeholder(const std::string& tag) { return std::string(1, kMark) + tag; }
    static bool is_placeholder(const std::string& s) { return !s.empty() && s[0] == kMark; }

    struct Gadget {
        std::vector<PPAtom> atoms;
        std::optional<std::string> direct;  // x' is this leaf, no atoms needed
        std::size_t cost() const { return atoms.size(); }
    };

    // x' (<|<=) average tree with dyadic weights over 2^M leaves, minus c/2^M.
    Gadget build(const Normalized& lit, std::size_t m) {
        Gadget g;
        std::size_t next = 0;
        auto node = [&]() { return placeholder(std::to_string(next++)); };
        const std::string x = placeholder("X");
        const std::string y = lit.strict ? placeholder("Y") : x;
        if (lit.strict) g.atoms.push_back({PPRel::Lt, {x, y}});

        const mpz_class gamma = (mpz_class(1) << m) - lit.beta;
        std::vector<std::deque<std::string>> level(m + 1);
        for (const auto& [j, a] : lit.alpha)
            for (std::size_t q = 0; q < bit_length(a); ++q)
                if (bit(a, q)) level[q].push_back(name(j));
        for (std::size_t q = 0; q < bit_length(gamma); ++q)
            if (bit(gamma, q)) level[q].push_back(x);
        mpz_class r;
        mpz_class n;
        mpz_fdiv_r_2exp(r.get_mpz_t(), lit.c.get_mpz_t(), m);
        mpz_fdiv_q_2exp(n.get_mpz_t(), lit.c.get_mpz_t(), m);

        std::set<std::string> internal;
        for (std::size_t q = 0; q < m; ++q) {
            if (bit(r, q)) {
                if (level[q].empty()) {
                    std::size_t p = q + 1;
                    while (p <= m && level[p].empty()) ++p;
                    if (p > m) throw ConsistencyError("no leaf available for an offset bit");
                    for (; p > q; --p) {
                        const std::string v = level[p].front();
                        level[p].pop_front();
                        level[p - 1].push_back(v);
                        level[p - 1].push_back(v);
                    }
                }
                const std::string w = node();
                g.atoms.push_back({PPRel::TMinus, {w, level[q].front()}});
                level[q].front() = w;
            }
            if (level[q].size() % 2 != 0) throw ConsistencyError("unbalanced averaging tree");
            for (std::size_t i = 0; i < level[q].size(); i += 2) {
                const std::string p = node();
                internal.insert(p);
                g.atoms.push_back({PPRel::S3, {p, level[q][i], level[q][i + 1]}});
                level[q + 1].push_back(p);
            }
        }
        if (level[m].size() != 1) throw ConsistencyError("averaging tree has no single root");
        const std::string root = level[m].front();

        if (n == 0) {
            if (internal.count(root)) {
                for (auto& a : g.atoms)
                    for (auto& s : a.args)
                        if (s == root) s = y;
            } else if (lit.strict) {
                g.atoms.front().args[1] = root;
            } else {
                g.direct = root;
            }
        } else {
            const PPRel step = n > 0 ? PPRel::TMinus : PPRel::TPlus;
            const mpz_class count = abs(n);
            std::string acc = y;
            for (mpz_class i = 1; i < count; ++i) {
                const std::string u = node();
                g.atoms.push_back({step, {acc, u}});
                acc = u;
            }
            g.atoms.push_back({step, {acc, root}});
        }
        return g;
    }

    std::string literal(const Normalized& lit, std::optional<std::string> target) {
        const std::size_t m0 = ceil_log2(lit.beta);
        const std::size_t m1 = std::max(m0, bit_length(abs(lit.c))) + 1;
        std::optional<Gadget> best;
        for (std::size_t m = m0; m <= m1; ++m) {
            Gadget g = build(lit, m);
            const std::size_t cost = g.cost() + (g.direct && target ? 1 : 0);
            const std::size_t best_cost = best ? best->cost() + (best->direct && target ? 1 : 0) : SIZE_MAX;
            if (cost < best_cost) best = std::move(g);
        }
        Gadget& g = *best;
        if (g.direct) {
            if (!target) return *g.direct;
            emit(PPRel::M0, {*target, *g.direct, *g.direct});
            return *target;
        }
        std::map<std::string, std::string> names;
        const std::string x = target ? *target : fresh();
        names[placeholder("X")] = x;
        for (auto& a : g.atoms) {
            for (auto& s : a.args) {
                if (!is_placeholder(s)) continue;
                auto it = names.find(s);
                if (it == names.end()) it = names.emplace(s, fresh()).first;
                s = it->second;
            }
            emit(a.rel, a.args);
        }
        return x;
    }
};

}  // namespace

PPFormula compile_gamma0(const Formula& f) {
    Gamma0Compiler c(f);
    for (const auto& clause : f.clauses()) c.clause(clause);
    return c.finish();
}

PPFormula compile_gamma0(const Clause& clause, const std::vector<std::string>& var_names) {
    return compile_gamma0(Formula(var_names, {clause}));
}

PPFormula compile_gamma_t(const Formula& f) {
    GammaTCompiler c(f);
    for (const auto& clause : f.clauses()) c.clause(clause);
    return c.finish();
}

PPFormula compile_gamma_t(const Clause& clause, const std::vector<std::string>& var_names) {
    return compile_gamma_t(Formula(var_names, {clause}));
}

// ---------------------------------------------------------------------------
// Semantics

ExistsFormula pp_to_horn(const PPFormula& pp) {
    std::vector<std::string> names = pp.free_vars;
    names.insert(names.end(), pp.constants.begin(), pp.constants.end());
    names.insert(names.end(), pp.bound_vars.begin(), pp.bound_vars.end());
    ExistsFormula out;
    for (std::size_t i = pp.free_vars.size(); i < names.size(); ++i) out.existential.push_back(i);
    out.formula = Formula(names);
    auto idx = [&](const std::string& v) {
        auto i = out.formula.find_var(v);
        if (!i) throw PreconditionError("atom references undeclared variable '" + v + "'");
        return *i;
    };
    using Terms = std::vector<std::pair<std::string, Rational>>;
    auto lit = [&](const Terms& terms, Relation rel, Rational bound) {
        std::map<std::size_t, Rational> coeffs;
        for (const auto& [v, a] : terms) coeffs[idx(v)] += a;
        return Literal(std::move(coeffs), rel, std::move(bound));
    };
    auto unit = [&](Literal l) { out.formula.add_clause(Clause{{std::move(l)}}); };
    const Rational one(1);
    const Rational half(1, 2);
    for (const auto& a : pp.atoms) {
        if (a.args.size() != pp_rel_arity(a.rel)) throw PreconditionError(pp_rel_name(a.rel) + " has the wrong arity");
        const auto& v = a.args;
        switch (a.rel) {
            case PPRel::Lt: unit(lit({{v[1], one}, {v[0], -one}}, Relation::Gt, 0)); break;
            case PPRel::One:
                unit(lit({{v[0], one}}, Relation::Geq, 1));
                unit(lit({{v[0], -one}}, Relation::Geq, -1));
                break;
            case PPRel::NegOne:
                unit(lit({{v[0], one}}, Relation::Geq, -1));
                unit(lit({{v[0], -one}}, Relation::Geq, 1));
                break;
            case PPRel::S1: unit(lit({{v[1], one}, {v[0], Rational(-2)}}, Relation::Geq, 0)); break;
            case PPRel::S2: unit(lit({{v[1], one}, {v[2], one}, {v[0], -one}}, Relation::Geq, 0)); break;
            case PPRel::M0:
                out.formula.add_clause(Clause{{lit({{v[1], one}, {v[0], -one}}, Relation::Geq, 0),
                                               lit({{v[2], one}, {v[0], -one}}, Relation::Geq, 0)}});
                break;
            case PPRel::TPlus: unit(lit({{v[1], one}, {v[0], -one}}, Relation::Geq, -1)); break;
            case PPRel::TMinus: unit(lit({{v[1], one}, {v[0], -one}}, Relation::Geq, 1)); break;
            case PPRel::S3: unit(lit({{v[1], half}, {v[2], half}, {v[0], -one}}, Relation::Geq, 0)); break;
        }
    }
    return out;
}

bool pp_eval(const PPFormula& pp, const std::map<std::string, Rational>& assignment, const Budget& budget) {
    const ExistsFormula ef = pp_to_horn(pp);
    LinSystem base(ef.formula.num_vars());
    for (std::size_t i = 0; i < pp.free_vars.size(); ++i) {
        auto it = assignment.find(pp.free_vars[i]);
        if (it == assignment.end()) throw PreconditionError("no value for free variable '" + pp.free_vars[i] + "'");
        base.pin(i, EpsNum(it->second));
    }
    return first_feasible_selection(base, formula_disjunctions(ef.formula), budget.selections).has_value();
}

namespace {

// Projections onto the common free-variable space of every feasible
// disjunct selection.
std::vector<LinSystem> projected_pieces(const ExistsFormula& ef, const std::vector<std::string>& common,
                                        const Budget& budget) {
    const Formula& f = ef.formula;
    const std::size_t n = f.num_vars();
    const std::size_t nf = common.size();
    std::vector<bool> is_exist(n, false);
    for (auto e : ef.existential) is_exist.at(e) = true;
    // Own index -> working index: common free variables first.
    std::vector<std::size_t> to_work(n);
    std::size_t next = nf;
    for (std::size_t j = 0; j < n; ++j) {
        if (is_exist[j]) {
            to_work[j] = next++;
        } else {
            const auto it = std::find(common.begin(), common.end(), f.var_names()[j]);
            to_work[j] = static_cast<std::size_t>(it - common.begin());
        }
    }
    std::vector<Disjunction> clauses;
    for (const auto& c : f.clauses()) {
        Disjunction d;
        for (const auto& lit : c.literals) {
            Row r;
            r.coeffs.assign(n, Rational(0));
            for (const auto& [j, a] : lit.coeffs()) r.coeffs[to_work[j]] += a;
            r.rel = lit.relation();
            r.bound = EpsNum(lit.bound());
            d.push_back({std::move(r)});
        }
        clauses.push_back(std::move(d));
    }
    std::vector<std::size_t> keep(nf);
    for (std::size_t i = 0; i < nf; ++i) keep[i] = i;

    std::vector<LinSystem> out;
    for_each_feasible_selection(LinSystem(n), clauses, budget.selections, [&](const Selection& s) {
        LinSystem sys(n);
        for (std::size_t c = 0; c < clauses.size(); ++c) sys.add(clauses[c][s.choices[c]][0]);
        const LinSystem proj = fm_project(sys, keep);
        LinSystem piece(nf);
        for (const auto& r : proj.rows) {
            Row t = r;
            t.coeffs.resize(nf);
            if (!t.is_zero()) piece.add(std::move(t));
        }
        // Drop rows implied by the others.
        for (std::size_t i = piece.rows.size(); i-- > 0;) {
            LinSystem rest(nf);
            for (std::size_t j = 0; j < piece.rows.size(); ++j)
                if (j != i) rest.add(piece.rows[j]);
            if (implies(rest, piece.rows[i])) piece.rows.erase(piece.rows.begin() + static_cast<std::ptrdiff_t>(i));
        }
        out.push_back(std::move(piece));
        return true;
    });
    return out;
}

class CoverCheck {
public:
    CoverCheck(const std::vector<LinSystem>& pieces, std::uint64_t budget) : pieces_(pieces), budget_(budget) {}

    // p is contained in the union of pieces[s..].
    bool covered(const LinSystem& p, std::size_t s) {
        if (++nodes_ > budget_) throw BudgetExceeded("inclusion check exceeded its node budget");
        if (!fm_is_feasible(p)) return true;
        if (s == pieces_.size()) return false;
        for (const auto& r : pieces_[s].rows) {
            if (implies(p, r)) continue;
            LinSystem q = p;
            q.add(negate(r));
            if (!covered(q, s + 1)) return false;
        }
        return true;
    }

private:
    const std::vector<LinSystem>& pieces_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
};

std::vector<std::string> free_names(const ExistsFormula& ef) {
    std::vector<bool> is_exist(ef.formula.num_vars(), false);
    for (auto e : ef.existential) is_exist.at(e) = true;
    std::vector<std::string> out;
    for (std::size_t j = 0; j < ef.formula.num_vars(); ++j)
        if (!is_exist[j]) out.push_back(ef.formula.var_names()[j]);
    return out;
}

}  // namespace

bool equivalence_check(const ExistsFormula& a, const ExistsFormula& b, const Budget& budget) {
    const auto common = free_names(a);
    auto fb = free_names(b);
    auto sa = common;
    std::sort(sa.begin(), sa.end());
    std::sort(fb.begin(), fb.end());
    if (sa != fb) throw PreconditionError("formulas have different free variables");
    const auto pa = projected_pieces(a, common, budget);
    const auto pb = projected_pieces(b, common, budget);
    auto included = [&](const std::vector<LinSystem>& from, const std::vector<LinSystem>& into) {
        CoverCheck check(into, budget.selections);
        return std::all_of(from.begin(), from.end(), [&](const LinSystem& p) { return check.covered(p, 0); });
    };
    return included(pa, pb) && included(pb, pa);
}

bool equivalence_check(const Formula& a, const Formula& b, const Budget& budget) {
    return equivalence_check(ExistsFormula{a, {}}, ExistsFormula{b, {}}, budget);
}

}  // namespace tropisolve
