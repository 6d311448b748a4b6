#include "tropisolve/tropical.hpp"

#include <algorithm>

#include "tropisolve/lp.hpp"

namespace tropisolve {

Operator Operator::max(std::vector<std::pair<std::size_t, EpsNum>> args) {
    Operator op;
    op.kind = Kind::Max;
    for (auto& [v, k] : args) op.args.push_back({v, std::move(k), Rational(1)});
    return op;
}

Operator Operator::min(std::vector<std::pair<std::size_t, EpsNum>> args) {
    Operator op = max(std::move(args));
    op.kind = Kind::Min;
    return op;
}

Operator Operator::avg(std::vector<std::pair<Rational, std::size_t>> weighted, EpsNum offset) {
    Operator op;
    op.kind = Kind::Avg;
    for (auto& [w, v] : weighted) op.args.push_back({v, EpsNum(), std::move(w)});
    op.offset = std::move(offset);
    return op;
}

bool Operator::has_eps() const {
    if (!offset.is_rational()) return true;
    return std::any_of(args.begin(), args.end(), [](const OpArg& a) { return !a.offset.is_rational(); });
}

Rational Operator::total_weight() const {
    Rational s;
    for (const auto& a : args) s += a.weight;
    return s;
}

bool OperatorSystem::has_eps() const {
    return std::any_of(ops.begin(), ops.end(), [](const Operator& op) { return op.has_eps(); });
}

void OperatorSystem::validate() const {
    if (names.size() != ops.size()) throw PreconditionError("operator system has mismatched name and operator counts");
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (ops[i].args.empty()) throw PreconditionError("component " + names[i] + " has no arguments");
        for (const auto& a : ops[i].args) {
            if (a.var >= ops.size()) throw PreconditionError("component " + names[i] + " references an unknown variable");
            if (ops[i].kind == Operator::Kind::Avg && a.weight.sign() <= 0)
                throw PreconditionError("component " + names[i] + " has a nonpositive weight");
        }
    }
}

ExtEps eval_operator(const Operator& op, std::span<const ExtEps> x) {
    switch (op.kind) {
        case Operator::Kind::Max: {
            std::optional<ExtEps> best;
            for (const auto& a : op.args) {
                ExtEps v = x[a.var] + a.offset;
                if (!best || v > *best) best = v;
            }
            return *best;
        }
        case Operator::Kind::Min: {
            std::optional<ExtEps> best;
            for (const auto& a : op.args) {
                ExtEps v = x[a.var] + a.offset;
                if (!best || v < *best) best = v;
            }
            return *best;
        }
        case Operator::Kind::Avg: {
            EpsNum s;
            for (const auto& a : op.args) {
                if (x[a.var].is_inf()) return ExtEps::pos_inf();
                s += a.weight * x[a.var].value();
            }
            return (Rational(1) / op.total_weight()) * s + op.offset;
        }
    }
    return ExtEps::pos_inf();
}

ExtVal eval_operator(const Operator& op, std::span<const ExtVal> x) {
    if (op.has_eps()) throw PreconditionError("operator carries eps offsets");
    std::vector<ExtEps> lifted;
    lifted.reserve(x.size());
    for (const auto& v : x) lifted.push_back(v.is_inf() ? ExtEps::pos_inf() : ExtEps(EpsNum(v.value())));
    const ExtEps r = eval_operator(op, lifted);
    return r.is_inf() ? ExtVal::pos_inf() : ExtVal(r.value().real());
}

namespace {

Relation rel_of(bool strict) { return strict ? Relation::Gt : Relation::Geq; }

// x_j + k - x_i (rel) 0, i.e. x_j - x_i (rel) -k.
Row primal_arg_row(std::size_t n, std::size_t i, const OpArg& a, bool strict) {
    Row r;
    r.coeffs.assign(n, Rational(0));
    r.coeffs[a.var] += Rational(1);
    r.coeffs[i] -= Rational(1);
    r.rel = rel_of(strict);
    r.bound = -a.offset;
    return r;
}

// sum (w/W) x_j - x_i (rel) -k.
Row primal_avg_row(std::size_t n, std::size_t i, const Operator& op, bool strict) {
    Row r;
    r.coeffs.assign(n, Rational(0));
    const Rational total = op.total_weight();
    for (const auto& a : op.args) r.coeffs[a.var] += a.weight / total;
    r.coeffs[i] -= Rational(1);
    r.rel = rel_of(strict);
    r.bound = -op.offset;
    return r;
}

Row dual_arg_row(std::size_t n, std::size_t i, const OpArg& a, bool strict) {
    Row r = primal_arg_row(n, i, a, strict);
    for (auto& c : r.coeffs) c = -c;
    r.bound = a.offset;
    return r;
}

Row dual_avg_row(std::size_t n, std::size_t i, const Operator& op, bool strict) {
    Row r = primal_avg_row(n, i, op, strict);
    for (auto& c : r.coeffs) c = -c;
    r.bound = op.offset;
    return r;
}

// Adds `row` to a conjunction; all-zero rows are decided on the spot.
// Returns false when the row is a contradiction.
bool add_checked(std::vector<Row>& rows, Row row) {
    if (row.is_zero()) {
        const std::vector<EpsNum> zero(row.coeffs.size());
        if (!row.holds(std::span<const EpsNum>(zero))) return false;
        // Kept: a constant row such as 0 > -1 + 2*eps still bounds the epsilon.
    }
    rows.push_back(std::move(row));
    return true;
}

bool all_rational(std::span<const EpsNum> w) {
    return std::all_of(w.begin(), w.end(), [](const EpsNum& v) { return v.is_rational(); });
}

std::vector<Rational> real_parts(std::span<const EpsNum> w) {
    std::vector<Rational> out;
    for (const auto& v : w) out.push_back(v.real());
    return out;
}

}  // namespace

std::optional<PrimalWitness> solve_primal(const OperatorSystem& o, bool strict, const Budget& budget) {
    o.validate();
    const std::size_t n = o.size();
    LinSystem base(n);
    std::vector<Disjunction> choices;
    for (std::size_t i = 0; i < n; ++i) {
        const Operator& op = o.ops[i];
        switch (op.kind) {
            case Operator::Kind::Min:
                for (const auto& a : op.args)
                    if (!add_checked(base.rows, primal_arg_row(n, i, a, strict))) return std::nullopt;
                break;
            case Operator::Kind::Avg:
                if (!add_checked(base.rows, primal_avg_row(n, i, op, strict))) return std::nullopt;
                break;
            case Operator::Kind::Max: {
                Disjunction d;
                for (const auto& a : op.args) {
                    std::vector<Row> alt;
                    if (add_checked(alt, primal_arg_row(n, i, a, strict))) d.push_back(std::move(alt));
                }
                if (d.empty()) return std::nullopt;
                choices.push_back(std::move(d));
                break;
            }
        }
    }
    const auto sel = first_feasible_selection(base, choices, budget.selections);
    if (!sel) return std::nullopt;
    PrimalWitness w;
    if (!o.has_eps() && all_rational(sel->witness)) {
        w.x = real_parts(sel->witness);
        return w;
    }
    std::vector<Row> rows = base.rows;
    for (std::size_t c = 0; c < choices.size(); ++c)
        for (const auto& r : choices[c][sel->choices[c]]) rows.push_back(r);
    const Rational t = choose_epsilon(rows, sel->witness);
    w.x = instantiate(sel->witness, t);
    w.epsilon = t;
    return w;
}

std::optional<DualCertificate> solve_dual(const OperatorSystem& o, bool strict, const Budget& budget) {
    o.validate();
    const std::size_t n = o.size();
    if (n == 0) return std::nullopt;
    if (n >= 64 || (std::uint64_t{1} << n) - 1 > budget.patterns)
        throw BudgetExceeded("dual search needs 2^" + std::to_string(n) + "-1 finiteness patterns, budget is " +
                             std::to_string(budget.patterns));
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t mask = full; mask >= 1; --mask) {
        auto finite = [&](std::size_t v) { return ((mask >> v) & 1u) != 0; };
        // Cheap closure filter: Max/Avg components need every argument finite,
        // Min components need at least one.
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (!finite(i)) continue;
            const Operator& op = o.ops[i];
            if (op.kind == Operator::Kind::Min)
                ok = std::any_of(op.args.begin(), op.args.end(), [&](const OpArg& a) { return finite(a.var); });
            else
                ok = std::all_of(op.args.begin(), op.args.end(), [&](const OpArg& a) { return finite(a.var); });
        }
        if (!ok) continue;

        LinSystem base(n);
        std::vector<Disjunction> choices;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (!finite(i)) continue;
            const Operator& op = o.ops[i];
            switch (op.kind) {
                case Operator::Kind::Max:
                    for (const auto& a : op.args) ok = ok && add_checked(base.rows, dual_arg_row(n, i, a, strict));
                    break;
                case Operator::Kind::Avg:
                    ok = add_checked(base.rows, dual_avg_row(n, i, op, strict));
                    break;
                case Operator::Kind::Min: {
                    Disjunction d;
                    for (const auto& a : op.args) {
                        if (!finite(a.var)) continue;
                        std::vector<Row> alt;
                        if (add_checked(alt, dual_arg_row(n, i, a, strict))) d.push_back(std::move(alt));
                    }
                    ok = !d.empty();
                    choices.push_back(std::move(d));
                    break;
                }
            }
        }
        if (!ok) continue;
        const auto sel = first_feasible_selection(base, choices, budget.selections);
        if (!sel) continue;
        DualCertificate cert;
        for (std::size_t i = 0; i < n; ++i)
            cert.y.push_back(finite(i) ? ExtEps(sel->witness[i]) : ExtEps::pos_inf());
        return cert;
    }
    return std::nullopt;
}

bool verify_primal_witness(const OperatorSystem& o, const PrimalWitness& w, bool strict) {
    if (w.x.size() != o.size()) throw DimensionMismatch("primal witness has the wrong dimension");
    if (o.has_eps() && !w.epsilon) return false;
    // Offsets are fixed at the concrete epsilon before evaluating: the order
    // over V and the order at t can pick different arguments.
    const Rational t = w.epsilon.value_or(Rational(0));
    std::vector<ExtVal> x(w.x.begin(), w.x.end());
    for (std::size_t i = 0; i < o.size(); ++i) {
        Operator op = o.ops[i];
        op.offset = EpsNum(op.offset.at(t));
        for (auto& a : op.args) a.offset = EpsNum(a.offset.at(t));
        const ExtVal v = eval_operator(op, std::span<const ExtVal>(x));
        if (v.is_inf()) continue;
        if (strict ? !(w.x[i] < v.value()) : !(w.x[i] <= v.value())) return false;
    }
    return true;
}

bool verify_dual_certificate(const OperatorSystem& o, const DualCertificate& y, bool strict) {
    if (y.y.size() != o.size()) throw DimensionMismatch("dual certificate has the wrong dimension");
    if (std::all_of(y.y.begin(), y.y.end(), [](const ExtEps& v) { return v.is_inf(); })) return false;
    for (std::size_t i = 0; i < o.size(); ++i) {
        const ExtEps v = eval_operator(o.ops[i], y.y);
        if (strict ? !ext_strict_gt(y.y[i], v) : !(y.y[i] >= v)) return false;
    }
    return true;
}

DualityReport check_duality(const OperatorSystem& o, const Budget& budget) {
    DualityReport r;
    r.primal_strict = solve_primal(o, true, budget);
    r.dual_nonstrict = solve_dual(o, false, budget);
    r.primal_nonstrict = solve_primal(o, false, budget);
    r.dual_strict = solve_dual(o, true, budget);
    if (r.primal_strict.has_value() == r.dual_nonstrict.has_value())
        throw ConsistencyError(r.primal_strict ? "both x < o(x) and y >= o(y) are satisfiable"
                                               : "neither x < o(x) nor y >= o(y) is satisfiable");
    if (r.primal_nonstrict.has_value() == r.dual_strict.has_value())
        throw ConsistencyError(r.primal_nonstrict ? "both x <= o(x) and y > o(y) are satisfiable"
                                                  : "neither x <= o(x) nor y > o(y) is satisfiable");
    if (r.primal_strict && !verify_primal_witness(o, *r.primal_strict, true))
        throw ConsistencyError("strict primal witness fails verification");
    if (r.primal_nonstrict && !verify_primal_witness(o, *r.primal_nonstrict, false))
        throw ConsistencyError("non-strict primal witness fails verification");
    if (r.dual_nonstrict && !verify_dual_certificate(o, *r.dual_nonstrict, false))
        throw ConsistencyError("non-strict dual certificate fails verification");
    if (r.dual_strict && !verify_dual_certificate(o, *r.dual_strict, true))
        throw ConsistencyError("strict dual certificate fails verification");
    return r;
}

// ---------------------------------------------------------------------------
// Constraint instances

namespace {

// Row y_coeffs - x >= bound style builder over n variables.
Row atom_row(std::size_t n, std::initializer_list<std::pair<std::size_t, Rational>> terms, Relation rel,
             EpsNum bound) {
    Row r;
    r.coeffs.assign(n, Rational(0));
    for (const auto& [v, a] : terms) r.coeffs[v] += a;
    r.rel = rel;
    r.bound = std::move(bound);
    return r;
}

// Alternatives of an atom as rows. With eps_mode, LT(x,y) reads y - x >= eps.
Disjunction atom_alternatives(const CspAtom& a, std::size_t n, bool eps_mode) {
    const auto& v = a.vars;
    const Rational one(1);
    const Rational half(1, 2);
    switch (a.kind) {
        case AtomKind::LT:
            if (eps_mode) return {{atom_row(n, {{v[1], one}, {v[0], -one}}, Relation::Geq, EpsNum::epsilon())}};
            return {{atom_row(n, {{v[1], one}, {v[0], -one}}, Relation::Gt, EpsNum())}};
        case AtomKind::TPlus1:
            return {{atom_row(n, {{v[1], one}, {v[0], -one}}, Relation::Geq, EpsNum(-1))}};
        case AtomKind::TMinus1:
            return {{atom_row(n, {{v[1], one}, {v[0], -one}}, Relation::Geq, EpsNum(1))}};
        case AtomKind::S3:
            return {{atom_row(n, {{v[1], half}, {v[2], half}, {v[0], -one}}, Relation::Geq, EpsNum())}};
        case AtomKind::M0:
            return {{atom_row(n, {{v[1], one}, {v[0], -one}}, Relation::Geq, EpsNum())},
                    {atom_row(n, {{v[2], one}, {v[0], -one}}, Relation::Geq, EpsNum())}};
    }
    return {};
}

void check_instance(const CspInstance& inst) {
    for (const auto& a : inst.atoms) {
        if (a.vars.size() != atom_arity(a.kind)) throw PreconditionError(atom_name(a.kind) + " has the wrong arity");
        for (auto v : a.vars)
            if (v >= inst.num_vars()) throw PreconditionError("atom references an unknown variable");
    }
}

Literal row_literal(const Row& r) {
    std::map<std::size_t, Rational> coeffs;
    for (std::size_t j = 0; j < r.coeffs.size(); ++j)
        if (!r.coeffs[j].is_zero()) coeffs.emplace(j, r.coeffs[j]);
    return Literal(std::move(coeffs), r.rel, r.bound.real());
}

}  // namespace

Formula csp_to_formula(const CspInstance& inst) {
    check_instance(inst);
    Formula f(inst.names);
    for (const auto& a : inst.atoms) {
        Clause c;
        for (const auto& alt : atom_alternatives(a, inst.num_vars(), false)) c.literals.push_back(row_literal(alt[0]));
        f.add_clause(std::move(c));
    }
    return f;
}

OperatorSystem csp_to_operator_system(const CspInstance& inst) {
    check_instance(inst);
    const std::size_t n = inst.num_vars();
    std::vector<std::vector<Operator>> bounds(n);
    for (const auto& a : inst.atoms) {
        const auto& v = a.vars;
        switch (a.kind) {
            case AtomKind::LT: bounds[v[0]].push_back(Operator::max({{v[1], -EpsNum::epsilon()}})); break;
            case AtomKind::TPlus1: bounds[v[0]].push_back(Operator::max({{v[1], EpsNum(1)}})); break;
            case AtomKind::TMinus1: bounds[v[0]].push_back(Operator::max({{v[1], EpsNum(-1)}})); break;
            case AtomKind::S3:
                bounds[v[0]].push_back(Operator::avg({{Rational(1), v[1]}, {Rational(1), v[2]}}));
                break;
            case AtomKind::M0: bounds[v[0]].push_back(Operator::max({{v[1], EpsNum()}, {v[2], EpsNum()}})); break;
        }
    }
    OperatorSystem o;
    o.names = inst.names;
    o.ops.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (bounds[i].empty()) {
            o.ops[i] = Operator::max({{i, EpsNum(1)}});
        } else if (bounds[i].size() == 1) {
            o.ops[i] = bounds[i][0];
        } else {
            std::vector<std::pair<std::size_t, EpsNum>> copies;
            for (std::size_t l = 0; l < bounds[i].size(); ++l) {
                copies.emplace_back(o.names.size(), EpsNum());
                o.names.push_back(inst.names[i] + "#" + std::to_string(l + 1));
                o.ops.push_back(bounds[i][l]);
            }
            o.ops[i] = Operator::min(std::move(copies));
        }
    }
    return o;
}

CspResult solve_csp(const CspInstance& inst, const Budget& budget, bool cross_check) {
    check_instance(inst);
    const std::size_t n = inst.num_vars();
    CspResult res;
    res.system = csp_to_operator_system(inst);

    std::vector<Disjunction> alts;
    for (const auto& a : inst.atoms) alts.push_back(atom_alternatives(a, n, true));
    const auto sel = first_feasible_selection(LinSystem(n), alts, budget.selections);
    if (sel) {
        res.sat = true;
        if (all_rational(sel->witness)) {
            res.witness = real_parts(sel->witness);
        } else {
            // Largest t such that the selected rows (strict form) hold on (0, t].
            std::optional<Rational> t0;
            for (std::size_t c = 0; c < inst.atoms.size(); ++c) {
                const Row r = atom_alternatives(inst.atoms[c], n, false)[sel->choices[c]][0];
                const Threshold th = row_threshold(r, sel->witness);
                if (!th.holds_near_zero) throw ConsistencyError("V witness fails a constraint near 0+");
                if (th.sup && (!t0 || *th.sup < *t0)) t0 = th.sup;
            }
            res.t0 = t0;
            res.witness = instantiate(sel->witness, t0 ? *t0 / Rational(2) : Rational(1));
        }
        if (!eval_point(csp_to_formula(inst), res.witness))
            throw ConsistencyError("constraint witness fails direct evaluation");
        if (cross_check && solve_dual(res.system, true, budget))
            throw ConsistencyError("satisfiable instance also has a dual certificate");
        return res;
    }
    auto cert = solve_dual(res.system, true, budget);
    if (!cert) throw ConsistencyError("unsatisfiable instance has no dual certificate");
    if (!verify_dual_certificate(res.system, *cert, true)) throw ConsistencyError("dual certificate fails verification");
    res.certificate = std::move(*cert);
    return res;
}

ZeroPlusResult sat_in_zero_plus(const Formula& phi, std::size_t t_index, const Budget& budget) {
    const std::size_t n = phi.num_vars();
    if (t_index >= n) throw DimensionMismatch("parameter index out of range");
    // Variable j != t becomes a_p + b_p*eps with a_p at p and b_p at m + p.
    const std::size_t m = n - 1;
    auto slot = [&](std::size_t j) { return j < t_index ? j : j - 1; };

    std::vector<Disjunction> alts;
    for (const auto& clause : phi.clauses()) {
        Disjunction d;
        for (const auto& lit : clause.literals) {
            Row real_part;
            real_part.coeffs.assign(2 * m, Rational(0));
            Row eps_part = real_part;
            Rational d_t;
            for (const auto& [j, a] : lit.coeffs()) {
                if (j == t_index) {
                    d_t = a;
                    continue;
                }
                real_part.coeffs[slot(j)] = a;
                eps_part.coeffs[m + slot(j)] = a;
            }
            // real > c
            Row gt = real_part;
            gt.rel = Relation::Gt;
            gt.bound = EpsNum(lit.bound());
            // real = c and eps-part (rel) -d
            Row ge = real_part;
            ge.rel = Relation::Geq;
            ge.bound = EpsNum(lit.bound());
            Row le = ge;
            for (auto& c : le.coeffs) c = -c;
            le.bound = EpsNum(-lit.bound());
            eps_part.rel = lit.relation();
            eps_part.bound = EpsNum(-d_t);
            d.push_back({gt});
            d.push_back({ge, le, eps_part});
        }
        alts.push_back(std::move(d));
    }

    ZeroPlusResult res;
    const auto sel = first_feasible_selection(LinSystem(2 * m), alts, budget.selections);
    if (!sel) return res;
    res.sat = true;
    res.witness.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        res.witness[j] = j == t_index ? EpsNum::epsilon()
                                      : EpsNum(sel->witness[slot(j)].real(), sel->witness[m + slot(j)].real());
    std::optional<Rational> t0;
    for (std::size_t c = 0; c < phi.clauses().size(); ++c) {
        const Literal& lit = phi.clauses()[c].literals[sel->choices[c] / 2];
        const Threshold th = row_threshold(literal_row(lit, n), res.witness);
        if (!th.holds_near_zero) throw ConsistencyError("V witness fails a literal near 0+");
        if (th.sup && (!t0 || *th.sup < *t0)) t0 = th.sup;
    }
    res.t0 = t0;
    res.t = t0 ? *t0 / Rational(2) : Rational(1);
    res.sample = instantiate(res.witness, res.t);
    if (!eval_point(phi, res.sample)) throw ConsistencyError("0+ sample point fails direct evaluation");
    return res;
}

}  // namespace tropisolve
