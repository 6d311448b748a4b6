#include "tropisolve/lp.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace tropisolve {

EpsNum Row::lhs(std::span<const EpsNum> x) const {
    if (x.size() != coeffs.size()) throw DimensionMismatch("row has " + std::to_string(coeffs.size()) +
                                                           " coefficients, point has " + std::to_string(x.size()));
    EpsNum acc;
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        if (!coeffs[j].is_zero()) acc += coeffs[j] * x[j];
    return acc;
}

bool Row::holds(std::span<const EpsNum> x) const {
    const EpsNum v = lhs(x);
    return strict() ? v > bound : v >= bound;
}

bool Row::holds(std::span<const Rational> x) const {
    std::vector<EpsNum> lifted(x.begin(), x.end());
    return holds(std::span<const EpsNum>(lifted));
}

bool Row::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c.is_zero(); });
}

Row negate(const Row& row) {
    Row out;
    out.coeffs.reserve(row.coeffs.size());
    for (const auto& c : row.coeffs) out.coeffs.push_back(-c);
    out.rel = row.strict() ? Relation::Geq : Relation::Gt;
    out.bound = -row.bound;
    return out;
}

Row literal_row(const Literal& lit, std::size_t num_vars) {
    Row row;
    row.coeffs.assign(num_vars, Rational(0));
    for (const auto& [j, a] : lit.coeffs()) {
        if (j >= num_vars) throw DimensionMismatch("literal references variable " + std::to_string(j));
        row.coeffs[j] = a;
    }
    row.rel = lit.relation();
    row.bound = EpsNum(lit.bound());
    return row;
}

Row make_row(std::size_t num_vars, std::initializer_list<std::pair<std::size_t, Rational>> terms, Relation rel,
             EpsNum bound) {
    Row row;
    row.coeffs.assign(num_vars, Rational(0));
    for (const auto& [j, a] : terms) row.coeffs.at(j) += a;
    row.rel = rel;
    row.bound = std::move(bound);
    return row;
}

void LinSystem::add(Row row) {
    if (row.coeffs.size() != num_vars)
        throw DimensionMismatch("row width " + std::to_string(row.coeffs.size()) + " in a system of " +
                                std::to_string(num_vars) + " variables");
    rows.push_back(std::move(row));
}

void LinSystem::pin(std::size_t var, const EpsNum& value) {
    Row lo;
    lo.coeffs.assign(num_vars, Rational(0));
    lo.coeffs.at(var) = Rational(1);
    lo.bound = value;
    Row hi = lo;
    hi.coeffs[var] = Rational(-1);
    hi.bound = -value;
    add(std::move(lo));
    add(std::move(hi));
}

bool LinSystem::holds(std::span<const EpsNum> x) const {
    return std::all_of(rows.begin(), rows.end(), [&](const Row& r) { return r.holds(x); });
}

namespace {

struct WorkRow {
    Row row;
    std::vector<Rational> lambda;  // empty when not tracking certificates
};

enum class ZeroRow { NotZero, Tautology, Contradiction };

ZeroRow classify_zero(const Row& row) {
    if (!row.is_zero()) return ZeroRow::NotZero;
    const EpsNum zero;
    const bool ok = row.strict() ? zero > row.bound : zero >= row.bound;
    return ok ? ZeroRow::Tautology : ZeroRow::Contradiction;
}

void normalize(WorkRow& w) {
    auto it = std::find_if(w.row.coeffs.begin(), w.row.coeffs.end(), [](const Rational& c) { return !c.is_zero(); });
    if (it == w.row.coeffs.end()) return;
    const Rational scale = Rational(1) / it->abs();
    if (scale == Rational(1)) return;
    for (auto& c : w.row.coeffs) c *= scale;
    w.row.bound = scale * w.row.bound;
    for (auto& l : w.lambda) l *= scale;
}

/// `a` is at least as tight as `b`; both share coefficients.
bool tighter_or_equal(const Row& a, const Row& b) {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.strict() || !b.strict();
}

/// Normalizes, drops tautologies, keeps the tightest row per coefficient
/// vector. Returns the index of a contradictory row, if any.
std::optional<WorkRow> tidy(std::vector<WorkRow>& rows) {
    std::vector<WorkRow> out;
    out.reserve(rows.size());
    std::map<std::vector<Rational>, std::size_t> seen;
    for (auto& w : rows) {
        switch (classify_zero(w.row)) {
            case ZeroRow::Tautology: continue;
            case ZeroRow::Contradiction: return std::move(w);
            case ZeroRow::NotZero: break;
        }
        normalize(w);
        auto [it, inserted] = seen.try_emplace(w.row.coeffs, out.size());
        if (inserted) {
            out.push_back(std::move(w));
        } else if (!tighter_or_equal(out[it->second].row, w.row)) {
            out[it->second] = std::move(w);
        }
    }
    rows = std::move(out);
    return std::nullopt;
}

WorkRow combine(const WorkRow& p, const WorkRow& q, std::size_t k) {
    // p has a positive, q a negative coefficient at k.
    const Rational mp = -q.row.coeffs[k];
    const Rational mq = p.row.coeffs[k];
    WorkRow out;
    const std::size_t n = p.row.coeffs.size();
    out.row.coeffs.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (j == k) {
            out.row.coeffs[j] = Rational(0);
            continue;
        }
        const auto& a = p.row.coeffs[j];
        const auto& b = q.row.coeffs[j];
        if (a.is_zero() && b.is_zero()) continue;
        out.row.coeffs[j] = mp * a + mq * b;
    }
    out.row.rel = (p.row.strict() || q.row.strict()) ? Relation::Gt : Relation::Geq;
    out.row.bound = mp * p.row.bound + mq * q.row.bound;
    if (!p.lambda.empty()) {
        out.lambda.resize(p.lambda.size());
        for (std::size_t i = 0; i < p.lambda.size(); ++i) {
            const auto& a = p.lambda[i];
            const auto& b = q.lambda[i];
            if (a.is_zero() && b.is_zero()) continue;
            out.lambda[i] = mp * a + mq * b;
        }
    }
    return out;
}

struct EliminationOutcome {
    std::vector<std::vector<WorkRow>> stages;  // stages[i]: rows before eliminating order[i]
    std::vector<std::size_t> order;
    std::optional<WorkRow> contradiction;
};

/// Eliminates the variables listed in `pending`, in order or greedily. When
/// `keep_stages` is false
/// only the final rows are retained (in stages.back()).
EliminationOutcome eliminate(std::vector<WorkRow> rows, std::vector<std::size_t> pending, bool keep_stages,
                             bool greedy) {
    EliminationOutcome out;
    if (auto bad = tidy(rows)) {
        out.contradiction = std::move(bad);
        return out;
    }
    while (!pending.empty()) {
        // Greedy order: the variable producing the fewest combined rows.
        std::size_t best = 0;
        long best_cost = std::numeric_limits<long>::max();
        for (std::size_t i = 0; greedy && i < pending.size(); ++i) {
            long p = 0;
            long q = 0;
            for (const auto& w : rows) {
                const int s = w.row.coeffs[pending[i]].sign();
                p += s > 0;
                q += s < 0;
            }
            const long cost = p * q - p - q;
            if (cost < best_cost) {
                best_cost = cost;
                best = i;
            }
        }
        const std::size_t k = pending[best];
        pending.erase(pending.begin() + static_cast<long>(best));
        out.order.push_back(k);
        std::vector<WorkRow> next;
        std::vector<const WorkRow*> pos;
        std::vector<const WorkRow*> neg;
        for (const auto& w : rows) {
            const int s = w.row.coeffs[k].sign();
            if (s > 0) pos.push_back(&w);
            else if (s < 0) neg.push_back(&w);
            else next.push_back(w);
        }
        for (const auto* p : pos)
            for (const auto* q : neg) next.push_back(combine(*p, *q, k));
        if (keep_stages) out.stages.push_back(std::move(rows));
        rows = std::move(next);
        if (auto bad = tidy(rows)) {
            out.contradiction = std::move(bad);
            return out;
        }
    }
    out.stages.push_back(std::move(rows));
    return out;
}

std::vector<WorkRow> to_work(const LinSystem& sys, bool track) {
    std::vector<WorkRow> rows;
    rows.reserve(sys.rows.size());
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
        if (sys.rows[i].coeffs.size() != sys.num_vars) throw DimensionMismatch("row width differs from num_vars");
        WorkRow w{sys.rows[i], {}};
        if (track) {
            w.lambda.assign(sys.rows.size(), Rational(0));
            w.lambda[i] = Rational(1);
        }
        rows.push_back(std::move(w));
    }
    return rows;
}

std::vector<std::size_t> iota(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

struct Bound {
    EpsNum value;
    bool strict = false;
};

EpsNum pick_value(const std::optional<Bound>& lo, const std::optional<Bound>& hi) {
    if (lo && hi) {
        if (lo->value == hi->value) return lo->value;
        return Rational(1, 2) * (lo->value + hi->value);
    }
    if (lo) return lo->value + EpsNum(1);
    if (hi) return hi->value - EpsNum(1);
    return EpsNum();
}

}  // namespace

namespace {

std::vector<EpsNum> back_substitute(const EliminationOutcome& elim, std::size_t num_vars) {
    // Variables eliminated later are assigned first; rows at stage i mention
    // only order[i..].
    std::vector<EpsNum> x(num_vars);
    for (std::size_t i = elim.order.size(); i-- > 0;) {
        const std::size_t k = elim.order[i];
        std::optional<Bound> lo;
        std::optional<Bound> hi;
        for (const auto& w : elim.stages[i]) {
            const Rational& a = w.row.coeffs[k];
            if (a.is_zero()) continue;
            EpsNum rest = w.row.bound;
            for (std::size_t j = 0; j < num_vars; ++j)
                if (j != k && !w.row.coeffs[j].is_zero()) rest -= w.row.coeffs[j] * x[j];
            const EpsNum v = (Rational(1) / a) * rest;
            const bool strict = w.row.strict();
            if (a.sign() > 0) {
                if (!lo || v > lo->value || (v == lo->value && strict)) lo = Bound{v, strict};
            } else {
                if (!hi || v < hi->value || (v == hi->value && strict)) hi = Bound{v, strict};
            }
        }
        x[k] = pick_value(lo, hi);
    }
    return x;
}

/// Witness without certificate bookkeeping.
std::optional<std::vector<EpsNum>> fm_witness(const LinSystem& sys) {
    auto elim = eliminate(to_work(sys, false), iota(sys.num_vars), true, true);
    if (elim.contradiction) return std::nullopt;
    return back_substitute(elim, sys.num_vars);
}

}  // namespace

LpResult fm_feasible(const LinSystem& sys) {
    auto elim = eliminate(to_work(sys, true), iota(sys.num_vars), true, false);
    if (elim.contradiction) return LpResult::infeasible({std::move(elim.contradiction->lambda)});
    return LpResult::feasible(back_substitute(elim, sys.num_vars));
}

bool fm_is_feasible(const LinSystem& sys) {
    return !eliminate(to_work(sys, false), iota(sys.num_vars), false, true).contradiction.has_value();
}

LinSystem fm_project(const LinSystem& sys, std::span<const std::size_t> keep) {
    std::vector<bool> kept(sys.num_vars, false);
    for (auto k : keep) kept.at(k) = true;
    std::vector<std::size_t> order;
    for (std::size_t j = 0; j < sys.num_vars; ++j)
        if (!kept[j]) order.push_back(j);
    auto elim = eliminate(to_work(sys, false), order, false, true);
    LinSystem out(sys.num_vars);
    if (elim.contradiction) {
        out.rows.push_back(std::move(elim.contradiction->row));
        return out;
    }
    for (auto& w : elim.stages.back()) out.rows.push_back(std::move(w.row));
    return out;
}

bool implies(const LinSystem& sys, const Row& row) {
    LinSystem test = sys;
    test.add(negate(row));
    return !fm_is_feasible(test);
}

bool verify_certificate(const LinSystem& sys, const FarkasCertificate& cert) {
    if (cert.multipliers.size() != sys.rows.size()) return false;
    std::vector<Rational> sum(sys.num_vars);
    EpsNum bound;
    bool strict = false;
    bool any = false;
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
        const Rational& l = cert.multipliers[i];
        if (l.sign() < 0) return false;
        if (l.is_zero()) continue;
        any = true;
        for (std::size_t j = 0; j < sys.num_vars; ++j) sum[j] += l * sys.rows[i].coeffs[j];
        bound += l * sys.rows[i].bound;
        strict = strict || sys.rows[i].strict();
    }
    if (!any) return false;
    if (!std::all_of(sum.begin(), sum.end(), [](const Rational& c) { return c.is_zero(); })) return false;
    // 0 >= bound fails iff bound > 0; 0 > bound fails iff bound >= 0.
    return strict ? bound >= EpsNum() : bound > EpsNum();
}

std::uint64_t selection_count(std::span<const Disjunction> clauses) {
    std::uint64_t n = 1;
    for (const auto& c : clauses) n = saturating_mul(n, c.size());
    return n;
}

namespace {

class SelectionSearch {
public:
    SelectionSearch(const LinSystem& base, std::span<const Disjunction> clauses,
                    const std::function<bool(const Selection&)>& visit)
        : clauses_(clauses), visit_(visit), sys_(base) {}

    void run() {
        auto w = fm_witness(sys_);
        if (!w) return;
        choices_.clear();
        descend(0, *w);
    }

private:
    // `point` satisfies sys_. Returns false once the visitor asked to stop.
    bool descend(std::size_t depth, const std::vector<EpsNum>& point) {
        if (depth == clauses_.size()) return visit_(Selection{choices_, point});
        const auto& alts = clauses_[depth];
        for (std::size_t i = 0; i < alts.size(); ++i) {
            const std::size_t mark = sys_.rows.size();
            bool holds = true;
            for (const auto& r : alts[i]) {
                sys_.add(r);
                holds = holds && r.holds(point);
            }
            bool keep_going = true;
            std::optional<std::vector<EpsNum>> next;
            if (!holds) next = fm_witness(sys_);
            if (holds || next) {
                choices_.push_back(i);
                keep_going = descend(depth + 1, holds ? point : *next);
                choices_.pop_back();
            }
            sys_.rows.resize(mark);
            if (!keep_going) return false;
        }
        return true;
    }

    std::span<const Disjunction> clauses_;
    const std::function<bool(const Selection&)>& visit_;
    LinSystem sys_;
    std::vector<std::size_t> choices_;
};

void check_budget(std::span<const Disjunction> clauses, std::uint64_t budget) {
    const auto n = selection_count(clauses);
    if (n > budget)
        throw BudgetExceeded("disjunct selection count " + (n == UINT64_MAX ? std::string(">2^64") : std::to_string(n)) +
                             " exceeds budget " + std::to_string(budget));
}

}  // namespace

std::optional<Selection> first_feasible_selection(const LinSystem& base, std::span<const Disjunction> clauses,
                                                  std::uint64_t budget) {
    check_budget(clauses, budget);
    std::optional<Selection> found;
    const std::function<bool(const Selection&)> visit = [&](const Selection& s) {
        found = s;
        return false;
    };
    SelectionSearch(base, clauses, visit).run();
    return found;
}

void for_each_feasible_selection(const LinSystem& base, std::span<const Disjunction> clauses, std::uint64_t budget,
                                 const std::function<bool(const Selection&)>& visit) {
    check_budget(clauses, budget);
    SelectionSearch(base, clauses, visit).run();
}

std::vector<Disjunction> formula_disjunctions(const Formula& f) {
    std::vector<Disjunction> out;
    out.reserve(f.clauses().size());
    for (const auto& clause : f.clauses()) {
        Disjunction d;
        for (const auto& lit : clause.literals) d.push_back({literal_row(lit, f.num_vars())});
        out.push_back(std::move(d));
    }
    return out;
}

Threshold row_threshold(const Row& row, std::span<const EpsNum> point) {
    const EpsNum diff = row.lhs(point) - row.bound;
    const Rational& d0 = diff.real();
    const Rational& d1 = diff.eps();
    Threshold t;
    if (d0.sign() > 0) {
        t.holds_near_zero = true;
        if (d1.sign() < 0) {
            t.sup = d0 / (-d1);
            t.sup_attained = !row.strict();
        }
    } else if (d0.is_zero()) {
        t.holds_near_zero = d1.sign() > 0 || (d1.is_zero() && !row.strict());
    }
    return t;
}

Rational choose_epsilon(std::span<const Row> rows, std::span<const EpsNum> point) {
    std::optional<Rational> t0;
    for (const auto& r : rows) {
        const Threshold t = row_threshold(r, point);
        if (!t.holds_near_zero) throw ConsistencyError("row does not hold near 0+ at the given V point");
        if (t.sup && (!t0 || *t.sup < *t0)) t0 = *t.sup;
    }
    return t0 ? *t0 / Rational(2) : Rational(1);
}

std::vector<Rational> instantiate(std::span<const EpsNum> point, const Rational& t) {
    std::vector<Rational> out;
    out.reserve(point.size());
    for (const auto& p : point) out.push_back(p.at(t));
    return out;
}

}  // namespace tropisolve
