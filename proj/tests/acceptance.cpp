// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "tropisolve/formula.hpp"
#include "tropisolve/games.hpp"
#include "tropisolve/generators.hpp"
#include "tropisolve/horn_solver.hpp"
#include "tropisolve/ppcompile.hpp"
#include "tropisolve/tropical.hpp"

using namespace tropisolve;
using gen::Rng;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", s);
    return buf;
}

// Population shared by criteria 1 and 2.
std::vector<OperatorSystem> duality_population() {
    Rng rng(20240601);
    gen::OperatorShape shape;  // n <= 4, arity <= 3, offsets -3..3, weights 1..3
    std::vector<OperatorSystem> out;
    for (int i = 0; i < 500; ++i) out.push_back(gen::random_operator_system(rng, shape));
    return out;
}

Outcome criterion_duality(bool strict_primal) {
    const auto start = Clock::now();
    int ok = 0;
    const auto population = duality_population();
    for (const auto& o : population) {
        const auto p = solve_primal(o, strict_primal);
        const auto d = solve_dual(o, !strict_primal);
        bool good = p.has_value() != d.has_value();
        if (p) good = good && verify_primal_witness(o, *p, strict_primal);
        if (d) good = good && verify_dual_certificate(o, *d, !strict_primal);
        ok += good ? 1 : 0;
    }
    const double t = seconds_since(start);
    Outcome r;
    r.pass = ok == 500 && (!strict_primal || t <= 60.0);
    r.detail = std::to_string(ok) + "/500 exactly-one, " + fmt_seconds(t);
    return r;
}

Outcome criterion_games() {
    Rng rng(777);
    gen::OperatorShape shape;
    shape.max_dim = 3;
    int consistent = 0;
    int close = 0;
    const Rational beta(999, 1000);
    const Rational tol(1, 10);
    for (int i = 0; i < 200; ++i) {
        const auto o = gen::random_operator_system(rng, shape);
        const Game g = build_game(o);
        const auto nu1 = limiting_average_values(g);
        bool all_pos = true;
        for (const auto& v : nu1) all_pos = all_pos && v.sign() > 0;
        const bool primal = solve_primal(o, true).has_value();
        const bool dual = solve_dual(o, false).has_value();
        if (all_pos == primal && !all_pos == dual) ++consistent;
        const auto nub = discounted_values(g, beta);
        bool near = true;
        for (std::size_t v = 0; v < g.size(); ++v) near = near && (nub[v] - nu1[v]).abs() <= tol;
        if (near) ++close;
    }
    Outcome r;
    r.pass = consistent == 200 && close * 100 >= 95 * 200;
    r.detail = std::to_string(consistent) + "/200 biconditionals, " + std::to_string(close) +
               "/200 within 1/10 at beta=999/1000";
    return r;
}

Outcome criterion_restricted() {
    const auto start = Clock::now();
    Rng rng(4242);
    gen::HornShape shape;  // n <= 5, <= 6 clauses, <= 3 literals, data in [-3,3]
    int agree = 0;
    int witnesses_ok = 0;
    int sat = 0;
    for (int i = 0; i < 500; ++i) {
        const Formula f = gen::random_restricted_horn(rng, shape);
        const auto fast = solve_restricted(f);
        const auto slow = brute_force_sat(f);
        if (fast.sat == slow.sat) ++agree;
        if (fast.sat) {
            ++sat;
            if (verify_witness(f, fast.witness)) ++witnesses_ok;
        }
    }
    const double t = seconds_since(start);
    Outcome r;
    r.pass = agree == 500 && witnesses_ok == sat && t <= 30.0;
    r.detail = std::to_string(agree) + "/500 agree, " + std::to_string(witnesses_ok) + "/" + std::to_string(sat) +
               " witnesses verified, " + fmt_seconds(t);
    return r;
}

Outcome criterion_csp() {
    Rng rng(9001);
    int agree = 0;
    int certs_ok = 0;
    int unsat = 0;
    int translated_ok = 0;
    int sat = 0;
    const Rational shifts[] = {Rational(-7), Rational(1, 3), Rational(10)};
    for (int i = 0; i < 300; ++i) {
        const auto inst = gen::random_csp(rng, 5, 6);
        const auto res = solve_csp(inst);
        const Formula f = csp_to_formula(inst);
        const bool oracle = brute_force_sat(f).sat;
        if (res.sat == oracle) ++agree;
        if (res.sat) {
            ++sat;
            bool all = eval_point(f, res.witness);
            for (const auto& c : shifts) all = all && eval_point(f, shift_point(res.witness, c));
            if (all) ++translated_ok;
        } else {
            ++unsat;
            if (verify_dual_certificate(res.system, res.certificate, true)) ++certs_ok;
        }
    }
    Outcome r;
    r.pass = agree == 300 && certs_ok == unsat && translated_ok == sat;
    r.detail = std::to_string(agree) + "/300 agree, " + std::to_string(certs_ok) + "/" + std::to_string(unsat) +
               " certificates, " + std::to_string(translated_ok) + "/" + std::to_string(sat) + " translated witnesses";
    return r;
}

// Documented size bound for compile_gamma0(M_c): atom_count <= kA + kB * b.
constexpr long kA = 8;
constexpr long kB = 1;

Outcome criterion_compiler() {
    Rng rng(31337);
    int equivalent = 0;
    for (int i = 0; i < 100; ++i) {
        const auto n = static_cast<std::size_t>(gen::uniform_int(rng, 1, 3));
        const Clause clause = gen::random_horn_clause(rng, n, 3, 4, 8);
        const auto names = default_var_names(n);
        const Formula f(names, {clause});
        const auto pp = compile_gamma0(clause, names);
        if (equivalence_check(ExistsFormula{f, {}}, pp_to_horn(pp))) ++equivalent;
    }
    std::vector<long> counts;
    bool bounded = true;
    for (int b = 1; b <= 24; ++b) {
        const Rational c = Rational((1LL << b) + 3);
        const auto count = static_cast<long>(compile_gamma0(gen::max_atoms_formula(c)).atom_count());
        counts.push_back(count);
        bounded = bounded && count <= kA + kB * b;
    }
    // Affine growth: constant first differences from b = 2 on.
    bool affine = true;
    for (std::size_t i = 2; i < counts.size(); ++i) affine = affine && counts[i] - counts[i - 1] == counts[2] - counts[1];
    Outcome r;
    r.pass = equivalent == 100 && bounded && affine;
    r.detail = std::to_string(equivalent) + "/100 round trips, atoms(b=1..24) " + std::to_string(counts.front()) +
               ".." + std::to_string(counts.back()) + ", bound " + std::to_string(kA) + "+" + std::to_string(kB) +
               "*b " + (bounded ? "holds" : "violated") + ", differences " + (affine ? "constant" : "vary");
    return r;
}

Outcome criterion_zero_plus() {
    Rng rng(55);
    int right = 0;
    int samples_ok = 0;
    int sat_cases = 0;
    for (int i = 0; i < 100; ++i) {
        const bool satisfiable = i < 50;
        const auto zc = gen::crafted_zero_plus(rng, satisfiable, static_cast<std::size_t>(i));
        const auto res = sat_in_zero_plus(zc.formula, zc.t_index);
        if (res.sat == zc.expected) ++right;
        if (res.sat) {
            ++sat_cases;
            if (res.t.sign() > 0 && res.sample[zc.t_index] == res.t && eval_point(zc.formula, res.sample))
                ++samples_ok;
        }
    }
    Outcome r;
    r.pass = right == 100 && samples_ok == sat_cases;
    r.detail = std::to_string(right) + "/100 verdicts, " + std::to_string(samples_ok) + "/" +
               std::to_string(sat_cases) + " instantiations evaluate true";
    return r;
}

Outcome criterion_max_closure() {
    Rng rng(8);
    int closed = 0;
    for (int i = 0; i < 100; ++i) {
        const Formula f = gen::random_horn(rng);
        if (is_max_closed_semantic(f)) ++closed;
    }
    const Formula mc = gen::max_atoms_formula(Rational(2));
    const Formula lin = parse_formula("-x1 + x2 + x3 >= 0\n");
    const Formula lt = parse_formula("x1 < x2 | x1 < x3\n");
    const bool ex1 = is_max_closed_semantic(mc) && is_tropically_convex_syntactic(mc);
    const bool ex2 = is_max_closed_semantic(lin) && !is_tropically_convex_syntactic(lin);
    const bool ex3 = is_horn(lt) && !is_restricted_horn(lt);
    Outcome r;
    r.pass = closed == 100 && ex1 && ex2 && ex3;
    r.detail = std::to_string(closed) + "/100 max-closed, examples " + (ex1 ? "ok" : "bad") + "/" +
               (ex2 ? "ok" : "bad") + "/" + (ex3 ? "ok" : "bad");
    return r;
}

}  // namespace

int main() {
    const auto start = Clock::now();
    struct Entry {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const Entry entries[] = {
        {1, "duality exactly-one (strict primal, non-strict dual)", [] { return criterion_duality(true); }},
        {2, "non-strict duality (non-strict primal, strict dual)", [] { return criterion_duality(false); }},
        {3, "game values vs primal/dual", criterion_games},
        {4, "restricted Horn solver vs brute force", criterion_restricted},
        {5, "tropical CSP solver", criterion_csp},
        {6, "pp compiler round trip and size", criterion_compiler},
        {7, "satisfiability in 0+", criterion_zero_plus},
        {8, "max-closure of Horn formulas", criterion_max_closure},
    };
    int failures = 0;
    for (const auto& e : entries) {
        Outcome o;
        try {
            o = e.run();
        } catch (const std::exception& ex) {
            o.pass = false;
            o.detail = std::string("exception: ") + ex.what();
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << e.id << "] " << e.name << ": " << o.detail << std::endl;
    }
    const double total = seconds_since(start);
    std::cout << "total " << fmt_seconds(total) << (total <= 300.0 ? "" : " (over 5 minute target)") << std::endl;
    return failures == 0 && total <= 300.0 ? 0 : 1;
}
