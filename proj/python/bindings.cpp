#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tropisolve/formula.hpp"
#include "tropisolve/games.hpp"
#include "tropisolve/horn_solver.hpp"
#include "tropisolve/ppcompile.hpp"
#include "tropisolve/tropical.hpp"

namespace py = pybind11;
using namespace tropisolve;

namespace {

py::object fraction(const Rational& r) {
    static py::object cls = py::module_::import("fractions").attr("Fraction");
    return cls(r.to_string());
}

py::list fractions(const std::vector<Rational>& v) {
    py::list out;
    for (const auto& r : v) out.append(fraction(r));
    return out;
}

// +inf becomes None; eps-carrying values stay strings.
py::object ext_value(const ExtEps& y) {
    if (y.is_inf()) return py::none();
    if (y.value().is_rational()) return fraction(y.value().real());
    return py::str(y.value().to_string());
}

Budget budget_from(std::uint64_t selections) {
    Budget b;
    if (selections) b.selections = selections;
    return b;
}

py::dict classify(const std::string& text) {
    const Formula f = parse_formula(text);
    py::dict d;
    d["horn"] = is_horn(f);
    d["restricted"] = is_restricted_horn(f);
    d["tropical"] = is_tropically_convex_syntactic(f);
    d["max_closed"] = f.num_vars() <= kMaxSemanticVars ? py::cast(is_max_closed_semantic(f)) : py::none();
    return d;
}

py::dict solve(const std::string& text, std::uint64_t selections) {
    const Formula f = parse_formula(text);
    const bool restricted = is_restricted_horn(f);
    const SolveResult res = restricted ? solve_restricted(f) : brute_force_sat(f, budget_from(selections));
    py::dict d;
    d["sat"] = res.sat;
    d["method"] = restricted ? "restricted" : "brute_force";
    d["variables"] = f.var_names();
    d["witness"] = fractions(res.witness);
    return d;
}

py::dict tropical(const std::string& text) {
    const CspInstance inst = parse_csp(text);
    const CspResult res = solve_csp(inst);
    py::dict d;
    d["sat"] = res.sat;
    d["variables"] = inst.names;
    if (res.sat) {
        d["witness"] = fractions(res.witness);
    } else {
        py::list y;
        for (const auto& v : res.certificate.y) y.append(ext_value(v));
        d["certificate"] = y;
        d["system"] = print_operator_system(res.system);
    }
    return d;
}

py::dict duality(const std::string& text) {
    const OperatorSystem o = parse_operator_system(text);
    const DualityReport r = check_duality(o);
    py::dict d;
    d["primal_strict"] = r.primal_strict ? py::object(fractions(r.primal_strict->x)) : py::none();
    d["primal_nonstrict"] = r.primal_nonstrict ? py::object(fractions(r.primal_nonstrict->x)) : py::none();
    auto dual = [](const std::optional<DualCertificate>& c) -> py::object {
        if (!c) return py::none();
        py::list y;
        for (const auto& v : c->y) y.append(ext_value(v));
        return y;
    };
    d["dual_nonstrict"] = dual(r.dual_nonstrict);
    d["dual_strict"] = dual(r.dual_strict);
    return d;
}

py::dict game_values(const std::string& ops_text, const std::string& beta) {
    const Game g = build_game(parse_operator_system(ops_text));
    py::dict d;
    d["vertices"] = g.names;
    d["limiting_average"] = fractions(limiting_average_values(g));
    d["discounted"] = fractions(discounted_values(g, Rational::parse(beta)));
    return d;
}

py::tuple compile(const std::string& text, const std::string& target) {
    const Formula f = parse_formula(text);
    PPFormula pp;
    if (target == "gamma0")
        pp = compile_gamma0(f);
    else if (target == "gammat")
        pp = compile_gamma_t(f);
    else
        throw py::value_error("target must be 'gamma0' or 'gammat'");
    return py::make_tuple(print_pp(pp), pp.atom_count());
}

bool equivalent(const std::string& a, const std::string& b) {
    return equivalence_check(parse_formula(a), parse_formula(b));
}

}  // namespace

PYBIND11_MODULE(_tropisolve, m) {
    m.doc() = "Exact solvers for max-closed semilinear constraints";

    // Later registrations are tried first, so the base class goes first.
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

    m.def("normalize", [](const std::string& text) { return print_formula(parse_formula(text)); },
          "Parse a clause file and print its normal form.");
    m.def("classify", &classify, py::arg("text"));
    m.def("solve", &solve, py::arg("text"), py::arg("selections") = 0,
          "Restricted Horn solver, or brute force for other Horn formulas.");
    m.def("tropical", &tropical, py::arg("text"));
    m.def("duality", &duality, py::arg("text"));
    m.def("game_values", &game_values, py::arg("ops"), py::arg("beta") = "9/10");
    m.def("compile", &compile, py::arg("text"), py::arg("target") = "gamma0",
          "Returns (pp text, atom count).");
    m.def("equivalent", &equivalent, py::arg("a"), py::arg("b"));
}
