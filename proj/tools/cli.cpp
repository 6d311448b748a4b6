#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tropisolve/formula.hpp"
#include "tropisolve/games.hpp"
#include "tropisolve/generators.hpp"
#include "tropisolve/horn_solver.hpp"
#include "tropisolve/ppcompile.hpp"
#include "tropisolve/tropical.hpp"

namespace tropisolve::cli {

namespace {

using nlohmann::json;

struct Config {
    std::string input;
    bool json_output = false;
    std::uint64_t selections = 0;
    std::uint64_t patterns = 0;
    std::uint64_t strategy_pairs = 0;
    std::string target = "gamma0";
    std::string beta = "9/10";
    std::uint64_t seed = 1;
};

class InputError : public Error {
public:
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Budget effective_budget(const Config& cfg) {
    Budget b;
    if (const char* env = std::getenv("TROPISOLVE_BUDGET")) b = parse_budget(env, b);
    if (cfg.selections) b.selections = cfg.selections;
    if (cfg.patterns) b.patterns = cfg.patterns;
    if (cfg.strategy_pairs) b.strategy_pairs = cfg.strategy_pairs;
    return b;
}

template <class T>
std::string tuple_text(const std::vector<T>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
    return s + ")";
}

template <class T>
json string_array(const std::vector<T>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.to_string());
    return a;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// classify --------------------------------------------------------------

int cmd_classify(const Config& cfg, std::ostream& out) {
    const Formula f = parse_formula(read_file(cfg.input));
    const bool horn = is_horn(f);
    std::vector<std::size_t> columns;
    if (horn)
        for (const auto& c : f.clauses()) columns.push_back(horn_columns(c, f.num_vars()).front() + 1);
    const bool restricted = is_restricted_horn(f);
    const bool tropical = is_tropically_convex_syntactic(f);
    std::optional<bool> semantic;
    if (f.num_vars() <= kMaxSemanticVars) semantic = is_max_closed_semantic(f, effective_budget(cfg));
    if (cfg.json_output) {
        json j = {{"horn", horn},
                  {"columns", columns},
                  {"restricted", restricted},
                  {"tropical", tropical},
                  {"max_closed", semantic ? json(*semantic) : json(nullptr)}};
        out << j.dump(2) << "\n";
    } else {
        std::string ks;
        for (std::size_t i = 0; i < columns.size(); ++i) ks += (i ? "," : "") + std::to_string(columns[i]);
        out << "horn: " << yes_no(horn) << (horn && !columns.empty() ? " (k=" + ks + ")" : "")
            << "; restricted: " << yes_no(restricted) << "; tropical: " << yes_no(tropical) << "\n";
        out << "max-closed (semantic): "
            << (semantic ? yes_no(*semantic) : "skipped (more than " + std::to_string(kMaxSemanticVars) + " variables)")
            << "\n";
    }
    return horn ? kOk : kNegative;
}

// solve -----------------------------------------------------------------

int cmd_solve(const Config& cfg, std::ostream& out, std::ostream& err) {
    const Formula f = parse_formula(read_file(cfg.input));
    const bool restricted = is_restricted_horn(f);
    SolveResult res;
    if (restricted) {
        res = solve_restricted(f);
    } else {
        err << "warning: formula is not restricted Horn; falling back to brute-force search, which may exceed the "
               "selection budget\n";
        res = brute_force_sat(f, effective_budget(cfg));
    }
    const auto& names = f.var_names();
    if (cfg.json_output) {
        json removed = json::array();
        for (const auto& r : res.trace.removed)
            removed.push_back({{"clause", r.clause + 1}, {"literal", r.literal + 1}, {"pass", r.pass}});
        json j = {{"sat", res.sat},
                  {"method", restricted ? "restricted" : "brute_force"},
                  {"variables", names},
                  {"witness", string_array(res.witness)},
                  {"removed", removed},
                  {"emptied_clause", res.trace.emptied_clause ? json(*res.trace.emptied_clause + 1) : json(nullptr)}};
        out << j.dump(2) << "\n";
    } else {
        if (res.sat) {
            out << "SAT x=" << tuple_text(res.witness) << "\n";
        } else {
            out << "UNSAT\n";
        }
        for (const auto& r : res.trace.removed)
            out << "removed: clause " << r.clause + 1 << " literal " << r.literal + 1 << " (pass " << r.pass
                << "): " << print_literal(f.clauses()[r.clause].literals[r.literal], names) << "\n";
        if (res.trace.emptied_clause) out << "emptied clause: " << *res.trace.emptied_clause + 1 << "\n";
    }
    return res.sat ? kOk : kNegative;
}

// tropical --------------------------------------------------------------

int cmd_tropical(const Config& cfg, std::ostream& out) {
    const CspInstance inst = parse_csp(read_file(cfg.input));
    const CspResult res = solve_csp(inst, effective_budget(cfg));
    if (cfg.json_output) {
        json j = {{"sat", res.sat}, {"variables", inst.names}};
        if (res.sat) {
            j["witness"] = string_array(res.witness);
            j["t0"] = res.t0 ? json(res.t0->to_string()) : json(nullptr);
        } else {
            j["system"] = print_operator_system(res.system);
            j["certificate"] = string_array(res.certificate.y);
        }
        out << j.dump(2) << "\n";
    } else if (res.sat) {
        out << "SAT x=" << tuple_text(res.witness);
        if (res.t0) out << " (t0=" << *res.t0 << ")";
        out << "\n";
    } else {
        out << "UNSAT\n";
        out << print_operator_system(res.system);
        out << "dual certificate:";
        for (std::size_t i = 0; i < res.certificate.y.size(); ++i)
            out << " " << res.system.names[i] << "=" << res.certificate.y[i];
        out << "\n";
    }
    return res.sat ? kOk : kNegative;
}

// duality ---------------------------------------------------------------

std::string primal_text(const std::optional<PrimalWitness>& w) {
    if (!w) return "UNSAT";
    std::string s = "SAT x=" + tuple_text(w->x);
    if (w->epsilon) s += " at eps=" + w->epsilon->to_string();
    return s;
}

std::string dual_text(const std::optional<DualCertificate>& c) {
    return c ? "SAT y=" + tuple_text(c->y) : "UNSAT";
}

json primal_json(const std::optional<PrimalWitness>& w) {
    if (!w) return {{"sat", false}};
    return {{"sat", true},
            {"x", string_array(w->x)},
            {"epsilon", w->epsilon ? json(w->epsilon->to_string()) : json(nullptr)}};
}

json dual_json(const std::optional<DualCertificate>& c) {
    if (!c) return {{"sat", false}};
    return {{"sat", true}, {"y", string_array(c->y)}};
}

int cmd_duality(const Config& cfg, std::ostream& out) {
    const OperatorSystem o = parse_operator_system(read_file(cfg.input));
    const DualityReport r = check_duality(o, effective_budget(cfg));
    if (cfg.json_output) {
        json j = {{"variables", o.names},
                  {"primal_strict", primal_json(r.primal_strict)},
                  {"dual_nonstrict", dual_json(r.dual_nonstrict)},
                  {"primal_nonstrict", primal_json(r.primal_nonstrict)},
                  {"dual_strict", dual_json(r.dual_strict)}};
        out << j.dump(2) << "\n";
    } else {
        out << "P strict: " << primal_text(r.primal_strict) << "; D nonstrict: " << dual_text(r.dual_nonstrict)
            << "\n";
        out << "P nonstrict: " << primal_text(r.primal_nonstrict) << "; D strict: " << dual_text(r.dual_strict)
            << "\n";
    }
    return r.primal_strict ? kOk : kNegative;
}

// game ------------------------------------------------------------------

bool looks_like_game(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto p = line.find_first_not_of(" \t\r");
        if (p == std::string::npos || line[p] == '#') continue;
        return line.compare(p, 9, "vertices:") == 0;
    }
    return false;
}

int cmd_game(const Config& cfg, std::ostream& out) {
    const std::string text = read_file(cfg.input);
    const Game g = looks_like_game(text) ? parse_game(text) : build_game(parse_operator_system(text));
    Rational beta;
    try {
        beta = Rational::parse(cfg.beta);
    } catch (const Error&) {
        throw InputError("bad --beta '" + cfg.beta + "'");
    }
    const Budget budget = effective_budget(cfg);
    const ValueVector nu1 = limiting_average_values(g, budget);
    const ValueVector nub = discounted_values(g, beta, budget);
    if (cfg.json_output) {
        json j = {{"vertices", g.names},
                  {"limiting_average", string_array(nu1)},
                  {"beta", beta.to_string()},
                  {"discounted", string_array(nub)}};
        out << j.dump(2) << "\n";
    } else {
        out << print_game(g);
        out << "limiting average:";
        for (std::size_t v = 0; v < g.size(); ++v) out << " " << g.names[v] << "=" << nu1[v];
        out << "\ndiscounted (beta=" << beta << "):";
        for (std::size_t v = 0; v < g.size(); ++v) out << " " << g.names[v] << "=" << nub[v];
        out << "\n";
    }
    return kOk;
}

// compile ---------------------------------------------------------------

int cmd_compile(const Config& cfg, std::ostream& out) {
    const Formula f = parse_formula(read_file(cfg.input));
    const PPFormula pp = cfg.target == "gamma0" ? compile_gamma0(f) : compile_gamma_t(f);
    if (cfg.json_output) {
        out << pp_to_json(pp, 2) << "\n";
    } else {
        out << print_pp(pp);
        out << "atoms: " << pp.atom_count() << "\n";
    }
    return kOk;
}

// selftest --------------------------------------------------------------

struct Suite {
    std::string name;
    int total;
    std::function<bool(gen::Rng&, const Budget&)> check;
};

std::vector<Suite> suites() {
    return {
        {"duality", 60,
         [](gen::Rng& rng, const Budget& b) {
             const auto o = gen::random_operator_system(rng);
             check_duality(o, b);
             return true;
         }},
        {"restricted-horn", 100,
         [](gen::Rng& rng, const Budget& b) {
             const Formula f = gen::random_restricted_horn(rng);
             const auto fast = solve_restricted(f);
             return fast.sat == brute_force_sat(f, b).sat && (!fast.sat || verify_witness(f, fast.witness));
         }},
        {"tropical-csp", 40,
         [](gen::Rng& rng, const Budget& b) {
             const auto inst = gen::random_csp(rng);
             return solve_csp(inst, b).sat == brute_force_sat(csp_to_formula(inst), b).sat;
         }},
        {"games", 30,
         [](gen::Rng& rng, const Budget& b) {
             gen::OperatorShape shape;
             shape.max_dim = 3;
             cross_check_duality(gen::random_operator_system(rng, shape), b);
             return true;
         }},
        {"compile-gamma0", 15,
         [](gen::Rng& rng, const Budget& b) {
             const auto n = static_cast<std::size_t>(gen::uniform_int(rng, 1, 3));
             const Clause c = gen::random_horn_clause(rng, n, 3, 4, 8);
             const auto names = default_var_names(n);
             return equivalence_check(ExistsFormula{Formula(names, {c}), {}}, pp_to_horn(compile_gamma0(c, names)), b);
         }},
        {"compile-gammat", 15,
         [](gen::Rng& rng, const Budget& b) {
             const auto n = static_cast<std::size_t>(gen::uniform_int(rng, 2, 3));
             const Clause c = gen::random_tropical_clause(rng, n, 3, 4, 8);
             const auto names = default_var_names(n);
             return equivalence_check(ExistsFormula{Formula(names, {c}), {}}, pp_to_horn(compile_gamma_t(c, names)),
                                      b);
         }},
        {"zero-plus", 20,
         [](gen::Rng& rng, const Budget& b) {
             const bool sat = gen::coin(rng);
             const auto zc = gen::crafted_zero_plus(rng, sat, static_cast<std::size_t>(gen::uniform_int(rng, 0, 4)));
             return sat_in_zero_plus(zc.formula, zc.t_index, b).sat == zc.expected;
         }},
    };
}

int cmd_selftest(const Config& cfg, std::ostream& out) {
    const Budget budget = effective_budget(cfg);
    gen::Rng rng(cfg.seed);
    json results = json::array();
    bool all = true;
    for (const auto& s : suites()) {
        int passed = 0;
        std::string first_error;
        for (int i = 0; i < s.total; ++i) {
            try {
                passed += s.check(rng, budget) ? 1 : 0;
            } catch (const ConsistencyError& e) {
                if (first_error.empty()) first_error = e.what();
            }
        }
        all = all && passed == s.total;
        if (cfg.json_output) {
            json r = {{"suite", s.name}, {"passed", passed}, {"total", s.total}};
            if (!first_error.empty()) r["error"] = first_error;
            results.push_back(r);
        } else {
            out << s.name << ": " << passed << "/" << s.total << (passed == s.total ? " ok" : " FAILED");
            if (!first_error.empty()) out << " (" << first_error << ")";
            out << "\n";
        }
    }
    if (cfg.json_output) out << json({{"seed", cfg.seed}, {"suites", results}, {"ok", all}}).dump(2) << "\n";
    return all ? kOk : kConsistency;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"Exact solver toolkit for max-closed semilinear constraints", "tropisolve"};
    app.require_subcommand(1);
    app.add_flag("--json", cfg.json_output, "Machine-readable output");
    app.add_option("--selections", cfg.selections, "Disjunct selection limit")->check(CLI::PositiveNumber);
    app.add_option("--patterns", cfg.patterns, "Dual finiteness pattern limit")->check(CLI::PositiveNumber);
    app.add_option("--strategy-pairs", cfg.strategy_pairs, "Strategy pair limit")->check(CLI::PositiveNumber);

    auto* classify = app.add_subcommand("classify", "Horn / restricted / tropical / semantic max-closure verdicts");
    classify->add_option("formula", cfg.input)->required();
    auto* solve = app.add_subcommand("solve", "Decide a Horn formula");
    solve->add_option("formula", cfg.input)->required();
    auto* tropical = app.add_subcommand("tropical", "Solve an LT/T+1/T-1/S3/M0 instance");
    tropical->add_option("atoms", cfg.input)->required();
    auto* duality = app.add_subcommand("duality", "Primal and dual problems of an operator system");
    duality->add_option("ops", cfg.input)->required();
    auto* game = app.add_subcommand("game", "Game values of an operator system or game file");
    game->add_option("file", cfg.input)->required();
    game->add_option("--beta", cfg.beta, "Discount factor in [0,1)");
    auto* compile = app.add_subcommand("compile", "Compile Horn clauses to a primitive positive formula");
    compile->add_option("formula", cfg.input)->required();
    compile->add_option("--target", cfg.target)->check(CLI::IsMember({"gamma0", "gammat"}));
    auto* selftest = app.add_subcommand("selftest", "Randomized property checks");
    selftest->add_option("--seed", cfg.seed);

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*classify) return cmd_classify(cfg, out);
        if (*solve) return cmd_solve(cfg, out, err);
        if (*tropical) return cmd_tropical(cfg, out);
        if (*duality) return cmd_duality(cfg, out);
        if (*game) return cmd_game(cfg, out);
        if (*compile) return cmd_compile(cfg, out);
        if (*selftest) return cmd_selftest(cfg, out);
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const ConsistencyError& e) {
        err << "consistency violation: " << e.what() << "\n";
        return kConsistency;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace tropisolve::cli
