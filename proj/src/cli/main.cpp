#include "recfun/blockvec.hpp"
#include "recfun/fom.hpp"
#include "recfun/formula.hpp"
#include "recfun/genfn.hpp"
#include "recfun/minsky.hpp"
#include "recfun/nat.hpp"
#include "recfun/perm.hpp"
#include "recfun/suites.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using nlohmann::json;
using namespace recfun;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Nat parse_nat(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw UsageError("not a decimal number: '" + s + "'");
    return Nat(s);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

std::vector<Nat> parse_nat_list(const std::string& s) {
    std::vector<Nat> out;
    for (const auto& p : split(s, ',')) out.push_back(parse_nat(p));
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool g_json = false;

void emit_value(const std::string& key, const std::string& value) {
    if (g_json)
        std::cout << json{{key, value}}.dump() << "\n";
    else
        std::cout << value << "\n";
}

// Prints a verification outcome and maps it to an exit code. A failing
// check always carries the first counterexample in `detail`.
int emit_verdict(const std::string& what, bool passed, std::uint64_t cases,
                 const std::string& detail) {
    if (g_json) {
        std::cout << json{{"check", what},
                          {"passed", passed},
                          {"cases", cases},
                          {"counterexample", passed ? "" : detail}}
                         .dump()
                  << "\n";
    } else {
        std::cout << what << ": " << (passed ? "PASS" : "FAIL") << " (" << cases
                  << " cases)";
        if (!passed) std::cout << " first counterexample: " << detail;
        std::cout << "\n";
    }
    return passed ? kExitOk : kExitVerifyFail;
}

const GenPredicate& find_pred(const std::string& name) {
    for (const auto& p : genfn_corpus())
        if (p.name == name) return p;
    std::string known;
    for (const auto& p : genfn_corpus()) known += " " + p.name;
    throw UsageError("unknown predicate '" + name + "'; known:" + known);
}

// Bit-graph predicates and bounds for the extraction targets.
struct XsTarget {
    GenPredicate psi;
    Poly bound;
    std::size_t arity;
};

XsTarget find_xs_target(const std::string& name) {
    auto bit_at = [](const Nat& v, const Nat& j) {
        return mpz_tstbit(v.get_mpz_t(), mpz_get_ui(j.get_mpz_t())) ? 1 : 0;
    };
    if (name == "identity")
        return {{name, 2,
                 [bit_at](const std::vector<Nat>& v) { return bit_at(v[0], v[1]); }},
                Poly{1, {{1, {1}}, {1, {0}}}},
                1};
    if (name == "monus")
        return {{name, 3,
                 [bit_at](const std::vector<Nat>& v) {
                     return bit_at(monus(v[0], v[1]), v[2]);
                 }},
                Poly{2, {{1, {1, 0}}, {1, {0, 0}}}},
                2};
    if (name == "bit")
        return {{name, 3,
                 [bit_at](const std::vector<Nat>& v) {
                     return bit_at(bit_get(v[0], v[1]), v[2]);
                 }},
                Poly{2, {{1, {0, 0}}}},
                2};
    if (name == "rm3")
        return {{name, 2,
                 [bit_at](const std::vector<Nat>& v) { return bit_at(v[0] % 3, v[1]); }},
                Poly{1, {{2, {0}}}},
                1};
    throw UsageError("unknown extraction target '" + name +
                     "'; known: identity monus bit rm3");
}

// --- fom helpers ----------------------------------------------------------

void check_word(const std::string& word) {
    if (word.empty() || word.find_first_not_of("01") != std::string::npos)
        throw UsageError("--word must be a non-empty 0/1 string");
}

Nat table_position(const std::vector<std::uint64_t>& ys, std::uint64_t l) {
    Nat pos = 0, wgt(static_cast<unsigned long>(l));
    for (std::size_t i = 0; i < ys.size(); ++i) {
        pos += Nat(static_cast<unsigned long>(ys[i] - 1)) * wgt;
        wgt *= static_cast<unsigned long>(l);
    }
    return pos;
}

int cmd_fom(const std::string& mode, const std::string& path, const std::string& word,
            const std::string& assign) {
    check_word(word);
    FomPtr f = parse_fom(read_file(path));
    std::size_t m = std::max<std::size_t>(fom_max_var(f), 1);
    std::uint64_t l = word.size();

    if (mode == "eval") {
        std::vector<std::uint64_t> ys(m, 1);
        if (!assign.empty()) {
            auto vals = parse_nat_list(assign);
            if (vals.size() != m)
                throw UsageError("--assign needs " + std::to_string(m) + " values");
            for (std::size_t i = 0; i < m; ++i) {
                ys[i] = to_u64(vals[i], "assignment");
                if (ys[i] < 1 || ys[i] > l)
                    throw UsageError("assignment out of range [1,|X|]");
            }
        }
        emit_value("value", eval_formula(f, WordModel{word, ys}) ? "1" : "0");
        return kExitOk;
    }
    if (mode == "compile") {
        HFunctionTable tab = compile_fom(f, m);
        emit_value("value", tab.f(word_value(word), pow2(Nat(l))).get_str());
        return kExitOk;
    }
    // verify: compiled table bit vs model checker for every assignment
    HFunctionTable tab = compile_fom(f, m);
    Nat table = tab.f(word_value(word), pow2(Nat(l)));
    std::uint64_t cases = 0;
    std::vector<std::uint64_t> ys(m, 1);
    for (;;) {
        int got = bit_get(table, table_position(ys, l)) != 0;
        int want = eval_formula(f, WordModel{word, ys});
        ++cases;
        if (got != want) {
            std::string a;
            for (auto y : ys) a += std::to_string(y) + ",";
            return emit_verdict("fom verify", false, cases,
                                "X=" + word + " ys=" + a + " table bit " +
                                    std::to_string(got) + ", model " +
                                    std::to_string(want));
        }
        std::size_t i = 0;
        while (i < m && ++ys[i] > l) ys[i++] = 1;
        if (i == m) break;
    }
    return emit_verdict("fom verify", true, cases, "");
}

// --- minsky helpers ---------------------------------------------------------

MinskyMachine load_machine(const std::string& path) {
    MachineFile mf = parse_machine_file(read_file(path));
    if (mf.general) return *mf.general;
    throw UsageError("machine file holds no general command table: " + path);
}

int cmd_minsky(const std::string& mode, const std::string& path,
               const std::string& input, const std::string& time_poly,
               const std::string& max_steps, const std::string& box) {
    MinskyMachine m = load_machine(path);

    if (mode == "run" || mode == "compile") {
        if (input.empty()) throw UsageError("--input is required");
        std::vector<Nat> in = parse_nat_list(input);
        if (in.size() != m.tapes)
            throw UsageError("machine has " + std::to_string(m.tapes) + " tapes, got " +
                             std::to_string(in.size()) + " inputs");
        if (mode == "run") {
            Nat steps;
            if (!time_poly.empty())
                steps = parse_time_poly(time_poly, in.size()).eval(in);
            else
                steps = max_steps.empty() ? Nat(10000) : parse_nat(max_steps);
            RunResult r = run(m, in, steps);
            if (g_json)
                std::cout << json{{"output", r.output.get_str()},
                                  {"steps", r.steps.get_str()}}
                                 .dump()
                          << "\n";
            else
                std::cout << r.output.get_str() << " (" << r.steps.get_str()
                          << " steps)\n";
            return kExitOk;
        }
        if (time_poly.empty()) throw UsageError("compile requires --time-poly");
        CompiledQ cq = compile(m, in, parse_time_poly(time_poly, in.size()));
        emit_value("value", extract(cq, q_eval(cq.params)).get_str());
        return kExitOk;
    }

    // verify: extractor(q_eval(compile)) vs simulator over the input box
    if (time_poly.empty()) throw UsageError("verify requires --time-poly");
    unsigned long lo = 0, hi = 10;
    if (!box.empty()) {
        auto dots = box.find("..");
        if (dots == std::string::npos) throw UsageError("--box expects LO..HI");
        lo = mpz_get_ui(parse_nat(box.substr(0, dots)).get_mpz_t());
        hi = mpz_get_ui(parse_nat(box.substr(dots + 2)).get_mpz_t());
        if (hi < lo) throw UsageError("--box expects LO..HI with LO <= HI");
    }
    Poly tp = parse_time_poly(time_poly, m.tapes);
    std::vector<Nat> in(m.tapes, Nat(lo));
    std::uint64_t cases = 0;
    for (;;) {
        CompiledQ cq = compile(m, in, tp);
        Nat got = extract(cq, q_eval(cq.params));
        Nat want = run(m, in, tp.eval(in)).output;
        ++cases;
        if (got != want) {
            std::string args;
            for (const auto& a : in) args += a.get_str() + ",";
            return emit_verdict("minsky verify", false, cases,
                                "input " + args + " extracted " + got.get_str() +
                                    ", simulator " + want.get_str());
        }
        std::size_t i = 0;
        while (i < in.size() && ++in[i] > hi) in[i++] = lo;
        if (i == in.size()) break;
    }
    return emit_verdict("minsky verify", true, cases, "");
}

// --- perm verification suites ----------------------------------------------

int perm_codes(const Nat& prefix) {
    struct Named {
        const char* name;
        Perm p;
    };
    std::vector<Named> ps = {
        {"px", perm_px()},
        {"del", perm_del()},
        {"move", perm_move()},
        {"place", perm_place()},
        {"swap1", perm_swap1()},
        {"swap2", perm_swap2()},
        {"s01", perm_sij(0, 1)},
        {"p_f floor-half", make_pf([](const Nat& x) { return Nat(x / 2); })},
        {"p_f square", make_pf([](const Nat& x) { return Nat(x * x); })},
        {"code x+y", code_of([](const Nat& x, const Nat& y) {
             return std::optional<Nat>(x + y);
         })},
    };
    std::uint64_t cases = 0;
    for (const auto& n : ps) {
        ++cases;
        if (!check_bijective_prefix(n.p, prefix))
            return emit_verdict("perm codes", false, cases,
                                std::string(n.name) + " not bijective on [0," +
                                    prefix.get_str() + ")");
    }
    // pairing round-trip
    for (unsigned long x = 0; x < 64; ++x)
        for (unsigned long y = 0; y < 64; ++y) {
            ++cases;
            Nat t = pair_c2(Nat(x), Nat(y));
            if (pair_c21(t) != x || pair_c22(t) != y)
                return emit_verdict("perm codes", false, cases,
                                    "c2 round trip fails at (" + std::to_string(x) +
                                        "," + std::to_string(y) + ")");
        }
    return emit_verdict("perm codes", true, cases, "");
}

int perm_delete(const Nat& prefix) {
    std::uint64_t cases = 0;
    Perm d = delete_combinator(perm_transposition(Nat(0), Nat(1)),
                               perm_transposition(Nat(0), Nat(2)),
                               [](const Nat& x) { return x == 0; }, Nat(64));
    ++cases;
    if (!check_equal_prefix(d, perm_transposition(Nat(0), Nat(1)), Nat(64)))
        return emit_verdict("perm delete", false, cases,
                            "transposition worked example mismatch");

    Perm psi =
        code_of([](const Nat& x, const Nat& y) { return std::optional<Nat>(x + y); });
    Perm sdo = delete_combinator(
        psi, perm_del(),
        [](const Nat& t) { return pair_c33(t) == 0 && pair_c32(t) % 2 == 0; },
        prefix);
    for (unsigned long x = 0; x < 8; ++x)
        for (unsigned long y = 0; y < 8; ++y) {
            ++cases;
            Nat t0 = pair_c3(Nat(x), Nat(y), Nat(0));
            Nat want = y % 2 == 0 ? pair_c3(Nat(x), Nat(y), Nat(x + y + 2)) : t0;
            if (sdo.fwd(t0) != want)
                return emit_verdict("perm delete", false, cases,
                                    "statdelodd at (" + std::to_string(x) + "," +
                                        std::to_string(y) + ")");
        }

    CorrectTriple tr = triple_from_tuples({{Nat(0), Nat(1), Nat(2), Nat(3)}});
    Perm sq = perm_power(
        perm_compose(triple_pair_matching(tr), triple_cross_matching(tr)), 2);
    ++cases;
    if (!check_equal_prefix(sq, tr.f, Nat(16)))
        return emit_verdict("perm delete", false, cases,
                            "megadelete (0,1,2,3) does not reconstruct f");
    return emit_verdict("perm delete", true, cases, "");
}

int perm_rolall(std::uint64_t n, const Nat& prefix) {
    if (n < 1 || n > 4) throw UsageError("--n must be in [1,4]");
    std::vector<CorrectTriple> triples;
    for (std::uint64_t i = 0; i < n; ++i)
        triples.push_back(triple_from_tuples(
            {{Nat(8 * i), Nat(8 * i + 1), Nat(8 * i + 2), Nat(8 * i + 3)}}));
    std::uint64_t cases = 0;
    try {
        // the constructor itself verifies each w_i = (s1 o s2)^2 pointwise
        TwoGenerator tg = two_generator_assembly(triples);
        cases = 2 * n + 2;
        if (!check_bijective_prefix(tg.rol, prefix))
            return emit_verdict("perm rolall", false, cases, "rol not bijective");
        if (!check_bijective_prefix(tg.all, prefix))
            return emit_verdict("perm rolall", false, cases, "all not bijective");
    } catch (const DomainError& e) {
        return emit_verdict("perm rolall", false, cases, e.what());
    }
    return emit_verdict("perm rolall", true, cases, "");
}

int perm_pipeline(const Nat& prefix) {
    std::uint64_t cases = 0;
    auto nb = [](const Nat& x) { return x % 2 == 0 ? Nat(x + 1) : Nat(x - 1); };
    Perm nbp{nb, nb, std::nullopt};
    auto fs = [](const Nat& x) {
        if (x % 4 == 0) return Nat(x + 2);
        if (x % 4 == 2) return Nat(x - 2);
        return x;
    };
    Perm f{fs, fs, std::nullopt};
    Perm built = even_matching_pipeline(f, {nbp}, Nat(128));
    ++cases;
    if (!check_equal_prefix(built, f, Nat(1 << 9)))
        return emit_verdict("perm pipeline", false, cases, "pipeline differs from f");
    ++cases;
    if (!check_bijective_prefix(built, prefix))
        return emit_verdict("perm pipeline", false, cases, "pipeline not bijective");

    StationaryTriples st = stationary_to_triples(f, regular_odds(), regular_evens());
    Perm prod = perm_compose(st.h2, perm_compose(st.h1, perm_compose(st.r1, st.r2)));
    ++cases;
    if (!check_equal_prefix(prod, f, Nat(1 << 9)))
        return emit_verdict("perm pipeline", false, cases, "h2 h1 r1 r2 != f");
    for (const CorrectTriple* t : {&st.tr1, &st.tr2, &st.th1, &st.th2}) {
        ++cases;
        if (!check_triple(*t, 100))
            return emit_verdict("perm pipeline", false, cases, "invalid triple");
    }
    return emit_verdict("perm pipeline", true, cases, "");
}

int cmd_suite_all(std::uint64_t seed) {
    auto results = suite_all(seed);
    bool all = true;
    for (const auto& r : results) all = all && r.passed;
    if (g_json) {
        json arr = json::array();
        for (const auto& r : results)
            arr.push_back({{"name", r.name},
                           {"cases", r.cases},
                           {"passed", r.passed},
                           {"counterexample", r.passed ? "" : r.detail}});
        std::cout << json{{"seed", seed}, {"suites", arr}, {"passed", all}}.dump()
                  << "\n";
    } else {
        std::cout << format_suite_report(results);
    }
    return all ? kExitOk : kExitVerifyFail;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"recfun: exact recursive-function machinery with verification suites"};
    app.require_subcommand(1);
    app.add_flag("--json", g_json, "machine-readable output (Nat values as strings)");

    // eval
    std::string expr, env_spec;
    auto* c_eval = app.add_subcommand("eval", "evaluate a basis-formula expression");
    c_eval->add_option("EXPR", expr)->required();
    c_eval->add_option("--env", env_spec, "comma-separated k=v variable bindings");

    // height
    std::string h_expr, tower = "exp2";
    auto* c_height = app.add_subcommand("height", "exponent-height of an expression");
    c_height->add_option("EXPR", h_expr)->required();
    c_height->add_option("--tower", tower)->check(CLI::IsMember({"exp2", "powxy"}));

    // binom
    std::string bx, by;
    auto* c_binom = app.add_subcommand("binom", "binomial coefficient via the closed formula");
    c_binom->add_option("X", bx)->required();
    c_binom->add_option("Y", by)->required();

    // genfn
    auto* c_genfn = app.add_subcommand("genfn", "generating-function calculus");
    c_genfn->require_subcommand(1);
    std::string g_pred, g_y, g_bound, g_z, g_target, g_args;
    auto* c_brute = c_genfn->add_subcommand("brute", "brute-force generating function");
    c_brute->add_option("--pred", g_pred)->required();
    c_brute->add_option("--y", g_y)->required();
    auto* c_count = c_genfn->add_subcommand("count", "counting construction");
    c_count->add_option("--pred", g_pred)->required();
    c_count->add_option("--bound", g_bound, "bound polynomial, e.g. \"x1+1\"")->required();
    c_count->add_option("--z", g_z)->required();
    auto* c_extract = c_genfn->add_subcommand("extract", "recover a function value");
    c_extract->add_option("--target", g_target)->required();
    c_extract->add_option("--args", g_args)->required();

    // fom
    auto* c_fom = app.add_subcommand("fom", "first-order word logic with majority");
    c_fom->require_subcommand(1);
    std::string f_file, f_word, f_assign, f_mode;
    for (const char* mode : {"eval", "compile", "verify"}) {
        auto* sub = c_fom->add_subcommand(mode);
        sub->add_option("FILE", f_file)->required();
        sub->add_option("--word", f_word)->required();
        if (std::string(mode) == "eval") sub->add_option("--assign", f_assign);
        sub->callback([mode, &f_mode]() { f_mode = mode; });
    }

    // minsky
    auto* c_minsky = app.add_subcommand("minsky", "counter machines and the Q compiler");
    c_minsky->require_subcommand(1);
    std::string m_file, m_input, m_poly, m_steps, m_box, m_mode;
    for (const char* mode : {"run", "compile", "verify"}) {
        auto* sub = c_minsky->add_subcommand(mode);
        sub->add_option("FILE", m_file)->required();
        sub->add_option("--input", m_input);
        sub->add_option("--time-poly", m_poly);
        sub->add_option("--max-steps", m_steps);
        if (std::string(mode) == "verify")
            sub->add_option("--box", m_box, "input range LO..HI per tape");
        sub->callback([mode, &m_mode]() { m_mode = mode; });
    }

    // perm
    auto* c_perm = app.add_subcommand("perm", "permutation-group constructions");
    c_perm->require_subcommand(1);
    std::string p_suite;
    std::uint64_t p_n = 1;
    std::string p_prefix = "4096";
    auto* c_pverify = c_perm->add_subcommand("verify");
    c_pverify->add_option("--suite", p_suite)
        ->required()
        ->check(CLI::IsMember({"codes", "delete", "rolall", "pipeline"}));
    c_pverify->add_option("--n", p_n);
    c_pverify->add_option("--prefix", p_prefix);

    // suite
    auto* c_suite = app.add_subcommand("suite", "property suites");
    c_suite->require_subcommand(1);
    std::uint64_t seed = 0;
    auto* c_all = c_suite->add_subcommand("all", "run every suite");
    c_all->add_option("--seed", seed);

    // let the global --json flag appear after any subcommand
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
        for (CLI::App* sub : a->get_subcommands([](const CLI::App*) { return true; })) {
            sub->fallthrough();
            enable_fallthrough(sub);
        }
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints help or the parse diagnostic
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (*c_eval) {
        Env env;
        if (!env_spec.empty())
            for (const auto& kv : split(env_spec, ',')) {
                auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw UsageError("--env entries must look like k=v");
                env[kv.substr(0, eq)] = parse_nat(kv.substr(eq + 1));
            }
        emit_value("value", evaluate(parse_formula(expr), env).get_str());
        return kExitOk;
    }
    if (*c_height) {
        auto hc = exp_height(parse_formula(h_expr),
                             tower == "exp2" ? Tower::Exp2 : Tower::PowXY);
        if (g_json)
            std::cout << json{{"height", hc.height}, {"tower", tower}}.dump() << "\n";
        else
            std::cout << hc.height << "\n";
        return kExitOk;
    }
    if (*c_binom) {
        Env env{{"x", parse_nat(bx)}, {"y", parse_nat(by)}};
        emit_value("value", evaluate(binomial_formula(), env).get_str());
        return kExitOk;
    }
    if (*c_brute) {
        emit_value("value", genfn_bruteforce(find_pred(g_pred), parse_nat(g_y)).get_str());
        return kExitOk;
    }
    if (*c_count) {
        const GenPredicate& p = find_pred(g_pred);
        Poly bound = parse_time_poly(g_bound, p.arity);
        emit_value("value", gen_count(p, bound, parse_nat(g_z)).get_str());
        return kExitOk;
    }
    if (*c_extract) {
        XsTarget t = find_xs_target(g_target);
        std::vector<Nat> args = parse_nat_list(g_args);
        if (args.size() != t.arity)
            throw UsageError("target takes " + std::to_string(t.arity) + " arguments");
        emit_value("value", xs_extract(t.psi, t.bound, args).get_str());
        return kExitOk;
    }
    if (*c_fom) return cmd_fom(f_mode, f_file, f_word, f_assign);
    if (*c_minsky) return cmd_minsky(m_mode, m_file, m_input, m_poly, m_steps, m_box);
    if (*c_pverify) {
        Nat prefix = parse_nat(p_prefix);
        if (p_suite == "codes") return perm_codes(prefix);
        if (p_suite == "delete") return perm_delete(prefix);
        if (p_suite == "rolall") return perm_rolall(p_n, prefix);
        return perm_pipeline(prefix);
    }
    if (*c_all) return cmd_suite_all(seed);
    throw UsageError("no subcommand selected");
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
}
