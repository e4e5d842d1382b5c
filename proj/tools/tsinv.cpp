// Command-line front end: catalog inspection and checking, linear and
// non-linear invariant synthesis, proof of individual Boolean functions,
// facet annotation of a database, gap-automaton export, database
// verification, and the pruning-search demo.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsinv/db.hpp"
#include "tsinv/solver.hpp"

namespace {

using namespace tsinv;

struct UsageError {
    std::string msg;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

void require_constraint(const std::string& name) {
    const auto names = default_catalog().constraint_names();
    for (const auto& n : names)
        if (n == name) return;
    throw UsageError{"unknown constraint: " + name};
}

std::vector<std::string> parse_pair(const std::string& s) {
    auto parts = split(s, ',');
    if (parts.size() != 2) throw UsageError{"--pair expects two comma-separated names: " + s};
    for (const auto& p : parts) require_constraint(p);
    return parts;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError{"cannot open file: " + path};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError{"cannot write file: " + path};
    out << text;
}

// ---------------------------------------------------------------------------
// catalog

std::string formula_string(const UpperBoundFormula& u) {
    std::ostringstream out;
    out << "max(0, " << u.m << "*floor((n - " << u.c << ")/" << u.d << ") + " << u.k << ")";
    if (u.min_n > 1) out << " for n >= " << u.min_n << ", else 0";
    return out.str();
}

int cmd_catalog_list() {
    const auto& cat = default_catalog();
    for (const auto& name : cat.constraint_names()) {
        auto spec = cat.constraint(name);
        std::cout << name << "\n"
                  << "  pattern: " << spec.regex->pattern << "\n"
                  << "  max(n) = " << formula_string(spec.upp()) << "\n";
    }
    return 0;
}

// Every constraint, every length up to max_n: the register automaton must
// agree with the direct pattern-occurrence scan on every signature, and the
// closed-form maximum must equal the brute-force maximum.
int cmd_catalog_check(long long max_n) {
    const auto& cat = default_catalog();
    int failures = 0;
    for (const auto& name : cat.constraint_names()) {
        auto spec = cat.constraint(name);
        const auto& machine = constraint_automaton(name);
        bool ok = true;
        for (long long n = 1; n <= max_n && ok; ++n) {
            const int len = static_cast<int>(n) - 1;
            const long long total = pow3(len);
            std::vector<long long> partial_max(static_cast<std::size_t>(worker_count()), 0);
            std::vector<long long> bad(static_cast<std::size_t>(worker_count()), -1);
            parallel_chunks(total, [&](int w, long long b, long long e) {
                for (long long i = b; i < e; ++i) {
                    Signature sig = signature_from_index(len, i);
                    long long scan = eval_constraint(spec, sig);
                    if (machine.run(sig)->outputs.at(0) != scan) {
                        if (bad[static_cast<std::size_t>(w)] < 0)
                            bad[static_cast<std::size_t>(w)] = i;
                        return;
                    }
                    partial_max[static_cast<std::size_t>(w)] =
                        std::max(partial_max[static_cast<std::size_t>(w)], scan);
                }
            });
            long long observed_max = 0;
            for (long long m : partial_max) observed_max = std::max(observed_max, m);
            for (long long i : bad)
                if (i >= 0) {
                    Signature sig = signature_from_index(len, i);
                    std::cout << name << ": machine disagrees with scan at n=" << n
                              << " signature \"" << std::string(sig.begin(), sig.end())
                              << "\"\n";
                    ok = false;
                    break;
                }
            if (ok && observed_max != upper_bound(spec, n)) {
                std::cout << name << ": formula max " << upper_bound(spec, n)
                          << " != observed max " << observed_max << " at n=" << n << "\n";
                ok = false;
            }
        }
        if (ok)
            std::cout << name << ": ok (machine and maximum verified for n <= " << max_n
                      << ")\n";
        else
            ++failures;
    }
    return failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// synth

int cmd_synth(const std::string& pair_arg, bool delayed, bool non_default,
              long long coeff_bound, const std::string& out_path) {
    auto pair = parse_pair(pair_arg);
    SynthOptions opt;
    opt.use_delayed = delayed;
    opt.non_default = non_default;
    opt.coeff_bound = coeff_bound;
    auto invs = synthesize(pair, opt);
    std::vector<InvariantRecord> records;
    for (const auto& inv : invs) {
        auto r = linear_record(inv, pair);
        r.params = {{"delayed", delayed}, {"coeff_bound", coeff_bound}};
        std::cout << r.render() << "\n";
        records.push_back(std::move(r));
    }
    std::cout << records.size() << " invariants\n";
    if (!out_path.empty()) write_file(out_path, serialize_database(records));
    return 0;
}

// ---------------------------------------------------------------------------
// mine

int cmd_mine(const std::string& pair_arg, long long n_lo, long long n_hi, int max_conjuncts,
             const std::string& out_path, const std::string& dataset_path) {
    auto pair = parse_pair(pair_arg);
    if (n_lo < 2 || n_hi < n_lo) throw UsageError{"need 2 <= n-lo <= n-hi"};
    HypothesisBounds bounds;
    bounds.max_conjuncts = max_conjuncts;
    auto res = mine_pair(pair, n_lo, n_hi, bounds);
    long long proved = 0;
    for (const auto& v : res.verdicts)
        if (v.proved()) ++proved;
    std::cout << "candidates: " << res.n_candidates << "\n"
              << "consistent with data: " << res.consistent.size() << "\n"
              << "proved: " << proved << "\n"
              << "final after dominance: " << res.final_set.size() << "\n";
    std::vector<InvariantRecord> records;
    for (const auto& inv : res.final_set) {
        auto r = nonlinear_record(inv, pair);
        r.params = {{"n_lo", n_lo}, {"n_hi", n_hi}, {"max_conjuncts", max_conjuncts}};
        std::cout << "  " << r.render() << "\n";
        records.push_back(std::move(r));
    }
    if (!out_path.empty()) write_file(out_path, serialize_database(records));
    if (!dataset_path.empty()) write_file(dataset_path, dataset_to_json(res.dataset).dump() + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// prove

AtomicRelation parse_atom(const std::string& text) {
    static const std::regex len_geq(R"(n >= (\d+))");
    static const std::regex len_mod(R"(n mod (\d+) = (\d+))");
    static const std::regex res_mod(R"(R(\d+) mod (\d+) = (\d+))");
    static const std::regex res_geq(R"(R(\d+) >= (\d+))");
    static const std::regex res_leq(R"(R(\d+) <= (\d+))");
    static const std::regex res_eq(R"(R(\d+) = (\d+))");
    static const std::regex res_gap(R"(R(\d+) = max(\d+)\(n\)(?: - (\d+))?)");
    static const std::regex res_lin(R"(R(\d+) = (?:(\d+) )?R(\d+)(?: \+ (\d+))?)");
    using K = AtomicRelation::Kind;
    auto num = [](const std::ssub_match& m) { return m.matched ? std::stoll(m.str()) : 0; };
    std::smatch m;
    if (std::regex_match(text, m, len_geq)) return {K::LenGeq, 0, 0, num(m[1]), 0};
    if (std::regex_match(text, m, len_mod)) return {K::LenMod, 0, 0, num(m[1]), num(m[2])};
    if (std::regex_match(text, m, res_mod))
        return {K::ResMod, static_cast<int>(num(m[1]) - 1), 0, num(m[2]), num(m[3])};
    if (std::regex_match(text, m, res_geq))
        return {K::ResGeq, static_cast<int>(num(m[1]) - 1), 0, 0, num(m[2])};
    if (std::regex_match(text, m, res_leq))
        return {K::ResLeq, static_cast<int>(num(m[1]) - 1), 0, 0, num(m[2])};
    if (std::regex_match(text, m, res_eq))
        return {K::ResEq, static_cast<int>(num(m[1]) - 1), 0, num(m[2]), 0};
    if (std::regex_match(text, m, res_gap)) {
        if (num(m[1]) != num(m[2]))
            throw UsageError{"maximum refers to a different factor: " + text};
        return {K::ResGapEq, static_cast<int>(num(m[1]) - 1), 0, num(m[3]), 0};
    }
    if (std::regex_match(text, m, res_lin))
        return {K::ResLin, static_cast<int>(num(m[1]) - 1), static_cast<int>(num(m[3]) - 1),
                m[2].matched ? num(m[2]) : 1, num(m[4])};
    throw UsageError{"cannot parse atomic relation: " + text};
}

BooleanFunction parse_function(const std::string& text) {
    BooleanFunction f;
    std::string rest = text;
    const std::string sep = " and ";
    std::size_t pos;
    while ((pos = rest.find(sep)) != std::string::npos) {
        f.conjuncts.push_back(parse_atom(rest.substr(0, pos)));
        rest = rest.substr(pos + sep.size());
    }
    f.conjuncts.push_back(parse_atom(rest));
    std::sort(f.conjuncts.begin(), f.conjuncts.end());
    return f;
}

int cmd_prove(const std::string& pair_arg, const std::string& function_text) {
    auto pair = parse_pair(pair_arg);
    auto f = parse_function(function_text);
    for (const auto& a : f.conjuncts) {
        if (a.which >= static_cast<int>(pair.size()) ||
            a.other >= static_cast<int>(pair.size()))
            throw UsageError{"factor index out of range in: " + a.render()};
    }
    RelationAutomatonCache cache(pair);
    auto verdict = prove(f, pair, cache);
    std::cout << f.render() << ": ";
    switch (verdict.status) {
        case NonLinearInvariant::Status::ProvedUniversal:
            std::cout << "proved (no supporting signature exists)\n";
            return 0;
        case NonLinearInvariant::Status::ProvedWithGuard:
            std::cout << "proved for n >= " << verdict.n_guard << "\n";
            return 0;
        case NonLinearInvariant::Status::DeskVerified:
            std::cout << "proved with automata exact up to length " << verdict.verified_to
                      << (verdict.n_guard > 0
                              ? " (for n >= " + std::to_string(verdict.n_guard) + ")"
                              : "")
                      << "\n";
            return 0;
        case NonLinearInvariant::Status::Refuted:
            std::cout << "refuted";
            if (verdict.witness)
                std::cout << ": supporting signature \""
                          << std::string(verdict.witness->begin(), verdict.witness->end())
                          << "\"";
            std::cout << "\n";
            return 1;
        case NonLinearInvariant::Status::Unknown:
            std::cout << "unknown";
            if (!verdict.detail.empty()) std::cout << " (" << verdict.detail << ")";
            std::cout << "\n";
            return 1;
    }
    return 1;
}

// ---------------------------------------------------------------------------
// facet

int cmd_facet(const std::string& db_path) {
    auto rep = parse_database(read_file(db_path));
    if (!rep.ok()) {
        for (const auto& e : rep.errors) std::cout << e << "\n";
        return 1;
    }
    int annotated = 0;
    for (auto& r : rep.records) {
        if (r.kind != InvariantRecord::Kind::Linear) continue;
        auto st = facet_check(r.linear, r.pair);
        r.facet = facet_to_json(st);
        std::cout << r.render() << ": " << st.render() << "\n";
        ++annotated;
    }
    write_file(db_path, serialize_database(rep.records));
    std::cout << annotated << " records annotated\n";
    return 0;
}

// ---------------------------------------------------------------------------
// gap

int cmd_gap(const std::string& constraint, long long delta, const std::string& dot_path) {
    require_constraint(constraint);
    if (delta < 0) throw UsageError{"--delta must be >= 0"};
    auto ca = gap_condition(constraint, delta);
    std::cout << ca.description << "\n"
              << "states: " << ca.dfa.n_states << "\n";
    if (ca.cert.kind == Certificate::Kind::Proved)
        std::cout << "certificate: proved (" << ca.cert.method << ")\n";
    else
        std::cout << "certificate: exact up to length " << ca.cert.verified_to << " ("
                  << ca.cert.method << ")\n";
    if (!dot_path.empty())
        write_file(dot_path, dfa_to_dot(ca.dfa, constraint + "_gap_" + std::to_string(delta)));
    return 0;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const std::string& db_path, long long max_n) {
    auto parsed = parse_database(read_file(db_path));
    for (const auto& e : parsed.errors) std::cout << "parse error: " << e << "\n";
    for (const auto& r : parsed.records)
        for (const auto& f : r.pair) require_constraint(f);
    auto rep = verify_database(parsed.records, max_n);
    std::cout << "records: " << rep.n_records << "\n"
              << "checks: " << rep.checks << "\n"
              << "violations: " << rep.violations.size() << "\n";
    for (const auto& v : rep.violations) std::cout << v << "\n";
    return parsed.ok() && rep.ok() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// demo-solve

int cmd_demo_solve(const std::string& pair_arg, long long n, unsigned seed,
                   const std::string& targets_arg) {
    auto pair = parse_pair(pair_arg);
    if (n < 1) throw UsageError{"--n must be >= 1"};
    long long t1, t2;
    if (!targets_arg.empty()) {
        auto parts = split(targets_arg, ',');
        if (parts.size() != 2) throw UsageError{"--targets expects r1,r2"};
        try {
            t1 = std::stoll(parts[0]);
            t2 = std::stoll(parts[1]);
        } catch (const std::exception&) {
            throw UsageError{"--targets expects two integers"};
        }
    } else {
        auto [sig, targets] = random_instance(pair, n, seed);
        t1 = targets.first;
        t2 = targets.second;
        std::cout << "instance from seed " << seed << ": signature \""
                  << std::string(sig.begin(), sig.end()) << "\"\n";
    }
    std::cout << "targets: " << pair[0] << "=" << t1 << ", " << pair[1] << "=" << t2
              << ", n=" << n << "\n";
    auto report = [&](const char* label, const SearchStats& st) {
        std::cout << label << ": " << (st.solved ? "solved" : "no solution")
                  << ", nodes=" << st.nodes << ", backtracks=" << st.backtracks;
        if (st.solved)
            std::cout << ", witness \"" << std::string(st.witness->begin(), st.witness->end())
                      << "\"";
        std::cout << "\n";
    };
    auto off = demo_solve(pair, t1, t2, n, false);
    auto on = demo_solve(pair, t1, t2, n, true);
    report("invariants off", off);
    report("invariants on ", on);
    if (off.solved != on.solved) {
        std::cout << "pruning changed the answer\n";
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// export-dot

int cmd_export_dot(const std::string& constraint, const std::string& kind,
                   const std::string& out_path) {
    require_constraint(constraint);
    std::string dot;
    if (kind == "machine")
        dot = ra_to_dot(constraint_automaton(constraint), constraint);
    else if (kind == "pattern")
        dot = dfa_to_dot(default_catalog().constraint(constraint).regex->dfa,
                         constraint + "_pattern");
    else
        throw UsageError{"--kind must be machine or pattern"};
    if (out_path.empty())
        std::cout << dot;
    else
        write_file(out_path, dot);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invariant synthesis and proof for pairs of time-series constraints"};
    app.require_subcommand(1);

    auto* cat = app.add_subcommand("catalog", "List or check the constraint catalog");
    cat->require_subcommand(1);
    cat->add_subcommand("list", "Print every constraint with its maximum formula");
    auto* check = cat->add_subcommand(
        "check", "Verify machines and maximum formulas against exhaustive scans");
    long long check_max_n = 9;
    check->add_option("--max-n", check_max_n, "Largest series length to sweep")
        ->check(CLI::Range(1, 14));

    auto* synth = app.add_subcommand("synth", "Synthesize linear invariants for a pair");
    std::string synth_pair, synth_out;
    bool synth_delayed = false, synth_non_default = false;
    long long synth_coeff_bound = 3;
    synth->add_option("--pair", synth_pair, "Two constraint names, comma-separated")
        ->required();
    synth->add_flag("--delayed", synth_delayed, "Also use delayed machines");
    synth->add_flag("--non-default", synth_non_default,
                    "Condition on every result being non-zero");
    synth->add_option("--coeff-bound", synth_coeff_bound, "Coefficient magnitude bound")
        ->check(CLI::Range(1, 10));
    synth->add_option("--out", synth_out, "Write records to this database file");

    auto* mine = app.add_subcommand("mine", "Mine and prove non-linear invariants for a pair");
    std::string mine_pair_arg, mine_out, mine_dataset;
    long long mine_n_lo = 7, mine_n_hi = 12;
    int mine_max_conjuncts = 3;
    mine->add_option("--pair", mine_pair_arg, "Two constraint names, comma-separated")
        ->required();
    mine->add_option("--n-lo", mine_n_lo, "Smallest dataset length");
    mine->add_option("--n-hi", mine_n_hi, "Largest dataset length");
    mine->add_option("--max-conjuncts", mine_max_conjuncts, "Conjunction size limit")
        ->check(CLI::Range(1, 3));
    mine->add_option("--out", mine_out, "Write proved records to this database file");
    mine->add_option("--dataset", mine_dataset, "Dump the mined dataset as JSON");

    auto* prove_cmd = app.add_subcommand("prove", "Prove or refute one Boolean function");
    std::string prove_pair, prove_function;
    prove_cmd->add_option("--pair", prove_pair, "Two constraint names, comma-separated")
        ->required();
    prove_cmd
        ->add_option("--function", prove_function,
                     "Conjunction such as \"R1 = 1 and n mod 2 = 0\"")
        ->required();

    auto* facet = app.add_subcommand("facet", "Annotate a database with facet verdicts");
    std::string facet_db;
    facet->add_option("--db", facet_db, "Database file, rewritten in place")->required();

    auto* gap = app.add_subcommand("gap", "Build the gap automaton of one constraint");
    std::string gap_constraint, gap_dot;
    long long gap_delta = 0;
    gap->add_option("--constraint", gap_constraint, "Constraint name")->required();
    gap->add_option("--delta", gap_delta, "Gap below the maximum")->required();
    gap->add_option("--dot", gap_dot, "Write the automaton in DOT format");

    auto* verify = app.add_subcommand("verify", "Replay a database against exhaustive runs");
    std::string verify_db;
    long long verify_max_n = 10;
    verify->add_option("--db", verify_db, "Database file")->required();
    verify->add_option("--max-n", verify_max_n, "Largest series length to sweep")
        ->check(CLI::Range(2, 16));

    auto* demo = app.add_subcommand("demo-solve",
                                    "Solve one two-target instance with and without pruning");
    std::string demo_pair, demo_targets;
    long long demo_n = 20;
    unsigned demo_seed = 1;
    demo->add_option("--pair", demo_pair, "Two constraint names, comma-separated")->required();
    demo->add_option("--n", demo_n, "Series length");
    demo->add_option("--seed", demo_seed, "Seed for a random feasible instance");
    demo->add_option("--targets", demo_targets, "Explicit targets r1,r2 (overrides --seed)");

    auto* dot = app.add_subcommand("export-dot", "Export an automaton in DOT format");
    std::string dot_constraint, dot_kind = "machine", dot_out;
    dot->add_option("--constraint", dot_constraint, "Constraint name")->required();
    dot->add_option("--kind", dot_kind, "machine (register automaton) or pattern (DFA)");
    dot->add_option("--out", dot_out, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cat->got_subcommand("list")) return cmd_catalog_list();
        if (cat->got_subcommand("check")) return cmd_catalog_check(check_max_n);
        if (*synth)
            return cmd_synth(synth_pair, synth_delayed, synth_non_default, synth_coeff_bound,
                             synth_out);
        if (*mine)
            return cmd_mine(mine_pair_arg, mine_n_lo, mine_n_hi, mine_max_conjuncts, mine_out,
                            mine_dataset);
        if (*prove_cmd) return cmd_prove(prove_pair, prove_function);
        if (*facet) return cmd_facet(facet_db);
        if (*gap) return cmd_gap(gap_constraint, gap_delta, gap_dot);
        if (*verify) return cmd_verify(verify_db, verify_max_n);
        if (*demo) return cmd_demo_solve(demo_pair, demo_n, demo_seed, demo_targets);
        if (*dot) return cmd_export_dot(dot_constraint, dot_kind, dot_out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.msg << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
