// Gap/loss machinery: the gap-to-loss formula, loss intervals, the exact
// gap automata for counting constraints, the bounded-deficit gap automata
// for width constraints, and the value-relation condition automata.

#include <doctest.h>

#include <functional>
#include <map>
#include <set>
#include <variant>
#include <vector>

#include "tsinv/catalog.hpp"
#include "tsinv/gaploss.hpp"
#include "tsinv/util.hpp"

using namespace tsinv;

namespace {

const std::vector<std::string> kPatterns = {
    "peak",       "valley",          "decreasing_terrace",  "increasing_terrace",
    "proper_plateau", "decreasing_sequence", "increasing_sequence", "zigzag"};

ConstraintSpec nb_spec(const std::string& pattern) {
    return default_catalog().constraint("nb_" + pattern);
}

}  // namespace

TEST_CASE("gap-to-loss formula matches the worked values for peaks") {
    // Homogeneity constants for peaks: first occurrence in 2 steps, each
    // further one in 2, so c = 1, d = 2.
    auto h = homogeneity_constants(seed_transducer("peak"));
    CHECK(h.c == 1);
    CHECK(h.d == 2);
    CHECK(gap_to_loss(1, 1, 8, h.c, h.d) == 3);  // one peak short at n = 8
    CHECK(gap_to_loss(4, 0, 9, h.c, h.d) == 8);  // no peak at all at n = 9
    CHECK(gap_to_loss(0, 1, 5, h.c, h.d) == 0);
}

TEST_CASE("the counting upper-bound formulas agree with the homogeneity constants") {
    for (const auto& p : kPatterns) {
        auto h = homogeneity_constants(seed_transducer(p));
        auto spec = nb_spec(p);
        for (long long n = 1; n <= 40; ++n) {
            long long expect = n > h.c ? (n - h.c) / h.d : 0;
            CHECK_MESSAGE(upper_bound(spec, n) == expect, "nb_" << p << " at n=" << n);
        }
    }
}

TEST_CASE("loss intervals are the expected ones and never overlap") {
    auto hp = homogeneity_constants(seed_transducer("peak"));
    for (long long g = 0; g <= 4; ++g)
        for (int sgn : {0, 1}) {
            auto iv = loss_interval(g, sgn, hp.c, hp.d);
            CHECK(iv.lo == 2 * g);
            CHECK(iv.hi == 2 * g + 1);
        }
    auto ht = homogeneity_constants(seed_transducer("decreasing_terrace"));
    CHECK(loss_interval(0, 0, ht.c, ht.d).lo == 0);
    CHECK(loss_interval(0, 0, ht.c, ht.d).hi == 2);
    CHECK(loss_interval(1, 0, ht.c, ht.d).lo == 3);
    CHECK(loss_interval(1, 0, ht.c, ht.d).hi == 4);
    for (const auto& p : kPatterns) {
        auto h = homogeneity_constants(seed_transducer(p));
        for (int sgn : {0, 1})
            for (long long g = 0; g <= 6; ++g) {
                auto a = loss_interval(g, sgn, h.c, h.d);
                auto b = loss_interval(g + 1, sgn, h.c, h.d);
                CHECK(a.lo <= a.hi);
                CHECK_MESSAGE(a.hi < b.lo, p << " intervals overlap at gap " << g);
            }
    }
}

TEST_CASE("observed losses obey the gap-to-loss formula and its intervals") {
    const int max_len = 8;
    for (const auto& p : kPatterns) {
        auto h = homogeneity_constants(seed_transducer(p));
        auto spec = nb_spec(p);
        // Independent loss oracle: length minus the length at which the same
        // count first becomes achievable.
        std::map<long long, int> first_len;
        for (int len = 0; len <= max_len; ++len)
            for_each_signature(len, [&](const Signature& sig) {
                long long v = eval_constraint(spec, sig);
                first_len.emplace(v, len);
            });
        for (int len = 0; len <= max_len; ++len)
            for_each_signature(len, [&](const Signature& sig) {
                long long n = len + 1;
                long long v = eval_constraint(spec, sig);
                long long loss = len - first_len.at(v);
                long long gap = upper_bound(spec, n) - v;
                int sgn = v > 0 ? 1 : 0;
                CHECK(loss == gap_to_loss(gap, sgn, n, h.c, h.d));
                CHECK(loss_interval(gap, sgn, h.c, h.d).contains(loss));
            });
    }
}

TEST_CASE("counting gap automata accept exactly the series at the stated gap") {
    for (const auto& p : kPatterns) {
        auto spec = nb_spec(p);
        for (long long delta = 0; delta <= 2; ++delta) {
            Dfa d = nb_gap_dfa(p, delta);
            CHECK(d.n_states <= 64);  // constant-size: independent of series length
            for (int len = 0; len <= 8; ++len)
                for_each_signature(len, [&](const Signature& sig) {
                    long long gap =
                        upper_bound(spec, len + 1) - eval_constraint(spec, sig);
                    CHECK_MESSAGE(d.accepts(sig) == (gap == delta),
                                  "nb_" << p << " delta=" << delta << " sig=\"" << sig << "\"");
                });
        }
    }
}

TEST_CASE("the zero-gap language is infinite, positive gaps stay reachable") {
    for (const auto& p : kPatterns)
        for (long long delta = 0; delta <= 2; ++delta)
            CHECK(std::holds_alternative<LangInfinite>(classify_language(nb_gap_dfa(p, delta))));
}

TEST_CASE("the deficit construction agrees with the loss construction on counters") {
    for (const std::string p : {"peak", "zigzag", "decreasing_sequence"})
        for (long long delta = 0; delta <= 2; ++delta)
            CHECK_MESSAGE(equivalent(deficit_gap_dfa("nb_" + p, delta), nb_gap_dfa(p, delta)),
                          "nb_" << p << " delta=" << delta);
}

TEST_CASE("width gap automata match the oracle on every short series") {
    const auto& cat = default_catalog();
    for (const auto& p : kPatterns) {
        std::string name = "sum_width_" + p;
        auto spec = cat.constraint(name);
        for (long long delta = 0; delta <= 2; ++delta) {
            Dfa d = deficit_gap_dfa(name, delta);
            for (int len = 0; len <= 9; ++len)
                for_each_signature(len, [&](const Signature& sig) {
                    long long gap =
                        upper_bound(spec, len + 1) - eval_constraint(spec, sig);
                    CHECK_MESSAGE(d.accepts(sig) == (gap == delta),
                                  name << " delta=" << delta << " sig=\"" << sig << "\"");
                });
        }
    }
}

TEST_CASE("width gap automata verified exhaustively to length 13") {
    // Deep sweep backing the DeskVerified certificate: against the register
    // automata (themselves oracle-gated), for every series up to length 13.
    const auto& cat = default_catalog();
    const int max_len = kDeficitVerifiedTo - 1;
    for (const auto& p : kPatterns) {
        std::string name = "sum_width_" + p;
        auto spec = cat.constraint(name);
        const RegisterAutomaton& ra = constraint_automaton(name);
        std::vector<Dfa> dfas;
        for (long long delta = 0; delta <= 2; ++delta)
            dfas.push_back(deficit_gap_dfa(name, delta));
        for (int len = 10; len <= max_len; ++len) {
            long long total = pow3(len);
            std::vector<long long> bad(static_cast<std::size_t>(worker_count()), 0);
            parallel_chunks(total, [&](int w, long long b, long long e) {
                for (long long i = b; i < e; ++i) {
                    Signature sig = signature_from_index(len, i);
                    auto run = ra.run(sig);
                    long long gap = upper_bound(spec, len + 1) - run->outputs.at(0);
                    for (long long delta = 0; delta <= 2; ++delta)
                        if (dfas[static_cast<std::size_t>(delta)].accepts(sig) != (gap == delta))
                            ++bad[static_cast<std::size_t>(w)];
                }
            });
            long long total_bad = 0;
            for (long long v : bad) total_bad += v;
            CHECK_MESSAGE(total_bad == 0, name << " mismatches at length " << len);
        }
    }
}

TEST_CASE("gap conditions carry the right certificate") {
    auto counting = gap_condition("nb_peak", 1);
    CHECK(counting.cert.kind == Certificate::Kind::Proved);
    auto width = gap_condition("sum_width_zigzag", 0);
    CHECK(width.cert.kind == Certificate::Kind::DeskVerified);
    CHECK(width.cert.verified_to == kDeficitVerifiedTo);
    CHECK(width.dfa.n_states > 0);
}

TEST_CASE("the before/after-found split classifies states and detects overlap") {
    const Transducer& peak = seed_transducer("peak");
    Transducer sep = separate(peak);
    auto after = before_after_found_split(sep);
    std::set<std::string> before_names, after_names;
    for (int q = 0; q < sep.n_states; ++q)
        (after[static_cast<std::size_t>(q)] ? after_names : before_names).insert(sep.state_name(q));
    CHECK(before_names.size() == 2);
    CHECK(after_names.size() == 2);
    CHECK_THROWS(before_after_found_split(peak));  // unseparated: reachable both ways
    Transducer quiet = sep;
    for (auto& row : quiet.found) row = {0, 0, 0};
    auto all_before = before_after_found_split(quiet);
    for (char a : all_before) CHECK(!a);
}

TEST_CASE("the pre-minimization gap automaton respects the stated state bound") {
    for (const std::string p : {"peak", "zigzag"}) {
        auto loss = decorate_loss_nb(seed_transducer(p));
        auto h = homogeneity_constants(seed_transducer(p));
        for (long long delta = 0; delta <= 2; ++delta) {
            long long phi = std::max(loss_interval(delta, 0, h.c, h.d).hi,
                                     loss_interval(delta, 1, h.c, h.d).hi);
            const auto accrow = loss.ra.acceptance_outputs().at(0);
            auto ex = capped_expansion(
                loss.ra, phi + 1, [&](int q, const std::vector<long long>& regs) {
                    long long alpha = 0;
                    for (std::size_t i = 0; i < accrow.size(); ++i) alpha += accrow[i] * regs[i];
                    auto iv = loss_interval(delta, loss.after_found[static_cast<std::size_t>(q)],
                                            h.c, h.d);
                    return iv.contains(alpha);
                });
            long long bound = loss.ra.n_states;
            for (int r = 0; r < loss.ra.n_registers(); ++r) bound *= phi + 2;
            CHECK(ex.dfa.n_states <= bound);
        }
    }
}

TEST_CASE("atomic relations evaluate, render, and map to the right automata") {
    const std::vector<std::string> pair{"sum_width_decreasing_sequence", "sum_width_zigzag"};
    AtomicRelation eq{AtomicRelation::Kind::ResEq, 0, 0, 5, 0};
    CHECK(eq.render() == "R1 = 5");
    CHECK(eq.eval(9, {5, 2}, {9, 7}));
    CHECK(!eq.eval(9, {4, 2}, {9, 7}));
    AtomicRelation gap1{AtomicRelation::Kind::ResGapEq, 0, 0, 1, 0};
    CHECK(gap1.render() == "R1 = max1(n) - 1");
    CHECK(gap1.eval(9, {8, 0}, {9, 7}));
    AtomicRelation lin{AtomicRelation::Kind::ResLin, 0, 1, 1, 0};
    CHECK(lin.render() == "R1 = R2");
    CHECK(lin.dependent());
    CHECK_THROWS(relation_automaton(lin, pair));
    AtomicRelation nmod{AtomicRelation::Kind::LenMod, 0, 0, 2, 0};
    CHECK(nmod.render() == "n mod 2 = 0");
    auto ca = relation_automaton(nmod, pair);
    // n even means an odd signature length
    CHECK(ca.dfa.accepts("<=>"));
    CHECK(!ca.dfa.accepts("<="));
    AtomicRelation ngeq{AtomicRelation::Kind::LenGeq, 0, 0, 5, 0};
    auto geq = relation_automaton(ngeq, pair);
    CHECK(!geq.dfa.accepts("<=>"));  // n = 4
    CHECK(geq.dfa.accepts("<=><"));  // n = 5
    AtomicRelation wgap{AtomicRelation::Kind::ResGapEq, 1, 0, 0, 0};
    CHECK(relation_automaton(wgap, pair).cert.kind == Certificate::Kind::DeskVerified);
    AtomicRelation peak1{AtomicRelation::Kind::ResEq, 0, 0, 1, 0};
    auto pk = relation_automaton(peak1, {"nb_peak"});
    auto spec = default_catalog().constraint("nb_peak");
    for (int len = 0; len <= 8; ++len)
        for_each_signature(len, [&](const Signature& sig) {
            CHECK(pk.dfa.accepts(sig) == (eval_constraint(spec, sig) == 1));
        });
}

TEST_CASE("value-relation automata agree with the oracle") {
    const auto& cat = default_catalog();
    for (const std::string name :
         {"nb_peak", "sum_width_zigzag", "sum_width_decreasing_sequence"}) {
        auto spec = cat.constraint(name);
        struct Rel {
            Dfa dfa;
            std::function<bool(long long)> pred;
            std::string label;
        };
        std::vector<Rel> rels;
        for (long long c = 0; c <= 5; ++c)
            rels.push_back({value_eq_dfa(name, c), [c](long long v) { return v == c; },
                            "= " + std::to_string(c)});
        for (long long c = 0; c <= 4; ++c)
            rels.push_back({value_geq_dfa(name, c), [c](long long v) { return v >= c; },
                            ">= " + std::to_string(c)});
        for (long long c = 0; c <= 3; ++c)
            rels.push_back({value_leq_dfa(name, c), [c](long long v) { return v <= c; },
                            "<= " + std::to_string(c)});
        for (long long m = 2; m <= 3; ++m)
            for (long long r = 0; r < m; ++r)
                rels.push_back({value_mod_dfa(name, m, r),
                                [m, r](long long v) { return v % m == r; },
                                "mod " + std::to_string(m) + " = " + std::to_string(r)});
        for (int len = 0; len <= 7; ++len)
            for_each_signature(len, [&](const Signature& sig) {
                long long v = eval_constraint(spec, sig);
                for (const auto& rel : rels)
                    CHECK_MESSAGE(rel.dfa.accepts(sig) == rel.pred(v),
                                  name << " " << rel.label << " sig=\"" << sig << "\"");
            });
    }
}
