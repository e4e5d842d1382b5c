// Non-linear invariant mining: dataset generation and hulls, hypothesis
// enumeration, consistency filtering, automata proofs, the dependent-function
// prover, dominance filtering, and the end-to-end pipeline on the width pair
// (decreasing sequences vs zigzags).

#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "tsinv/mining.hpp"

using namespace tsinv;

namespace {

const std::vector<std::string> kPair{"sum_width_decreasing_sequence", "sum_width_zigzag"};

using K = AtomicRelation::Kind;

BooleanFunction fn(std::vector<AtomicRelation> conjuncts) {
    std::sort(conjuncts.begin(), conjuncts.end());
    return BooleanFunction{std::move(conjuncts)};
}

const Dataset& pair_dataset() {
    static const Dataset ds = generate_dataset(kPair, 7, 12);
    return ds;
}

const MiningResult& pair_result() {
    static const MiningResult res = mine_pair(kPair, 7, 12);
    return res;
}

const LengthSlice& slice_at(const Dataset& ds, long long n) {
    for (const auto& s : ds.slices)
        if (s.n == n) return s;
    throw std::logic_error("missing slice");
}

// Feasible value pairs at one length, straight from the machines.
std::set<Point> feasible_at(const std::vector<std::string>& pair, long long n) {
    std::vector<const RegisterAutomaton*> machines;
    for (const auto& f : pair) machines.push_back(&constraint_automaton(f));
    return dataset_slice(machines, n).feasible;
}

}  // namespace

TEST_CASE("convex hulls of small point sets") {
    CHECK(graham_hull({{0, 0}, {2, 0}, {1, 1}}) ==
          std::vector<Point>{{0, 0}, {2, 0}, {1, 1}});
    CHECK(graham_hull({{0, 0}, {1, 0}, {2, 0}}) == std::vector<Point>{{0, 0}, {2, 0}});
    CHECK(graham_hull({{3, 4}}) == std::vector<Point>{{3, 4}});
    auto square = graham_hull({{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}, {1, 0}});
    CHECK(square == std::vector<Point>{{0, 0}, {2, 0}, {2, 2}, {0, 2}});
    CHECK(inside_hull(square, {1, 1}));
    CHECK(inside_hull(square, {2, 1}));  // boundary counts as inside
    CHECK(!inside_hull(square, {3, 1}));
    CHECK(inside_hull(graham_hull({{0, 0}, {2, 0}}), {1, 0}));
    CHECK(!inside_hull(graham_hull({{0, 0}, {2, 0}}), {1, 1}));
}

TEST_CASE("the width pair dataset matches the published length-9 picture") {
    const auto& s9 = slice_at(pair_dataset(), 9);
    CHECK(s9.feasible.count({9, 6}) == 1);
    CHECK(s9.infeasible.count({9, 5}) == 1);
    CHECK(s9.hull == std::vector<Point>{{0, 0}, {9, 0}, {9, 6}, {8, 7}, {6, 6}});
    CHECK(s9.infeasible ==
          std::set<Point>{{1, 0}, {1, 1}, {2, 1}, {3, 1}, {3, 2}, {3, 3}, {4, 1}, {5, 1},
                          {5, 4}, {5, 5}, {6, 1}, {7, 1}, {8, 1}, {9, 1}, {9, 3}, {9, 5}});
}

TEST_CASE("peaks against valleys at length 11 can realize four against three") {
    auto f11 = feasible_at({"nb_peak", "nb_valley"}, 11);
    CHECK(f11.count({4, 3}) == 1);
}

TEST_CASE("every feasible point is inside its hull and every vertex is feasible") {
    for (const auto& s : pair_dataset().slices) {
        CHECK(!s.feasible.empty());
        for (const auto& p : s.feasible) CHECK(inside_hull(s.hull, p));
        for (const auto& v : s.hull) CHECK(s.feasible.count(v) == 1);
        for (const auto& p : s.infeasible) {
            CHECK(inside_hull(s.hull, p));
            CHECK(s.feasible.count(p) == 0);
        }
    }
}

TEST_CASE("dataset generation is deterministic") {
    auto a = dataset_to_json(pair_dataset());
    auto b = dataset_to_json(generate_dataset(kPair, 7, 12));
    CHECK(a.dump() == b.dump());
}

TEST_CASE("the hypothesis space contains the published functions and obeys its rules") {
    auto hs = enumerate_hypotheses(2, HypothesisBounds{});
    std::set<std::vector<long long>> keys;
    for (const auto& f : hs) {
        CHECK(!f.conjuncts.empty());
        CHECK(f.conjuncts.size() <= 3);
        int deps = 0;
        for (const auto& c : f.conjuncts) {
            deps += c.dependent() ? 1 : 0;
            CHECK(c.kind != K::LenGeq);  // length guards belong to the proof phase
        }
        CHECK(deps <= 1);
        keys.insert(f.key());
    }
    CHECK(keys.size() == hs.size());  // no duplicates
    CHECK(keys.count(fn({{K::ResEq, 0, 0, 1, 0}}).key()) == 1);  // R1 = 1
    CHECK(keys.count(fn({{K::LenMod, 0, 0, 2, 0},
                         {K::ResGapEq, 0, 0, 1, 0},
                         {K::ResGapEq, 1, 0, 0, 0}})
                         .key()) == 1);  // n even, R1 = max1(n) - 1, R2 = max2(n)
    CHECK(keys.count(fn({{K::ResMod, 0, 0, 2, 1}, {K::ResLin, 0, 1, 1, 0}}).key()) == 1);
}

TEST_CASE("consistency keeps the odd-equal function and drops the naive ones") {
    const auto& ds = pair_dataset();
    BooleanFunction odd_equal = fn({{K::ResMod, 0, 0, 2, 1}, {K::ResLin, 0, 1, 1, 0}});
    BooleanFunction equal = fn({{K::ResLin, 0, 1, 1, 0}});
    BooleanFunction thirteen = fn({{K::ResEq, 0, 0, 13, 0}});
    auto kept = filter_consistent({odd_equal, equal, thirteen}, ds);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0] == odd_equal);
}

TEST_CASE("independent proofs: empty, guarded, desk-verified, and refuted") {
    RelationAutomatonCache cache(kPair);
    auto r2_one = prove(fn({{K::ResEq, 1, 0, 1, 0}}), kPair, cache);
    CHECK(r2_one.status == NonLinearInvariant::Status::ProvedUniversal);
    auto seventh = prove(fn({{K::LenMod, 0, 0, 2, 0},
                             {K::ResGapEq, 0, 0, 1, 0},
                             {K::ResGapEq, 1, 0, 0, 0}}),
                         kPair, cache);
    CHECK(seventh.status == NonLinearInvariant::Status::DeskVerified);
    CHECK(seventh.verified_to == kDeficitVerifiedTo);
    auto refuted = prove(fn({{K::ResGeq, 0, 0, 0, 1}}), kPair, cache);  // R1 >= 1
    CHECK(refuted.status == NonLinearInvariant::Status::Refuted);
    REQUIRE(refuted.witness);
    // The witness is a genuine supporting signature: its R1 value is >= 1,
    // and it is longer than the shortest support (it was pumped).
    auto spec = default_catalog().constraint(kPair[0]);
    CHECK(eval_constraint(spec, *refuted.witness) >= 1);
    const auto& dfa = cache.get({K::ResGeq, 0, 0, 0, 1}).dfa;
    CHECK(dfa.accepts(*refuted.witness));
    CHECK(refuted.witness->size() > shortest_accepted(dfa)->size());
}

TEST_CASE("the dependent odd-equal function is proved through a separating bound") {
    RelationAutomatonCache cache(kPair);
    BooleanFunction odd_equal = fn({{K::ResMod, 0, 0, 2, 1}, {K::ResLin, 0, 1, 1, 0}});
    auto verdict = prove(odd_equal, kPair, cache);
    CHECK(verdict.status == NonLinearInvariant::Status::ProvedWithGuard);
    CHECK(verdict.detail.find("separating invariant") != std::string::npos);
    // The separating invariant is the published one: R1 >= R2 + 2 when both
    // results are odd (the even-R1 branch dies on the R1-odd conjunct).
    SynthOptions opt;
    opt.condition = intersect(value_mod_dfa(kPair[0], 2, 1), value_mod_dfa(kPair[1], 2, 1));
    bool found = false;
    for (const auto& inv : synthesize(kPair, opt))
        found |= inv.e == -2 && inv.e0 == 0 && inv.coeffs == std::vector<long long>{1, -1};
    CHECK(found);
}

TEST_CASE("the parity-split prover never claims without a certificate") {
    auto even = prove_offset_relation(kPair, 2);
    REQUIRE(even.branches.size() == 2);
    CHECK(even.branches[0].find("parity") != std::string::npos);  // d*R2 even, b=0 impossible
    auto pv = prove_offset_relation({"nb_peak", "nb_valley"}, 1);
    CHECK(!pv.proved);  // one peak and no valley is feasible
}

TEST_CASE("dominance keeps the subsuming function") {
    RelationAutomatonCache cache(kPair);
    auto a = prove(fn({{K::ResEq, 0, 0, 1, 0}}), kPair, cache);                       // R1 = 1
    auto b = prove(fn({{K::ResEq, 0, 0, 1, 0}, {K::ResEq, 1, 0, 1, 0}}), kPair, cache);
    REQUIRE(a.proved());
    REQUIRE(b.proved());
    auto kept = dominance_filter({a, b}, kPair);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].function == a.function);
    auto single = dominance_filter({a}, kPair);
    REQUIRE(single.size() == 1);
    CHECK(single[0].function == a.function);
}

TEST_CASE("the full pipeline reproduces the seven published functions") {
    const auto& res = pair_result();
    CHECK(res.n_candidates > 1000);
    CHECK(res.consistent.size() >= 7);
    std::set<std::vector<long long>> final_keys;
    for (const auto& inv : res.final_set) final_keys.insert(inv.function.key());
    const std::vector<BooleanFunction> published = {
        fn({{K::ResEq, 0, 0, 1, 0}}),                                       // R1 = 1
        fn({{K::ResEq, 1, 0, 1, 0}}),                                       // R2 = 1
        fn({{K::ResEq, 0, 0, 5, 0}, {K::ResGeq, 1, 0, 0, 4}}),              // R1 = 5, R2 >= 4
        fn({{K::ResEq, 0, 0, 3, 0}, {K::ResGeq, 1, 0, 0, 1}}),              // R1 = 3, R2 >= 1
        fn({{K::ResGapEq, 0, 0, 0, 0}, {K::ResMod, 1, 0, 2, 1}}),           // R1 = max, R2 odd
        fn({{K::ResMod, 0, 0, 2, 1}, {K::ResLin, 0, 1, 1, 0}}),             // R1 odd, R1 = R2
        fn({{K::LenMod, 0, 0, 2, 0},
            {K::ResGapEq, 0, 0, 1, 0},
            {K::ResGapEq, 1, 0, 0, 0}}),  // n even, R1 = max - 1, R2 = max
    };
    for (const auto& f : published)
        CHECK_MESSAGE(final_keys.count(f.key()) == 1, "missing: " << f.render());
}

TEST_CASE("every surviving function is violation-free up to length 13") {
    const auto& res = pair_result();
    const auto& cat = default_catalog();
    std::vector<ConstraintSpec> specs;
    for (const auto& f : kPair) specs.push_back(cat.constraint(f));
    for (long long n = 7; n <= 13; ++n) {
        auto feas = feasible_at(kPair, n);
        std::vector<long long> upp;
        for (const auto& s : specs) upp.push_back(upper_bound(s, n));
        for (const auto& inv : res.final_set) {
            if (n < inv.n_guard) continue;
            for (const auto& [x, y] : feas)
                CHECK_MESSAGE(!inv.function.eval(n, {x, y}, upp),
                              inv.function.render() << " violated at n=" << n << " ("
                                                    << x << "," << y << ")");
        }
    }
}
