// DFA and weighted-digraph algorithms: intersection, minimization,
// emptiness/finiteness, cycle-threaded shortest words, Bellman-Ford, and
// elementary-circuit enumeration, each validated against brute force.

#include <doctest.h>

#include <random>
#include <set>

#include "tsinv/dfa.hpp"
#include "tsinv/digraph.hpp"

using namespace tsinv;

namespace {

Dfa random_dfa(std::mt19937& rng) {
    std::uniform_int_distribution<int> nd(1, 6);
    Dfa d;
    d.n_states = nd(rng);
    d.initial = 0;
    std::uniform_int_distribution<int> td(-2, d.n_states - 1);  // negatives -> missing
    std::uniform_int_distribution<int> ad(0, 3);
    for (int u = 0; u < d.n_states; ++u) {
        std::array<int, 3> row{};
        for (int s = 0; s < 3; ++s) {
            int t = td(rng);
            row[static_cast<std::size_t>(s)] = t < 0 ? -1 : t;
        }
        d.delta.push_back(row);
        d.accepting.push_back(ad(rng) == 0);
    }
    return d;
}

std::set<Signature> language_upto(const Dfa& d, int max_len) {
    std::set<Signature> out;
    for (int len = 0; len <= max_len; ++len)
        for_each_signature(len, [&](const Signature& s) {
            if (d.accepts(s)) out.insert(s);
        });
    return out;
}

// Brute-force elementary circuits: DFS restricted to cycles whose minimal
// node is the start node (canonical rotation), arcs distinguished.
void brute_circuits_dfs(const WeightedDigraph& g, int start, int u, std::vector<char>& on_path,
                        std::vector<int>& arcs, std::vector<std::vector<int>>& out) {
    for (std::size_t ai = 0; ai < g.arcs.size(); ++ai) {
        const Arc& a = g.arcs[ai];
        if (a.src != u) continue;
        if (a.dst == start) {
            arcs.push_back(static_cast<int>(ai));
            out.push_back(arcs);
            arcs.pop_back();
        } else if (a.dst > start && !on_path[static_cast<std::size_t>(a.dst)]) {
            on_path[static_cast<std::size_t>(a.dst)] = 1;
            arcs.push_back(static_cast<int>(ai));
            brute_circuits_dfs(g, start, a.dst, on_path, arcs, out);
            arcs.pop_back();
            on_path[static_cast<std::size_t>(a.dst)] = 0;
        }
    }
}

std::vector<std::vector<int>> brute_circuits(const WeightedDigraph& g) {
    std::vector<std::vector<int>> out;
    for (int s = 0; s < g.n_nodes; ++s) {
        std::vector<char> on_path(static_cast<std::size_t>(g.n_nodes), 0);
        on_path[static_cast<std::size_t>(s)] = 1;
        std::vector<int> arcs;
        brute_circuits_dfs(g, s, s, on_path, arcs, out);
    }
    return out;
}

// Peak/valley invariant digraph instantiated at (e0,e1,e2) = (0,-1,1),
// parallel same-weight arcs collapsed: nodes s,r,t.
WeightedDigraph peak_valley_digraph() {
    WeightedDigraph g;
    g.n_nodes = 3;
    g.node_names = {"s", "r", "t"};
    g.arcs.push_back({0, 0, 0, "s loop"});
    g.arcs.push_back({0, 1, 0, "s-r"});
    g.arcs.push_back({0, 2, 0, "s-t"});
    g.arcs.push_back({1, 1, 0, "r loops"});
    g.arcs.push_back({2, 2, 0, "t loops"});
    g.arcs.push_back({1, 2, 1, "r-t valley found: e2"});
    g.arcs.push_back({2, 1, -1, "t-r peak found: e1"});
    return g;
}

}  // namespace

TEST_CASE("intersect with universal and empty automata") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Dfa a = random_dfa(rng);
        Dfa u = Dfa::universal();
        CHECK(equivalent(intersect(a, u), a));
        Dfa e = Dfa::empty_language();
        CHECK(std::holds_alternative<LangEmpty>(classify_language(intersect(a, e))));
    }
}

TEST_CASE("intersect equals set intersection of languages up to length 8") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        Dfa a = random_dfa(rng), b = random_dfa(rng);
        Dfa c = intersect(a, b);
        auto la = language_upto(a, 8), lb = language_upto(b, 8), lc = language_upto(c, 8);
        std::set<Signature> expect;
        for (const auto& w : la)
            if (lb.count(w)) expect.insert(w);
        CHECK(lc == expect);
    }
}

TEST_CASE("minimize merges bisimilar accepting states") {
    // two accepting states with identical behaviour
    Dfa d;
    d.n_states = 3;
    d.initial = 0;
    d.delta = {{1, 2, -1}, {1, 1, 1}, {2, 2, 2}};
    d.accepting = {0, 1, 1};
    Dfa m = minimize(d);
    CHECK(m.n_states == 2);
    CHECK(equivalent(m, d));
}

TEST_CASE("minimize of empty language") {
    Dfa d;
    d.n_states = 2;
    d.initial = 0;
    d.delta = {{1, -1, -1}, {0, -1, -1}};
    d.accepting = {0, 0};
    Dfa m = minimize(d);
    CHECK(m.n_states <= 1);
    int acc = 0;
    for (char a : m.accepting) acc += a;
    CHECK(acc == 0);
}

TEST_CASE("minimize preserves language and is idempotent (random)") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 1000; ++trial) {
        Dfa d = random_dfa(rng);
        Dfa m = minimize(d);
        CHECK(language_upto(m, 8) == language_upto(d, 8));
        CHECK(same_structure(minimize(m), m));
        CHECK(m.n_states <= std::max(1, d.n_states));
    }
}

TEST_CASE("language classification") {
    CHECK(std::holds_alternative<LangEmpty>(classify_language(Dfa::empty_language())));

    // exactly {<, <>}
    Dfa d;
    d.n_states = 3;
    d.initial = 0;
    d.delta = {{1, -1, -1}, {-1, -1, 2}, {-1, -1, -1}};
    d.accepting = {0, 1, 1};
    auto c = classify_language(d);
    REQUIRE(std::holds_alternative<LangFinite>(c));
    CHECK(std::get<LangFinite>(c).longest_word_len == 2);

    CHECK(std::holds_alternative<LangInfinite>(classify_language(Dfa::universal())));
}

TEST_CASE("min_length_through_cycle") {
    // initial accepting state with a self-loop, d=1 -> 0
    Dfa d = Dfa::universal();
    auto r = min_length_through_cycle(d, 1);
    REQUIRE(r.has_value());
    CHECK(r->length == 0);
    CHECK(r->witness == "");

    CHECK(!min_length_through_cycle(Dfa::empty_language(), 1).has_value());

    // cycle of length 2 reachable after one step, accepting inside the cycle
    Dfa e;
    e.n_states = 3;
    e.initial = 0;
    e.delta = {{1, -1, -1}, {-1, 2, -1}, {-1, -1, 1}};
    e.accepting = {0, 0, 1};
    auto r2 = min_length_through_cycle(e, 2);
    REQUIRE(r2.has_value());
    CHECK(r2->length == 2);
    CHECK(r2->witness == "<=");
    // no closed walk of length 3 anywhere
    CHECK(!min_length_through_cycle(e, 3).has_value());
}

TEST_CASE("shortest_accepted is lexicographically smallest") {
    Dfa d;
    d.n_states = 2;
    d.initial = 0;
    d.delta = {{1, 1, 1}, {-1, -1, -1}};
    d.accepting = {0, 1};
    auto w = shortest_accepted(d);
    REQUIRE(w.has_value());
    CHECK(*w == "<");
}

TEST_CASE("bellman_ford on the peak/valley digraph at (0,-1,1)") {
    auto g = peak_valley_digraph();
    auto res = bellman_ford(g, 0);
    REQUIRE(std::holds_alternative<BfDistances>(res));
    const auto& dist = std::get<BfDistances>(res).dist;
    CHECK(dist[0] == 0);   // s
    CHECK(dist[1] == -1);  // r
    CHECK(dist[2] == 0);   // t
}

TEST_CASE("bellman_ford trivial and negative-cycle cases") {
    WeightedDigraph g;
    g.n_nodes = 1;
    auto res = bellman_ford(g, 0);
    REQUIRE(std::holds_alternative<BfDistances>(res));
    CHECK(std::get<BfDistances>(res).dist[0] == 0);

    // a-b-c-a cycle of total weight -1 (plateau digraph shape at (0,-2,1))
    WeightedDigraph h;
    h.n_nodes = 3;
    h.node_names = {"a", "b", "c"};
    h.arcs.push_back({0, 1, 0, "a-b"});
    h.arcs.push_back({1, 2, 1, "b-c"});
    h.arcs.push_back({2, 0, -2, "c-a"});
    auto res2 = bellman_ford(h, 0);
    REQUIRE(std::holds_alternative<BfNegativeCycle>(res2));
    const auto& cyc = std::get<BfNegativeCycle>(res2).arc_indices;
    CHECK(circuit_weight(h, cyc) < 0);
    // witness is a closed arc walk
    for (std::size_t i = 0; i < cyc.size(); ++i) {
        const Arc& cur = h.arcs[static_cast<std::size_t>(cyc[i])];
        const Arc& nxt = h.arcs[static_cast<std::size_t>(cyc[(i + 1) % cyc.size()])];
        CHECK(cur.dst == nxt.src);
    }
}

TEST_CASE("bellman_ford matches naive relaxation oracle on random graphs") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> nd(1, 12);
    std::uniform_int_distribution<int> wd(0, 6);  // non-negative: no cycles to dodge
    for (int trial = 0; trial < 200; ++trial) {
        WeightedDigraph g;
        g.n_nodes = nd(rng);
        std::uniform_int_distribution<int> vd(0, g.n_nodes - 1);
        int m = nd(rng) * 2;
        for (int i = 0; i < m; ++i) g.arcs.push_back({vd(rng), vd(rng), wd(rng), ""});
        auto res = bellman_ford(g, 0);
        REQUIRE(std::holds_alternative<BfDistances>(res));
        const auto& dist = std::get<BfDistances>(res).dist;
        // naive O(V*E*V) relaxation
        const long long inf = 1LL << 60;
        std::vector<long long> naive(static_cast<std::size_t>(g.n_nodes), inf);
        naive[0] = 0;
        for (int it = 0; it < g.n_nodes * g.n_nodes; ++it)
            for (const Arc& a : g.arcs)
                if (naive[static_cast<std::size_t>(a.src)] < inf)
                    naive[static_cast<std::size_t>(a.dst)] =
                        std::min(naive[static_cast<std::size_t>(a.dst)],
                                 naive[static_cast<std::size_t>(a.src)] + a.weight);
        for (int u = 0; u < g.n_nodes; ++u) {
            if (naive[static_cast<std::size_t>(u)] >= inf) CHECK(!dist[static_cast<std::size_t>(u)].has_value());
            else CHECK(dist[static_cast<std::size_t>(u)] == naive[static_cast<std::size_t>(u)]);
        }
    }
}

TEST_CASE("simple_circuits on the collapsed peak/valley digraph") {
    auto g = peak_valley_digraph();
    auto circuits = simple_circuits(g);
    CHECK(circuits.size() == 4);  // s-s, r-r, t-t, r-t-r
    int self_loops = 0, two_cycles = 0;
    for (const auto& c : circuits) {
        if (c.size() == 1) ++self_loops;
        if (c.size() == 2) ++two_cycles;
    }
    CHECK(self_loops == 3);
    CHECK(two_cycles == 1);
}

TEST_CASE("simple_circuits trivial cases") {
    WeightedDigraph dag;
    dag.n_nodes = 3;
    dag.arcs.push_back({0, 1, 0, ""});
    dag.arcs.push_back({1, 2, 0, ""});
    CHECK(simple_circuits(dag).empty());

    WeightedDigraph loops;
    loops.n_nodes = 1;
    loops.arcs.push_back({0, 0, 1, "first"});
    loops.arcs.push_back({0, 0, 2, "second"});
    CHECK(simple_circuits(loops).size() == 2);
}

TEST_CASE("simple_circuits matches brute force for small graphs") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> nd(1, 6);
    for (int trial = 0; trial < 150; ++trial) {
        WeightedDigraph g;
        g.n_nodes = nd(rng);
        std::uniform_int_distribution<int> vd(0, g.n_nodes - 1);
        std::uniform_int_distribution<int> md(0, 10);
        int m = md(rng);
        for (int i = 0; i < m; ++i) g.arcs.push_back({vd(rng), vd(rng), 0, ""});
        auto a = simple_circuits(g);
        auto b = brute_circuits(g);
        auto canon = [](std::vector<std::vector<int>> v) {
            for (auto& c : v) {
                // rotate so the smallest arc index comes first
                auto it = std::min_element(c.begin(), c.end());
                std::rotate(c.begin(), it, c.end());
            }
            std::sort(v.begin(), v.end());
            return v;
        };
        CHECK(canon(a) == canon(b));
    }
}

TEST_CASE("circuit guard triggers on dense graphs") {
    WeightedDigraph g;
    g.n_nodes = 10;
    for (int u = 0; u < 10; ++u)
        for (int v = 0; v < 10; ++v) g.arcs.push_back({u, v, 0, ""});
    CHECK_THROWS_AS(simple_circuits(g, 1000), CircuitLimitExceeded);
}

TEST_CASE("dfa json round-trip and dot export") {
    std::mt19937 rng(53);
    for (int trial = 0; trial < 30; ++trial) {
        Dfa d = random_dfa(rng);
        Dfa back = dfa_from_json(dfa_to_json(d));
        CHECK(back.n_states == d.n_states);
        CHECK(language_upto(back, 6) == language_upto(d, 6));
    }
    auto dot = dfa_to_dot(Dfa::universal(), "u");
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("doublecircle") != std::string::npos);
}

TEST_CASE("length automata helpers") {
    Dfa geq = length_geq_dfa(4);
    CHECK(!geq.accepts("<=>"));
    CHECK(geq.accepts("<=><"));
    CHECK(geq.accepts("<=><<<"));
    Dfa mod = length_mod_dfa(3, 1);
    CHECK(mod.accepts("<"));
    CHECK(!mod.accepts("<<"));
    CHECK(mod.accepts("<<<<"));
    Dfa eq = length_eq_dfa(2);
    CHECK(eq.accepts("<>"));
    CHECK(!eq.accepts("<"));
    CHECK(!eq.accepts("<><"));
}
