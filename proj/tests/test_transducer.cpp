// Seed-transducer module: the transducer database and its oracle gate,
// separation, found-path lengths and regrets, homogeneity constants, and
// the counting / loss decorations.

#include <doctest.h>

#include <atomic>
#include <map>

#include "tsinv/automata.hpp"
#include "tsinv/transducer.hpp"

using namespace tsinv;

TEST_CASE("transducer database loads one seed per pattern") {
    const auto& db = default_transducers();
    CHECK(db.seeds().size() == 8);
    for (const auto& entry : default_catalog().entries()) CHECK_NOTHROW(db.seed(entry.name));
    CHECK_THROWS_AS(db.seed("plateau_of_unknown"), std::out_of_range);
}

TEST_CASE("found counts equal the occurrence oracle up to length 9") {
    const auto& cat = default_catalog();
    for (const auto& entry : cat.entries()) {
        const auto& t = seed_transducer(entry.name);
        auto spec = cat.constraint("nb_" + entry.name);
        for (int len = 8; len <= 9; ++len) {  // <= 7 checked at load
            long long total = pow3(len);
            std::atomic<bool> ok{true};
            parallel_chunks(total, [&](int, long long b, long long e) {
                for (long long idx = b; idx < e && ok; ++idx) {
                    Signature sig = signature_from_index(len, idx);
                    if (t.found_count(sig) != eval_constraint(spec, sig)) ok = false;
                }
            });
            CHECK_MESSAGE(ok.load(), entry.name << " disagrees with the oracle at length " << len);
        }
    }
}

TEST_CASE("two found outputs while consuming the running example") {
    CHECK(seed_transducer("peak").found_count("<<=>=<>") == 2);
    CHECK(seed_transducer("valley").found_count("<<=>=<>") == 1);
}

TEST_CASE("separation splits only the states reachable both ways") {
    const auto& peak = seed_transducer("peak");
    CHECK(!is_separated(peak));
    auto sep = separate(peak);
    CHECK(is_separated(sep));
    REQUIRE(sep.n_states == 4);
    REQUIRE(sep.after_found.size() == 4);
    std::map<std::string, char> bits;
    for (int q = 0; q < sep.n_states; ++q)
        bits[sep.state_name(q)] = sep.after_found[static_cast<std::size_t>(q)];
    CHECK(bits.at("s") == 0);
    CHECK(bits.at("r") == 0);
    CHECK(bits.at("t") == 1);
    CHECK(bits.at("r'") == 1);
    // separation preserves the output sequence
    for (int len = 0; len <= 7; ++len)
        for_each_signature(len, [&](const Signature& sig) {
            CHECK(sep.found_count(sig) == peak.found_count(sig));
        });
    // separating an already separated transducer changes nothing
    CHECK(separate(sep).n_states == sep.n_states);
    for (const auto& entry : default_catalog().entries())
        CHECK(is_separated(separate(seed_transducer(entry.name))));
}

TEST_CASE("found-path lengths and regrets of the separated four-state seed") {
    auto sep = separate(seed_transducer("peak"));
    auto L = shortest_found_path(sep);
    std::map<std::string, int> id;
    for (int q = 0; q < sep.n_states; ++q) id[sep.state_name(q)] = q;
    CHECK(L[id.at("s")] == 2);
    CHECK(L[id.at("r")] == 1);
    CHECK(L[id.at("t")] == 2);
    CHECK(L[id.at("r'")] == 2 - 1);
    // transitions between distinct states have regret 0, self-loops regret 1
    for (int q = 0; q < sep.n_states; ++q)
        for (int s = 0; s < 3; ++s) {
            long long r = regret(sep, L, q, s);
            if (sep.delta[q][s] == q)
                CHECK(r == 1);
            else
                CHECK(r == 0);
        }
}

TEST_CASE("homogeneity constants reproduce the counting upper bound") {
    const std::map<std::string, std::pair<long long, long long>> expected = {
        {"peak", {1, 2}},
        {"valley", {1, 2}},
        {"decreasing_terrace", {2, 2}},
        {"increasing_terrace", {2, 2}},
        {"proper_plateau", {1, 3}},
        {"decreasing_sequence", {0, 2}},
        {"increasing_sequence", {0, 2}},
        {"zigzag", {1, 3}},
    };
    const auto& cat = default_catalog();
    for (const auto& entry : cat.entries()) {
        auto h = homogeneity_constants(seed_transducer(entry.name));
        CHECK_MESSAGE(h.c == expected.at(entry.name).first, entry.name << " c=" << h.c);
        CHECK_MESSAGE(h.d == expected.at(entry.name).second, entry.name << " d=" << h.d);
        CHECK(h.c == entry.upp_nb.c);
        CHECK(h.d == entry.upp_nb.d);
        auto spec = cat.constraint("nb_" + entry.name);
        for (long long n = 1; n <= 20; ++n)
            CHECK(std::max(0LL, (n - h.c) / h.d) == upper_bound(spec, n));
    }
}

TEST_CASE("counting decoration equals the database machines and the oracle") {
    const auto& cat = default_catalog();
    for (const auto& entry : cat.entries()) {
        auto ra = decorate_nb(seed_transducer(entry.name));
        CHECK(check_incremental_property(ra).empty());
        auto spec = cat.constraint("nb_" + entry.name);
        const auto& reference = constraint_automaton("nb_" + entry.name);
        for (int len = 0; len <= 7; ++len)
            for_each_signature(len, [&](const Signature& sig) {
                auto r = ra.run(sig);
                REQUIRE(r);
                CHECK(r->outputs[0] == eval_constraint(spec, sig));
                CHECK(r->outputs == reference.run(sig)->outputs);
            });
    }
}

TEST_CASE("loss decoration of the separated four-state seed is the known machine") {
    auto loss = decorate_loss_nb(seed_transducer("peak"));
    const auto& ra = loss.ra;
    REQUIRE(ra.n_states == 4);
    std::map<std::string, int> id;
    for (int q = 0; q < ra.n_states; ++q) id[ra.state_name(q)] = q;
    const int s = id.at("s"), r = id.at("r"), t = id.at("t"), r2 = id.at("r'");
    const int C = 0, D = 1, R = 2;
    // descending towards the next occurrence costs nothing extra
    CHECK(ra.update_const(s, sym_index('<'), C) == 1);
    CHECK(ra.update_const(s, sym_index('<'), D) == 0);
    CHECK(ra.coeff(s, sym_index('<'), D, D) == 1);
    CHECK(ra.update_const(t, sym_index('<'), D) == 0);
    // idling on a self-loop costs one
    CHECK(ra.update_const(s, sym_index('='), D) == 1);
    CHECK(ra.update_const(t, sym_index('>'), D) == 1);
    CHECK(ra.update_const(r2, sym_index('<'), D) == 1);
    // found transitions bank D into R and reset C and D
    for (auto [q, sym] : {std::pair{r, '>'}, std::pair{r2, '>'}}) {
        CHECK(ra.coeff(q, sym_index(sym), C, C) == 0);
        CHECK(ra.coeff(q, sym_index(sym), D, D) == 0);
        CHECK(ra.coeff(q, sym_index(sym), R, D) == 1);
        CHECK(ra.coeff(q, sym_index(sym), R, R) == 1);
    }
    CHECK(ra.acceptance == std::vector<std::vector<long long>>{{1, 0, 1}});
    // pinned runs
    CHECK(ra.run("=<><>=<><")->outputs[0] == 3);
    CHECK(ra.run("<><><>")->outputs[0] == 0);
    CHECK(ra.run("==>=<===")->outputs[0] == 8);
}

TEST_CASE("loss automata equal the shortest-series oracle up to length 8") {
    const auto& cat = default_catalog();
    for (const auto& entry : cat.entries()) {
        auto loss = decorate_loss_nb(seed_transducer(entry.name));
        auto spec = cat.constraint("nb_" + entry.name);
        // series length of the first appearance of each count value
        std::map<long long, long long> minlen;
        for (int len = 0; len <= 8; ++len)
            for_each_signature(len, [&](const Signature& sig) {
                minlen.emplace(eval_constraint(spec, sig), len + 1);
            });
        for (int len = 0; len <= 8; ++len)
            for_each_signature(len, [&](const Signature& sig) {
                long long expect = len + 1 - minlen.at(eval_constraint(spec, sig));
                CHECK_MESSAGE(loss.ra.run(sig)->outputs[0] == expect,
                              entry.name << " loss mismatch on " << sig);
            });
    }
}

TEST_CASE("loss automata satisfy the non-negativity and separation conditions") {
    const auto& cat = default_catalog();
    for (const auto& entry : cat.entries()) {
        auto loss = decorate_loss_nb(seed_transducer(entry.name));
        const auto& ra = loss.ra;
        for (const auto& reg : ra.registers) CHECK(reg.init >= 0);
        for (const auto& row : ra.acceptance)
            for (long long coeff : row) CHECK(coeff >= 0);
        // every update either keeps the register (increment) or resets it
        for (int q = 0; q < ra.n_states; ++q)
            for (int s = 0; s < 3; ++s)
                for (const auto& u : ra.updates[q][s]) {
                    CHECK(u.cst >= 0);
                    bool keeps = false;
                    for (int a : u.adds) keeps |= a == u.reg;
                    bool reset = u.adds.empty();
                    CHECK((keeps || reset));
                }
        // the final state determines whether any occurrence was found
        auto spec = cat.constraint("nb_" + entry.name);
        for (int len = 0; len <= 7; ++len)
            for_each_signature(len, [&](const Signature& sig) {
                auto res = ra.run(sig);
                REQUIRE(res);
                bool after = loss.after_found[static_cast<std::size_t>(res->state)];
                CHECK(after == (eval_constraint(spec, sig) > 0));
            });
    }
}

TEST_CASE("transducer JSON round trip and DOT export") {
    for (const auto& [name, t] : default_transducers().seeds()) {
        auto back = transducer_from_json(transducer_to_json(t));
        CHECK(back.n_states == t.n_states);
        for (int len = 0; len <= 6; ++len)
            for_each_signature(len, [&](const Signature& sig) {
                CHECK(back.found_count(sig) == t.found_count(sig));
                CHECK(back.final_state(sig) == t.final_state(sig));
            });
    }
    auto dot = transducer_to_dot(seed_transducer("peak"), "seed");
    CHECK(dot.find("digraph seed") != std::string::npos);
    CHECK(dot.find("found") != std::string::npos);
}
