// Catalog module: signatures, the maximal-occurrence oracle, constraint
// evaluation, upper-bound formulas, and the catalog load gate.

#include <doctest.h>

#include <atomic>
#include <random>

#include "tsinv/catalog.hpp"

using namespace tsinv;

TEST_CASE("signature_of basic examples") {
    CHECK(signature_of({0, 1, 2, 2, 0, 0, 4, 1}) == "<<=>=<>");
    CHECK(signature_of({5}) == "");
    CHECK(signature_of({3, 3, 3}) == "==");
}

TEST_CASE("series_with_signature round-trips") {
    for (const auto& sig : enumerate_signatures(5)) {
        CHECK(signature_of(series_with_signature(sig)) == sig);
    }
}

TEST_CASE("maximal occurrences of peak and valley") {
    const auto& cat = default_catalog();
    const auto& peak = cat.regex("peak");
    const auto& valley = cat.regex("valley");
    Signature sig = "<<=>=<>";

    auto po = maximal_occurrences(peak, sig);
    REQUIRE(po.size() == 2);
    CHECK(po[0].i == 1);
    CHECK(po[0].j == 4);
    CHECK(po[1].i == 6);
    CHECK(po[1].j == 7);

    auto vo = maximal_occurrences(valley, sig);
    REQUIRE(vo.size() == 1);
    CHECK(vo[0].i == 4);
    CHECK(vo[0].j == 6);

    CHECK(maximal_occurrences(peak, "==").empty());
}

TEST_CASE("overlapping terrace occurrences share the middle symbol") {
    const auto& cat = default_catalog();
    auto occs = maximal_occurrences(cat.regex("decreasing_terrace"), ">=>=>");
    REQUIRE(occs.size() == 2);
    CHECK(occs[0].i == 1);
    CHECK(occs[0].j == 3);
    CHECK(occs[1].i == 3);
    CHECK(occs[1].j == 5);
}

TEST_CASE("eval_constraint examples") {
    const auto& cat = default_catalog();
    Signature sig = signature_of({0, 1, 2, 2, 0, 0, 4, 1});
    CHECK(eval_constraint(cat.constraint("nb_peak"), sig) == 2);
    CHECK(eval_constraint(cat.constraint("sum_width_peak"), sig) == 4);
    CHECK(eval_constraint(cat.constraint("nb_valley"), "") == 0);
}

TEST_CASE("upper_bound examples") {
    const auto& cat = default_catalog();
    CHECK(upper_bound(cat.constraint("nb_peak"), 11) == 5);
    CHECK(upper_bound(cat.constraint("nb_peak"), 1) == 0);
    CHECK(upper_bound(cat.constraint("sum_width_zigzag"), 9) == 7);
    CHECK_THROWS_AS(upper_bound(cat.constraint("nb_peak"), 0), std::invalid_argument);
}

TEST_CASE("enumerate_signatures counts and order") {
    CHECK(enumerate_signatures(0) == std::vector<Signature>{""});
    CHECK(enumerate_signatures(1) == std::vector<Signature>{"<", "=", ">"});
    CHECK(enumerate_signatures(8).size() == 6561);
    // lexicographic and consistent with the indexed form
    auto all = enumerate_signatures(4);
    for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(all[i] == signature_from_index(4, static_cast<long long>(i)));
        if (i > 0) CHECK(all[i - 1] < all[i]);
    }
}

TEST_CASE("value independence: equal signatures give equal results") {
    const auto& cat = default_catalog();
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> len_dist(1, 9);
    std::uniform_int_distribution<long long> val(-50, 50);
    for (int trial = 0; trial < 300; ++trial) {
        int n = len_dist(rng);
        TimeSeries a;
        for (int i = 0; i < n; ++i) a.push_back(val(rng));
        // second series: same signature, different values
        TimeSeries b = series_with_signature(signature_of(a));
        for (auto& v : b) v = v * 3 + 7;
        REQUIRE(signature_of(a) == signature_of(b));
        for (const auto& name : cat.constraint_names()) {
            auto spec = cat.constraint(name);
            CHECK(eval_constraint(spec, signature_of(a)) == eval_constraint(spec, signature_of(b)));
        }
    }
}

TEST_CASE("per-occurrence widths are positive for every catalog entry") {
    const auto& cat = default_catalog();
    for (const auto& entry : cat.entries()) {
        for (int len = 0; len <= 8; ++len) {
            for_each_signature(len, [&](const Signature& sig) {
                for (const auto& occ : maximal_occurrences(entry, sig)) {
                    CHECK(occ.width(entry) > 0);
                }
            });
        }
    }
}

TEST_CASE("upper bound dominates and is attained, n <= 12") {
    const auto& cat = default_catalog();
    for (const auto& name : cat.constraint_names()) {
        auto spec = cat.constraint(name);
        for (int n = 1; n <= 12; ++n) {
            long long bound = upper_bound(spec, n);
            long long total = pow3(n - 1);
            std::atomic<long long> best{0};
            std::atomic<bool> ok{true};
            parallel_chunks(total, [&](int, long long b, long long e) {
                long long local_best = 0;
                for (long long idx = b; idx < e && ok; ++idx) {
                    long long v = eval_constraint(spec, signature_from_index(n - 1, idx));
                    if (v > bound) ok = false;
                    local_best = std::max(local_best, v);
                }
                long long cur = best.load();
                while (local_best > cur && !best.compare_exchange_weak(cur, local_best)) {
                }
            });
            CHECK_MESSAGE(ok.load(), name << " violated bound at n=" << n);
            CHECK_MESSAGE(best.load() == bound,
                          name << " bound not attained at n=" << n << ": max " << best.load()
                               << " vs formula " << bound);
        }
    }
}

TEST_CASE("upper-bound formulas equal brute force up to n = 14") {
    const auto& cat = default_catalog();
    for (const auto& name : cat.constraint_names()) {
        auto spec = cat.constraint(name);
        for (int n = 13; n <= 14; ++n) {  // n <= 12 covered by the previous sweep
            long long total = pow3(n - 1);
            std::atomic<long long> best{0};
            parallel_chunks(total, [&](int, long long b, long long e) {
                long long local_best = 0;
                for (long long idx = b; idx < e; ++idx)
                    local_best = std::max(local_best,
                                          eval_constraint(spec, signature_from_index(n - 1, idx)));
                long long cur = best.load();
                while (local_best > cur && !best.compare_exchange_weak(cur, local_best)) {
                }
            });
            CHECK_MESSAGE(best.load() == upper_bound(spec, n),
                          name << " formula mismatch at n=" << n << ": brute " << best.load());
        }
    }
}
