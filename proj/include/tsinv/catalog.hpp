#pragma once

// The constraint catalog: regex specs with trim constants, the
// maximal-occurrence oracle (ground truth for every automaton in the
// repository), constraint evaluation, and upper-bound formulas.

#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsinv/base.hpp"
#include "tsinv/regex.hpp"
#include "tsinv/util.hpp"

namespace tsinv {

// Upper bound Upp(n) on a constraint's result over all series of length n.
// value(n) = 0 for n < min_n, else m*floor((n-c)/d) + k, clamped at 0 when
// guarded. min_n covers entries whose bound jumps at small n in a way the
// affine-floor form cannot express.
struct UpperBoundFormula {
    long long c = 0;
    long long d = 1;
    long long m = 1;
    long long k = 0;
    bool guarded = true;
    long long min_n = 1;

    long long value(long long n) const {
        if (d < 1) throw std::logic_error("UpperBoundFormula: d must be >= 1");
        if (n < min_n) return 0;
        long long num = n - c;
        // floor division for possibly negative numerator
        long long q = num >= 0 ? num / d : -((-num + d - 1) / d);
        long long v = m * q + k;
        if (guarded && v < 0) return 0;
        return v;
    }
};

struct RegexSpec {
    std::string name;     // e.g. "peak"
    std::string pattern;  // regular expression over < = >
    int b_trim = 0;       // b_sigma
    int a_trim = 0;       // a_sigma
    int omega = 0;        // shortest-word length of the pattern language
    UpperBoundFormula upp_nb;
    UpperBoundFormula upp_sum_width;
    Dfa dfa;  // compiled pattern
};

enum class Feature { ONE, WIDTH };

struct ConstraintSpec {
    Feature feature = Feature::ONE;
    const RegexSpec* regex = nullptr;

    std::string name() const {
        return (feature == Feature::ONE ? "nb_" : "sum_width_") + regex->name;
    }
    const UpperBoundFormula& upp() const {
        return feature == Feature::ONE ? regex->upp_nb : regex->upp_sum_width;
    }
};

struct Occurrence {
    int i = 0;  // 1-based, inclusive signature indices
    int j = 0;
    int width(const RegexSpec& r) const { return j - i + 2 - r.b_trim - r.a_trim; }
};

// Inclusion-maximal matching windows, ordered by start index. A window
// (i,j) is an occurrence iff sig[i..j] is in L(pattern) and no strictly
// larger matching window contains it. For each start the longest match is
// computed by one DFA run; a window survives iff no earlier start reaches
// at least as far.
inline std::vector<Occurrence> maximal_occurrences(const RegexSpec& r, const Signature& sig) {
    const int n = static_cast<int>(sig.size());
    std::vector<Occurrence> out;
    int best_prev_end = -1;  // furthest end among windows starting earlier
    for (int i = 0; i < n; ++i) {
        int q = r.dfa.initial;
        int last_acc = -1;
        for (int j = i; j < n; ++j) {
            q = r.dfa.step(q, sig[static_cast<std::size_t>(j)]);
            if (q < 0) break;
            if (r.dfa.accepting[static_cast<std::size_t>(q)]) last_acc = j;
        }
        if (last_acc < 0) continue;
        if (last_acc > best_prev_end) {
            out.push_back({i + 1, last_acc + 1});
            best_prev_end = last_acc;
        }
    }
    return out;
}

inline long long eval_constraint(const ConstraintSpec& spec, const Signature& sig) {
    auto occs = maximal_occurrences(*spec.regex, sig);
    if (spec.feature == Feature::ONE) return static_cast<long long>(occs.size());
    long long total = 0;
    for (const auto& o : occs) total += o.width(*spec.regex);
    return total;
}

inline long long upper_bound(const ConstraintSpec& spec, long long n) {
    if (n < 1) throw std::invalid_argument("upper_bound: n must be >= 1");
    return spec.upp().value(n);
}

// Brute-force maximum of the constraint result over all signatures of
// length n-1 (the independent oracle behind every formula check).
inline long long brute_force_max(const ConstraintSpec& spec, int n) {
    long long best = 0;
    for_each_signature(n - 1, [&](const Signature& s) {
        best = std::max(best, eval_constraint(spec, s));
    });
    return best;
}

// --- catalog --------------------------------------------------------------

class Catalog {
  public:
    const std::vector<RegexSpec>& entries() const { return entries_; }

    const RegexSpec& regex(const std::string& name) const {
        for (const auto& e : entries_)
            if (e.name == name) return e;
        throw std::out_of_range("catalog: unknown pattern " + name);
    }

    // Accepts "nb_<pattern>" or "sum_width_<pattern>".
    ConstraintSpec constraint(const std::string& name) const {
        if (name.rfind("nb_", 0) == 0) return {Feature::ONE, &regex(name.substr(3))};
        if (name.rfind("sum_width_", 0) == 0) return {Feature::WIDTH, &regex(name.substr(10))};
        throw std::out_of_range("catalog: unknown constraint " + name);
    }

    std::vector<std::string> constraint_names() const {
        std::vector<std::string> out;
        for (const auto& e : entries_) out.push_back("nb_" + e.name);
        for (const auto& e : entries_) out.push_back("sum_width_" + e.name);
        return out;
    }

    static UpperBoundFormula formula_from_json(const nlohmann::json& j) {
        UpperBoundFormula f;
        f.c = j.at("c").get<long long>();
        f.d = j.at("d").get<long long>();
        f.m = j.at("m").get<long long>();
        f.k = j.at("k").get<long long>();
        f.guarded = j.at("guarded").get<bool>();
        f.min_n = j.value("min_n", 1LL);
        return f;
    }

    // Load from JSON and run the load gate: omega matches the shortest word
    // of the compiled pattern, trim constants are in range, and both
    // upper-bound formulas equal the brute-force maximum for n <= gate_n.
    static Catalog load_json(const nlohmann::json& j, int gate_n = 9) {
        Catalog cat;
        for (const auto& e : j.at("entries")) {
            RegexSpec r;
            r.name = e.at("name").get<std::string>();
            r.pattern = e.at("pattern").get<std::string>();
            r.b_trim = e.at("b").get<int>();
            r.a_trim = e.at("a").get<int>();
            r.omega = e.at("omega").get<int>();
            r.upp_nb = formula_from_json(e.at("upper_bound").at("nb"));
            r.upp_sum_width = formula_from_json(e.at("upper_bound").at("sum_width"));
            r.dfa = compile_regex(r.pattern);
            auto sw = shortest_accepted(r.dfa);
            if (!sw) throw std::runtime_error("catalog: empty pattern language for " + r.name);
            if (static_cast<int>(sw->size()) != r.omega)
                throw std::runtime_error("catalog: omega mismatch for " + r.name + " (shortest word '" +
                                         *sw + "')");
            if (r.b_trim < 0 || r.a_trim < 0 || r.b_trim + r.a_trim > r.omega + 1)
                throw std::runtime_error("catalog: trim constants out of range for " + r.name);
            cat.entries_.push_back(std::move(r));
        }
        for (const auto& e : cat.entries_) {
            for (Feature f : {Feature::ONE, Feature::WIDTH}) {
                ConstraintSpec spec{f, &e};
                for (int n = 1; n <= gate_n; ++n) {
                    long long formula = spec.upp().value(n);
                    long long brute = brute_force_max(spec, n);
                    if (formula != brute)
                        throw std::runtime_error("catalog: upper bound mismatch for " + spec.name() +
                                                 " at n=" + std::to_string(n) + ": formula " +
                                                 std::to_string(formula) + " vs brute " +
                                                 std::to_string(brute));
                }
            }
        }
        return cat;
    }

    static Catalog load_file(const std::string& path, int gate_n = 9) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("catalog: cannot open " + path);
        nlohmann::json j;
        in >> j;
        return load_json(j, gate_n);
    }

  private:
    std::vector<RegexSpec> entries_;
};

// Resolve the data directory: $TSINV_DATA overrides the compiled-in path.
inline std::string data_dir() {
    if (const char* env = std::getenv("TSINV_DATA")) return env;
#ifdef TSINV_DATA_DIR
    return TSINV_DATA_DIR;
#else
    return "data";
#endif
}

// Shared default catalog (loaded once; immutable afterwards).
inline const Catalog& default_catalog() {
    static const Catalog cat = Catalog::load_file(data_dir() + "/catalog.json");
    return cat;
}

}  // namespace tsinv
