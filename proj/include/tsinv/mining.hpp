#pragma once

// Non-linear invariant mining for a pair of constraints on the same series:
//   1. generate, per length, all feasible (R1, R2) pairs, their convex hull,
//      and the infeasible lattice points inside the hull;
//   2. enumerate candidate Boolean functions (conjunctions of atomic
//      relations) and keep those consistent with the data — true somewhere on
//      the infeasible points and false on every feasible point;
//   3. prove or refute each candidate: independent functions by emptiness of
//      the intersected condition automata, dependent ones through the linear
//      synthesizer under the regular conjuncts as a condition;
//   4. drop proved functions subsumed by another proved function.
// All arithmetic is exact integer arithmetic; no floating point anywhere.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsinv/catalog.hpp"
#include "tsinv/gaploss.hpp"
#include "tsinv/linear.hpp"
#include "tsinv/util.hpp"

namespace tsinv {

// ---------------------------------------------------------------------------
// Convex hulls of integer points, counterclockwise with collinear vertices
// dropped (Graham-style monotone chain; exact orientation tests).

using Point = std::pair<long long, long long>;

inline long long cross(const Point& o, const Point& a, const Point& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
}

inline std::vector<Point> graham_hull(const std::set<Point>& points) {
    std::vector<Point> p(points.begin(), points.end());
    if (p.size() <= 2) return p;
    std::vector<Point> h(2 * p.size());
    std::size_t k = 0;
    for (const auto& pt : p) {  // lower hull
        while (k >= 2 && cross(h[k - 2], h[k - 1], pt) <= 0) --k;
        h[k++] = pt;
    }
    const std::size_t lo = k + 1;
    for (auto it = p.rbegin() + 1; it != p.rend(); ++it) {  // upper hull
        while (k >= lo && cross(h[k - 2], h[k - 1], *it) <= 0) --k;
        h[k++] = *it;
    }
    h.resize(k - 1);
    if (h.size() < 2) h = {p.front(), p.back()};  // all collinear
    if (h.size() == 2 && h[0] == h[1]) h.pop_back();
    return h;
}

// Boundary counts as inside; hull must be counterclockwise.
inline bool inside_hull(const std::vector<Point>& hull, const Point& pt) {
    if (hull.empty()) return false;
    if (hull.size() == 1) return hull[0] == pt;
    if (hull.size() == 2) {
        if (cross(hull[0], hull[1], pt) != 0) return false;
        auto [lo, hi] = std::minmax(hull[0], hull[1]);
        return lo <= pt && pt <= hi;
    }
    for (std::size_t i = 0; i < hull.size(); ++i)
        if (cross(hull[i], hull[(i + 1) % hull.size()], pt) < 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Dataset: per length, the feasible pairs, their hull, and the infeasible
// lattice points inside the hull.

struct LengthSlice {
    long long n = 0;
    std::set<Point> feasible;
    std::vector<Point> hull;
    std::set<Point> infeasible;
};

struct Dataset {
    std::vector<std::string> factors;
    std::vector<LengthSlice> slices;
};

inline LengthSlice dataset_slice(const std::vector<const RegisterAutomaton*>& machines,
                                 long long n) {
    LengthSlice slice;
    slice.n = n;
    const int len = static_cast<int>(n) - 1;
    const long long total = pow3(len);
    std::vector<std::set<Point>> partial(static_cast<std::size_t>(worker_count()));
    parallel_chunks(total, [&](int w, long long b, long long e) {
        for (long long i = b; i < e; ++i) {
            Signature sig = signature_from_index(len, i);
            Point pt;
            pt.first = machines[0]->run(sig)->outputs.at(0);
            pt.second = machines[1]->run(sig)->outputs.at(0);
            partial[static_cast<std::size_t>(w)].insert(pt);
        }
    });
    for (auto& s : partial) slice.feasible.merge(s);
    slice.hull = graham_hull(slice.feasible);
    long long x_hi = 0, y_hi = 0;
    for (const auto& [x, y] : slice.feasible) {
        x_hi = std::max(x_hi, x);
        y_hi = std::max(y_hi, y);
    }
    for (long long x = 0; x <= x_hi; ++x)
        for (long long y = 0; y <= y_hi; ++y)
            if (!slice.feasible.count({x, y}) && inside_hull(slice.hull, {x, y}))
                slice.infeasible.insert({x, y});
    return slice;
}

inline Dataset generate_dataset(const std::vector<std::string>& factors, long long n_lo = 7,
                                long long n_hi = 12) {
    Dataset ds;
    ds.factors = factors;
    std::vector<const RegisterAutomaton*> machines;
    for (const auto& f : factors) machines.push_back(&constraint_automaton(f));
    for (long long n = n_lo; n <= n_hi; ++n) ds.slices.push_back(dataset_slice(machines, n));
    return ds;
}

inline nlohmann::json dataset_to_json(const Dataset& ds) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : ds.slices) {
        nlohmann::json j;
        j["n"] = s.n;
        auto pts = [](const auto& c) {
            nlohmann::json a = nlohmann::json::array();
            for (const auto& [x, y] : c) a.push_back({x, y});
            return a;
        };
        j["feasible"] = pts(s.feasible);
        j["hull"] = pts(s.hull);
        j["infeasible"] = pts(s.infeasible);
        out.push_back(std::move(j));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Boolean functions: conjunctions of one to three atomic relations, at most
// one of them dependent.

struct BooleanFunction {
    std::vector<AtomicRelation> conjuncts;  // kept sorted

    bool dependent() const {
        for (const auto& c : conjuncts)
            if (c.dependent()) return true;
        return false;
    }

    const AtomicRelation* dependent_conjunct() const {
        for (const auto& c : conjuncts)
            if (c.dependent()) return &c;
        return nullptr;
    }

    bool eval(long long n, const std::vector<long long>& r,
              const std::vector<long long>& upp) const {
        for (const auto& c : conjuncts)
            if (!c.eval(n, r, upp)) return false;
        return true;
    }

    std::vector<long long> key() const {
        std::vector<long long> k{static_cast<long long>(conjuncts.size())};
        for (const auto& c : conjuncts)
            for (long long v : c.key()) k.push_back(v);
        return k;
    }
    bool operator<(const BooleanFunction& o) const { return key() < o.key(); }
    bool operator==(const BooleanFunction& o) const { return key() == o.key(); }

    std::string render() const {
        std::string out;
        for (const auto& c : conjuncts) {
            if (!out.empty()) out += " and ";
            out += c.render();
        }
        return out;
    }
};

struct HypothesisBounds {
    int max_conjuncts = 3;
    long long eq_max = 5;   // R = c,      c in [0, eq_max]
    long long geq_max = 4;  // R >= d,     d in [1, geq_max]
    long long leq_max = 4;  // R <= d,     d in [0, leq_max]
    long long gap_max = 1;  // R = max(n) - c, c in [0, gap_max]
    std::vector<long long> moduli = {2, 3};
    std::vector<long long> lin_mults = {1, 2};    // R_j = c * R_k + d
    std::vector<long long> lin_offsets = {0, 1};
};

inline std::vector<AtomicRelation> atomic_relations(int n_factors,
                                                    const HypothesisBounds& b) {
    using K = AtomicRelation::Kind;
    std::vector<AtomicRelation> out;
    for (long long m : b.moduli)
        for (long long r = 0; r < m; ++r) out.push_back({K::LenMod, 0, 0, m, r});
    for (int j = 0; j < n_factors; ++j) {
        for (long long m : b.moduli)
            for (long long r = 0; r < m; ++r) out.push_back({K::ResMod, j, 0, m, r});
        for (long long d = 1; d <= b.geq_max; ++d) out.push_back({K::ResGeq, j, 0, 0, d});
        for (long long d = 0; d <= b.leq_max; ++d) out.push_back({K::ResLeq, j, 0, 0, d});
        for (long long c = 0; c <= b.eq_max; ++c) out.push_back({K::ResEq, j, 0, c, 0});
        for (long long c = 0; c <= b.gap_max; ++c) out.push_back({K::ResGapEq, j, 0, c, 0});
    }
    for (int j = 0; j < n_factors; ++j)
        for (int k = 0; k < n_factors; ++k) {
            if (j == k) continue;
            for (long long c : b.lin_mults)
                for (long long d : b.lin_offsets) {
                    if (c == 1 && d == 0 && j > k) continue;  // R2 = R1 duplicates R1 = R2
                    out.push_back({K::ResLin, j, k, c, d});
                }
        }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<BooleanFunction> enumerate_hypotheses(int n_factors,
                                                         const HypothesisBounds& b) {
    auto atoms = atomic_relations(n_factors, b);
    std::vector<BooleanFunction> out;
    const int m = static_cast<int>(atoms.size());
    std::vector<int> pick;
    auto rec = [&](auto&& self, int start, int deps) -> void {
        if (!pick.empty()) {
            BooleanFunction f;
            for (int i : pick) f.conjuncts.push_back(atoms[static_cast<std::size_t>(i)]);
            out.push_back(std::move(f));
        }
        if (static_cast<int>(pick.size()) == b.max_conjuncts) return;
        for (int i = start; i < m; ++i) {
            int nd = deps + (atoms[static_cast<std::size_t>(i)].dependent() ? 1 : 0);
            if (nd > 1) continue;
            pick.push_back(i);
            self(self, i + 1, nd);
            pick.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

// ---------------------------------------------------------------------------
// Consistency filter: keep candidates true on at least one infeasible
// example and false on every feasible example of the dataset.

inline std::vector<BooleanFunction> filter_consistent(
    const std::vector<BooleanFunction>& candidates, const Dataset& ds) {
    const auto& cat = default_catalog();
    std::vector<ConstraintSpec> specs;
    for (const auto& f : ds.factors) specs.push_back(cat.constraint(f));
    struct Example {
        long long n;
        std::vector<long long> r;
        std::vector<long long> upp;
        bool feasible;
    };
    std::vector<Example> examples;
    for (const auto& slice : ds.slices) {
        std::vector<long long> upp;
        for (const auto& s : specs) upp.push_back(upper_bound(s, slice.n));
        for (const auto& [x, y] : slice.feasible)
            examples.push_back({slice.n, {x, y}, upp, true});
        for (const auto& [x, y] : slice.infeasible)
            examples.push_back({slice.n, {x, y}, upp, false});
    }
    std::vector<BooleanFunction> kept;
    for (const auto& f : candidates) {
        bool ok_feasible = true, some_infeasible = false;
        for (const auto& ex : examples) {
            if (f.eval(ex.n, ex.r, ex.upp)) {
                if (ex.feasible) {
                    ok_feasible = false;
                    break;
                }
                some_infeasible = true;
            }
        }
        if (ok_feasible && some_infeasible) kept.push_back(f);
    }
    return kept;
}

// ---------------------------------------------------------------------------
// Proof phase.

struct NonLinearInvariant {
    BooleanFunction function;
    enum class Status { ProvedUniversal, ProvedWithGuard, DeskVerified, Refuted, Unknown };
    Status status = Status::Unknown;
    long long n_guard = 0;    // ProvedWithGuard / guarded DeskVerified: claim holds for n >= n_guard
    int verified_to = 0;      // DeskVerified: largest exhaustively checked length
    std::optional<Signature> witness;  // Refuted: an accepted supporting signature
    std::string detail;

    bool proved() const {
        return status == Status::ProvedUniversal || status == Status::ProvedWithGuard ||
               status == Status::DeskVerified;
    }
};

// A supporting signature of an infinite-language automaton: shortest word
// through a state on a cycle, with the cycle pumped once.
inline std::optional<Signature> pumped_witness(const Dfa& input) {
    Dfa d = trim(input);
    if (d.n_states == 0) return std::nullopt;
    auto bfs_word = [&](int from, int to, bool forbid_empty) -> std::optional<Signature> {
        std::vector<int> prev(static_cast<std::size_t>(d.n_states), -1);
        std::vector<char> prev_sym(static_cast<std::size_t>(d.n_states), 0);
        std::vector<char> seen(static_cast<std::size_t>(d.n_states), 0);
        std::vector<int> queue;
        auto push = [&](int q, int p, char s) {
            if (seen[static_cast<std::size_t>(q)]) return;
            seen[static_cast<std::size_t>(q)] = 1;
            prev[static_cast<std::size_t>(q)] = p;
            prev_sym[static_cast<std::size_t>(q)] = s;
            queue.push_back(q);
        };
        if (!forbid_empty && from == to) return Signature{};
        for (int s = 0; s < 3; ++s) {
            int t = d.delta[static_cast<std::size_t>(from)][static_cast<std::size_t>(s)];
            if (t >= 0) push(t, -1, sym_char(s));
        }
        for (std::size_t i = 0; i < queue.size(); ++i) {
            int q = queue[i];
            if (q == to) {
                Signature w;
                for (int at = q; at != -1; at = prev[static_cast<std::size_t>(at)])
                    w.push_back(prev_sym[static_cast<std::size_t>(at)]);
                std::reverse(w.begin(), w.end());
                return w;
            }
            for (int s = 0; s < 3; ++s) {
                int t = d.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
                if (t >= 0) push(t, q, sym_char(s));
            }
        }
        return std::nullopt;
    };
    for (int q = 0; q < d.n_states; ++q) {
        auto cycle = bfs_word(q, q, /*forbid_empty=*/true);
        if (!cycle) continue;
        auto pre = bfs_word(d.initial, q, false);
        if (!pre) continue;
        for (int a = 0; a < d.n_states; ++a) {
            if (!d.accepting[static_cast<std::size_t>(a)]) continue;
            auto post = bfs_word(q, a, false);
            if (!post) continue;
            return *pre + *cycle + *cycle + *post;
        }
    }
    return std::nullopt;
}

// Cache of condition automata for the independent atoms of one pair.
class RelationAutomatonCache {
  public:
    explicit RelationAutomatonCache(std::vector<std::string> factors)
        : factors_(std::move(factors)) {}

    const ConditionAutomaton& get(const AtomicRelation& rel) {
        auto it = cache_.find(rel.key());
        if (it == cache_.end())
            it = cache_.emplace(rel.key(), relation_automaton(rel, factors_)).first;
        return it->second;
    }

    // Build every automaton up front so later lookups are read-only and
    // thread-safe.
    void warm(const std::vector<BooleanFunction>& functions) {
        for (const auto& f : functions)
            for (const auto& c : f.conjuncts)
                if (!c.dependent()) get(c);
    }

  private:
    std::vector<std::string> factors_;
    std::map<std::vector<long long>, ConditionAutomaton> cache_;
};

// Proof of a dependent function with conjunct R_w = c * R_o + d0: split on
// the parity of R_w.  Each parity branch fixes the parity of c * R_o (for
// odd c also of R_o itself) or is impossible outright; the branch condition
// — these parities plus the function's regular conjuncts — restricts the
// product, and linear synthesis on the restriction must produce a bound
// separating R_w - c * R_o from d0.  The function is proved when every
// branch is impossible, unsatisfiable, or separated.
inline NonLinearInvariant prove_dependent_function(const BooleanFunction& f,
                                                   const std::vector<std::string>& factors,
                                                   RelationAutomatonCache& cache) {
    NonLinearInvariant out;
    out.function = f;
    const AtomicRelation* dep = f.dependent_conjunct();
    const int w = dep->which, o = dep->other;
    Certificate::Kind cap = Certificate::Kind::Proved;
    int verified_to = 0;
    std::optional<Dfa> base;
    for (const auto& c : f.conjuncts) {
        if (c.dependent()) continue;
        const auto& ca = cache.get(c);
        if (ca.cert.kind == Certificate::Kind::DeskVerified) {
            cap = Certificate::Kind::DeskVerified;
            verified_to = verified_to == 0 ? ca.cert.verified_to
                                           : std::min(verified_to, ca.cert.verified_to);
        }
        base = base ? intersect(*base, ca.dfa) : ca.dfa;
    }
    long long guard = 0;
    std::string detail;
    for (int b = 0; b <= 1; ++b) {
        std::string label = "R" + std::to_string(w + 1) + " parity " + std::to_string(b) + ": ";
        if (!detail.empty()) detail += "; ";
        long long rhs_parity = (((b - dep->d) % 2) + 2) % 2;  // parity of c * R_o
        if (dep->c % 2 == 0 && rhs_parity == 1) {
            detail += label + "impossible by parity";
            continue;
        }
        Dfa cond = value_mod_dfa(factors[static_cast<std::size_t>(w)], 2, b);
        if (dep->c % 2 == 1)
            cond = intersect(cond, value_mod_dfa(factors[static_cast<std::size_t>(o)], 2,
                                                 rhs_parity));
        if (base) cond = intersect(cond, *base);
        if (std::holds_alternative<LangEmpty>(classify_language(cond))) {
            detail += label + "condition unsatisfiable";
            continue;
        }
        const LinearInvariant* separating = nullptr;
        std::vector<LinearInvariant> invs;
        try {
            SynthOptions opt;
            opt.condition = cond;
            invs = synthesize(factors, opt);
        } catch (const std::exception& e) {
            out.status = NonLinearInvariant::Status::Unknown;
            out.detail = detail + label + "synthesis failed (" + e.what() + ")";
            return out;
        }
        for (const auto& inv : invs) {
            if (inv.e0 != 0) continue;
            long long cw = inv.coeffs[static_cast<std::size_t>(w)];
            long long co = inv.coeffs[static_cast<std::size_t>(o)];
            bool sep = (cw > 0 && co == -cw * dep->c && -inv.e > cw * dep->d) ||
                       (cw < 0 && co == -cw * dep->c && inv.e < -cw * dep->d);
            if (sep) {
                separating = &inv;
                break;
            }
        }
        if (!separating) {
            out.status = NonLinearInvariant::Status::Unknown;
            out.detail = detail + label + "no separating linear invariant";
            return out;
        }
        guard = std::max<long long>(guard, separating->min_n);
        detail += label + "separating invariant: " + separating->render();
    }
    out.status = cap == Certificate::Kind::Proved
                     ? (guard > 0 ? NonLinearInvariant::Status::ProvedWithGuard
                                  : NonLinearInvariant::Status::ProvedUniversal)
                     : NonLinearInvariant::Status::DeskVerified;
    out.n_guard = guard;
    out.verified_to = verified_to;
    out.detail = detail;
    return out;
}

inline NonLinearInvariant prove(const BooleanFunction& f,
                                const std::vector<std::string>& factors,
                                RelationAutomatonCache& cache) {
    if (f.dependent()) return prove_dependent_function(f, factors, cache);
    NonLinearInvariant out;
    out.function = f;
    Certificate::Kind cap = Certificate::Kind::Proved;
    int verified_to = 0;
    std::optional<Dfa> acc;
    for (const auto& c : f.conjuncts) {
        const auto& ca = cache.get(c);
        if (ca.cert.kind == Certificate::Kind::DeskVerified) {
            cap = Certificate::Kind::DeskVerified;
            verified_to = verified_to == 0 ? ca.cert.verified_to
                                           : std::min(verified_to, ca.cert.verified_to);
        }
        acc = acc ? intersect(*acc, ca.dfa) : ca.dfa;
    }
    auto cls = classify_language(*acc);
    if (std::holds_alternative<LangEmpty>(cls)) {
        out.status = cap == Certificate::Kind::Proved
                         ? NonLinearInvariant::Status::ProvedUniversal
                         : NonLinearInvariant::Status::DeskVerified;
    } else if (std::holds_alternative<LangFinite>(cls)) {
        long long longest = std::get<LangFinite>(cls).longest_word_len;
        out.n_guard = longest + 2;  // no supporting signature of length >= n_guard - 1
        out.status = cap == Certificate::Kind::Proved
                         ? NonLinearInvariant::Status::ProvedWithGuard
                         : NonLinearInvariant::Status::DeskVerified;
    } else {
        out.status = NonLinearInvariant::Status::Refuted;
        out.witness = pumped_witness(*acc);
    }
    out.verified_to = verified_to;
    return out;
}

// ---------------------------------------------------------------------------
// Standalone prover for the relation R1 - d * R2 = 1 (d in {1, 2}) via the
// parity split: R1 and d * R2 must differ in parity, and each parity branch
// is either unsatisfiable or excluded by a synthesized linear bound
// R1 - d * R2 >= c with c > 1.
struct OffsetRelationProof {
    bool proved = false;
    std::vector<std::string> branches;  // human-readable per-branch outcome
};

inline OffsetRelationProof prove_offset_relation(const std::vector<std::string>& factors,
                                                 long long d) {
    OffsetRelationProof out;
    out.proved = true;
    for (int b = 0; b <= 1; ++b) {
        std::string label = "R1 mod 2 = " + std::to_string(b) + ": ";
        if (d % 2 == 0 && (1 - b) % 2 != 0) {
            out.branches.push_back(label + "infeasible by parity of d*R2");
            continue;
        }
        Dfa cond = value_mod_dfa(factors[0], 2, b);
        if (d % 2 != 0) cond = intersect(cond, value_mod_dfa(factors[1], 2, 1 - b));
        if (std::holds_alternative<LangEmpty>(classify_language(cond))) {
            out.branches.push_back(label + "condition unsatisfiable");
            continue;
        }
        SynthOptions opt;
        opt.condition = cond;
        bool separated = false;
        for (const auto& inv : synthesize(factors, opt)) {
            if (inv.e0 != 0) continue;
            long long c1 = inv.coeffs[0], c2 = inv.coeffs[1];
            if (c1 > 0 && c2 == -c1 * d && -inv.e > c1) {  // R1 - d R2 >= c > 1
                out.branches.push_back(label + "separated by " + inv.render());
                separated = true;
                break;
            }
        }
        if (!separated) {
            out.branches.push_back(label + "no separating invariant");
            out.proved = false;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dominance filter, two stages.  First, a proved function whose conjunct set
// properly contains another proved function's conjunct set claims a subset of
// the same infeasible points and is discarded.  Second, functions whose truth
// sets coincide on the discrete box n in [2, n_max], R_j in [0, max_j(n)] are
// collapsed to the one with the smallest key (fewest conjuncts, then
// lexicographic atoms).  Functions with strictly larger coverage do not
// displace syntactically incomparable ones: a broader claim is a different
// invariant, not a rewording of the same one.

inline std::vector<NonLinearInvariant> dominance_filter(
    std::vector<NonLinearInvariant> proved, const std::vector<std::string>& factors,
    long long n_max = 20) {
    std::sort(proved.begin(), proved.end(), [](const auto& a, const auto& b) {
        return a.function.key() < b.function.key();
    });
    auto sub_conjunction = [](const BooleanFunction& a, const BooleanFunction& b) {
        // both conjunct lists are sorted
        return a.conjuncts.size() < b.conjuncts.size() &&
               std::includes(b.conjuncts.begin(), b.conjuncts.end(), a.conjuncts.begin(),
                             a.conjuncts.end());
    };
    std::vector<NonLinearInvariant> minimal;
    for (std::size_t i = 0; i < proved.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < proved.size() && !dominated; ++j)
            dominated = i != j && sub_conjunction(proved[j].function, proved[i].function);
        if (!dominated) minimal.push_back(proved[i]);
    }
    // Truth bitmask of each survivor (with its length guard) over the box.
    const auto& cat = default_catalog();
    std::vector<ConstraintSpec> specs;
    for (const auto& f : factors) specs.push_back(cat.constraint(f));
    std::vector<std::tuple<long long, std::vector<long long>, std::vector<long long>>> box;
    for (long long n = 2; n <= n_max; ++n) {
        std::vector<long long> upp;
        for (const auto& s : specs) upp.push_back(upper_bound(s, n));
        for (long long x = 0; x <= upp[0]; ++x)
            for (long long y = 0; y <= upp[1]; ++y)
                box.emplace_back(n, std::vector<long long>{x, y}, upp);
    }
    const std::size_t words = (box.size() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> mask(minimal.size());
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        mask[i].assign(words, 0);
        for (std::size_t bit = 0; bit < box.size(); ++bit) {
            const auto& [n, r, upp] = box[bit];
            if (n < minimal[i].n_guard) continue;
            if (minimal[i].function.eval(n, r, upp)) mask[i][bit / 64] |= 1ULL << (bit % 64);
        }
    }
    std::vector<NonLinearInvariant> kept;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        bool duplicate = false;
        for (std::size_t j = 0; j < i && !duplicate; ++j) duplicate = mask[j] == mask[i];
        if (!duplicate) kept.push_back(minimal[i]);
    }
    return kept;
}

// ---------------------------------------------------------------------------
// End-to-end pipeline.

struct MiningResult {
    Dataset dataset;
    std::size_t n_candidates = 0;
    std::vector<BooleanFunction> consistent;
    std::vector<NonLinearInvariant> verdicts;  // one verdict per consistent function
    std::vector<NonLinearInvariant> final_set;  // proved and dominance-filtered
};

inline MiningResult mine_pair(const std::vector<std::string>& factors, long long n_lo = 7,
                              long long n_hi = 12,
                              const HypothesisBounds& bounds = HypothesisBounds{}) {
    MiningResult res;
    res.dataset = generate_dataset(factors, n_lo, n_hi);
    auto candidates = enumerate_hypotheses(static_cast<int>(factors.size()), bounds);
    res.n_candidates = candidates.size();
    res.consistent = filter_consistent(candidates, res.dataset);
    RelationAutomatonCache cache(factors);
    cache.warm(res.consistent);
    res.verdicts.resize(res.consistent.size());
    parallel_chunks(
        static_cast<long long>(res.consistent.size()), [&](int, long long b, long long e) {
            for (long long i = b; i < e; ++i) {
                auto& slot = res.verdicts[static_cast<std::size_t>(i)];
                const auto& f = res.consistent[static_cast<std::size_t>(i)];
                try {
                    slot = prove(f, factors, cache);
                } catch (const std::exception& ex) {
                    slot.function = f;
                    slot.status = NonLinearInvariant::Status::Unknown;
                    slot.detail = std::string("proof attempt failed (") + ex.what() + ")";
                }
            }
        });
    std::vector<NonLinearInvariant> survivors;
    for (const auto& p : res.verdicts)
        if (p.proved()) survivors.push_back(p);
    res.final_set = dominance_filter(std::move(survivors), factors);
    return res;
}

}  // namespace tsinv
