#pragma once

// Gap automata and condition automata.  The "gap" of a series is the
// distance between its constraint value and the maximum value achievable at
// its length; a delta-gap automaton accepts exactly the signatures whose gap
// is delta.  These automata (together with DFAs for simple value and length
// relations) let infeasibility claims be settled by language emptiness.
//
// Two constructions are provided:
//  - For counting constraints, the gap is determined by the "loss" (how much
//    longer the series is than the shortest one with the same value) and by
//    whether any occurrence exists; the loss is computed by a register
//    automaton derived from the seed transducer, and bounding its registers
//    gives an exact finite automaton.  Certificate: Proved.
//  - For any constraint with a known upper-bound formula, a direct
//    bounded-deficit expansion tracks the distance to the bound with
//    saturated registers.  The saturation never fires below the exhaustively
//    tested depth, so the certificate records that depth: DeskVerified.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsinv/automata.hpp"
#include "tsinv/catalog.hpp"
#include "tsinv/dfa.hpp"
#include "tsinv/register_automaton.hpp"
#include "tsinv/transducer.hpp"

namespace tsinv {

// ---------------------------------------------------------------------------
// Gap/loss arithmetic for counting constraints whose maximum value is
// max(0, floor((n - c) / d)).

// loss = gap * d + (1 - sgn) * (min(n, c) - 1) + max(0, n - c) mod d,
// where sgn is 1 when the series contains at least one occurrence.
inline long long gap_to_loss(long long gap, int sgn, long long n, long long c, long long d) {
    return gap * d + (1 - sgn) * (std::min(n, c) - 1) + std::max(0LL, n - c) % d;
}

// All losses reachable for a fixed (gap, sgn) pair form a bounded interval.
struct LossInterval {
    long long lo = 0;
    long long hi = 0;
    bool contains(long long v) const { return lo <= v && v <= hi; }
};

inline LossInterval loss_interval(long long gap, int sgn, long long c, long long d) {
    LossInterval iv;
    iv.lo = gap * d + (1 - sgn) * (gap > 0 ? 1 : 0) * (c - 1);
    iv.hi = d * (gap + 1) - 1 + (1 - sgn) * (c - 1);
    return iv;
}

// ---------------------------------------------------------------------------
// Certificates: how a condition automaton is known to be correct.

struct Certificate {
    enum class Kind { Proved, DeskVerified };
    Kind kind = Kind::Proved;
    int verified_to = 0;  // largest series length checked exhaustively (DeskVerified)
    std::string method;
};

struct ConditionAutomaton {
    Dfa dfa;
    Certificate cert;
    std::string description;
};

// Largest series length up to which every bounded-deficit gap automaton is
// compared exhaustively against the register automata (enforced by the test
// suite; the saturation bounds below are far beyond any value reachable at
// this depth, so the automata are exact up to it).
inline constexpr int kDeficitVerifiedTo = 13;

// ---------------------------------------------------------------------------
// Exact gap automaton for a counting constraint, built from its loss
// automaton.  The gap is delta iff the loss lies in the interval for
// (delta, 0) and no occurrence was found, or in the interval for (delta, 1)
// and one was; the loss automaton's registers are saturated just above the
// largest interval endpoint, which preserves the acceptance decision because
// its registers only grow or reset and its acceptance coefficients are
// non-negative.
inline Dfa nb_gap_dfa(const std::string& pattern, long long delta) {
    if (delta < 0) throw std::invalid_argument("nb_gap_dfa: delta must be >= 0");
    const auto& seed = seed_transducer(pattern);
    auto h = homogeneity_constants(seed);
    auto loss = decorate_loss_nb(seed);
    LossInterval before = loss_interval(delta, 0, h.c, h.d);
    LossInterval after = loss_interval(delta, 1, h.c, h.d);
    long long phi = std::max(before.hi, after.hi);
    const auto accrow = loss.ra.acceptance_outputs().at(0);
    auto ex = capped_expansion(
        loss.ra, phi + 1, [&](int q, const std::vector<long long>& regs) {
            long long alpha = 0;
            for (std::size_t i = 0; i < accrow.size(); ++i) alpha += accrow[i] * regs[i];
            return loss.after_found[static_cast<std::size_t>(q)] ? after.contains(alpha)
                                                                 : before.contains(alpha);
        });
    return minimize(ex.dfa);
}

// ---------------------------------------------------------------------------
// Bounded-deficit gap automaton: simulate the constraint's register
// automaton while tracking (i) the series length exactly until the
// upper-bound formula becomes periodic, then only its phase, (ii) every
// pending (non-result) register saturated at cap_pot, and (iii) the deficit
// bound(n) - value saturated at delta + total pending capacity + 2.  Within
// the exhaustively tested depth no saturation ever fires, so acceptance
// (deficit == delta) is exact there.
inline Dfa deficit_gap_dfa(const std::string& constraint_name, long long delta,
                           long long cap_pot = 16) {
    if (delta < 0) throw std::invalid_argument("deficit_gap_dfa: delta must be >= 0");
    const auto& cat = default_catalog();
    auto spec = cat.constraint(constraint_name);
    const RegisterAutomaton& ra = constraint_automaton(constraint_name);
    const int main = ra.main_register(0);
    const int nregs = ra.n_registers();
    int n_pots = 0;
    for (int j = 0; j < nregs; ++j)
        if (j != main) ++n_pots;
    const long long cap_def = delta + n_pots * cap_pot + 2;

    auto upp = [&](long long n) { return upper_bound(spec, n); };
    // Exact length tracking until the bound's increments become periodic.
    const auto& formula = spec.upp();
    const long long period = std::max(1LL, formula.d);
    const long long n_exact = std::max<long long>(formula.min_n, formula.c + period) + period;
    auto next_phase = [&](long long phase) {
        long long n = phase + 1;
        if (n < n_exact + period) return n;
        return n - period;  // same bound increment as one period earlier
    };

    // Abstract state: (phase, automaton state, saturated registers with the
    // result register replaced by the saturated deficit).
    struct Key {
        long long phase;
        int q;
        std::vector<long long> regs;
        bool operator<(const Key& o) const {
            return std::tie(phase, q, regs) < std::tie(o.phase, o.q, o.regs);
        }
    };
    std::map<Key, int> id;
    std::vector<Key> order;
    auto intern = [&](Key k) {
        auto it = id.find(k);
        if (it != id.end()) return it->second;
        int s = static_cast<int>(order.size());
        id.emplace(k, s);
        order.push_back(std::move(k));
        return s;
    };

    Key init;
    init.phase = 1;
    init.q = ra.initial;
    init.regs = ra.initial_values();
    init.regs[static_cast<std::size_t>(main)] =
        upp(1) - init.regs[static_cast<std::size_t>(main)];  // the deficit at n = 1
    intern(std::move(init));

    Dfa d;
    d.delta.assign(1, {-1, -1, -1});
    for (std::size_t k = 0; k < order.size(); ++k) {
        Key cur = order[k];
        for (int s = 0; s < 3; ++s) {
            int to = ra.delta[static_cast<std::size_t>(cur.q)][static_cast<std::size_t>(s)];
            if (to < 0) continue;
            Key nxt;
            nxt.phase = next_phase(cur.phase);
            nxt.q = to;
            nxt.regs = cur.regs;
            // Value growth of the result register on this transition.
            long long dvalue = ra.update_const(cur.q, s, main);
            for (int i = 0; i < nregs; ++i)
                if (i != main && ra.coeff(cur.q, s, main, i) == 1)
                    dvalue += cur.regs[static_cast<std::size_t>(i)];
            long long dbound = upp(cur.phase + 1) - upp(cur.phase);
            long long def = cur.regs[static_cast<std::size_t>(main)] + dbound - dvalue;
            nxt.regs[static_cast<std::size_t>(main)] = std::min(def, cap_def + 1);
            // Pending registers evolve as usual, saturated at cap_pot + 1.
            for (int j = 0; j < nregs; ++j) {
                if (j == main) continue;
                long long v = ra.update_const(cur.q, s, j);
                for (int i = 0; i < nregs; ++i)
                    if (ra.coeff(cur.q, s, j, i) == 1) v += cur.regs[static_cast<std::size_t>(i)];
                nxt.regs[static_cast<std::size_t>(j)] = std::min(v, cap_pot + 1);
            }
            int t = intern(std::move(nxt));
            if (static_cast<std::size_t>(t) >= d.delta.size())
                d.delta.resize(static_cast<std::size_t>(t) + 1, {-1, -1, -1});
            d.delta[k][static_cast<std::size_t>(s)] = t;
        }
    }
    d.n_states = static_cast<int>(order.size());
    d.delta.resize(static_cast<std::size_t>(d.n_states), {-1, -1, -1});
    d.initial = 0;
    d.accepting.resize(static_cast<std::size_t>(d.n_states));
    for (int q = 0; q < d.n_states; ++q) {
        const Key& key = order[static_cast<std::size_t>(q)];
        d.accepting[static_cast<std::size_t>(q)] =
            ra.accepting[static_cast<std::size_t>(key.q)] &&
            key.regs[static_cast<std::size_t>(main)] == delta;
    }
    return minimize(d);
}

// ---------------------------------------------------------------------------
// Condition automata for the atomic relations used by mining and by the
// facet analysis.  All are exact for the claims they make; the certificate
// distinguishes proofs from exhaustively tested constructions.

// value == c: saturating every register at c + 1 preserves the decision
// because registers only grow by non-negative amounts.
inline Dfa value_eq_dfa(const std::string& constraint_name, long long c) {
    const RegisterAutomaton& ra = constraint_automaton(constraint_name);
    const int main = ra.main_register(0);
    auto ex = capped_expansion(ra, c + 1, [main, c](int, const std::vector<long long>& regs) {
        return regs[static_cast<std::size_t>(main)] == c;
    });
    return minimize(ex.dfa);
}

inline Dfa value_geq_dfa(const std::string& constraint_name, long long c) {
    const RegisterAutomaton& ra = constraint_automaton(constraint_name);
    const int main = ra.main_register(0);
    auto ex = capped_expansion(ra, std::max(c, 1LL), [main, c](int, const std::vector<long long>& regs) {
        return regs[static_cast<std::size_t>(main)] >= c;
    });
    return minimize(ex.dfa);
}

inline Dfa value_leq_dfa(const std::string& constraint_name, long long c) {
    const RegisterAutomaton& ra = constraint_automaton(constraint_name);
    const int main = ra.main_register(0);
    auto ex = capped_expansion(ra, c + 1, [main, c](int, const std::vector<long long>& regs) {
        return regs[static_cast<std::size_t>(main)] <= c;
    });
    return minimize(ex.dfa);
}

// value mod m == r: exact, linear updates commute with reduction mod m.
inline Dfa value_mod_dfa(const std::string& constraint_name, long long m, long long r) {
    const RegisterAutomaton& ra = constraint_automaton(constraint_name);
    const int main = ra.main_register(0);
    auto ex = mod_expansion(ra, m, [main, m, r](int, const std::vector<long long>& regs) {
        return regs[static_cast<std::size_t>(main)] % m == ((r % m) + m) % m;
    });
    return minimize(ex.dfa);
}

// ---------------------------------------------------------------------------
// Before/after-found state split of a transducer: a state is after-found
// when it is reachable via some found-decorated transition.  Separation
// requires the two sets to be disjoint.
inline std::vector<char> before_after_found_split(const Transducer& t) {
    auto seen = reachable_by_found_bit(t);
    std::vector<char> after(static_cast<std::size_t>(t.n_states), 0);
    for (int q = 0; q < t.n_states; ++q) {
        if (seen[static_cast<std::size_t>(q)][0] && seen[static_cast<std::size_t>(q)][1])
            throw std::runtime_error("before_after_found_split: state " + t.state_name(q) +
                                     " is reachable both before and after a found transition");
        after[static_cast<std::size_t>(q)] = seen[static_cast<std::size_t>(q)][1];
    }
    return after;
}

// value == bound(n) - delta, dispatching on the constraint family.
inline ConditionAutomaton gap_condition(const std::string& constraint_name, long long delta) {
    ConditionAutomaton out;
    out.description = constraint_name + " = max(n) - " + std::to_string(delta);
    if (constraint_name.rfind("nb_", 0) == 0) {
        out.dfa = nb_gap_dfa(constraint_name.substr(3), delta);
        out.cert = {Certificate::Kind::Proved, 0, "loss-automaton construction"};
    } else {
        out.dfa = deficit_gap_dfa(constraint_name, delta);
        out.cert = {Certificate::Kind::DeskVerified, kDeficitVerifiedTo,
                    "bounded-deficit expansion"};
    }
    return out;
}

// ---------------------------------------------------------------------------
// Atomic relations over (n, R_1, ..., R_k): the vocabulary of the mined
// Boolean functions.  All but ResLin concern a single quantity and admit a
// condition automaton; ResLin relates two results and is handled by the
// dependent-function prover instead.

struct AtomicRelation {
    enum class Kind {
        LenGeq,    // n >= c
        LenMod,    // n mod c = d
        ResMod,    // R_which mod c = d
        ResGeq,    // R_which >= d
        ResLeq,    // R_which <= d
        ResEq,     // R_which = c
        ResGapEq,  // R_which = max_which(n) - c
        ResLin,    // R_which = c * R_other + d
    };
    Kind kind = Kind::LenGeq;
    int which = 0;  // factor index (0-based); left-hand side for ResLin
    int other = 0;  // right-hand side factor for ResLin
    long long c = 0;
    long long d = 0;

    bool dependent() const { return kind == Kind::ResLin; }
    bool on_length() const { return kind == Kind::LenGeq || kind == Kind::LenMod; }

    // Evaluate on a data point; upp[j] is factor j's maximum value at n.
    bool eval(long long n, const std::vector<long long>& r,
              const std::vector<long long>& upp) const {
        auto R = [&](int j) { return r[static_cast<std::size_t>(j)]; };
        switch (kind) {
            case Kind::LenGeq: return n >= c;
            case Kind::LenMod: return n % c == d;
            case Kind::ResMod: return R(which) % c == d;
            case Kind::ResGeq: return R(which) >= d;
            case Kind::ResLeq: return R(which) <= d;
            case Kind::ResEq: return R(which) == c;
            case Kind::ResGapEq: return R(which) == upp[static_cast<std::size_t>(which)] - c;
            case Kind::ResLin: return R(which) == c * R(other) + d;
        }
        return false;
    }

    std::vector<long long> key() const {
        return {static_cast<long long>(kind), which, other, c, d};
    }
    bool operator<(const AtomicRelation& o) const { return key() < o.key(); }
    bool operator==(const AtomicRelation& o) const { return key() == o.key(); }

    std::string render() const {
        auto R = [&](int j) { return "R" + std::to_string(j + 1); };
        switch (kind) {
            case Kind::LenGeq: return "n >= " + std::to_string(c);
            case Kind::LenMod:
                return "n mod " + std::to_string(c) + " = " + std::to_string(d);
            case Kind::ResMod:
                return R(which) + " mod " + std::to_string(c) + " = " + std::to_string(d);
            case Kind::ResGeq: return R(which) + " >= " + std::to_string(d);
            case Kind::ResLeq: return R(which) + " <= " + std::to_string(d);
            case Kind::ResEq: return R(which) + " = " + std::to_string(c);
            case Kind::ResGapEq:
                return R(which) + " = max" + std::to_string(which + 1) + "(n)" +
                       (c > 0 ? " - " + std::to_string(c) : "");
            case Kind::ResLin: {
                std::string rhs = (c == 1 ? "" : std::to_string(c) + " ") + R(other);
                if (d > 0) rhs += " + " + std::to_string(d);
                return R(which) + " = " + rhs;
            }
        }
        return "?";
    }
};

// Condition automaton for one independent atomic relation: accepts exactly
// the signatures supporting the relation (some series realizes it).
inline ConditionAutomaton relation_automaton(const AtomicRelation& rel,
                                             const std::vector<std::string>& factors) {
    ConditionAutomaton out;
    out.cert = {Certificate::Kind::Proved, 0, "direct construction"};
    out.description = rel.render();
    auto name = [&](int j) { return factors.at(static_cast<std::size_t>(j)); };
    switch (rel.kind) {
        case AtomicRelation::Kind::LenGeq:
            out.dfa = length_geq_dfa(static_cast<int>(rel.c) - 1);  // word length = n - 1
            break;
        case AtomicRelation::Kind::LenMod:
            out.dfa = length_mod_dfa(rel.c, rel.d - 1);
            break;
        case AtomicRelation::Kind::ResMod:
            out.dfa = value_mod_dfa(name(rel.which), rel.c, rel.d);
            break;
        case AtomicRelation::Kind::ResGeq:
            out.dfa = value_geq_dfa(name(rel.which), rel.d);
            break;
        case AtomicRelation::Kind::ResLeq:
            out.dfa = value_leq_dfa(name(rel.which), rel.d);
            break;
        case AtomicRelation::Kind::ResEq:
            out.dfa = value_eq_dfa(name(rel.which), rel.c);
            break;
        case AtomicRelation::Kind::ResGapEq:
            return gap_condition(name(rel.which), rel.c);
        case AtomicRelation::Kind::ResLin:
            throw std::invalid_argument(
                "relation_automaton: dependent relation has no condition automaton");
    }
    return out;
}

}  // namespace tsinv
