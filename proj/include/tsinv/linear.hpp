#pragma once

// Linear-invariant synthesis.  Given a product of incremental register
// automata with k result registers R_1..R_k, finds inequalities
//
//     e + e0*n + e1*R_1 + ... + ek*R_k >= 0        (n = series length)
//
// that hold for every series of length >= min_n accepted by the product.
// The method: turn the product into a weighted digraph (one arc per
// transition, weighted by the chosen coefficients applied to the registers'
// update constants), require every elementary circuit to have non-negative
// weight (so no walk can drive the combination below a bound), and set the
// constant from the shortest initial-to-accepting walk.  One invariant is
// produced per feasible sign pattern of the coefficients; the coefficient
// values minimise the total circuit weight plus the coefficient magnitudes,
// which yields the tightest inequality of that orientation.
//
// Options: the delayed transform postpones pending-credit increments and can
// only tighten the synthesized bounds; the non-default condition restricts
// acceptance to series where every factor's value exceeds its default,
// yielding conditional invariants; an arbitrary extra language condition
// (e.g. a length constraint) can be intersected in the same way.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "tsinv/automata.hpp"
#include "tsinv/base.hpp"
#include "tsinv/dfa.hpp"
#include "tsinv/digraph.hpp"
#include "tsinv/register_automaton.hpp"

namespace tsinv {

struct LinearInvariant {
    long long e = 0;                 // constant term
    long long e0 = 0;                // coefficient of the series length n
    std::vector<long long> coeffs;   // e1..ek, one per factor
    int min_n = 2;                   // holds for every series of length >= min_n
    bool delayed_used = false;
    bool non_default = false;        // only claimed when every factor value exceeds its default
    std::vector<std::string> factors;  // constraint names, when synthesized from the database

    long long evaluate(long long n, const std::vector<long long>& values) const {
        long long v = e + e0 * n;
        for (std::size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * values[i];
        return v;
    }

    bool holds(long long n, const std::vector<long long>& values) const {
        return n < min_n || evaluate(n, values) >= 0;
    }

    std::vector<long long> key() const {
        std::vector<long long> k{e, e0, non_default ? 1 : 0};
        k.insert(k.end(), coeffs.begin(), coeffs.end());
        return k;
    }

    // Human-readable "lhs <= rhs": negative-coefficient terms move to the
    // left, positive ones stay on the right with the constant.
    std::string render() const {
        auto var = [&](std::size_t i) {
            if (i < factors.size()) return factors[i];
            return "R" + std::to_string(i + 1);
        };
        auto term = [](long long c, const std::string& name) {
            return c == 1 ? name : std::to_string(c) + "*" + name;
        };
        std::vector<std::string> lhs, rhs;
        if (e0 < 0) lhs.push_back(term(-e0, "n"));
        if (e0 > 0) rhs.push_back(term(e0, "n"));
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i] < 0) lhs.push_back(term(-coeffs[i], var(i)));
            if (coeffs[i] > 0) rhs.push_back(term(coeffs[i], var(i)));
        }
        auto join = [](const std::vector<std::string>& parts) {
            std::string out;
            for (const auto& p : parts) {
                if (!out.empty()) out += " + ";
                out += p;
            }
            return out;
        };
        std::string left = lhs.empty() ? "0" : join(lhs);
        std::string right = join(rhs);
        if (e != 0) {
            if (right.empty())
                right = std::to_string(e);
            else
                right += (e > 0 ? " + " : " - ") + std::to_string(e > 0 ? e : -e);
        }
        if (right.empty()) right = "0";
        return left + " <= " + right;
    }
};

// ---------------------------------------------------------------------------
// Language restrictions: synchronous product with a register-free DFA.  The
// registers and updates are untouched; a state accepts iff both components
// accept, so runs are only claimed on the intersected language.
inline RegisterAutomaton restrict_accepting(const RegisterAutomaton& ra, const Dfa& dfa) {
    RegisterAutomaton out;
    out.registers = ra.registers;
    out.acceptance = ra.acceptance;
    std::map<std::pair<int, int>, int> id;
    std::vector<std::pair<int, int>> order;
    auto intern = [&](int qa, int qd) {
        auto it = id.find({qa, qd});
        if (it != id.end()) return it->second;
        int q = static_cast<int>(order.size());
        id[{qa, qd}] = q;
        order.emplace_back(qa, qd);
        return q;
    };
    intern(ra.initial, dfa.initial);
    for (std::size_t k = 0; k < order.size(); ++k) {
        auto [qa, qd] = order[k];
        for (int s = 0; s < 3; ++s) {
            int ta = ra.delta[static_cast<std::size_t>(qa)][static_cast<std::size_t>(s)];
            int td = dfa.delta[static_cast<std::size_t>(qd)][static_cast<std::size_t>(s)];
            if (ta < 0 || td < 0) continue;
            intern(ta, td);
        }
    }
    out.n_states = static_cast<int>(order.size());
    out.initial = 0;
    out.accepting.resize(static_cast<std::size_t>(out.n_states));
    out.state_names.resize(static_cast<std::size_t>(out.n_states));
    out.delta.assign(static_cast<std::size_t>(out.n_states), {-1, -1, -1});
    out.updates.resize(static_cast<std::size_t>(out.n_states));
    for (int q = 0; q < out.n_states; ++q) {
        auto [qa, qd] = order[static_cast<std::size_t>(q)];
        out.accepting[static_cast<std::size_t>(q)] =
            ra.accepting[static_cast<std::size_t>(qa)] && dfa.accepting[static_cast<std::size_t>(qd)];
        out.state_names[static_cast<std::size_t>(q)] = ra.state_name(qa) + "#" + std::to_string(qd);
        for (int s = 0; s < 3; ++s) {
            int ta = ra.delta[static_cast<std::size_t>(qa)][static_cast<std::size_t>(s)];
            int td = dfa.delta[static_cast<std::size_t>(qd)][static_cast<std::size_t>(s)];
            if (ta < 0 || td < 0) continue;
            out.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)] = id.at({ta, td});
            out.updates[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)] =
                ra.updates[static_cast<std::size_t>(qa)][static_cast<std::size_t>(s)];
        }
    }
    return out;
}

// DFA of the signatures on which a single-factor machine's result exceeds its
// default value 0.  Exact: a threshold-1 question is preserved by saturating
// every register at 1, because incremental updates only add non-negative
// amounts.
inline Dfa non_default_dfa(const RegisterAutomaton& machine) {
    if (machine.n_factors() != 1)
        throw std::invalid_argument("non_default_dfa: expects a single-factor machine");
    const int main = machine.main_register(0);
    auto ex = capped_expansion(machine, 1, [main](int, const std::vector<long long>& regs) {
        return regs[static_cast<std::size_t>(main)] >= 1;
    });
    return minimize(ex.dfa);
}

// Keep only states that lie on some initial-to-accepting path.  Returns
// nullopt when no accepting state is reachable at all.
inline std::optional<RegisterAutomaton> restrict_coaccessible(const RegisterAutomaton& ra0) {
    RegisterAutomaton ra = trim_reachable(ra0);
    std::vector<char> co(static_cast<std::size_t>(ra.n_states), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int q = 0; q < ra.n_states; ++q) {
            if (co[static_cast<std::size_t>(q)]) continue;
            bool ok = ra.accepting[static_cast<std::size_t>(q)];
            for (int s = 0; s < 3 && !ok; ++s) {
                int to = ra.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
                ok = to >= 0 && co[static_cast<std::size_t>(to)];
            }
            if (ok) {
                co[static_cast<std::size_t>(q)] = 1;
                changed = true;
            }
        }
    }
    if (!co[static_cast<std::size_t>(ra.initial)]) return std::nullopt;
    RegisterAutomaton cut = ra;
    for (int q = 0; q < ra.n_states; ++q)
        for (int s = 0; s < 3; ++s) {
            int to = ra.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
            if (to >= 0 && !co[static_cast<std::size_t>(to)]) {
                cut.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)] = -1;
                cut.updates[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)].clear();
            }
        }
    return trim_reachable(cut);
}

// ---------------------------------------------------------------------------
// Symbolic digraph of a product automaton for a fixed sign pattern
// (signs[0] for e0, signs[i] for e_i).  Each arc carries the weight vector
// (1, b_1, ..., b_k): the n-coefficient always grows by one per consumed
// symbol, and b_i is the amount factor i's registers grow on the transition
// -- the result register's constant when e_i is non-negative (pending credit
// may still be paid later, so the result alone is the safe lower estimate),
// or the summed constants of all of factor i's registers when e_i is
// negative (credit already banked in a pending register will eventually
// reach the result, so the sum is the safe upper estimate).  Parallel arcs
// with identical weight vectors are collapsed: they impose the same circuit
// constraints and shortest-path contributions.
struct SymbolicArc {
    int src = 0;
    int dst = 0;
    std::vector<long long> w;  // size k+1
};

struct SymbolicDigraph {
    int n_nodes = 0;
    std::vector<SymbolicArc> arcs;
    std::vector<std::string> node_names;
};

inline SymbolicDigraph invariant_digraph(const RegisterAutomaton& ra,
                                         const std::vector<int>& signs) {
    const int k = ra.n_factors();
    if (static_cast<int>(signs.size()) != k + 1)
        throw std::invalid_argument("invariant_digraph: need one sign per coefficient");
    SymbolicDigraph g;
    g.n_nodes = ra.n_states;
    for (int q = 0; q < ra.n_states; ++q) g.node_names.push_back(ra.state_name(q));
    std::set<std::tuple<int, int, std::vector<long long>>> seen;
    for (int q = 0; q < ra.n_states; ++q)
        for (int s = 0; s < 3; ++s) {
            int to = ra.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
            if (to < 0) continue;
            std::vector<long long> w(static_cast<std::size_t>(k + 1), 0);
            w[0] = 1;
            for (int f = 0; f < k; ++f) {
                if (signs[static_cast<std::size_t>(f + 1)] >= 0) {
                    w[static_cast<std::size_t>(f + 1)] =
                        ra.update_const(q, s, ra.main_register(f));
                } else {
                    long long sum = 0;
                    for (int j = 0; j < ra.n_registers(); ++j)
                        if (ra.registers[static_cast<std::size_t>(j)].factor == f)
                            sum += ra.update_const(q, s, j);
                    w[static_cast<std::size_t>(f + 1)] = sum;
                }
            }
            if (seen.insert({q, to, w}).second) g.arcs.push_back(SymbolicArc{q, to, std::move(w)});
        }
    return g;
}

// Weight vector of each elementary circuit of the symbolic digraph.
inline std::vector<std::vector<long long>> circuit_weight_vectors(const SymbolicDigraph& g) {
    WeightedDigraph wg;
    wg.n_nodes = g.n_nodes;
    for (const auto& a : g.arcs) wg.arcs.push_back(Arc{a.src, a.dst, 0, ""});
    std::vector<std::vector<long long>> out;
    const std::size_t dim = g.arcs.empty() ? 1 : g.arcs[0].w.size();
    for (const auto& c : simple_circuits(wg)) {
        std::vector<long long> w(dim, 0);
        for (int ai : c)
            for (std::size_t i = 0; i < w.size(); ++i)
                w[i] += g.arcs[static_cast<std::size_t>(ai)].w[i];
        out.push_back(std::move(w));
    }
    return out;
}

// Optimal coefficients (e0..ek) for one sign pattern: every circuit weight
// must be non-negative (else walks of unbounded length defeat any constant),
// e_i != 0 for i >= 1, and among the feasible choices within [-bound, bound]
// the total circuit weight plus the coefficient magnitudes is minimised;
// ties break lexicographically on (|e0|, e1, ..., ek).
inline std::optional<std::vector<long long>> find_coefficients(const SymbolicDigraph& g,
                                                               const std::vector<int>& signs,
                                                               long long bound) {
    if (bound < 1) throw std::invalid_argument("find_coefficients: bound must be >= 1");
    auto circuits = circuit_weight_vectors(g);
    const int k = static_cast<int>(signs.size()) - 1;
    std::vector<long long> cand(static_cast<std::size_t>(k + 1), 0);
    std::optional<std::vector<long long>> best;
    std::vector<long long> best_key;
    std::function<void(int)> enumerate = [&](int pos) {
        if (pos > k) {
            long long objective = 0;
            for (const auto& c : circuits) {
                long long w = 0;
                for (std::size_t i = 0; i < c.size(); ++i) w += c[i] * cand[i];
                if (w < 0) return;  // a negative circuit: infeasible
                objective += w;
            }
            for (int i = 1; i <= k; ++i) objective += std::abs(cand[static_cast<std::size_t>(i)]);
            std::vector<long long> key{objective, std::abs(cand[0])};
            key.insert(key.end(), cand.begin() + 1, cand.end());
            if (!best || key < best_key) {
                best = cand;
                best_key = key;
            }
            return;
        }
        long long lo, hi;
        if (signs[static_cast<std::size_t>(pos)] >= 0) {
            lo = pos == 0 ? 0 : 1;
            hi = bound;
        } else {
            lo = -bound;
            hi = pos == 0 ? 0 : -1;
        }
        for (long long v = lo; v <= hi; ++v) {
            cand[static_cast<std::size_t>(pos)] = v;
            enumerate(pos + 1);
        }
    };
    enumerate(0);
    return best;
}

// Constant term: the invariant must also hold on the cheapest run, so
//   e = -( e0*(p-1) + sum_i e_i * (initial growth of factor i)
//          + shortest initial-to-accepting walk of >= min_n - 1 arcs ).
// p = 2 is the arity of the signature relation (a series of length n has
// n - 1 signature symbols, each walk arc consuming one).  The layered
// shortest path saturates at min_n - 1 arcs; it converges because every
// circuit has non-negative weight once find_coefficients succeeded.
inline std::optional<long long> constant_term(const RegisterAutomaton& ra,
                                              const SymbolicDigraph& g,
                                              const std::vector<long long>& coeffs,
                                              const std::vector<int>& signs, int min_n) {
    const int p = 2;
    const int layers = std::max(0, min_n - p + 1);
    const long long inf = std::numeric_limits<long long>::max() / 4;
    std::vector<std::vector<long long>> dist(
        static_cast<std::size_t>(layers + 1),
        std::vector<long long>(static_cast<std::size_t>(ra.n_states), inf));
    dist[0][static_cast<std::size_t>(ra.initial)] = 0;
    long long guard = static_cast<long long>(layers + 1) * ra.n_states + 2;
    bool changed = true;
    while (changed && guard-- > 0) {
        changed = false;
        for (int l = 0; l <= layers; ++l)
            for (const auto& a : g.arcs) {
                if (dist[static_cast<std::size_t>(l)][static_cast<std::size_t>(a.src)] >= inf)
                    continue;
                long long w = 0;
                for (std::size_t i = 0; i < a.w.size(); ++i) w += a.w[i] * coeffs[i];
                int nl = std::min(l + 1, layers);
                long long cand =
                    dist[static_cast<std::size_t>(l)][static_cast<std::size_t>(a.src)] + w;
                if (cand < dist[static_cast<std::size_t>(nl)][static_cast<std::size_t>(a.dst)]) {
                    dist[static_cast<std::size_t>(nl)][static_cast<std::size_t>(a.dst)] = cand;
                    changed = true;
                }
            }
    }
    if (changed) return std::nullopt;  // did not converge: a negative circuit slipped through
    long long best = inf;
    for (int q = 0; q < ra.n_states; ++q)
        if (ra.accepting[static_cast<std::size_t>(q)])
            best = std::min(best, dist[static_cast<std::size_t>(layers)][static_cast<std::size_t>(q)]);
    if (best >= inf) return std::nullopt;  // no accepting run of the required length
    long long c = coeffs[0] * (p - 1) + best;
    for (int f = 0; f < ra.n_factors(); ++f) {
        long long beta0;
        if (signs[static_cast<std::size_t>(f + 1)] >= 0) {
            beta0 = ra.registers[static_cast<std::size_t>(ra.main_register(f))].init;
        } else {
            beta0 = 0;
            for (const auto& r : ra.registers)
                if (r.factor == f) beta0 += r.init;
        }
        c += coeffs[static_cast<std::size_t>(f + 1)] * beta0;
    }
    return -c;
}

// ---------------------------------------------------------------------------
// Full synthesis.

struct SynthOptions {
    bool use_delayed = false;
    bool non_default = false;
    long long coeff_bound = 3;
    int min_n = 2;                // invariants are claimed for series of length >= min_n
    std::optional<Dfa> condition;  // extra language restriction, e.g. a length constraint
};

inline std::vector<LinearInvariant> synthesize_machine(
    const RegisterAutomaton& machine, const SynthOptions& opt,
    const std::vector<Dfa>& occurrence_dfas = {}) {
    RegisterAutomaton ra = machine;
    if (opt.non_default) {
        if (static_cast<int>(occurrence_dfas.size()) != ra.n_factors())
            throw std::invalid_argument("synthesize_machine: need one occurrence DFA per factor");
        for (const auto& d : occurrence_dfas) ra = restrict_accepting(ra, d);
    }
    if (opt.condition) ra = restrict_accepting(ra, *opt.condition);
    auto core = restrict_coaccessible(ra);
    if (!core) return {};
    if (opt.use_delayed) *core = delayed(*core);
    const int k = core->n_factors();

    std::vector<LinearInvariant> out;
    std::set<std::vector<long long>> seen;
    for (int mask = 0; mask < (1 << (k + 1)); ++mask) {
        std::vector<int> signs;
        for (int i = 0; i <= k; ++i) signs.push_back((mask >> i) & 1 ? -1 : 1);
        auto g = invariant_digraph(*core, signs);
        auto coeffs = find_coefficients(g, signs, opt.coeff_bound);
        if (!coeffs) continue;
        auto e = constant_term(*core, g, *coeffs, signs, opt.min_n);
        if (!e) continue;
        LinearInvariant inv;
        inv.e = *e;
        inv.e0 = (*coeffs)[0];
        inv.coeffs.assign(coeffs->begin() + 1, coeffs->end());
        inv.min_n = opt.min_n;
        inv.delayed_used = opt.use_delayed;
        inv.non_default = opt.non_default;
        long long g0 = 0;
        g0 = std::gcd(g0, std::abs(inv.e));
        g0 = std::gcd(g0, std::abs(inv.e0));
        for (long long c : inv.coeffs) g0 = std::gcd(g0, std::abs(c));
        if (g0 > 1) {
            inv.e /= g0;
            inv.e0 /= g0;
            for (auto& c : inv.coeffs) c /= g0;
        }
        if (seen.insert(inv.key()).second) out.push_back(std::move(inv));
    }
    std::sort(out.begin(), out.end(), [](const LinearInvariant& a, const LinearInvariant& b) {
        return std::tie(a.e0, a.coeffs, a.e) < std::tie(b.e0, b.coeffs, b.e);
    });
    return out;
}

inline std::vector<LinearInvariant> synthesize(const std::vector<std::string>& constraint_names,
                                               const SynthOptions& opt = {}) {
    if (constraint_names.empty())
        throw std::invalid_argument("synthesize: need at least one constraint");
    std::vector<RegisterAutomaton> machines;
    for (const auto& name : constraint_names) machines.push_back(constraint_automaton(name));
    RegisterAutomaton prod = machines.size() == 1 ? machines[0] : product_all(machines);
    std::vector<Dfa> occ;
    if (opt.non_default)
        for (const auto& m : machines) occ.push_back(non_default_dfa(m));
    auto invs = synthesize_machine(prod, opt, occ);
    for (auto& inv : invs) inv.factors = constraint_names;
    return invs;
}

}  // namespace tsinv
