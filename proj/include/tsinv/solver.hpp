#pragma once

// Demonstration search harness: depth-first labelling of a signature, left
// to right and smallest symbol first, looking for a series whose pair of
// constraint results hits given targets.  Pruning comes in two layers:
//   - always on: per-machine intervals of the achievable remaining output
//     contribution, indexed by machine state and remaining length;
//   - with invariants: each linear invariant of the pair contributes its
//     coefficient vector as a projection direction, and the achievable
//     projected contribution is bounded per product state and remaining
//     length.  A required contribution outside the bounds prunes the node.
// Both layers only ever exclude contributions no completion can achieve, so
// pruning never loses solutions and the invariant layer can only shrink the
// explored tree.
//
// The harness requires machines whose output changes by a constant on every
// transition (true of all counting machines); others are rejected.

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tsinv/automata.hpp"
#include "tsinv/linear.hpp"

namespace tsinv {

struct SearchStats {
    long long nodes = 0;
    long long backtracks = 0;  // visited nodes whose whole subtree failed
    bool solved = false;
    std::optional<Signature> witness;
};

// Output change on one transition when it is register-independent.
inline std::optional<long long> output_step(const RegisterAutomaton& ra,
                                            const std::vector<long long>& row, int q, int s) {
    const int nr = ra.n_registers();
    for (int i = 0; i < nr; ++i) {
        long long c = 0;
        for (int j = 0; j < nr; ++j)
            c += row[static_cast<std::size_t>(j)] * ra.coeff(q, s, j, i);
        if (c != row[static_cast<std::size_t>(i)]) return std::nullopt;
    }
    long long d = 0;
    for (int j = 0; j < nr; ++j)
        d += row[static_cast<std::size_t>(j)] * ra.update_const(q, s, j);
    return d;
}

namespace detail {

constexpr long long kNoPath = std::numeric_limits<long long>::min() / 4;

// Per-transition output deltas; throws when any transition's output change
// depends on register values.
struct AdditiveMachine {
    const RegisterAutomaton* ra = nullptr;
    std::vector<std::array<long long, 3>> step;  // [state][symbol], kNoPath = missing

    explicit AdditiveMachine(const RegisterAutomaton& m) : ra(&m) {
        const auto row = m.acceptance_outputs().at(0);
        step.assign(static_cast<std::size_t>(m.n_states), {kNoPath, kNoPath, kNoPath});
        for (int q = 0; q < m.n_states; ++q)
            for (int s = 0; s < 3; ++s) {
                if (m.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)] < 0)
                    continue;
                auto d = output_step(m, row, q, s);
                if (!d)
                    throw std::invalid_argument(
                        "demo_solve: machine output is not transition-additive");
                step[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)] = *d;
            }
    }
};

// lo/hi[q][rem]: achievable total output delta over rem steps from q ending
// in an accepting state; kNoPath when no completion exists.
struct ContributionBounds {
    std::vector<std::vector<long long>> lo, hi;

    ContributionBounds(const AdditiveMachine& m, int len) {
        const int ns = m.ra->n_states;
        lo.assign(static_cast<std::size_t>(ns), std::vector<long long>(len + 1, kNoPath));
        hi = lo;
        for (int q = 0; q < ns; ++q)
            if (m.ra->accepting[static_cast<std::size_t>(q)]) lo[q][0] = hi[q][0] = 0;
        for (int rem = 1; rem <= len; ++rem)
            for (int q = 0; q < ns; ++q)
                for (int s = 0; s < 3; ++s) {
                    int to = m.ra->delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
                    if (to < 0 || lo[static_cast<std::size_t>(to)][rem - 1] == kNoPath) continue;
                    long long d = m.step[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
                    long long l = d + lo[static_cast<std::size_t>(to)][rem - 1];
                    long long h = d + hi[static_cast<std::size_t>(to)][rem - 1];
                    if (lo[q][rem] == kNoPath || l < lo[q][rem]) lo[q][rem] = l;
                    if (hi[q][rem] == kNoPath || h > hi[q][rem]) hi[q][rem] = h;
                }
    }
};

// Reachable product of two machines with per-transition output delta pairs.
struct ProductGraph {
    std::vector<std::pair<int, int>> states;
    std::vector<std::array<int, 3>> delta;  // product transitions, -1 = missing
    std::vector<std::array<std::pair<long long, long long>, 3>> w;
    std::vector<char> accepting;
    int initial = 0;

    ProductGraph(const AdditiveMachine& a, const AdditiveMachine& b) {
        std::map<std::pair<int, int>, int> index;
        auto id = [&](std::pair<int, int> qq) {
            auto it = index.find(qq);
            if (it != index.end()) return it->second;
            int i = static_cast<int>(states.size());
            index[qq] = i;
            states.push_back(qq);
            delta.push_back({-1, -1, -1});
            w.push_back({});
            accepting.push_back(
                a.ra->accepting[static_cast<std::size_t>(qq.first)] &&
                b.ra->accepting[static_cast<std::size_t>(qq.second)]);
            return i;
        };
        initial = id({a.ra->initial, b.ra->initial});
        for (std::size_t i = 0; i < states.size(); ++i) {
            auto [q1, q2] = states[i];
            for (int s = 0; s < 3; ++s) {
                int t1 = a.ra->delta[static_cast<std::size_t>(q1)][static_cast<std::size_t>(s)];
                int t2 = b.ra->delta[static_cast<std::size_t>(q2)][static_cast<std::size_t>(s)];
                if (t1 < 0 || t2 < 0) continue;
                int j = id({t1, t2});
                delta[i][static_cast<std::size_t>(s)] = j;
                w[i][static_cast<std::size_t>(s)] = {
                    a.step[static_cast<std::size_t>(q1)][static_cast<std::size_t>(s)],
                    b.step[static_cast<std::size_t>(q2)][static_cast<std::size_t>(s)]};
            }
        }
    }
};

// Bounds on e1*f1 + e2*f2 over rem-step completions from each product state.
struct ProjectionBounds {
    std::vector<std::vector<long long>> lo, hi;

    ProjectionBounds(const ProductGraph& g, long long e1, long long e2, int len) {
        const int ns = static_cast<int>(g.states.size());
        lo.assign(static_cast<std::size_t>(ns), std::vector<long long>(len + 1, kNoPath));
        hi = lo;
        for (int q = 0; q < ns; ++q)
            if (g.accepting[static_cast<std::size_t>(q)]) lo[q][0] = hi[q][0] = 0;
        for (int rem = 1; rem <= len; ++rem)
            for (int q = 0; q < ns; ++q)
                for (int s = 0; s < 3; ++s) {
                    int to = g.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
                    if (to < 0 || lo[static_cast<std::size_t>(to)][rem - 1] == kNoPath) continue;
                    long long d = e1 * g.w[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)].first +
                                  e2 * g.w[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)].second;
                    long long l = d + lo[static_cast<std::size_t>(to)][rem - 1];
                    long long h = d + hi[static_cast<std::size_t>(to)][rem - 1];
                    if (lo[q][rem] == kNoPath || l < lo[q][rem]) lo[q][rem] = l;
                    if (hi[q][rem] == kNoPath || h > hi[q][rem]) hi[q][rem] = h;
                }
    }
};

}  // namespace detail

// Depth-first search for a signature of length n-1 whose pair of results
// equals the targets.  When invariants is null and use_invariants is set,
// the pair's linear invariants are synthesized on the fly.
inline SearchStats demo_solve(const std::vector<std::string>& factors, long long target1,
                              long long target2, long long n, bool use_invariants,
                              const std::vector<LinearInvariant>* invariants = nullptr) {
    if (factors.size() != 2) throw std::invalid_argument("demo_solve: need a pair");
    if (n < 1) throw std::invalid_argument("demo_solve: n must be >= 1");
    const int len = static_cast<int>(n) - 1;
    detail::AdditiveMachine m1(constraint_automaton(factors[0]));
    detail::AdditiveMachine m2(constraint_automaton(factors[1]));
    detail::ContributionBounds b1(m1, len), b2(m2, len);
    detail::ProductGraph prod(m1, m2);

    std::vector<LinearInvariant> synthesized;
    if (use_invariants && !invariants) {
        synthesized = synthesize(factors, SynthOptions{});
        invariants = &synthesized;
    }
    std::vector<detail::ProjectionBounds> proj;
    std::vector<std::pair<long long, long long>> proj_coeffs;
    if (use_invariants)
        for (const auto& inv : *invariants) {
            if (inv.non_default || inv.coeffs.size() != 2) continue;
            proj.emplace_back(prod, inv.coeffs[0], inv.coeffs[1], len);
            proj_coeffs.emplace_back(inv.coeffs[0], inv.coeffs[1]);
        }

    SearchStats stats;
    Signature sig;
    // current per-machine state, current product state, accumulated outputs
    struct Node {
        int q1, q2, qp;
        long long c1, c2;
    };
    auto initial_output = [](const detail::AdditiveMachine& m) {
        const auto row = m.ra->acceptance_outputs().at(0);
        auto init = m.ra->initial_values();
        long long v = 0;
        for (std::size_t i = 0; i < init.size(); ++i) v += row[i] * init[i];
        return v;
    };

    std::function<bool(int, Node)> dfs = [&](int pos, Node nd) -> bool {
        ++stats.nodes;
        const int rem = len - pos;
        const long long f1 = target1 - nd.c1, f2 = target2 - nd.c2;
        auto within = [&](const std::vector<std::vector<long long>>& lo,
                          const std::vector<std::vector<long long>>& hi, int q, long long f) {
            return lo[static_cast<std::size_t>(q)][rem] != detail::kNoPath &&
                   lo[static_cast<std::size_t>(q)][rem] <= f &&
                   f <= hi[static_cast<std::size_t>(q)][rem];
        };
        bool ok = within(b1.lo, b1.hi, nd.q1, f1) && within(b2.lo, b2.hi, nd.q2, f2);
        for (std::size_t k = 0; ok && k < proj.size(); ++k) {
            long long v = proj_coeffs[k].first * f1 + proj_coeffs[k].second * f2;
            ok = within(proj[k].lo, proj[k].hi, nd.qp, v);
        }
        if (ok && rem == 0) {
            stats.solved = true;
            stats.witness = sig;
            return true;
        }
        if (ok) {
            for (int s = 0; s < 3; ++s) {  // smallest symbol first: '<', '=', '>'
                int t1 = m1.ra->delta[static_cast<std::size_t>(nd.q1)][static_cast<std::size_t>(s)];
                int t2 = m2.ra->delta[static_cast<std::size_t>(nd.q2)][static_cast<std::size_t>(s)];
                if (t1 < 0 || t2 < 0) continue;
                Node child{t1, t2, prod.delta[static_cast<std::size_t>(nd.qp)][static_cast<std::size_t>(s)],
                           nd.c1 + m1.step[static_cast<std::size_t>(nd.q1)][static_cast<std::size_t>(s)],
                           nd.c2 + m2.step[static_cast<std::size_t>(nd.q2)][static_cast<std::size_t>(s)]};
                sig.push_back(sym_char(s));
                if (dfs(pos + 1, child)) return true;
                sig.pop_back();
            }
        }
        ++stats.backtracks;
        return false;
    };
    dfs(0, {m1.ra->initial, m2.ra->initial, prod.initial, initial_output(m1), initial_output(m2)});
    return stats;
}

// Deterministic random instance: a uniformly chosen signature of length n-1
// and the pair of results it realizes.
inline std::pair<Signature, std::pair<long long, long long>> random_instance(
    const std::vector<std::string>& factors, long long n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick(0, 2);
    Signature sig;
    for (long long i = 0; i + 1 < n; ++i) sig.push_back(sym_char(pick(rng)));
    std::pair<long long, long long> targets{
        constraint_automaton(factors[0]).run(sig)->outputs.at(0),
        constraint_automaton(factors[1]).run(sig)->outputs.at(0)};
    return {sig, targets};
}

}  // namespace tsinv
