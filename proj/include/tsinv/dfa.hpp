#pragma once

// Partial DFAs over the {<,=,>} alphabet and the algorithms behind every
// automata-based proof: product intersection, trimming, Hopcroft
// minimization, emptiness/finiteness classification, and the
// shortest-word-through-a-cycle search used by facet feasibility proofs.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "tsinv/base.hpp"

namespace tsinv {

// Deterministic partial DFA. A transition value of -1 means "missing":
// the implicit dead state. State names are optional documentation carried
// through serialization; algorithms work on indices.
struct Dfa {
    int n_states = 0;
    int initial = 0;
    std::vector<std::array<int, 3>> delta;  // [state][symbol] -> state or -1
    std::vector<char> accepting;            // [state] -> 0/1
    std::vector<std::string> names;         // optional, may be empty

    static Dfa empty_language() {
        Dfa d;
        d.n_states = 1;
        d.initial = 0;
        d.delta.push_back({-1, -1, -1});
        d.accepting.push_back(0);
        return d;
    }

    static Dfa universal() {
        Dfa d;
        d.n_states = 1;
        d.initial = 0;
        d.delta.push_back({0, 0, 0});
        d.accepting.push_back(1);
        return d;
    }

    int step(int q, char c) const {
        if (q < 0) return -1;
        return delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(sym_index(c))];
    }

    bool accepts(const Signature& w) const {
        int q = initial;
        for (char c : w) {
            q = step(q, c);
            if (q < 0) return false;
        }
        return q >= 0 && accepting[static_cast<std::size_t>(q)];
    }

    std::string state_name(int q) const {
        if (q >= 0 && static_cast<std::size_t>(q) < names.size() && !names[static_cast<std::size_t>(q)].empty())
            return names[static_cast<std::size_t>(q)];
        return "q" + std::to_string(q);
    }
};

// --- construction helpers -------------------------------------------------

// DFA accepting exactly the words of length >= len_min.
inline Dfa length_geq_dfa(int len_min) {
    Dfa d;
    int m = std::max(0, len_min);
    d.n_states = m + 1;
    d.initial = 0;
    d.delta.assign(static_cast<std::size_t>(m + 1), {0, 0, 0});
    d.accepting.assign(static_cast<std::size_t>(m + 1), 0);
    for (int i = 0; i < m; ++i) d.delta[static_cast<std::size_t>(i)] = {i + 1, i + 1, i + 1};
    d.delta[static_cast<std::size_t>(m)] = {m, m, m};
    d.accepting[static_cast<std::size_t>(m)] = 1;
    return d;
}

// DFA accepting exactly the words whose length is congruent to r mod m.
inline Dfa length_mod_dfa(int m, int r) {
    if (m < 1) throw std::invalid_argument("length_mod_dfa: modulus must be >= 1");
    r = ((r % m) + m) % m;
    Dfa d;
    d.n_states = m;
    d.initial = 0;
    d.delta.assign(static_cast<std::size_t>(m), {0, 0, 0});
    d.accepting.assign(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < m; ++i) {
        int nxt = (i + 1) % m;
        d.delta[static_cast<std::size_t>(i)] = {nxt, nxt, nxt};
    }
    d.accepting[static_cast<std::size_t>(r)] = 1;
    return d;
}

// DFA accepting exactly the words of length exactly len.
inline Dfa length_eq_dfa(int len) {
    Dfa d;
    d.n_states = len + 1;
    d.initial = 0;
    d.delta.assign(static_cast<std::size_t>(len + 1), {-1, -1, -1});
    d.accepting.assign(static_cast<std::size_t>(len + 1), 0);
    for (int i = 0; i < len; ++i) d.delta[static_cast<std::size_t>(i)] = {i + 1, i + 1, i + 1};
    d.accepting[static_cast<std::size_t>(len)] = 1;
    return d;
}

// --- product intersection -------------------------------------------------

inline Dfa intersect(const Dfa& a, const Dfa& b) {
    Dfa out;
    std::map<std::pair<int, int>, int> id;
    std::deque<std::pair<int, int>> queue;
    auto get = [&](int qa, int qb) {
        auto key = std::make_pair(qa, qb);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        int q = out.n_states++;
        id.emplace(key, q);
        out.delta.push_back({-1, -1, -1});
        out.accepting.push_back(a.accepting[static_cast<std::size_t>(qa)] &&
                                b.accepting[static_cast<std::size_t>(qb)]);
        out.names.push_back(a.state_name(qa) + "&" + b.state_name(qb));
        queue.emplace_back(qa, qb);
        return q;
    };
    out.initial = get(a.initial, b.initial);
    while (!queue.empty()) {
        auto [qa, qb] = queue.front();
        queue.pop_front();
        int q = id.at({qa, qb});
        for (int s = 0; s < 3; ++s) {
            int na = a.delta[static_cast<std::size_t>(qa)][static_cast<std::size_t>(s)];
            int nb = b.delta[static_cast<std::size_t>(qb)][static_cast<std::size_t>(s)];
            if (na < 0 || nb < 0) continue;
            out.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)] = get(na, nb);
        }
    }
    return out;
}

inline Dfa intersect_all(const std::vector<Dfa>& ds) {
    if (ds.empty()) return Dfa::universal();
    Dfa acc = ds.front();
    for (std::size_t i = 1; i < ds.size(); ++i) acc = intersect(acc, ds[i]);
    return acc;
}

// --- trimming and minimization -------------------------------------------

namespace detail {

inline std::vector<char> reachable_states(const Dfa& d) {
    std::vector<char> seen(static_cast<std::size_t>(d.n_states), 0);
    std::deque<int> q{d.initial};
    seen[static_cast<std::size_t>(d.initial)] = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int s = 0; s < 3; ++s) {
            int v = d.delta[static_cast<std::size_t>(u)][static_cast<std::size_t>(s)];
            if (v >= 0 && !seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                q.push_back(v);
            }
        }
    }
    return seen;
}

inline std::vector<char> coreachable_states(const Dfa& d) {
    std::vector<std::vector<int>> rev(static_cast<std::size_t>(d.n_states));
    for (int u = 0; u < d.n_states; ++u)
        for (int s = 0; s < 3; ++s) {
            int v = d.delta[static_cast<std::size_t>(u)][static_cast<std::size_t>(s)];
            if (v >= 0) rev[static_cast<std::size_t>(v)].push_back(u);
        }
    std::vector<char> seen(static_cast<std::size_t>(d.n_states), 0);
    std::deque<int> q;
    for (int u = 0; u < d.n_states; ++u)
        if (d.accepting[static_cast<std::size_t>(u)]) {
            seen[static_cast<std::size_t>(u)] = 1;
            q.push_back(u);
        }
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int v : rev[static_cast<std::size_t>(u)])
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                q.push_back(v);
            }
    }
    return seen;
}

}  // namespace detail

// Restrict to states both reachable and co-reachable. May produce the
// canonical one-state empty-language DFA when the language is empty.
inline Dfa trim(const Dfa& d) {
    auto reach = detail::reachable_states(d);
    auto coreach = detail::coreachable_states(d);
    std::vector<int> remap(static_cast<std::size_t>(d.n_states), -1);
    Dfa out;
    for (int u = 0; u < d.n_states; ++u)
        if (reach[static_cast<std::size_t>(u)] && coreach[static_cast<std::size_t>(u)]) {
            remap[static_cast<std::size_t>(u)] = out.n_states++;
            out.accepting.push_back(d.accepting[static_cast<std::size_t>(u)]);
            out.names.push_back(d.state_name(u));
        }
    if (remap[static_cast<std::size_t>(d.initial)] < 0) return Dfa::empty_language();
    out.initial = remap[static_cast<std::size_t>(d.initial)];
    out.delta.assign(static_cast<std::size_t>(out.n_states), {-1, -1, -1});
    for (int u = 0; u < d.n_states; ++u) {
        int mu = remap[static_cast<std::size_t>(u)];
        if (mu < 0) continue;
        for (int s = 0; s < 3; ++s) {
            int v = d.delta[static_cast<std::size_t>(u)][static_cast<std::size_t>(s)];
            if (v >= 0 && remap[static_cast<std::size_t>(v)] >= 0)
                out.delta[static_cast<std::size_t>(mu)][static_cast<std::size_t>(s)] =
                    remap[static_cast<std::size_t>(v)];
        }
    }
    return out;
}

// Hopcroft partition refinement over the trimmed automaton, treating the
// implicit dead state as one extra class. Output is renumbered by BFS from
// the initial state so equal languages give identical structures.
inline Dfa minimize(const Dfa& input) {
    Dfa d = trim(input);
    int n = d.n_states;
    const int dead = n;  // explicit dead state for the refinement only
    auto dst = [&](int u, int s) {
        if (u == dead) return dead;
        int v = d.delta[static_cast<std::size_t>(u)][static_cast<std::size_t>(s)];
        return v < 0 ? dead : v;
    };
    // reverse edges including dead
    std::vector<std::array<std::vector<int>, 3>> rev(static_cast<std::size_t>(n + 1));
    for (int u = 0; u <= n; ++u)
        for (int s = 0; s < 3; ++s)
            rev[static_cast<std::size_t>(dst(u, s))][static_cast<std::size_t>(s)].push_back(u);

    std::vector<int> cls(static_cast<std::size_t>(n + 1), 0);
    std::vector<std::set<int>> part;
    std::set<int> acc, rest;
    for (int u = 0; u < n; ++u) (d.accepting[static_cast<std::size_t>(u)] ? acc : rest).insert(u);
    rest.insert(dead);
    if (!acc.empty()) part.push_back(acc);
    if (!rest.empty()) part.push_back(rest);
    for (std::size_t i = 0; i < part.size(); ++i)
        for (int u : part[i]) cls[static_cast<std::size_t>(u)] = static_cast<int>(i);

    std::deque<std::pair<int, int>> work;  // (class id, symbol)
    for (std::size_t i = 0; i < part.size(); ++i)
        for (int s = 0; s < 3; ++s) work.emplace_back(static_cast<int>(i), s);

    while (!work.empty()) {
        auto [ci, s] = work.front();
        work.pop_front();
        // X = states with a transition on s into class ci
        std::set<int> x;
        for (int t : part[static_cast<std::size_t>(ci)])
            for (int u : rev[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)]) x.insert(u);
        if (x.empty()) continue;
        std::size_t old_count = part.size();
        for (std::size_t yi = 0; yi < old_count; ++yi) {
            std::set<int> inter, diff;
            for (int u : part[yi]) (x.count(u) ? inter : diff).insert(u);
            if (inter.empty() || diff.empty()) continue;
            part[yi] = inter;
            part.push_back(diff);
            int ni = static_cast<int>(part.size()) - 1;
            for (int u : diff) cls[static_cast<std::size_t>(u)] = ni;
            for (int s2 = 0; s2 < 3; ++s2) work.emplace_back(ni, s2);
        }
    }

    int dead_cls = cls[static_cast<std::size_t>(dead)];
    // Build quotient, then canonical BFS renumber.
    std::map<int, int> qid;
    std::deque<int> bfs;
    Dfa out;
    auto get = [&](int c) {
        auto it = qid.find(c);
        if (it != qid.end()) return it->second;
        int q = out.n_states++;
        qid.emplace(c, q);
        out.delta.push_back({-1, -1, -1});
        int repr = *part[static_cast<std::size_t>(c)].begin();
        out.accepting.push_back(repr != dead && d.accepting[static_cast<std::size_t>(repr)]);
        out.names.push_back(repr == dead ? "dead" : d.state_name(repr));
        bfs.push_back(c);
        return q;
    };
    if (n == 0) return Dfa::empty_language();
    int init_cls = cls[static_cast<std::size_t>(d.initial)];
    if (init_cls == dead_cls) return Dfa::empty_language();
    out.initial = get(init_cls);
    while (!bfs.empty()) {
        int c = bfs.front();
        bfs.pop_front();
        int q = qid.at(c);
        int repr = *part[static_cast<std::size_t>(c)].begin();
        for (int s = 0; s < 3; ++s) {
            int vc = cls[static_cast<std::size_t>(dst(repr, s))];
            if (vc == dead_cls) continue;
            out.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)] = get(vc);
        }
    }
    return out;
}

// Structural equality of canonicalized automata (language equality after
// minimize on both sides).
inline bool same_structure(const Dfa& a, const Dfa& b) {
    if (a.n_states != b.n_states || a.initial != b.initial) return false;
    return a.delta == b.delta && a.accepting == b.accepting;
}

inline bool equivalent(const Dfa& a, const Dfa& b) {
    return same_structure(minimize(a), minimize(b));
}

// --- emptiness / finiteness ----------------------------------------------

struct LangEmpty {};
struct LangFinite {
    int longest_word_len = 0;
};
struct LangInfinite {};
using LanguageClass = std::variant<LangEmpty, LangFinite, LangInfinite>;

inline LanguageClass classify_language(const Dfa& input) {
    Dfa d = trim(input);
    bool any_accepting = false;
    for (char a : d.accepting) any_accepting |= (a != 0);
    if (!any_accepting) return LangEmpty{};
    // cycle detection + longest path over the trimmed graph
    std::vector<int> indeg(static_cast<std::size_t>(d.n_states), 0);
    for (int u = 0; u < d.n_states; ++u)
        for (int s = 0; s < 3; ++s) {
            int v = d.delta[static_cast<std::size_t>(u)][static_cast<std::size_t>(s)];
            if (v >= 0) ++indeg[static_cast<std::size_t>(v)];
        }
    std::deque<int> q;
    for (int u = 0; u < d.n_states; ++u)
        if (indeg[static_cast<std::size_t>(u)] == 0) q.push_back(u);
    std::vector<int> topo;
    auto indeg2 = indeg;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        topo.push_back(u);
        for (int s = 0; s < 3; ++s) {
            int v = d.delta[static_cast<std::size_t>(u)][static_cast<std::size_t>(s)];
            if (v >= 0 && --indeg2[static_cast<std::size_t>(v)] == 0) q.push_back(v);
        }
    }
    if (static_cast<int>(topo.size()) != d.n_states) return LangInfinite{};
    // acyclic: longest accepted word = longest initial->accepting path
    std::vector<int> dist(static_cast<std::size_t>(d.n_states), -1);
    dist[static_cast<std::size_t>(d.initial)] = 0;
    for (int u : topo) {
        if (dist[static_cast<std::size_t>(u)] < 0) continue;
        for (int s = 0; s < 3; ++s) {
            int v = d.delta[static_cast<std::size_t>(u)][static_cast<std::size_t>(s)];
            if (v >= 0)
                dist[static_cast<std::size_t>(v)] =
                    std::max(dist[static_cast<std::size_t>(v)], dist[static_cast<std::size_t>(u)] + 1);
        }
    }
    int best = 0;
    for (int u = 0; u < d.n_states; ++u)
        if (d.accepting[static_cast<std::size_t>(u)]) best = std::max(best, dist[static_cast<std::size_t>(u)]);
    return LangFinite{best};
}

// --- shortest words and cycle-threaded words ------------------------------

// Lexicographically smallest shortest accepted word, if any.
inline std::optional<Signature> shortest_accepted(const Dfa& input) {
    Dfa d = trim(input);
    bool any = false;
    for (char a : d.accepting) any |= (a != 0);
    if (!any) return std::nullopt;
    std::vector<std::pair<int, char>> parent(static_cast<std::size_t>(d.n_states), {-2, 0});
    std::deque<int> q{d.initial};
    parent[static_cast<std::size_t>(d.initial)] = {-1, 0};
    int hit = d.accepting[static_cast<std::size_t>(d.initial)] ? d.initial : -1;
    while (hit < 0 && !q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int s = 0; s < 3 && hit < 0; ++s) {  // lexicographic: '<' first
            int v = d.delta[static_cast<std::size_t>(u)][static_cast<std::size_t>(s)];
            if (v >= 0 && parent[static_cast<std::size_t>(v)].first == -2) {
                parent[static_cast<std::size_t>(v)] = {u, sym_char(s)};
                if (d.accepting[static_cast<std::size_t>(v)]) hit = v;
                q.push_back(v);
            }
        }
    }
    if (hit < 0) return std::nullopt;
    Signature w;
    for (int u = hit; parent[static_cast<std::size_t>(u)].first >= 0; u = parent[static_cast<std::size_t>(u)].first)
        w.push_back(parent[static_cast<std::size_t>(u)].second);
    std::reverse(w.begin(), w.end());
    return w;
}

struct CycleWordResult {
    int length = 0;      // length of the minimal accepted word
    Signature witness;   // lexicographically smallest among minimal-length
    int cycle_state = 0; // trimmed-automaton state lying on a length-d closed walk
};

// Minimal accepted-word length among accepting paths that pass through a
// state lying on a closed walk of exactly d transitions; the walk is what
// makes the witness pumpable with period d.
inline std::optional<CycleWordResult> min_length_through_cycle(const Dfa& input, int d_len) {
    if (d_len < 1) throw std::invalid_argument("min_length_through_cycle: d must be >= 1");
    Dfa d = trim(input);
    int n = d.n_states;
    if (n == 0) return std::nullopt;
    bool any = false;
    for (char a : d.accepting) any |= (a != 0);
    if (!any) return std::nullopt;

    // states with a closed walk of exactly d_len steps
    std::vector<char> on_cycle(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u) {
        std::vector<char> cur(static_cast<std::size_t>(n), 0);
        cur[static_cast<std::size_t>(u)] = 1;
        for (int step = 0; step < d_len; ++step) {
            std::vector<char> nxt(static_cast<std::size_t>(n), 0);
            for (int v = 0; v < n; ++v)
                if (cur[static_cast<std::size_t>(v)])
                    for (int s = 0; s < 3; ++s) {
                        int w = d.delta[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)];
                        if (w >= 0) nxt[static_cast<std::size_t>(w)] = 1;
                    }
            cur.swap(nxt);
        }
        on_cycle[static_cast<std::size_t>(u)] = cur[static_cast<std::size_t>(u)];
    }

    // forward BFS distance from initial; backward BFS distance to accepting
    auto bfs_dist = [&](std::vector<int> starts, bool forward) {
        std::vector<int> dist(static_cast<std::size_t>(n), -1);
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
        for (int u = 0; u < n; ++u)
            for (int s = 0; s < 3; ++s) {
                int v = d.delta[static_cast<std::size_t>(u)][static_cast<std::size_t>(s)];
                if (v < 0) continue;
                if (forward) adj[static_cast<std::size_t>(u)].push_back(v);
                else adj[static_cast<std::size_t>(v)].push_back(u);
            }
        std::deque<int> q;
        for (int s : starts) {
            if (dist[static_cast<std::size_t>(s)] < 0) {
                dist[static_cast<std::size_t>(s)] = 0;
                q.push_back(s);
            }
        }
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (int v : adj[static_cast<std::size_t>(u)])
                if (dist[static_cast<std::size_t>(v)] < 0) {
                    dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                    q.push_back(v);
                }
        }
        return dist;
    };
    auto fwd = bfs_dist({d.initial}, true);
    std::vector<int> accs;
    for (int u = 0; u < n; ++u)
        if (d.accepting[static_cast<std::size_t>(u)]) accs.push_back(u);
    auto bwd = bfs_dist(accs, false);

    int best = -1, best_state = -1;
    for (int u = 0; u < n; ++u) {
        if (!on_cycle[static_cast<std::size_t>(u)]) continue;
        if (fwd[static_cast<std::size_t>(u)] < 0 || bwd[static_cast<std::size_t>(u)] < 0) continue;
        int len = fwd[static_cast<std::size_t>(u)] + bwd[static_cast<std::size_t>(u)];
        if (best < 0 || len < best) {
            best = len;
            best_state = u;
        }
    }
    if (best < 0) return std::nullopt;

    // Lexicographically smallest witness of that length: greedy DP over
    // (state, position) feasibility of reaching an accepting state through a
    // qualifying cycle state. Feasible(q, i) = can finish a word of total
    // length `best` from q at position i having (or not yet having) passed a
    // cycle state; track the "passed" bit.
    std::vector<std::vector<std::array<char, 2>>> feas(
        static_cast<std::size_t>(best + 1),
        std::vector<std::array<char, 2>>(static_cast<std::size_t>(n), {0, 0}));
    for (int u = 0; u < n; ++u) {
        bool acc = d.accepting[static_cast<std::size_t>(u)];
        feas[static_cast<std::size_t>(best)][static_cast<std::size_t>(u)][1] = acc;
        feas[static_cast<std::size_t>(best)][static_cast<std::size_t>(u)][0] =
            acc && on_cycle[static_cast<std::size_t>(u)];
    }
    for (int i = best - 1; i >= 0; --i)
        for (int u = 0; u < n; ++u)
            for (int passed = 0; passed < 2; ++passed) {
                int p2 = passed || on_cycle[static_cast<std::size_t>(u)];
                for (int s = 0; s < 3; ++s) {
                    int v = d.delta[static_cast<std::size_t>(u)][static_cast<std::size_t>(s)];
                    if (v >= 0 && feas[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(v)][static_cast<std::size_t>(p2)]) {
                        feas[static_cast<std::size_t>(i)][static_cast<std::size_t>(u)][static_cast<std::size_t>(passed)] = 1;
                        break;
                    }
                }
            }
    Signature w;
    int q = d.initial, passed = 0;
    for (int i = 0; i < best; ++i) {
        passed = passed || on_cycle[static_cast<std::size_t>(q)];
        for (int s = 0; s < 3; ++s) {
            int v = d.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
            if (v >= 0 && feas[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(v)][static_cast<std::size_t>(passed)]) {
                w.push_back(sym_char(s));
                q = v;
                break;
            }
        }
    }
    return CycleWordResult{best, w, best_state};
}

// --- serialization --------------------------------------------------------

inline nlohmann::json dfa_to_json(const Dfa& d) {
    nlohmann::json j;
    std::vector<std::string> names;
    for (int u = 0; u < d.n_states; ++u) names.push_back(d.state_name(u));
    j["states"] = names;
    j["initial"] = d.state_name(d.initial);
    std::vector<std::string> acc;
    for (int u = 0; u < d.n_states; ++u)
        if (d.accepting[static_cast<std::size_t>(u)]) acc.push_back(d.state_name(u));
    j["accepting"] = acc;
    auto& trans = j["transitions"] = nlohmann::json::array();
    for (int u = 0; u < d.n_states; ++u)
        for (int s = 0; s < 3; ++s) {
            int v = d.delta[static_cast<std::size_t>(u)][static_cast<std::size_t>(s)];
            if (v < 0) continue;
            trans.push_back({{"from", d.state_name(u)},
                             {"symbol", std::string(1, sym_char(s))},
                             {"to", d.state_name(v)}});
        }
    return j;
}

inline Dfa dfa_from_json(const nlohmann::json& j) {
    Dfa d;
    std::map<std::string, int> id;
    for (const auto& s : j.at("states")) {
        id[s.get<std::string>()] = d.n_states++;
        d.names.push_back(s.get<std::string>());
        d.delta.push_back({-1, -1, -1});
        d.accepting.push_back(0);
    }
    d.initial = id.at(j.at("initial").get<std::string>());
    for (const auto& s : j.at("accepting")) d.accepting[static_cast<std::size_t>(id.at(s.get<std::string>()))] = 1;
    for (const auto& t : j.at("transitions")) {
        int from = id.at(t.at("from").get<std::string>());
        int to = id.at(t.at("to").get<std::string>());
        const std::string sym = t.at("symbol").get<std::string>();
        if (sym.size() != 1) throw std::runtime_error("dfa_from_json: bad symbol");
        auto& slot = d.delta[static_cast<std::size_t>(from)][static_cast<std::size_t>(sym_index(sym[0]))];
        if (slot >= 0) throw std::runtime_error("dfa_from_json: nondeterministic transition");
        slot = to;
    }
    return d;
}

inline std::string dfa_to_dot(const Dfa& d, const std::string& title = "dfa") {
    std::ostringstream os;
    os << "digraph \"" << title << "\" {\n  rankdir=LR;\n  __start [shape=point];\n";
    for (int u = 0; u < d.n_states; ++u)
        os << "  \"" << d.state_name(u) << "\" [shape="
           << (d.accepting[static_cast<std::size_t>(u)] ? "doublecircle" : "circle") << "];\n";
    os << "  __start -> \"" << d.state_name(d.initial) << "\";\n";
    for (int u = 0; u < d.n_states; ++u)
        for (int s = 0; s < 3; ++s) {
            int v = d.delta[static_cast<std::size_t>(u)][static_cast<std::size_t>(s)];
            if (v < 0) continue;
            os << "  \"" << d.state_name(u) << "\" -> \"" << d.state_name(v) << "\" [label=\""
               << sym_char(s) << "\"];\n";
        }
    os << "}\n";
    return os.str();
}

}  // namespace tsinv
