#pragma once

// Weighted multidigraphs with exact integer weights, Bellman-Ford with a
// negative-cycle witness, and Johnson-style enumeration of elementary
// circuits (arc-level, so parallel arcs and self-loops are distinct).

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "tsinv/base.hpp"

namespace tsinv {

struct Arc {
    int src = 0;
    int dst = 0;
    long long weight = 0;
    std::string tag;  // originating transition id, for diagnostics
};

struct WeightedDigraph {
    int n_nodes = 0;
    std::vector<Arc> arcs;
    std::vector<std::string> node_names;  // optional

    std::string node_name(int u) const {
        if (u >= 0 && static_cast<std::size_t>(u) < node_names.size() && !node_names[static_cast<std::size_t>(u)].empty())
            return node_names[static_cast<std::size_t>(u)];
        return "n" + std::to_string(u);
    }
};

struct BfDistances {
    std::vector<std::optional<long long>> dist;  // unreachable -> nullopt
};
struct BfNegativeCycle {
    std::vector<int> arc_indices;  // a negative-total-weight cycle, in order
};
using BellmanFordResult = std::variant<BfDistances, BfNegativeCycle>;

inline BellmanFordResult bellman_ford(const WeightedDigraph& g, int source) {
    if (source < 0 || source >= g.n_nodes) throw std::invalid_argument("bellman_ford: bad source");
    const long long inf = std::numeric_limits<long long>::max() / 4;
    std::vector<long long> dist(static_cast<std::size_t>(g.n_nodes), inf);
    std::vector<int> pred_arc(static_cast<std::size_t>(g.n_nodes), -1);
    dist[static_cast<std::size_t>(source)] = 0;
    int last_relaxed = -1;
    for (int it = 0; it < g.n_nodes; ++it) {
        last_relaxed = -1;
        for (std::size_t ai = 0; ai < g.arcs.size(); ++ai) {
            const Arc& a = g.arcs[ai];
            if (dist[static_cast<std::size_t>(a.src)] >= inf) continue;
            long long cand = dist[static_cast<std::size_t>(a.src)] + a.weight;
            if (cand < dist[static_cast<std::size_t>(a.dst)]) {
                dist[static_cast<std::size_t>(a.dst)] = cand;
                pred_arc[static_cast<std::size_t>(a.dst)] = static_cast<int>(ai);
                last_relaxed = a.dst;
            }
        }
        if (last_relaxed < 0) break;
    }
    if (last_relaxed >= 0) {
        // A relaxation on the n-th pass: walk predecessors back onto the cycle.
        int u = last_relaxed;
        for (int i = 0; i < g.n_nodes; ++i) u = g.arcs[static_cast<std::size_t>(pred_arc[static_cast<std::size_t>(u)])].src;
        std::vector<int> cyc;
        int v = u;
        do {
            int ai = pred_arc[static_cast<std::size_t>(v)];
            cyc.push_back(ai);
            v = g.arcs[static_cast<std::size_t>(ai)].src;
        } while (v != u);
        std::reverse(cyc.begin(), cyc.end());
        return BfNegativeCycle{cyc};
    }
    BfDistances out;
    out.dist.resize(static_cast<std::size_t>(g.n_nodes));
    for (int u = 0; u < g.n_nodes; ++u)
        if (dist[static_cast<std::size_t>(u)] < inf) out.dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(u)];
    return out;
}

// Elementary circuits as sequences of arc indices (Johnson's algorithm on
// node-level SCC structure, expanded to arc level so that parallel arcs
// yield distinct circuits). Guarded against combinatorial blow-up.
class CircuitLimitExceeded : public std::runtime_error {
  public:
    CircuitLimitExceeded() : std::runtime_error("simple_circuits: more than 10^6 elementary circuits") {}
};

inline std::vector<std::vector<int>> simple_circuits(const WeightedDigraph& g,
                                                     std::size_t limit = 1000000) {
    std::vector<std::vector<int>> result;
    int n = g.n_nodes;
    std::vector<std::vector<int>> out_arcs(static_cast<std::size_t>(n));
    for (std::size_t ai = 0; ai < g.arcs.size(); ++ai)
        out_arcs[static_cast<std::size_t>(g.arcs[ai].src)].push_back(static_cast<int>(ai));

    // Johnson: for each root s in increasing order, search the subgraph
    // induced by nodes >= s.
    std::vector<char> blocked(static_cast<std::size_t>(n), 0);
    std::vector<std::set<int>> block_map(static_cast<std::size_t>(n));
    std::vector<int> stack_arcs;

    std::function<void(int)> unblock = [&](int u) {
        blocked[static_cast<std::size_t>(u)] = 0;
        auto deps = block_map[static_cast<std::size_t>(u)];
        block_map[static_cast<std::size_t>(u)].clear();
        for (int w : deps)
            if (blocked[static_cast<std::size_t>(w)]) unblock(w);
    };

    int root = 0;
    std::function<bool(int)> circuit = [&](int u) -> bool {
        bool found = false;
        blocked[static_cast<std::size_t>(u)] = 1;
        for (int ai : out_arcs[static_cast<std::size_t>(u)]) {
            int v = g.arcs[static_cast<std::size_t>(ai)].dst;
            if (v < root) continue;
            if (v == root) {
                stack_arcs.push_back(ai);
                result.push_back(stack_arcs);
                if (result.size() > limit) throw CircuitLimitExceeded();
                stack_arcs.pop_back();
                found = true;
            } else if (!blocked[static_cast<std::size_t>(v)]) {
                stack_arcs.push_back(ai);
                if (circuit(v)) found = true;
                stack_arcs.pop_back();
            }
        }
        if (found) {
            unblock(u);
        } else {
            for (int ai : out_arcs[static_cast<std::size_t>(u)]) {
                int v = g.arcs[static_cast<std::size_t>(ai)].dst;
                if (v >= root) block_map[static_cast<std::size_t>(v)].insert(u);
            }
        }
        return found;
    };

    for (root = 0; root < n; ++root) {
        std::fill(blocked.begin(), blocked.end(), 0);
        for (auto& s : block_map) s.clear();
        stack_arcs.clear();
        circuit(root);
    }
    return result;
}

inline long long circuit_weight(const WeightedDigraph& g, const std::vector<int>& circuit) {
    long long w = 0;
    for (int ai : circuit) w += g.arcs[static_cast<std::size_t>(ai)].weight;
    return w;
}

inline std::string digraph_to_dot(const WeightedDigraph& g, const std::string& title = "digraph") {
    std::ostringstream os;
    os << "digraph \"" << title << "\" {\n  rankdir=LR;\n";
    for (int u = 0; u < g.n_nodes; ++u) os << "  \"" << g.node_name(u) << "\";\n";
    for (const Arc& a : g.arcs) {
        os << "  \"" << g.node_name(a.src) << "\" -> \"" << g.node_name(a.dst) << "\" [label=\""
           << a.weight;
        if (!a.tag.empty()) os << " (" << a.tag << ")";
        os << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace tsinv
