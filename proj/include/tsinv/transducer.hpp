#pragma once

// Seed transducers: deterministic transducers over the signature alphabet
// whose transitions output found / not_found, where found marks the
// completion of a new maximal pattern occurrence.  Provides separation
// (splitting states by whether an occurrence was already found), shortest
// found-path lengths and per-transition regrets, homogeneity constants
// (which reproduce the counting upper-bound formula), and the decorations
// turning a transducer into a counting automaton or a loss automaton.

#include <array>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsinv/catalog.hpp"
#include "tsinv/register_automaton.hpp"

namespace tsinv {

struct Transducer {
    int n_states = 0;
    int initial = 0;
    std::vector<std::string> state_names;
    std::vector<std::array<int, 3>> delta;    // complete: delta[state][symbol]
    std::vector<std::array<char, 3>> found;   // found[state][symbol]
    // For separated transducers: whether the state is only reachable through
    // a found transition (empty when unknown).
    std::vector<char> after_found;

    std::string state_name(int q) const {
        if (q >= 0 && q < static_cast<int>(state_names.size()) && !state_names[q].empty())
            return state_names[q];
        return "q" + std::to_string(q);
    }

    long long found_count(const Signature& sig) const {
        int q = initial;
        long long c = 0;
        for (char ch : sig) {
            int s = sym_index(ch);
            if (found[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)]) ++c;
            q = delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
        }
        return c;
    }

    int final_state(const Signature& sig) const {
        int q = initial;
        for (char ch : sig)
            q = delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(sym_index(ch))];
        return q;
    }
};

// ---------------------------------------------------------------------------
// Separation.  A transducer is separated when no state is reachable both on
// a path without any found transition and on a path with one.
inline std::vector<std::array<char, 2>> reachable_by_found_bit(const Transducer& t) {
    std::vector<std::array<char, 2>> seen(static_cast<std::size_t>(t.n_states), {0, 0});
    std::vector<std::pair<int, int>> stack{{t.initial, 0}};
    seen[static_cast<std::size_t>(t.initial)][0] = 1;
    while (!stack.empty()) {
        auto [q, bit] = stack.back();
        stack.pop_back();
        for (int s = 0; s < 3; ++s) {
            int to = t.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
            int nb = bit | (t.found[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)] ? 1 : 0);
            if (!seen[static_cast<std::size_t>(to)][static_cast<std::size_t>(nb)]) {
                seen[static_cast<std::size_t>(to)][static_cast<std::size_t>(nb)] = 1;
                stack.emplace_back(to, nb);
            }
        }
    }
    return seen;
}

inline bool is_separated(const Transducer& t) {
    for (const auto& s : reachable_by_found_bit(t))
        if (s[0] && s[1]) return false;
    return true;
}

// Split every state by the found bit of the paths reaching it; the result is
// separated, produces the same output sequence on every signature, and has
// after_found filled in.  States needing both copies get a primed name.
inline Transducer separate(const Transducer& t) {
    auto seen = reachable_by_found_bit(t);
    std::map<std::pair<int, int>, int> id;
    Transducer out;
    for (int bit = 0; bit <= 1; ++bit)
        for (int q = 0; q < t.n_states; ++q) {
            if (!seen[static_cast<std::size_t>(q)][static_cast<std::size_t>(bit)]) continue;
            id[{q, bit}] = out.n_states++;
            bool both = seen[static_cast<std::size_t>(q)][0] && seen[static_cast<std::size_t>(q)][1];
            out.state_names.push_back(t.state_name(q) + (both && bit ? "'" : ""));
            out.after_found.push_back(static_cast<char>(bit));
        }
    out.initial = id.at({t.initial, 0});
    out.delta.assign(static_cast<std::size_t>(out.n_states), {-1, -1, -1});
    out.found.assign(static_cast<std::size_t>(out.n_states), {0, 0, 0});
    for (const auto& [key, nq] : id) {
        auto [q, bit] = key;
        for (int s = 0; s < 3; ++s) {
            int to = t.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
            char f = t.found[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
            out.delta[static_cast<std::size_t>(nq)][static_cast<std::size_t>(s)] =
                id.at({to, bit | (f ? 1 : 0)});
            out.found[static_cast<std::size_t>(nq)][static_cast<std::size_t>(s)] = f;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Shortest found-paths and regrets.

// L[q] = length of a shortest path from q that contains a found transition.
inline std::vector<long long> shortest_found_path(const Transducer& t) {
    const long long kInf = std::numeric_limits<long long>::max() / 4;
    std::vector<long long> L(static_cast<std::size_t>(t.n_states), kInf);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int q = 0; q < t.n_states; ++q)
            for (int s = 0; s < 3; ++s) {
                int to = t.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
                long long cand =
                    t.found[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)]
                        ? 1
                        : 1 + L[static_cast<std::size_t>(to)];
                if (cand < L[static_cast<std::size_t>(q)]) {
                    L[static_cast<std::size_t>(q)] = cand;
                    changed = true;
                }
            }
    }
    for (long long v : L)
        if (v >= kInf)
            throw std::runtime_error("shortest_found_path: a state has no found-path");
    return L;
}

// Regret of a transition: 0 for found transitions, else one plus the change
// in shortest found-path length it causes.
inline long long regret(const Transducer& t, const std::vector<long long>& L, int q, int s) {
    if (t.found[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)]) return 0;
    int to = t.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
    return 1 + L[static_cast<std::size_t>(to)] - L[static_cast<std::size_t>(q)];
}

// Homogeneity constants: the first occurrence needs l0 steps, every further
// one needs d steps, so the count of occurrences in a signature of length
// n - 1 is at most floor((n - c) / d) with c = l0 + 1 - d.
struct HomogeneityConstants {
    long long l0 = 0;
    long long c = 0;
    long long d = 0;
};

inline HomogeneityConstants homogeneity_constants(const Transducer& t) {
    auto L = shortest_found_path(t);
    HomogeneityConstants h;
    h.l0 = L[static_cast<std::size_t>(t.initial)];
    h.d = std::numeric_limits<long long>::max();
    for (int q = 0; q < t.n_states; ++q)
        for (int s = 0; s < 3; ++s)
            if (t.found[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)]) {
                int to = t.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
                h.d = std::min(h.d, L[static_cast<std::size_t>(to)]);
            }
    if (h.d == std::numeric_limits<long long>::max())
        throw std::runtime_error("homogeneity_constants: no found transitions");
    h.c = h.l0 + 1 - h.d;
    return h;
}

// ---------------------------------------------------------------------------
// Decorations.

// Counting decoration: a single main register incremented on found.
inline RegisterAutomaton decorate_nb(const Transducer& t) {
    RegisterAutomaton ra = RegisterAutomaton::with_states(t.state_names, t.initial);
    ra.n_states = t.n_states;
    ra.registers = {{"R", 0, 0, true}};
    for (int q = 0; q < t.n_states; ++q)
        for (int s = 0; s < 3; ++s) {
            std::vector<RegUpdate> ups;
            if (t.found[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)])
                ups.push_back(RegUpdate{0, 1, {0}});
            ra.add_transition(q, sym_char(s),
                              t.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)],
                              std::move(ups));
        }
    return ra;
}

// Loss decoration.  The loss of a series is its length minus the length of
// a shortest series with the same count.  Registers (all starting at 0):
//   C - transitions since the last found,
//   D - regret accumulated since the last found,
//   R - regret accumulated up to the last found;
// found resets C and D and pays D into R; the returned loss is R + C.
// Built on the separated transducer so that the final state also tells
// whether any occurrence was found (after_found).
struct LossAutomaton {
    RegisterAutomaton ra;
    std::vector<char> after_found;  // per state of ra
};

inline LossAutomaton decorate_loss_nb(const Transducer& seed) {
    Transducer t = is_separated(seed) && !seed.after_found.empty() ? seed : separate(seed);
    auto L = shortest_found_path(t);
    LossAutomaton out;
    out.after_found = t.after_found;
    RegisterAutomaton& ra = out.ra;
    ra = RegisterAutomaton::with_states(t.state_names, t.initial);
    ra.registers = {{"C", 0, 0, false}, {"D", 0, 0, false}, {"R", 0, 0, true}};
    ra.acceptance = {{1, 0, 1}};  // loss = R + C
    for (int q = 0; q < t.n_states; ++q)
        for (int s = 0; s < 3; ++s) {
            std::vector<RegUpdate> ups;
            if (t.found[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)]) {
                ups.push_back(RegUpdate{0, 0, {}});        // C <- 0
                ups.push_back(RegUpdate{1, 0, {}});        // D <- 0
                ups.push_back(RegUpdate{2, 0, {1, 2}});    // R <- R + D
            } else {
                ups.push_back(RegUpdate{0, 1, {0}});       // C <- C + 1
                long long rg = regret(t, L, q, s);
                if (rg < 0) throw std::runtime_error("decorate_loss_nb: negative regret");
                if (rg > 0) ups.push_back(RegUpdate{1, rg, {1}});  // D <- D + regret
            }
            ra.add_transition(q, sym_char(s),
                              t.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)],
                              std::move(ups));
        }
    return out;
}

// ---------------------------------------------------------------------------
// Serialization.

inline nlohmann::json transducer_to_json(const Transducer& t) {
    nlohmann::json j;
    j["states"] = nlohmann::json::array();
    for (int q = 0; q < t.n_states; ++q) j["states"].push_back(t.state_name(q));
    j["initial"] = t.state_name(t.initial);
    auto& trans = j["transitions"] = nlohmann::json::array();
    for (int q = 0; q < t.n_states; ++q)
        for (int s = 0; s < 3; ++s) {
            int to = t.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
            if (to < 0) continue;
            trans.push_back(
                {{"from", t.state_name(q)},
                 {"symbol", std::string(1, sym_char(s))},
                 {"to", t.state_name(to)},
                 {"output", t.found[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)]
                                ? "found"
                                : "not_found"}});
        }
    return j;
}

inline Transducer transducer_from_json(const nlohmann::json& j) {
    Transducer t;
    std::map<std::string, int> sid;
    for (const auto& s : j.at("states")) {
        std::string nm = s.get<std::string>();
        if (!sid.emplace(nm, static_cast<int>(t.state_names.size())).second)
            throw std::runtime_error("transducer_from_json: duplicate state " + nm);
        t.state_names.push_back(nm);
    }
    t.n_states = static_cast<int>(t.state_names.size());
    t.initial = sid.at(j.at("initial").get<std::string>());
    t.delta.assign(static_cast<std::size_t>(t.n_states), {-1, -1, -1});
    t.found.assign(static_cast<std::size_t>(t.n_states), {0, 0, 0});
    for (const auto& tr : j.at("transitions")) {
        int from = sid.at(tr.at("from").get<std::string>());
        int to = sid.at(tr.at("to").get<std::string>());
        std::string sym = tr.at("symbol").get<std::string>();
        if (sym.size() != 1) throw std::runtime_error("transducer_from_json: bad symbol");
        int s = sym_index(sym[0]);
        if (t.delta[static_cast<std::size_t>(from)][static_cast<std::size_t>(s)] >= 0)
            throw std::runtime_error("transducer_from_json: nondeterministic transition");
        std::string outp = tr.at("output").get<std::string>();
        if (outp != "found" && outp != "not_found")
            throw std::runtime_error("transducer_from_json: bad output " + outp);
        t.delta[static_cast<std::size_t>(from)][static_cast<std::size_t>(s)] = to;
        t.found[static_cast<std::size_t>(from)][static_cast<std::size_t>(s)] = outp == "found";
    }
    for (int q = 0; q < t.n_states; ++q)
        for (int s = 0; s < 3; ++s)
            if (t.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)] < 0)
                throw std::runtime_error("transducer_from_json: missing transition from " +
                                         t.state_name(q));
    return t;
}

inline std::string transducer_to_dot(const Transducer& t, const std::string& name = "seed") {
    std::ostringstream os;
    os << "digraph " << name << " {\n  rankdir=LR;\n  node [shape=circle];\n";
    os << "  __start [shape=point];\n  __start -> s" << t.initial << ";\n";
    for (int q = 0; q < t.n_states; ++q)
        os << "  s" << q << " [label=\"" << t.state_name(q) << "\"];\n";
    for (int q = 0; q < t.n_states; ++q)
        for (int s = 0; s < 3; ++s) {
            int to = t.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
            bool f = t.found[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
            os << "  s" << q << " -> s" << to << " [label=\"" << sym_char(s) << " : "
               << (f ? "found" : "not_found") << "\"" << (f ? ", style=bold" : "") << "];\n";
        }
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Database of seed transducers, gate-checked against the occurrence oracle.

class TransducerDb {
  public:
    const Transducer& seed(const std::string& pattern_name) const {
        auto it = seeds_.find(pattern_name);
        if (it == seeds_.end())
            throw std::out_of_range("TransducerDb: no transducer for " + pattern_name);
        return it->second;
    }

    const std::map<std::string, Transducer>& seeds() const { return seeds_; }

    static TransducerDb load_json(const nlohmann::json& j, const Catalog& cat, int gate_len = 7) {
        if (j.at("schema").get<std::string>() != "tsinv-transducers-v1")
            throw std::runtime_error("TransducerDb: unsupported schema");
        TransducerDb db;
        for (const auto& [name, jt] : j.at("transducers").items())
            db.seeds_.emplace(name, transducer_from_json(jt));
        for (const auto& entry : cat.entries()) {
            auto it = db.seeds_.find(entry.name);
            if (it == db.seeds_.end())
                throw std::runtime_error("TransducerDb: no transducer for pattern " + entry.name);
            auto spec = cat.constraint("nb_" + entry.name);
            for (int len = 0; len <= gate_len; ++len)
                for_each_signature(len, [&](const Signature& sig) {
                    if (it->second.found_count(sig) != eval_constraint(spec, sig))
                        throw std::runtime_error("TransducerDb: " + entry.name +
                                                 " disagrees with the oracle on \"" + sig + "\"");
                });
        }
        return db;
    }

    static TransducerDb load_file(const std::string& path, const Catalog& cat, int gate_len = 7) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("TransducerDb: cannot open " + path);
        nlohmann::json j;
        in >> j;
        return load_json(j, cat, gate_len);
    }

  private:
    std::map<std::string, Transducer> seeds_;
};

inline const TransducerDb& default_transducers() {
    static TransducerDb db =
        TransducerDb::load_file(data_dir() + "/transducers.json", default_catalog());
    return db;
}

inline const Transducer& seed_transducer(const std::string& pattern_name) {
    return default_transducers().seed(pattern_name);
}

}  // namespace tsinv
