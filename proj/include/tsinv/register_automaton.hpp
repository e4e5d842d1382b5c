#pragma once

// Register automata over the three-letter signature alphabet: machines that
// scan a signature and accumulate integer registers via linear updates.
// Provides the incremental-automaton well-formedness check, synchronous
// products, the delay table and the delayed transform (which postpones
// potential-register increments so that pending width credit is never
// stored in a register), finite-state expansions (capped / modular), and
// JSON / DOT serialization.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsinv/base.hpp"
#include "tsinv/dfa.hpp"

namespace tsinv {

// Update of one register on one transition:
//   reg <- cst + sum of the registers listed in adds  (coefficients are 0/1).
// Registers without an explicit update keep their value (identity update).
struct RegUpdate {
    int reg = 0;
    long long cst = 0;
    std::vector<int> adds;  // register indices with coefficient 1 (sorted)
};

struct RaRegister {
    std::string name;
    long long init = 0;
    int factor = 0;   // which product factor this register belongs to
    bool main = false;  // the factor's result register
};

struct RegisterAutomaton {
    int n_states = 0;
    int initial = 0;
    std::vector<char> accepting;           // size n_states
    std::vector<std::string> state_names;  // size n_states
    std::vector<RaRegister> registers;
    std::vector<std::array<int, 3>> delta;  // delta[state][symbol], -1 = missing
    std::vector<std::array<std::vector<RegUpdate>, 3>> updates;
    // Acceptance outputs: each a coefficient vector over the registers.  The
    // default (empty) means one output per factor, reading that factor's main
    // register.
    std::vector<std::vector<long long>> acceptance;

    int n_registers() const { return static_cast<int>(registers.size()); }

    int n_factors() const {
        int f = 0;
        for (const auto& r : registers) f = std::max(f, r.factor + 1);
        return std::max(f, 1);
    }

    int main_register(int factor) const {
        for (int j = 0; j < n_registers(); ++j)
            if (registers[j].factor == factor && registers[j].main) return j;
        throw std::logic_error("RegisterAutomaton: factor has no main register");
    }

    std::vector<std::vector<long long>> acceptance_outputs() const {
        if (!acceptance.empty()) return acceptance;
        std::vector<std::vector<long long>> outs;
        for (int f = 0; f < n_factors(); ++f) {
            std::vector<long long> row(registers.size(), 0);
            row[static_cast<std::size_t>(main_register(f))] = 1;
            outs.push_back(std::move(row));
        }
        return outs;
    }

    std::string state_name(int q) const {
        if (q >= 0 && q < static_cast<int>(state_names.size()) && !state_names[q].empty())
            return state_names[q];
        return "q" + std::to_string(q);
    }

    // Coefficient of register i in register j's update on (state, symbol);
    // identity when no explicit update is present.
    long long coeff(int state, int sym, int j, int i) const {
        for (const auto& u : updates[state][sym])
            if (u.reg == j) {
                for (int a : u.adds)
                    if (a == i) return 1;
                return 0;
            }
        return i == j ? 1 : 0;
    }

    long long update_const(int state, int sym, int j) const {
        for (const auto& u : updates[state][sym])
            if (u.reg == j) return u.cst;
        return 0;
    }

    std::vector<long long> initial_values() const {
        std::vector<long long> v;
        for (const auto& r : registers) v.push_back(r.init);
        return v;
    }

    // Apply the (simultaneous) updates of one transition.
    void apply(int state, int sym, std::vector<long long>& regs) const {
        std::vector<long long> next = regs;
        for (const auto& u : updates[state][sym]) {
            long long v = u.cst;
            for (int a : u.adds) v += regs[static_cast<std::size_t>(a)];
            next[static_cast<std::size_t>(u.reg)] = v;
        }
        regs = std::move(next);
    }

    struct RunResult {
        int state = 0;
        std::vector<long long> registers;
        std::vector<long long> outputs;
    };

    // Run on a full signature; nullopt if a transition is missing or the
    // final state is not accepting.
    std::optional<RunResult> run(const Signature& sig) const {
        int q = initial;
        std::vector<long long> regs = initial_values();
        for (char c : sig) {
            int s = sym_index(c);
            int to = delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
            if (to < 0) return std::nullopt;
            apply(q, s, regs);
            q = to;
        }
        if (!accepting[static_cast<std::size_t>(q)]) return std::nullopt;
        RunResult r;
        r.state = q;
        r.registers = regs;
        for (const auto& row : acceptance_outputs()) {
            long long v = 0;
            for (std::size_t i = 0; i < row.size(); ++i) v += row[i] * regs[i];
            r.outputs.push_back(v);
        }
        return r;
    }

    void add_transition(int from, char sym, int to, std::vector<RegUpdate> ups = {}) {
        int s = sym_index(sym);
        delta[static_cast<std::size_t>(from)][static_cast<std::size_t>(s)] = to;
        updates[static_cast<std::size_t>(from)][static_cast<std::size_t>(s)] = std::move(ups);
    }

    static RegisterAutomaton with_states(std::vector<std::string> names, int initial_state) {
        RegisterAutomaton ra;
        ra.n_states = static_cast<int>(names.size());
        ra.initial = initial_state;
        ra.state_names = std::move(names);
        ra.accepting.assign(static_cast<std::size_t>(ra.n_states), 1);
        ra.delta.assign(static_cast<std::size_t>(ra.n_states), {-1, -1, -1});
        ra.updates.resize(static_cast<std::size_t>(ra.n_states));
        return ra;
    }
};

// ---------------------------------------------------------------------------
// Incremental-automaton property.  Returns human-readable violations; empty
// means the property holds.  Checked per factor: each factor has exactly one
// main register, updates are linear with natural constants and 0/1
// coefficients, a register never reads registers of another factor nor other
// registers of its own factor except as allowed below, the main register
// always keeps itself (coefficient 1), and a potential register is reset
// (self-coefficient 0) on every transition where its factor's main register
// consumes it.
inline std::vector<std::string> check_incremental_property(const RegisterAutomaton& ra) {
    std::vector<std::string> bad;
    const int r = ra.n_registers();
    for (int j = 0; j < r; ++j)
        if (ra.registers[j].init < 0)
            bad.push_back("register " + ra.registers[j].name + " has negative initial value");
    std::vector<int> mains(static_cast<std::size_t>(ra.n_factors()), -1);
    for (int j = 0; j < r; ++j) {
        if (!ra.registers[j].main) continue;
        int f = ra.registers[j].factor;
        if (mains[static_cast<std::size_t>(f)] >= 0)
            bad.push_back("factor " + std::to_string(f) + " has two main registers");
        mains[static_cast<std::size_t>(f)] = j;
    }
    for (int f = 0; f < ra.n_factors(); ++f)
        if (mains[static_cast<std::size_t>(f)] < 0)
            bad.push_back("factor " + std::to_string(f) + " has no main register");
    if (!bad.empty()) return bad;

    bool any_combination = false;
    for (int q = 0; q < ra.n_states; ++q) {
        for (int s = 0; s < 3; ++s) {
            if (ra.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)] < 0) continue;
            std::string where = " on " + ra.state_name(q) + " -" + std::string(1, sym_char(s)) + "->";
            std::set<int> seen;
            for (const auto& u : ra.updates[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)]) {
                if (u.reg < 0 || u.reg >= r) {
                    bad.push_back("update of unknown register" + where);
                    continue;
                }
                if (!seen.insert(u.reg).second)
                    bad.push_back("register " + ra.registers[u.reg].name + " updated twice" + where);
                if (u.cst < 0)
                    bad.push_back("negative constant in update of " + ra.registers[u.reg].name + where);
                std::set<int> adds(u.adds.begin(), u.adds.end());
                if (adds.size() != u.adds.size())
                    bad.push_back("duplicate coefficient in update of " + ra.registers[u.reg].name + where);
                for (int a : adds)
                    if (a < 0 || a >= r) bad.push_back("coefficient on unknown register" + where);
            }
            for (int j = 0; j < r; ++j) {
                int f = ra.registers[j].factor;
                int m = mains[static_cast<std::size_t>(f)];
                for (int i = 0; i < r; ++i) {
                    if (ra.coeff(q, s, j, i) == 0) continue;
                    if (ra.registers[i].factor != f)
                        bad.push_back("register " + ra.registers[j].name + " reads register " +
                                      ra.registers[i].name + " of another factor" + where);
                    else if (j != m && i != j)
                        bad.push_back("potential register " + ra.registers[j].name +
                                      " reads another register" + where);
                }
                if (j == m) {
                    if (ra.coeff(q, s, j, j) != 1)
                        bad.push_back("main register " + ra.registers[j].name +
                                      " does not keep itself" + where);
                    for (int i = 0; i < r; ++i)
                        if (i != j && ra.coeff(q, s, j, i) == 1) {
                            any_combination = true;
                            if (ra.coeff(q, s, i, i) != 0)
                                bad.push_back("register " + ra.registers[i].name +
                                              " is consumed but not reset" + where);
                        }
                }
            }
        }
    }
    if (ra.n_registers() > ra.n_factors() && !any_combination)
        bad.push_back("no transition ever feeds a potential register into a main register");
    return bad;
}

// ---------------------------------------------------------------------------
// Synchronous product: pair states, disjoint register sets (factors of the
// second operand are shifted), componentwise updates.  Only the reachable
// part is kept.  A state is accepting iff both components accept.
inline RegisterAutomaton product(const RegisterAutomaton& a, const RegisterAutomaton& b) {
    if (!a.acceptance.empty() || !b.acceptance.empty())
        throw std::invalid_argument("product: operands must use default (per-factor) acceptance");
    RegisterAutomaton p;
    const int fshift = a.n_factors();
    const int rshift = a.n_registers();
    p.registers = a.registers;
    for (auto reg : b.registers) {
        reg.factor += fshift;
        p.registers.push_back(reg);
    }
    std::map<std::pair<int, int>, int> id;
    std::vector<std::pair<int, int>> order;
    auto intern = [&](int qa, int qb) {
        auto it = id.find({qa, qb});
        if (it != id.end()) return it->second;
        int q = static_cast<int>(order.size());
        id[{qa, qb}] = q;
        order.emplace_back(qa, qb);
        return q;
    };
    intern(a.initial, b.initial);
    for (std::size_t k = 0; k < order.size(); ++k) {
        auto [qa, qb] = order[k];
        for (int s = 0; s < 3; ++s) {
            int ta = a.delta[static_cast<std::size_t>(qa)][static_cast<std::size_t>(s)];
            int tb = b.delta[static_cast<std::size_t>(qb)][static_cast<std::size_t>(s)];
            if (ta < 0 || tb < 0) continue;
            intern(ta, tb);
        }
    }
    p.n_states = static_cast<int>(order.size());
    p.initial = 0;
    p.accepting.resize(static_cast<std::size_t>(p.n_states));
    p.state_names.resize(static_cast<std::size_t>(p.n_states));
    p.delta.assign(static_cast<std::size_t>(p.n_states), {-1, -1, -1});
    p.updates.resize(static_cast<std::size_t>(p.n_states));
    for (int q = 0; q < p.n_states; ++q) {
        auto [qa, qb] = order[static_cast<std::size_t>(q)];
        p.accepting[static_cast<std::size_t>(q)] =
            a.accepting[static_cast<std::size_t>(qa)] && b.accepting[static_cast<std::size_t>(qb)];
        p.state_names[static_cast<std::size_t>(q)] = a.state_name(qa) + "." + b.state_name(qb);
        for (int s = 0; s < 3; ++s) {
            int ta = a.delta[static_cast<std::size_t>(qa)][static_cast<std::size_t>(s)];
            int tb = b.delta[static_cast<std::size_t>(qb)][static_cast<std::size_t>(s)];
            if (ta < 0 || tb < 0) continue;
            p.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)] = id.at({ta, tb});
            auto& ups = p.updates[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
            ups = a.updates[static_cast<std::size_t>(qa)][static_cast<std::size_t>(s)];
            for (auto u : b.updates[static_cast<std::size_t>(qb)][static_cast<std::size_t>(s)]) {
                u.reg += rshift;
                for (auto& add : u.adds) add += rshift;
                ups.push_back(std::move(u));
            }
        }
    }
    return p;
}

inline RegisterAutomaton product_all(const std::vector<RegisterAutomaton>& ms) {
    if (ms.empty()) throw std::invalid_argument("product_all: empty list");
    RegisterAutomaton p = ms[0];
    for (std::size_t i = 1; i < ms.size(); ++i) p = product(p, ms[i]);
    return p;
}

// Remove states unreachable from the initial state.
inline RegisterAutomaton trim_reachable(const RegisterAutomaton& ra) {
    std::vector<int> map(static_cast<std::size_t>(ra.n_states), -1);
    std::vector<int> order;
    map[static_cast<std::size_t>(ra.initial)] = 0;
    order.push_back(ra.initial);
    for (std::size_t k = 0; k < order.size(); ++k)
        for (int s = 0; s < 3; ++s) {
            int to = ra.delta[static_cast<std::size_t>(order[k])][static_cast<std::size_t>(s)];
            if (to >= 0 && map[static_cast<std::size_t>(to)] < 0) {
                map[static_cast<std::size_t>(to)] = static_cast<int>(order.size());
                order.push_back(to);
            }
        }
    RegisterAutomaton out;
    out.registers = ra.registers;
    out.acceptance = ra.acceptance;
    out.n_states = static_cast<int>(order.size());
    out.initial = 0;
    for (int old : order) {
        out.accepting.push_back(ra.accepting[static_cast<std::size_t>(old)]);
        out.state_names.push_back(ra.state_name(old));
        std::array<int, 3> row{-1, -1, -1};
        for (int s = 0; s < 3; ++s) {
            int to = ra.delta[static_cast<std::size_t>(old)][static_cast<std::size_t>(s)];
            if (to >= 0) row[static_cast<std::size_t>(s)] = map[static_cast<std::size_t>(to)];
        }
        out.delta.push_back(row);
        out.updates.push_back(ra.updates[static_cast<std::size_t>(old)]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Delay table.  delay[q][j] is a lower bound on the value of potential
// register j whenever the automaton sits in state q, derived from the
// incoming transitions: 0 if some incoming transition resets j; otherwise
// the least constant added by an incoming transition from another state
// (also capped by j's initial value when q is the initial state; an initial
// state with no such incoming transitions keeps the initial value itself).
// Main registers always get delay 0.
inline std::vector<std::vector<long long>> delay_table(const RegisterAutomaton& ra) {
    const long long kInf = std::numeric_limits<long long>::max();
    std::vector<std::vector<long long>> delay(
        static_cast<std::size_t>(ra.n_states),
        std::vector<long long>(static_cast<std::size_t>(ra.n_registers()), 0));
    for (int q = 0; q < ra.n_states; ++q) {
        for (int j = 0; j < ra.n_registers(); ++j) {
            if (ra.registers[j].main) continue;
            bool reset_incoming = false;
            long long min_other = kInf;
            for (int p = 0; p < ra.n_states; ++p)
                for (int s = 0; s < 3; ++s) {
                    if (ra.delta[static_cast<std::size_t>(p)][static_cast<std::size_t>(s)] != q)
                        continue;
                    if (ra.coeff(p, s, j, j) == 0)
                        reset_incoming = true;
                    else if (p != q)
                        min_other = std::min(min_other, ra.update_const(p, s, j));
                }
            long long d;
            if (reset_incoming)
                d = 0;
            else if (q == ra.initial)
                d = std::min(ra.registers[j].init, min_other);
            else
                d = min_other == kInf ? 0 : min_other;
            delay[static_cast<std::size_t>(q)][static_cast<std::size_t>(j)] = d;
        }
    }
    return delay;
}

// Delayed transform: shift every potential register down by its state's
// delay, so increments are credited as late as possible.  States, language
// and returned outputs are unchanged; only initial values and update
// constants move.  Potential register j on transition q1 -> q2 gains
//   coeff(j,j) * delay[q1][j] - delay[q2][j]
// and a main register consuming potentials on that transition gains
//   sum over consumed j of delay[q1][j].
inline RegisterAutomaton delayed(const RegisterAutomaton& ra0) {
    RegisterAutomaton ra = trim_reachable(ra0);
    auto dl = delay_table(ra);
    RegisterAutomaton out = ra;
    for (int j = 0; j < ra.n_registers(); ++j)
        if (!ra.registers[j].main) {
            out.registers[static_cast<std::size_t>(j)].init -=
                dl[static_cast<std::size_t>(ra.initial)][static_cast<std::size_t>(j)];
            if (out.registers[static_cast<std::size_t>(j)].init < 0)
                throw std::logic_error("delayed: negative initial value");
        }
    for (int q = 0; q < ra.n_states; ++q)
        for (int s = 0; s < 3; ++s) {
            int to = ra.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
            if (to < 0) continue;
            std::vector<RegUpdate> ups;
            for (int j = 0; j < ra.n_registers(); ++j) {
                long long cst = ra.update_const(q, s, j);
                std::vector<int> adds;
                for (int i = 0; i < ra.n_registers(); ++i)
                    if (ra.coeff(q, s, j, i) == 1) adds.push_back(i);
                if (ra.registers[j].main) {
                    for (int i : adds)
                        if (i != j) cst += dl[static_cast<std::size_t>(q)][static_cast<std::size_t>(i)];
                } else {
                    cst += ra.coeff(q, s, j, j) * dl[static_cast<std::size_t>(q)][static_cast<std::size_t>(j)] -
                           dl[static_cast<std::size_t>(to)][static_cast<std::size_t>(j)];
                    if (cst < 0) throw std::logic_error("delayed: negative update constant");
                }
                bool identity = cst == 0 && adds.size() == 1 && adds[0] == j;
                if (!identity) ups.push_back(RegUpdate{j, cst, std::move(adds)});
            }
            out.updates[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)] = std::move(ups);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Finite-state expansions.  The abstraction maps a register vector to a
// finite key and must be a congruence for the automaton's updates (the
// caller guarantees this; the repository's tests gate every use against the
// exact run).  accept decides acceptance from (state, abstract key).
struct RaExpansion {
    Dfa dfa;
    // expansion state -> (automaton state, abstracted register vector)
    std::vector<std::pair<int, std::vector<long long>>> meaning;
};

inline RaExpansion expand_ra(
    const RegisterAutomaton& ra,
    const std::function<std::vector<long long>(const std::vector<long long>&)>& abstraction,
    const std::function<bool(int, const std::vector<long long>&)>& accept,
    std::size_t state_limit = 2'000'000) {
    RaExpansion ex;
    std::map<std::pair<int, std::vector<long long>>, int> id;
    auto intern = [&](int q, std::vector<long long> regs) {
        auto key = std::make_pair(q, std::move(regs));
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        int s = static_cast<int>(ex.meaning.size());
        id.emplace(key, s);
        ex.meaning.push_back(std::move(key));
        return s;
    };
    intern(ra.initial, abstraction(ra.initial_values()));
    ex.dfa.delta.assign(1, {-1, -1, -1});
    for (std::size_t k = 0; k < ex.meaning.size(); ++k) {
        if (ex.meaning.size() > state_limit)
            throw std::runtime_error("expand_ra: state limit exceeded");
        auto [q, regs] = ex.meaning[k];
        for (int s = 0; s < 3; ++s) {
            int to = ra.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
            if (to < 0) continue;
            std::vector<long long> next = regs;
            ra.apply(q, s, next);
            int t = intern(to, abstraction(next));
            if (static_cast<std::size_t>(t) >= ex.dfa.delta.size())
                ex.dfa.delta.resize(static_cast<std::size_t>(t) + 1, {-1, -1, -1});
            ex.dfa.delta[k][static_cast<std::size_t>(s)] = t;
        }
    }
    ex.dfa.n_states = static_cast<int>(ex.meaning.size());
    ex.dfa.delta.resize(static_cast<std::size_t>(ex.dfa.n_states), {-1, -1, -1});
    ex.dfa.initial = 0;
    ex.dfa.accepting.resize(static_cast<std::size_t>(ex.dfa.n_states));
    ex.dfa.names.resize(static_cast<std::size_t>(ex.dfa.n_states));
    for (int s = 0; s < ex.dfa.n_states; ++s) {
        const auto& [q, regs] = ex.meaning[static_cast<std::size_t>(s)];
        ex.dfa.accepting[static_cast<std::size_t>(s)] =
            ra.accepting[static_cast<std::size_t>(q)] && accept(q, regs);
        std::string nm = ra.state_name(q);
        for (auto v : regs) nm += "," + std::to_string(v);
        ex.dfa.names[static_cast<std::size_t>(s)] = nm;
    }
    return ex;
}

// Registers saturated at cap (values are exact below cap).  Sound for
// threshold questions because incremental updates are monotone.
inline RaExpansion capped_expansion(
    const RegisterAutomaton& ra, long long cap,
    const std::function<bool(int, const std::vector<long long>&)>& accept,
    std::size_t state_limit = 2'000'000) {
    return expand_ra(
        ra,
        [cap](const std::vector<long long>& regs) {
            std::vector<long long> out = regs;
            for (auto& v : out) v = std::min(v, cap);
            return out;
        },
        accept, state_limit);
}

// All registers tracked modulo m (exact: updates are linear).
inline RaExpansion mod_expansion(
    const RegisterAutomaton& ra, long long m,
    const std::function<bool(int, const std::vector<long long>&)>& accept,
    std::size_t state_limit = 2'000'000) {
    if (m < 1) throw std::invalid_argument("mod_expansion: modulus must be >= 1");
    return expand_ra(
        ra,
        [m](const std::vector<long long>& regs) {
            std::vector<long long> out = regs;
            for (auto& v : out) v = ((v % m) + m) % m;
            return out;
        },
        accept, state_limit);
}

// ---------------------------------------------------------------------------
// Serialization.

inline nlohmann::json ra_to_json(const RegisterAutomaton& ra) {
    nlohmann::json j;
    j["states"] = nlohmann::json::array();
    for (int q = 0; q < ra.n_states; ++q) j["states"].push_back(ra.state_name(q));
    j["initial"] = ra.state_name(ra.initial);
    auto& acc = j["accepting"] = nlohmann::json::array();
    for (int q = 0; q < ra.n_states; ++q)
        if (ra.accepting[static_cast<std::size_t>(q)]) acc.push_back(ra.state_name(q));
    auto& regs = j["registers"] = nlohmann::json::array();
    for (const auto& r : ra.registers)
        regs.push_back({{"name", r.name}, {"init", r.init}, {"factor", r.factor}, {"main", r.main}});
    if (!ra.acceptance.empty()) j["acceptance"] = ra.acceptance;
    auto& trans = j["transitions"] = nlohmann::json::array();
    for (int q = 0; q < ra.n_states; ++q)
        for (int s = 0; s < 3; ++s) {
            int to = ra.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
            if (to < 0) continue;
            nlohmann::json t{{"from", ra.state_name(q)},
                             {"symbol", std::string(1, sym_char(s))},
                             {"to", ra.state_name(to)}};
            auto& ups = t["updates"] = nlohmann::json::array();
            for (const auto& u : ra.updates[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)]) {
                nlohmann::json ju{{"reg", ra.registers[static_cast<std::size_t>(u.reg)].name},
                                  {"const", u.cst}};
                auto& adds = ju["add"] = nlohmann::json::array();
                for (int a : u.adds) adds.push_back(ra.registers[static_cast<std::size_t>(a)].name);
                ups.push_back(std::move(ju));
            }
            trans.push_back(std::move(t));
        }
    return j;
}

inline RegisterAutomaton ra_from_json(const nlohmann::json& j) {
    RegisterAutomaton ra;
    std::map<std::string, int> sid;
    for (const auto& s : j.at("states")) {
        std::string nm = s.get<std::string>();
        if (!sid.emplace(nm, static_cast<int>(ra.state_names.size())).second)
            throw std::runtime_error("ra_from_json: duplicate state " + nm);
        ra.state_names.push_back(nm);
    }
    ra.n_states = static_cast<int>(ra.state_names.size());
    ra.initial = sid.at(j.at("initial").get<std::string>());
    ra.accepting.assign(static_cast<std::size_t>(ra.n_states), 0);
    for (const auto& s : j.at("accepting"))
        ra.accepting[static_cast<std::size_t>(sid.at(s.get<std::string>()))] = 1;
    std::map<std::string, int> rid;
    for (const auto& r : j.at("registers")) {
        RaRegister reg;
        reg.name = r.at("name").get<std::string>();
        reg.init = r.value("init", 0LL);
        reg.factor = r.value("factor", 0);
        reg.main = r.value("main", false);
        if (!rid.emplace(reg.name, static_cast<int>(ra.registers.size())).second)
            throw std::runtime_error("ra_from_json: duplicate register " + reg.name);
        ra.registers.push_back(std::move(reg));
    }
    if (j.contains("acceptance"))
        ra.acceptance = j.at("acceptance").get<std::vector<std::vector<long long>>>();
    ra.delta.assign(static_cast<std::size_t>(ra.n_states), {-1, -1, -1});
    ra.updates.resize(static_cast<std::size_t>(ra.n_states));
    for (const auto& t : j.at("transitions")) {
        int from = sid.at(t.at("from").get<std::string>());
        int to = sid.at(t.at("to").get<std::string>());
        std::string sym = t.at("symbol").get<std::string>();
        if (sym.size() != 1) throw std::runtime_error("ra_from_json: bad symbol");
        int s = sym_index(sym[0]);
        if (ra.delta[static_cast<std::size_t>(from)][static_cast<std::size_t>(s)] >= 0)
            throw std::runtime_error("ra_from_json: nondeterministic transition");
        ra.delta[static_cast<std::size_t>(from)][static_cast<std::size_t>(s)] = to;
        auto& ups = ra.updates[static_cast<std::size_t>(from)][static_cast<std::size_t>(s)];
        for (const auto& u : t.value("updates", nlohmann::json::array())) {
            RegUpdate ru;
            ru.reg = rid.at(u.at("reg").get<std::string>());
            ru.cst = u.value("const", 0LL);
            for (const auto& a : u.value("add", nlohmann::json::array()))
                ru.adds.push_back(rid.at(a.get<std::string>()));
            std::sort(ru.adds.begin(), ru.adds.end());
            ups.push_back(std::move(ru));
        }
    }
    return ra;
}

inline std::string ra_to_dot(const RegisterAutomaton& ra, const std::string& name = "ra") {
    std::ostringstream os;
    os << "digraph " << name << " {\n  rankdir=LR;\n  node [shape=circle];\n";
    os << "  __start [shape=point];\n  __start -> s" << ra.initial << ";\n";
    for (int q = 0; q < ra.n_states; ++q) {
        os << "  s" << q << " [label=\"" << ra.state_name(q) << "\""
           << (ra.accepting[static_cast<std::size_t>(q)] ? ", shape=doublecircle" : "") << "];\n";
    }
    for (int q = 0; q < ra.n_states; ++q)
        for (int s = 0; s < 3; ++s) {
            int to = ra.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
            if (to < 0) continue;
            std::string label(1, sym_char(s));
            for (const auto& u : ra.updates[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)]) {
                label += "\\n" + ra.registers[static_cast<std::size_t>(u.reg)].name + "<-";
                bool first = true;
                for (int a : u.adds) {
                    if (!first) label += "+";
                    label += ra.registers[static_cast<std::size_t>(a)].name;
                    first = false;
                }
                if (u.cst != 0 || first) {
                    if (!first) label += "+";
                    label += std::to_string(u.cst);
                }
            }
            os << "  s" << q << " -> s" << to << " [label=\"" << label << "\"];\n";
        }
    os << "}\n";
    return os.str();
}

}  // namespace tsinv
