#pragma once

// The register-automata database: one machine per catalog constraint,
// loaded from data/automata.json.  Loading gate-checks every machine
// against the maximal-occurrence oracle (exhaustively over all signatures
// up to a configurable length), so a wrong encoding cannot be used.

#include <fstream>
#include <map>
#include <mutex>
#include <string>

#include <json.hpp>

#include "tsinv/catalog.hpp"
#include "tsinv/register_automaton.hpp"

namespace tsinv {

class AutomataDb {
  public:
    const RegisterAutomaton& machine(const std::string& constraint_name) const {
        auto it = machines_.find(constraint_name);
        if (it == machines_.end())
            throw std::out_of_range("AutomataDb: no machine for " + constraint_name);
        return it->second;
    }

    const std::map<std::string, RegisterAutomaton>& machines() const { return machines_; }

    // Gate: well-formed (incremental-automaton property, complete and fully
    // accepting transition function) and equal to the oracle on every
    // signature of length <= gate_len.
    static AutomataDb load_json(const nlohmann::json& j, const Catalog& cat, int gate_len = 7) {
        if (j.at("schema").get<std::string>() != "tsinv-automata-v1")
            throw std::runtime_error("AutomataDb: unsupported schema");
        AutomataDb db;
        for (const auto& [name, jm] : j.at("machines").items()) {
            RegisterAutomaton ra = ra_from_json(jm);
            auto bad = check_incremental_property(ra);
            if (!bad.empty())
                throw std::runtime_error("AutomataDb: " + name + ": " + bad.front());
            for (int q = 0; q < ra.n_states; ++q) {
                if (!ra.accepting[static_cast<std::size_t>(q)])
                    throw std::runtime_error("AutomataDb: " + name + ": non-accepting state " +
                                             ra.state_name(q));
                for (int s = 0; s < 3; ++s)
                    if (ra.delta[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)] < 0)
                        throw std::runtime_error("AutomataDb: " + name + ": missing transition");
            }
            db.machines_.emplace(name, std::move(ra));
        }
        for (const auto& cname : cat.constraint_names()) {
            auto it = db.machines_.find(cname);
            if (it == db.machines_.end())
                throw std::runtime_error("AutomataDb: no machine for constraint " + cname);
            auto spec = cat.constraint(cname);
            const RegisterAutomaton& ra = it->second;
            for (int len = 0; len <= gate_len; ++len)
                for_each_signature(len, [&](const Signature& sig) {
                    auto res = ra.run(sig);
                    if (!res || res->outputs.size() != 1 ||
                        res->outputs[0] != eval_constraint(spec, sig))
                        throw std::runtime_error("AutomataDb: " + cname +
                                                 " disagrees with the oracle on \"" + sig + "\"");
                });
        }
        return db;
    }

    static AutomataDb load_file(const std::string& path, const Catalog& cat, int gate_len = 7) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("AutomataDb: cannot open " + path);
        nlohmann::json j;
        in >> j;
        return load_json(j, cat, gate_len);
    }

  private:
    std::map<std::string, RegisterAutomaton> machines_;
};

inline const AutomataDb& default_automata() {
    static AutomataDb db = AutomataDb::load_file(data_dir() + "/automata.json", default_catalog());
    return db;
}

// The machine for a catalog constraint, from the default database.
inline const RegisterAutomaton& constraint_automaton(const std::string& constraint_name) {
    return default_automata().machine(constraint_name);
}

}  // namespace tsinv
