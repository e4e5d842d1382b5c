#pragma once

// Invariant database: JSON-lines records for linear, conditional-linear, and
// non-linear invariants over a pair of constraints, plus the brute-force
// verifier that replays every record against exhaustive machine runs.  The
// file format is one JSON object per line with a schema-versioned header
// line; serialization is deterministic (sorted keys), and parsing a
// serialized database reproduces it byte for byte.

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsinv/facet.hpp"
#include "tsinv/mining.hpp"

namespace tsinv {

inline constexpr const char* kDbSchema = "tsinv-db/1";
inline constexpr const char* kToolVersion = "1.0.0";

// ---------------------------------------------------------------------------
// Atomic relation and Boolean function serialization.

inline std::string atom_kind_name(AtomicRelation::Kind k) {
    switch (k) {
        case AtomicRelation::Kind::LenGeq: return "len_geq";
        case AtomicRelation::Kind::LenMod: return "len_mod";
        case AtomicRelation::Kind::ResMod: return "res_mod";
        case AtomicRelation::Kind::ResGeq: return "res_geq";
        case AtomicRelation::Kind::ResLeq: return "res_leq";
        case AtomicRelation::Kind::ResEq: return "res_eq";
        case AtomicRelation::Kind::ResGapEq: return "res_gap_eq";
        case AtomicRelation::Kind::ResLin: return "res_lin";
    }
    throw std::logic_error("atom_kind_name: bad kind");
}

inline AtomicRelation::Kind atom_kind_from_name(const std::string& s) {
    using K = AtomicRelation::Kind;
    for (K k : {K::LenGeq, K::LenMod, K::ResMod, K::ResGeq, K::ResLeq, K::ResEq, K::ResGapEq,
                K::ResLin})
        if (atom_kind_name(k) == s) return k;
    throw std::invalid_argument("unknown atomic relation kind: " + s);
}

inline nlohmann::json atom_to_json(const AtomicRelation& a) {
    return {{"kind", atom_kind_name(a.kind)},
            {"which", a.which},
            {"other", a.other},
            {"c", a.c},
            {"d", a.d}};
}

inline AtomicRelation atom_from_json(const nlohmann::json& j) {
    return {atom_kind_from_name(j.at("kind").get<std::string>()), j.at("which").get<int>(),
            j.at("other").get<int>(), j.at("c").get<long long>(), j.at("d").get<long long>()};
}

// ---------------------------------------------------------------------------
// Database records.

struct InvariantRecord {
    enum class Kind { Linear, ConditionalLinear, NonLinear };
    Kind kind = Kind::Linear;
    std::vector<std::string> pair;
    LinearInvariant linear;            // payload when kind != NonLinear
    BooleanFunction function;          // payload when kind == NonLinear
    long long n_guard = 2;             // non-linear claims hold from this length
    std::string precondition = "none"; // "none" or "non_default"
    nlohmann::json certificate;        // never empty
    nlohmann::json facet;              // facet verdict, {"status": ...}
    nlohmann::json params = nlohmann::json::object();

    static std::string kind_name(Kind k) {
        switch (k) {
            case Kind::Linear: return "linear";
            case Kind::ConditionalLinear: return "conditional_linear";
            case Kind::NonLinear: return "nonlinear";
        }
        throw std::logic_error("InvariantRecord: bad kind");
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["kind"] = kind_name(kind);
        j["pair"] = pair;
        if (kind == Kind::NonLinear) {
            nlohmann::json conj = nlohmann::json::array();
            for (const auto& a : function.conjuncts) conj.push_back(atom_to_json(a));
            j["function"] = {{"conjuncts", conj}, {"n_guard", n_guard}};
        } else {
            j["invariant"] = {{"e", linear.e},
                              {"e0", linear.e0},
                              {"coeffs", linear.coeffs},
                              {"min_n", linear.min_n},
                              {"delayed", linear.delayed_used}};
        }
        j["precondition"] = precondition;
        j["certificate"] = certificate;
        j["facet"] = facet;
        j["params"] = params;
        return j;
    }

    static InvariantRecord from_json(const nlohmann::json& j) {
        InvariantRecord r;
        const auto kn = j.at("kind").get<std::string>();
        if (kn == "linear") r.kind = Kind::Linear;
        else if (kn == "conditional_linear") r.kind = Kind::ConditionalLinear;
        else if (kn == "nonlinear") r.kind = Kind::NonLinear;
        else throw std::invalid_argument("unknown record kind: " + kn);
        r.pair = j.at("pair").get<std::vector<std::string>>();
        if (r.kind == Kind::NonLinear) {
            for (const auto& a : j.at("function").at("conjuncts"))
                r.function.conjuncts.push_back(atom_from_json(a));
            r.n_guard = j.at("function").at("n_guard").get<long long>();
        } else {
            const auto& inv = j.at("invariant");
            r.linear.e = inv.at("e").get<long long>();
            r.linear.e0 = inv.at("e0").get<long long>();
            r.linear.coeffs = inv.at("coeffs").get<std::vector<long long>>();
            r.linear.min_n = inv.at("min_n").get<int>();
            r.linear.delayed_used = inv.at("delayed").get<bool>();
            r.linear.non_default = false;
            r.linear.factors = r.pair;
        }
        r.precondition = j.at("precondition").get<std::string>();
        if (r.precondition == "non_default") r.linear.non_default = true;
        r.certificate = j.at("certificate");
        if (r.certificate.is_null() ||
            (r.certificate.is_string() && r.certificate.get<std::string>().empty()))
            throw std::invalid_argument("record has an empty certificate");
        r.facet = j.at("facet");
        r.params = j.at("params");
        return r;
    }

    bool operator==(const InvariantRecord& o) const { return to_json() == o.to_json(); }

    std::string render() const {
        if (kind == Kind::NonLinear) return function.render();
        std::string s = linear.render();
        if (precondition == "non_default") s += " when all results are non-default";
        return s;
    }

    // Does the record's claim hold at one data point?  values are the pair's
    // machine outputs, upp their maxima at n.
    bool holds(long long n, const std::vector<long long>& values,
               const std::vector<long long>& upp) const {
        if (kind == Kind::NonLinear) {
            if (n < n_guard) return true;
            return !function.eval(n, values, upp);  // true would claim infeasibility
        }
        if (precondition == "non_default") {
            for (long long v : values)
                if (v == 0) return true;  // condition not met, nothing claimed
        }
        return linear.holds(n, values);
    }
};

// ---------------------------------------------------------------------------
// Record construction from the synthesis and mining results.

inline nlohmann::json facet_to_json(const FacetStatus& st) {
    switch (st.kind) {
        case FacetStatus::Kind::Facet: {
            nlohmann::json pts = nlohmann::json::array();
            for (const auto& p : st.points) pts.push_back(p.render());
            return {{"status", "facet"},
                    {"cond", st.cond.render()},
                    {"n_min", st.n_min},
                    {"points", pts}};
        }
        case FacetStatus::Kind::NotFacet: return {{"status", "not_facet"}, {"reason", st.reason}};
        case FacetStatus::Kind::Undecided: return {{"status", "undecided"}};
    }
    throw std::logic_error("facet_to_json: bad kind");
}

inline InvariantRecord linear_record(const LinearInvariant& inv,
                                     const std::vector<std::string>& pair) {
    InvariantRecord r;
    r.kind = inv.non_default ? InvariantRecord::Kind::ConditionalLinear
                             : InvariantRecord::Kind::Linear;
    r.pair = pair;
    r.linear = inv;
    r.linear.factors = pair;
    r.precondition = inv.non_default ? "non_default" : "none";
    r.certificate = {{"method", "nonnegative-circuit digraph"}};
    r.facet = {{"status", "undecided"}};
    return r;
}

inline InvariantRecord nonlinear_record(const NonLinearInvariant& inv,
                                        const std::vector<std::string>& pair) {
    if (!inv.proved())
        throw std::invalid_argument("nonlinear_record: only proved functions enter the database");
    InvariantRecord r;
    r.kind = InvariantRecord::Kind::NonLinear;
    r.pair = pair;
    r.function = inv.function;
    r.n_guard = inv.n_guard;
    switch (inv.status) {
        case NonLinearInvariant::Status::ProvedUniversal:
            r.certificate = {{"method", "empty-intersection"}};
            break;
        case NonLinearInvariant::Status::ProvedWithGuard:
            r.certificate = {{"method", "empty-intersection"}, {"n_guard", inv.n_guard}};
            break;
        case NonLinearInvariant::Status::DeskVerified:
            r.certificate = {{"method", "bounded-deficit automata"},
                             {"desk_verified_to", inv.verified_to}};
            break;
        default: throw std::logic_error("nonlinear_record: unexpected status");
    }
    r.facet = {{"status", "undecided"}};
    return r;
}

// ---------------------------------------------------------------------------
// Serialization: header line, then one record per line.

inline std::string serialize_database(const std::vector<InvariantRecord>& records) {
    std::string out;
    nlohmann::json header = {{"schema", kDbSchema}, {"version", kToolVersion}};
    out += header.dump();
    out += '\n';
    for (const auto& r : records) {
        out += r.to_json().dump();
        out += '\n';
    }
    return out;
}

struct ParseReport {
    std::vector<InvariantRecord> records;
    std::vector<std::string> errors;  // one message per bad line
    bool ok() const { return errors.empty(); }
};

inline ParseReport parse_database(const std::string& text) {
    ParseReport rep;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            auto j = nlohmann::json::parse(line);
            if (!saw_header) {
                if (!j.contains("schema") || j.at("schema").get<std::string>() != kDbSchema)
                    throw std::invalid_argument("missing or unsupported schema header");
                saw_header = true;
                continue;
            }
            rep.records.push_back(InvariantRecord::from_json(j));
        } catch (const std::exception& ex) {
            rep.errors.push_back("line " + std::to_string(lineno) + ": " + ex.what());
        }
    }
    if (!saw_header && lineno > 0)
        rep.errors.insert(rep.errors.begin(), "line 1: missing schema header");
    return rep;
}

// ---------------------------------------------------------------------------
// Brute-force verifier: replay every record against every signature of its
// pair up to length n_max - 1.

struct VerifyReport {
    long long n_records = 0;
    long long checks = 0;  // record evaluations performed
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

inline VerifyReport verify_database(const std::vector<InvariantRecord>& records, long long n_max) {
    VerifyReport rep;
    rep.n_records = static_cast<long long>(records.size());
    std::map<std::vector<std::string>, std::vector<const InvariantRecord*>> by_pair;
    for (const auto& r : records) by_pair[r.pair].push_back(&r);
    const auto& cat = default_catalog();
    for (const auto& [pair, recs] : by_pair) {
        std::vector<const RegisterAutomaton*> machines;
        std::vector<ConstraintSpec> specs;
        for (const auto& f : pair) {
            machines.push_back(&constraint_automaton(f));
            specs.push_back(cat.constraint(f));
        }
        std::vector<char> violated(recs.size(), 0);  // report one witness per record
        for (long long n = 2; n <= n_max; ++n) {
            std::vector<long long> upp;
            for (const auto& s : specs) upp.push_back(upper_bound(s, n));
            const int len = static_cast<int>(n) - 1;
            const long long total = pow3(len);
            // first offending signature index per record at this length
            std::vector<long long> first(recs.size(), -1);
            std::vector<std::vector<long long>> partial(
                static_cast<std::size_t>(worker_count()),
                std::vector<long long>(recs.size(), -1));
            parallel_chunks(total, [&](int w, long long b, long long e) {
                auto& mine = partial[static_cast<std::size_t>(w)];
                for (long long i = b; i < e; ++i) {
                    Signature sig = signature_from_index(len, i);
                    std::vector<long long> values;
                    for (const auto* m : machines) values.push_back(m->run(sig)->outputs.at(0));
                    for (std::size_t r = 0; r < recs.size(); ++r) {
                        if (violated[r] || mine[r] >= 0) continue;
                        if (!recs[r]->holds(n, values, upp)) mine[r] = i;
                    }
                }
            });
            rep.checks += total * static_cast<long long>(recs.size());
            for (std::size_t r = 0; r < recs.size(); ++r) {
                for (const auto& mine : partial)
                    if (mine[r] >= 0 && (first[r] < 0 || mine[r] < first[r])) first[r] = mine[r];
                if (first[r] >= 0 && !violated[r]) {
                    violated[r] = 1;
                    Signature sig = signature_from_index(len, first[r]);
                    rep.violations.push_back(recs[r]->render() + " violated at n=" +
                                             std::to_string(n) + " signature \"" +
                                             std::string(sig.begin(), sig.end()) + "\"");
                }
            }
        }
    }
    return rep;
}

}  // namespace tsinv
