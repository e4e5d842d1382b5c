#pragma once

// Facet analysis of linear invariants over a pair of constraints.  A linear
// invariant e + e0*n + e1*R1 + e2*R2 >= 0 is facet-defining (under a length
// condition) when the line f = 0 carries two distinct feasible points for
// every admissible length.  Three steps:
//   1. assume a condition on n from a fixed ladder, least restrictive first;
//   2. posit R1 = a*max1(n) + (1-2a)*b for small b, isolate R2 from f = 0,
//      and check per residue class of n that the result has the same shape
//      a'*max2(n) + (1-2a')*b' with a natural b' (exact rational arithmetic
//      on the per-class affine forms, never floating point);
//   3. prove each candidate point feasible for all admissible n by
//      intersecting the two value-condition automata with the length
//      automaton and finding a closed walk whose length is the condition's
//      period; the shortest accepted word through such a walk gives the
//      minimal length.

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "tsinv/gaploss.hpp"
#include "tsinv/linear.hpp"

namespace tsinv {

// ---------------------------------------------------------------------------
// Exact rational arithmetic (small values only: slopes and intercepts of the
// per-class affine forms).

struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;
    Rat(long long n, long long d = 1) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(std::abs(num), den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num * b.num, a.den * b.den); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num == 0) throw std::invalid_argument("Rat: division by zero");
        return Rat(a.num * b.den, a.den * b.num);
    }
    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool is_integer() const { return den == 1; }
};

// Affine function of n, valid on one residue class of n.
struct Affine {
    Rat slope;
    Rat icept;
    bool operator==(const Affine& o) const { return slope == o.slope && icept == o.icept; }
};

// max(n) = m*floor((n-c)/d) + k restricted to the class n = rho (mod L) is
// affine in n (requires d | L so the floor's remainder is fixed on the class).
inline Affine bound_affine(const UpperBoundFormula& u, long long rho) {
    long long r0 = ((rho - u.c) % u.d + u.d) % u.d;
    return {Rat(u.m, u.d), Rat(u.k) - Rat(u.m * (u.c + r0), u.d)};
}

// ---------------------------------------------------------------------------
// Length conditions: n >= geq, optionally conjoined with n mod mod_m = mod_r.

struct LengthCondition {
    long long geq = 1;
    long long mod_m = 1;  // 1 means no modular part
    long long mod_r = 0;

    // smallest difference between two admissible lengths
    long long period() const { return mod_m; }

    bool admits(long long n) const {
        return n >= geq && (mod_m == 1 || n % mod_m == mod_r);
    }

    // Accepts exactly the words of admissible series length (word = n - 1).
    Dfa automaton() const {
        Dfa d = length_geq_dfa(static_cast<int>(geq) - 1);
        if (mod_m > 1)
            d = intersect(d, length_mod_dfa(static_cast<int>(mod_m),
                                            static_cast<int>(mod_r) - 1));
        return d;
    }

    std::string render() const {
        std::vector<std::string> parts;
        if (geq > 1) parts.push_back("n >= " + std::to_string(geq));
        if (mod_m > 1)
            parts.push_back("n mod " + std::to_string(mod_m) + " = " + std::to_string(mod_r));
        if (parts.empty()) return "all n";
        std::string out = parts[0];
        for (std::size_t i = 1; i < parts.size(); ++i) out += " and " + parts[i];
        return out;
    }
};

// Least restrictive first: no condition, then length thresholds, then
// parities, then their conjunctions.
inline std::vector<LengthCondition> condition_ladder() {
    std::vector<LengthCondition> out;
    out.push_back({1, 1, 0});
    for (long long c = 2; c <= 6; ++c) out.push_back({c, 1, 0});
    for (long long r = 0; r <= 1; ++r) out.push_back({1, 2, r});
    for (long long c = 2; c <= 6; ++c)
        for (long long r = 0; r <= 1; ++r) out.push_back({c, 2, r});
    return out;
}

// ---------------------------------------------------------------------------
// Candidate points on the line f = 0.  Each coordinate is either a constant
// b or an offset below the maximum, max(n) - b.

struct CoordSpec {
    int a = 0;        // 0: value b; 1: value max(n) - b
    long long b = 0;  // natural number

    bool operator==(const CoordSpec& o) const { return a == o.a && b == o.b; }

    long long value(long long upp) const { return a ? upp - b : b; }

    AtomicRelation relation(int which) const {
        if (a) return {AtomicRelation::Kind::ResGapEq, which, 0, b, 0};
        return {AtomicRelation::Kind::ResEq, which, 0, b, 0};
    }

    Affine affine(const UpperBoundFormula& u, long long rho) const {
        if (!a) return {Rat(0), Rat(b)};
        Affine ua = bound_affine(u, rho);
        return {ua.slope, ua.icept - Rat(b)};
    }

    std::string render(int which) const {
        if (!a) return std::to_string(b);
        std::string s = "max" + std::to_string(which + 1) + "(n)";
        if (b > 0) s += " - " + std::to_string(b);
        return s;
    }
};

struct FacetPoint {
    CoordSpec x, y;
    bool operator==(const FacetPoint& o) const { return x == o.x && y == o.y; }
    std::string render() const { return "(" + x.render(0) + ", " + y.render(1) + ")"; }
};

namespace detail {

// Match an affine form against a*max(n) + (1-2a)*b with natural b, on one
// residue class.  The maxima in the catalog all grow with n, so the two
// shapes have distinct slopes and at most one can match.
inline std::optional<CoordSpec> match_shape(const Affine& rhs, const UpperBoundFormula& u,
                                            long long rho) {
    if (rhs.slope == Rat(0)) {
        if (rhs.icept.is_integer() && rhs.icept.num >= 0) return CoordSpec{0, rhs.icept.num};
        return std::nullopt;
    }
    Affine ua = bound_affine(u, rho);
    if (rhs.slope == ua.slope) {
        Rat b = ua.icept - rhs.icept;
        if (b.is_integer() && b.num >= 0) return CoordSpec{1, b.num};
    }
    return std::nullopt;
}

// Residue classes of n modulo L compatible with the condition's modular part.
inline std::vector<long long> classes(long long L, const LengthCondition& cond) {
    std::vector<long long> out;
    for (long long rho = 0; rho < L; ++rho)
        if (cond.mod_m == 1 || rho % cond.mod_m == cond.mod_r % cond.mod_m) out.push_back(rho);
    return out;
}

}  // namespace detail

// Candidate points on f = 0 under the length condition: posit one coordinate
// over a in {0,1} (maximum-anchored first, as the tight end of the line is
// the interesting one) and b in {0..3}, and derive the other coordinate
// exactly; a candidate survives only when every residue class compatible
// with the condition derives the same shape.  A coordinate with a zero
// coefficient does not constrain the line and is paired with 0 and 1.
inline std::vector<FacetPoint> candidate_points(const LinearInvariant& inv,
                                                const LengthCondition& cond,
                                                const std::vector<ConstraintSpec>& specs) {
    if (inv.coeffs.size() != 2) throw std::invalid_argument("candidate_points: need a pair");
    const long long e1 = inv.coeffs[0], e2 = inv.coeffs[1];
    const UpperBoundFormula u1 = specs[0].upp(), u2 = specs[1].upp();
    const long long L = std::lcm(std::lcm(u1.d, u2.d), cond.mod_m);
    const auto rhos = detail::classes(L, cond);

    std::vector<FacetPoint> out;
    auto push_unique = [&](const FacetPoint& p) {
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    };

    // The derived coordinate, as a function of the posited one, per class.
    auto derive = [&](long long coeff_posited, long long coeff_derived, const Affine& posited)
        -> Affine {
        // f = 0  =>  derived = -(e + e0*n + coeff_posited*posited) / coeff_derived
        Rat cd(coeff_derived);
        return {(Rat(-inv.e0) - Rat(coeff_posited) * posited.slope) / cd,
                (Rat(-inv.e) - Rat(coeff_posited) * posited.icept) / cd};
    };

    auto consistent_match = [&](long long coeff_posited, long long coeff_derived,
                                const CoordSpec& posited, const UpperBoundFormula& up,
                                const UpperBoundFormula& ud) -> std::optional<CoordSpec> {
        std::optional<CoordSpec> agreed;
        for (long long rho : rhos) {
            auto m = detail::match_shape(derive(coeff_posited, coeff_derived,
                                                posited.affine(up, rho)),
                                         ud, rho);
            if (!m || (agreed && !(*m == *agreed))) return std::nullopt;
            agreed = m;
        }
        return agreed;
    };

    if (e1 != 0 && e2 != 0) {
        for (int a : {1, 0})
            for (long long b = 0; b <= 3; ++b) {
                CoordSpec px{a, b};
                if (auto py = consistent_match(e1, e2, px, u1, u2)) push_unique({px, *py});
            }
    } else if (e1 != 0 || e2 != 0) {
        // One result does not appear in f; the line fixes the other alone.
        const bool solve_x = e1 != 0;
        std::optional<CoordSpec> agreed;
        for (long long rho : rhos) {
            Affine rhs = derive(0, solve_x ? e1 : e2, {Rat(0), Rat(0)});
            auto m = detail::match_shape(rhs, solve_x ? u1 : u2, rho);
            if (!m || (agreed && !(*m == *agreed))) return out;
            agreed = m;
        }
        if (agreed)
            for (long long free = 0; free <= 1; ++free)
                push_unique(solve_x ? FacetPoint{*agreed, {0, free}}
                                    : FacetPoint{{0, free}, *agreed});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Feasibility of one candidate point for every admissible length: intersect
// the value-condition automata for both coordinates with the length
// automaton; a closed walk of the condition's period length pumps one
// witness into all longer admissible lengths.  Returns the minimal series
// length, or nothing when the point is infeasible.

inline std::optional<long long> prove_point_feasible(const FacetPoint& point,
                                                     const std::vector<std::string>& factors,
                                                     const LengthCondition& cond) {
    Dfa prod = intersect(intersect(relation_automaton(point.x.relation(0), factors).dfa,
                                   relation_automaton(point.y.relation(1), factors).dfa),
                         cond.automaton());
    auto res = min_length_through_cycle(prod, static_cast<int>(cond.period()));
    if (!res) return std::nullopt;
    return res->length + 1;  // word length -> series length
}

// ---------------------------------------------------------------------------
// Verdict.

struct FacetStatus {
    enum class Kind { Facet, NotFacet, Undecided };
    Kind kind = Kind::Undecided;
    LengthCondition cond;
    long long n_min = 0;            // largest of the two points' minimal lengths
    std::vector<FacetPoint> points; // the two supporting points when Facet
    std::string reason;

    std::string render() const {
        switch (kind) {
            case Kind::Facet:
                return "facet under " + cond.render() + " for n >= " + std::to_string(n_min) +
                       " via " + points[0].render() + " and " + points[1].render();
            case Kind::NotFacet: return "not a facet: " + reason;
            case Kind::Undecided: return "undecided";
        }
        return "?";
    }
};

inline FacetStatus facet_check(const LinearInvariant& inv,
                               const std::vector<std::string>& factors) {
    const auto& cat = default_catalog();
    std::vector<ConstraintSpec> specs;
    for (const auto& f : factors) specs.push_back(cat.constraint(f));
    for (const auto& cond : condition_ladder()) {
        auto cands = candidate_points(inv, cond, specs);
        std::vector<std::pair<FacetPoint, long long>> feasible;
        for (const auto& p : cands) {
            if (auto n = prove_point_feasible(p, factors, cond))
                feasible.emplace_back(p, *n);
            if (feasible.size() == 2) break;
        }
        if (feasible.size() == 2) {
            FacetStatus st;
            st.kind = FacetStatus::Kind::Facet;
            st.cond = cond;
            st.n_min = std::max(feasible[0].second, feasible[1].second);
            st.points = {feasible[0].first, feasible[1].first};
            return st;
        }
    }
    FacetStatus st;
    st.kind = FacetStatus::Kind::NotFacet;
    st.reason = "no condition in the ladder yields two feasible points on the line";
    return st;
}

}  // namespace tsinv
