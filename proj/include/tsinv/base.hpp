#pragma once

// Core vocabulary: signature symbols, signatures, time series, and the
// exhaustive signature enumerator used by every brute-force sweep.

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsinv {

// The three-letter alphabet comparing consecutive series elements.
// Signatures are plain strings over these characters, which keeps
// serialization trivial (the JSON formats store them verbatim).
inline constexpr char kLt = '<';
inline constexpr char kEq = '=';
inline constexpr char kGt = '>';
inline constexpr std::array<char, 3> kAlphabet{kLt, kEq, kGt};

// Signature arity: each signature symbol relates p consecutive elements.
inline constexpr int kArity = 2;

using Signature = std::string;
using TimeSeries = std::vector<long long>;

inline int sym_index(char c) {
    switch (c) {
        case kLt: return 0;
        case kEq: return 1;
        case kGt: return 2;
    }
    throw std::invalid_argument(std::string("bad signature symbol: ") + c);
}

inline char sym_char(int i) {
    if (i < 0 || i > 2) throw std::invalid_argument("bad symbol index");
    return kAlphabet[static_cast<std::size_t>(i)];
}

// Signature of a series: symbol i compares X[i] and X[i+1].
inline Signature signature_of(const TimeSeries& x) {
    if (x.empty()) throw std::invalid_argument("signature_of: empty series");
    Signature s;
    s.reserve(x.size() - 1);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        if (x[i] < x[i + 1]) s.push_back(kLt);
        else if (x[i] == x[i + 1]) s.push_back(kEq);
        else s.push_back(kGt);
    }
    return s;
}

// Any integer series realizing a given signature (smallest-magnitude ramp).
inline TimeSeries series_with_signature(const Signature& sig) {
    TimeSeries x{0};
    for (char c : sig) {
        long long last = x.back();
        if (c == kLt) x.push_back(last + 1);
        else if (c == kEq) x.push_back(last);
        else x.push_back(last - 1);
    }
    return x;
}

// Streams all 3^len signatures of a given length in lexicographic order
// ('<' < '=' < '>'). Callback form so sweeps never materialize the space.
inline void for_each_signature(int len, const std::function<void(const Signature&)>& fn) {
    if (len < 0) throw std::invalid_argument("for_each_signature: negative length");
    Signature sig(static_cast<std::size_t>(len), kLt);
    std::vector<int> idx(static_cast<std::size_t>(len), 0);
    while (true) {
        fn(sig);
        int pos = len - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == 2) {
            idx[static_cast<std::size_t>(pos)] = 0;
            sig[static_cast<std::size_t>(pos)] = kLt;
            --pos;
        }
        if (pos < 0) return;
        ++idx[static_cast<std::size_t>(pos)];
        sig[static_cast<std::size_t>(pos)] = sym_char(idx[static_cast<std::size_t>(pos)]);
    }
}

inline std::vector<Signature> enumerate_signatures(int len) {
    std::vector<Signature> out;
    for_each_signature(len, [&](const Signature& s) { out.push_back(s); });
    return out;
}

}  // namespace tsinv
