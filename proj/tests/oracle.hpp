#pragma once

// Test-only reference computations. Nothing here calls into the decision code;
// sequences are given as plain functions i -> n_i.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bw/sequence.hpp"

namespace bw::oracle {

using Values = std::function<BigInt(std::uint64_t)>;

inline BigInt ipow(BigInt b, std::uint64_t e) {
    BigInt r = 1;
    while (e--) r *= b;
    return r;
}

inline std::vector<BigInt> unroll(const Values& f, std::uint64_t count) {
    std::vector<BigInt> v;
    for (std::uint64_t i = 1; i <= count; ++i) v.push_back(f(i));
    return v;
}

/// Values of a prefix + cycle description, computed by explicit list repetition.
inline Values periodic_values(std::vector<BigInt> prefix, std::vector<BigInt> cycle) {
    return [prefix, cycle](std::uint64_t i) -> BigInt {
        if (i <= prefix.size()) return prefix[i - 1];
        std::uint64_t j = i - prefix.size() - 1;
        return cycle[j % cycle.size()];
    };
}

/// Stage kinds by writing out n_1 B's, W, n_2 B's, W, ... literally.
inline std::string unroll_pattern(const Values& f, std::size_t horizon) {
    std::string s;
    for (std::uint64_t i = 1; s.size() < horizon; ++i) {
        BigInt n = f(i);
        for (BigInt k = 0; k < n && s.size() < horizon; ++k) s.push_back('B');
        if (s.size() < horizon) s.push_back('W');
    }
    return s;
}

/// Smallest (p+q, p) pair <= bound with equal prefix sums and equal values up to horizon.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> least_witness(const Values& m, const Values& n, std::uint64_t bound,
                                                                             std::uint64_t horizon) {
    auto vm = unroll(m, horizon + bound);
    auto vn = unroll(n, horizon + bound);
    for (std::uint64_t s = 0; s <= 2 * bound; ++s) {
        for (std::uint64_t p = 0; p <= s; ++p) {
            std::uint64_t q = s - p;
            if (p > bound || q > bound) continue;
            BigInt sm = 0, sn = 0;
            for (std::uint64_t i = 0; i < p; ++i) sm += vm[i];
            for (std::uint64_t i = 0; i < q; ++i) sn += vn[i];
            if (sm != sn) continue;
            bool ok = true;
            for (std::uint64_t k = 1; ok && k <= horizon; ++k) ok = vm[p + k - 1] == vn[q + k - 1];
            if (ok) return std::make_pair(p, q);
        }
    }
    return std::nullopt;
}

struct RandomSequence {
    std::vector<BigInt> prefix;
    std::vector<BigInt> cycle;
    Sequence build() const { return Sequence::periodic(prefix, cycle); }
    Values values() const { return periodic_values(prefix, cycle); }
};

/// Prefix length <= 6, values <= 5, period <= 3, tail not identically zero.
inline RandomSequence random_periodic(std::mt19937_64& rng, std::uint64_t max_value = 5) {
    std::uniform_int_distribution<int> len(0, 6), per(1, 3);
    std::uniform_int_distribution<std::uint64_t> val(0, max_value);
    RandomSequence r;
    const int l = len(rng);
    for (int i = 0; i < l; ++i) r.prefix.push_back(val(rng));
    const int p = per(rng);
    do {
        r.cycle.clear();
        for (int i = 0; i < p; ++i) r.cycle.push_back(val(rng));
    } while (std::all_of(r.cycle.begin(), r.cycle.end(), [](const BigInt& v) { return v == 0; }));
    return r;
}

}  // namespace bw::oracle
