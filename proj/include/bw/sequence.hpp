#pragma once

// Finite encodings of infinite count sequences (n_1, n_2, ...) and the
// stage-kind patterns they unroll to.
//
// A Sequence is a finite prefix followed by a tail rule. The tail is either
// periodic (a cycle repeated from index L+1) or an exponential sum
// sum_t c_t * b_t^(i-L-1) with integer bases b_t >= 2 and positive c_t.
// Both tail classes are kept in a canonical form, so two tails anchored at
// the same index describe the same values iff they are structurally equal.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bw/arith.hpp"
#include "bw/error.hpp"

namespace bw {

struct PeriodicTail {
    std::vector<BigInt> values;
    friend bool operator==(const PeriodicTail&, const PeriodicTail&) = default;
};

struct ExpTerm {
    BigInt coeff;
    BigInt base;
    friend bool operator==(const ExpTerm&, const ExpTerm&) = default;
};

struct ExpSumTail {
    std::vector<ExpTerm> terms;  // strictly increasing bases
    friend bool operator==(const ExpSumTail&, const ExpSumTail&) = default;
};

using Tail = std::variant<PeriodicTail, ExpSumTail>;

namespace detail {

// Smallest r dividing the cycle length such that the cycle is r-periodic.
inline std::vector<BigInt> minimal_cycle(std::vector<BigInt> cycle) {
    const std::size_t n = cycle.size();
    for (std::size_t r = 1; r < n; ++r) {
        if (n % r != 0) continue;
        bool ok = true;
        for (std::size_t i = r; i < n && ok; ++i) ok = cycle[i] == cycle[i - r];
        if (ok) {
            cycle.resize(r);
            return cycle;
        }
    }
    return cycle;
}

inline Tail normalize_tail(Tail tail) {
    if (auto* p = std::get_if<PeriodicTail>(&tail)) {
        if (p->values.empty()) throw schema_error("periodic tail needs at least one value");
        bool all_zero = true;
        for (const auto& v : p->values) {
            if (v < 0) throw schema_error("negative count " + v.str() + " in periodic tail");
            if (v != 0) all_zero = false;
        }
        if (all_zero) throw schema_error("tail is identically zero (need infinitely many Bing stages)");
        p->values = minimal_cycle(std::move(p->values));
        return tail;
    }
    auto& e = std::get<ExpSumTail>(tail);
    if (e.terms.empty()) throw schema_error("expsum tail needs at least one term");
    for (const auto& t : e.terms) {
        if (t.coeff <= 0) throw schema_error("expsum coefficient must be positive, got " + t.coeff.str());
        if (t.base < 1) throw schema_error("expsum base must be >= 1, got " + t.base.str());
    }
    std::sort(e.terms.begin(), e.terms.end(), [](const ExpTerm& a, const ExpTerm& b) { return a.base < b.base; });
    std::vector<ExpTerm> merged;
    for (auto& t : e.terms) {
        if (!merged.empty() && merged.back().base == t.base) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(std::move(t));
        }
    }
    if (merged.size() == 1 && merged.front().base == 1) {
        return PeriodicTail{{merged.front().coeff}};
    }
    if (merged.front().base == 1) {
        throw schema_error("expsum tail mixes base 1 with larger bases; put constant parts in a periodic tail");
    }
    e.terms = std::move(merged);
    return tail;
}

}  // namespace detail

class Sequence {
public:
    Sequence(std::vector<BigInt> prefix, Tail tail) : prefix_(std::move(prefix)), tail_(detail::normalize_tail(std::move(tail))) {
        for (const auto& v : prefix_) {
            if (v < 0) throw schema_error("negative count " + v.str() + " in prefix");
        }
    }

    static Sequence periodic(std::vector<BigInt> prefix, std::vector<BigInt> cycle) {
        return Sequence(std::move(prefix), PeriodicTail{std::move(cycle)});
    }
    static Sequence exp_sum(std::vector<BigInt> prefix, std::vector<ExpTerm> terms) {
        return Sequence(std::move(prefix), ExpSumTail{std::move(terms)});
    }

    const std::vector<BigInt>& prefix() const noexcept { return prefix_; }
    std::size_t prefix_length() const noexcept { return prefix_.size(); }
    const Tail& tail() const noexcept { return tail_; }
    bool has_periodic_tail() const noexcept { return std::holds_alternative<PeriodicTail>(tail_); }
    bool has_exp_sum_tail() const noexcept { return std::holds_alternative<ExpSumTail>(tail_); }

    /// Structural equality of the representation (not of the infinite sequence; see same_values).
    friend bool operator==(const Sequence&, const Sequence&) = default;

private:
    std::vector<BigInt> prefix_;
    Tail tail_;
};

// ---------------------------------------------------------------------------
// Tail evaluation

/// Value of the tail at 0-based offset k (i.e. at sequence index L+1+k).
inline BigInt tail_value(const Tail& tail, const BigInt& k) {
    if (const auto* p = std::get_if<PeriodicTail>(&tail)) {
        const auto r = static_cast<std::size_t>(BigInt(k % p->values.size()).convert_to<std::uint64_t>());
        return p->values[r];
    }
    const auto& e = std::get<ExpSumTail>(tail);
    const std::uint64_t exponent = to_u64_checked(k, "tail exponent");
    BigInt sum = 0;
    for (const auto& t : e.terms) sum += t.coeff * pow_big(t.base, exponent);
    return sum;
}

/// Sum of the first k tail values.
inline BigInt tail_sum(const Tail& tail, const BigInt& k) {
    if (const auto* p = std::get_if<PeriodicTail>(&tail)) {
        const std::size_t r = p->values.size();
        BigInt cycle_sum = 0;
        for (const auto& v : p->values) cycle_sum += v;
        BigInt whole, rest;
        boost::multiprecision::divide_qr(k, BigInt(r), whole, rest);
        BigInt sum = whole * cycle_sum;
        const auto partial = rest.convert_to<std::size_t>();
        for (std::size_t i = 0; i < partial; ++i) sum += p->values[i];
        return sum;
    }
    const auto& e = std::get<ExpSumTail>(tail);
    const std::uint64_t count = to_u64_checked(k, "tail length");
    BigInt sum = 0;
    for (const auto& t : e.terms) {
        // geometric series c * (b^k - 1) / (b - 1)
        sum += t.coeff * ((pow_big(t.base, count) - 1) / (t.base - 1));
    }
    return sum;
}

/// Tail re-anchored `shift` positions later: value k of the result is value k+shift of the input.
inline Tail shift_tail(const Tail& tail, const BigInt& shift) {
    if (const auto* p = std::get_if<PeriodicTail>(&tail)) {
        const std::size_t r = p->values.size();
        const auto s = BigInt(shift % r).convert_to<std::size_t>();
        PeriodicTail out;
        out.values.reserve(r);
        for (std::size_t i = 0; i < r; ++i) out.values.push_back(p->values[(i + s) % r]);
        return out;
    }
    const auto& e = std::get<ExpSumTail>(tail);
    const std::uint64_t s = to_u64_checked(shift, "tail shift");
    ExpSumTail out = e;
    for (auto& t : out.terms) t.coeff *= pow_big(t.base, s);
    return out;
}

// ---------------------------------------------------------------------------
// Sequence operations

/// n_i for i >= 1.
inline BigInt value_at(const Sequence& seq, const BigInt& i) {
    if (i < 1) throw precondition_error("value_at: index must be >= 1, got " + i.str());
    const std::size_t len = seq.prefix_length();
    if (i <= len) return seq.prefix()[i.convert_to<std::size_t>() - 1];
    return tail_value(seq.tail(), i - len - 1);
}

/// n_1 + ... + n_p (0 for p = 0).
inline BigInt prefix_sum(const Sequence& seq, const BigInt& p) {
    if (p < 0) throw precondition_error("prefix_sum: p must be >= 0");
    const std::size_t len = seq.prefix_length();
    BigInt sum = 0;
    const std::size_t direct = p < len ? p.convert_to<std::size_t>() : len;
    for (std::size_t i = 0; i < direct; ++i) sum += seq.prefix()[i];
    if (p > len) sum += tail_sum(seq.tail(), p - len);
    return sum;
}

/// Exact sum_{i=1}^{N} n_i 2^{-i}.
inline Rational partial_series_sum(const Sequence& seq, std::uint64_t terms) {
    if (terms < 1) throw precondition_error("partial_series_sum: N must be >= 1");
    // sum n_i 2^(N-i), then divide once by 2^N
    BigInt numerator = 0;
    for (std::uint64_t i = 1; i <= terms; ++i) {
        numerator = (numerator << 1) + value_at(seq, i);
    }
    return Rational(numerator, pow2(terms));
}

/// Whether sum n_i 2^{-i} diverges. Periodic tails are bounded (convergent);
/// exponential tails with base >= 2 grow at least like 2^i (divergent).
inline bool is_cantor(const Sequence& seq) noexcept { return seq.has_exp_sum_tail(); }

/// The same infinite sequence with at least `length` values held in the prefix.
inline Sequence materialize(const Sequence& seq, std::size_t length) {
    if (seq.prefix_length() >= length) return seq;
    std::vector<BigInt> prefix = seq.prefix();
    const std::size_t extra = length - prefix.size();
    for (std::size_t k = 0; k < extra; ++k) prefix.push_back(tail_value(seq.tail(), k));
    return Sequence(std::move(prefix), shift_tail(seq.tail(), extra));
}

/// The sequence k -> n_{p+k}, k >= 1.
inline Sequence suffix_after(const Sequence& seq, const BigInt& p) {
    if (p < 0) throw precondition_error("suffix_after: p must be >= 0");
    const std::size_t len = seq.prefix_length();
    if (p < len) {
        const auto start = p.convert_to<std::size_t>();
        return Sequence(std::vector<BigInt>(seq.prefix().begin() + static_cast<std::ptrdiff_t>(start), seq.prefix().end()), seq.tail());
    }
    return Sequence({}, shift_tail(seq.tail(), p - len));
}

/// Equality of the infinite sequences the two representations denote.
inline bool same_values(const Sequence& a, const Sequence& b) {
    if (a.tail().index() != b.tail().index()) return false;
    const std::size_t len = std::max(a.prefix_length(), b.prefix_length());
    const Sequence x = materialize(a, len);
    const Sequence y = materialize(b, len);
    return x.prefix() == y.prefix() && x.tail() == y.tail();
}

// ---------------------------------------------------------------------------
// Patterns

enum class StageKind : char { Whitehead = 'W', Bing = 'B' };

struct Pattern {
    std::vector<StageKind> entries;

    std::size_t size() const noexcept { return entries.size(); }
    std::string to_string() const {
        std::string s;
        s.reserve(entries.size());
        for (auto k : entries) s.push_back(static_cast<char>(k));
        return s;
    }
    static Pattern from_string(std::string_view text) {
        Pattern p;
        for (char c : text) {
            if (c == 'W') p.entries.push_back(StageKind::Whitehead);
            else if (c == 'B') p.entries.push_back(StageKind::Bing);
            else throw schema_error(std::string("pattern letters must be W or B, got '") + c + "'");
        }
        return p;
    }
    friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// First `horizon` stage kinds: n_1 B's, W, n_2 B's, W, ...
inline Pattern pattern(const Sequence& seq, std::uint64_t horizon) {
    if (horizon < 1) throw precondition_error("pattern: horizon must be >= 1");
    Pattern out;
    out.entries.reserve(horizon);
    for (BigInt i = 1; out.entries.size() < horizon; ++i) {
        const BigInt run = value_at(seq, i);
        const std::uint64_t room = horizon - out.entries.size();
        const std::uint64_t take = run < room ? run.convert_to<std::uint64_t>() : room;
        out.entries.insert(out.entries.end(), take, StageKind::Bing);
        if (out.entries.size() < horizon) out.entries.push_back(StageKind::Whitehead);
    }
    return out;
}

struct RunCounts {
    std::vector<std::uint64_t> counts;  // B-runs closed by a W
    std::uint64_t trailing_partial = 0; // open B-run at the end
    friend bool operator==(const RunCounts&, const RunCounts&) = default;
};

inline RunCounts counts_from_pattern(const Pattern& p) {
    RunCounts out;
    for (auto k : p.entries) {
        if (k == StageKind::Bing) {
            ++out.trailing_partial;
        } else {
            out.counts.push_back(out.trailing_partial);
            out.trailing_partial = 0;
        }
    }
    return out;
}

}  // namespace bw
