#pragma once

// Decision procedure for the equivalence relation on BW count sequences:
//   m ~ n  iff  there are p, q >= 0 with  m_1+...+m_p = n_1+...+n_q
//               and m_{p+k} = n_{q+k} for every k >= 1.
// For Cantor-set sequences this is exactly equivalence of the embeddings;
// on non-Cantor sequences it is only the combinatorial relation.
//
// Exactness rests on two facts. (1) If the tails agree after (p, q) they
// also agree after (p+1, q+1), and the prefix-sum difference is constant
// along that diagonal; so every solution lies on a single diagonal p-q=d,
// fixed by how the two tail rules line up, and the solutions on it are
// upward closed. (2) Canonical tails align in finitely many ways: a minimal
// cycle matches another rotation in at most one residue, and distinct
// integer exponentials are linearly independent, so exponential tails
// line up under at most one offset.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "bw/arith.hpp"
#include "bw/error.hpp"
#include "bw/sequence.hpp"

namespace bw {

enum class InequivalenceReason {
    TailStructureMismatch,  // tail classes, cycle lengths, or base sets differ
    TailValueMismatch,      // same shape, but no shift makes the tails agree
    NoSumAlignment,         // tails align on a diagonal where prefix sums never meet
};

inline const char* to_string(InequivalenceReason r) {
    switch (r) {
        case InequivalenceReason::TailStructureMismatch: return "TailStructureMismatch";
        case InequivalenceReason::TailValueMismatch: return "TailValueMismatch";
        case InequivalenceReason::NoSumAlignment: return "NoSumAlignment";
    }
    return "?";
}

struct Equivalent {
    BigInt p;
    BigInt q;
    friend bool operator==(const Equivalent&, const Equivalent&) = default;
};

struct Inequivalent {
    InequivalenceReason reason;
    friend bool operator==(const Inequivalent&, const Inequivalent&) = default;
};

using EquivalenceVerdict = std::variant<Equivalent, Inequivalent>;

inline bool is_equivalent(const EquivalenceVerdict& v) noexcept { return std::holds_alternative<Equivalent>(v); }

/// m_{p+k} == n_{q+k} for all k >= 1, decided on the representations.
inline bool tails_equal_after(const Sequence& m, const BigInt& p, const Sequence& n, const BigInt& q) {
    if (p < 0 || q < 0) throw precondition_error("tails_equal_after: shifts must be >= 0");
    return same_values(suffix_after(m, p), suffix_after(n, q));
}

/// Checks a claimed witness symbolically: equal prefix sums and equal tails.
inline bool is_valid_witness(const Sequence& m, const Sequence& n, const BigInt& p, const BigInt& q) {
    return prefix_sum(m, p) == prefix_sum(n, q) && tails_equal_after(m, p, n, q);
}

namespace detail {

struct Diagonal {
    BigInt offset;    // p - q
    BigInt anchor_p;  // a point on the diagonal where both shifts lie in the tail region
};

// Rotation rho in [0, r) with b[j] == a[(j + rho) % r] for all j.
inline std::optional<std::size_t> rotation_offset(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    const std::size_t r = a.size();
    for (std::size_t rho = 0; rho < r; ++rho) {
        bool ok = true;
        for (std::size_t j = 0; j < r && ok; ++j) ok = b[j] == a[(j + rho) % r];
        if (ok) return rho;
    }
    return std::nullopt;
}

// Tail-region offset e = (p - L_m) - (q - L_n) making c'_t = c_t * b_t^e for every term.
inline std::variant<BigInt, InequivalenceReason> exp_sum_offset(const ExpSumTail& a, const ExpSumTail& b) {
    if (a.terms.size() != b.terms.size()) return InequivalenceReason::TailStructureMismatch;
    for (std::size_t t = 0; t < a.terms.size(); ++t) {
        if (a.terms[t].base != b.terms[t].base) return InequivalenceReason::TailStructureMismatch;
    }
    std::optional<BigInt> offset;
    for (std::size_t t = 0; t < a.terms.size(); ++t) {
        const auto& ca = a.terms[t].coeff;
        const auto& cb = b.terms[t].coeff;
        const auto& base = a.terms[t].base;
        BigInt e;
        if (cb >= ca) {
            if (cb % ca != 0) return InequivalenceReason::TailValueMismatch;
            auto k = exact_log(cb / ca, base);
            if (!k) return InequivalenceReason::TailValueMismatch;
            e = *k;
        } else {
            if (ca % cb != 0) return InequivalenceReason::TailValueMismatch;
            auto k = exact_log(ca / cb, base);
            if (!k) return InequivalenceReason::TailValueMismatch;
            e = -BigInt(*k);
        }
        if (offset && *offset != e) return InequivalenceReason::TailValueMismatch;
        offset = e;
    }
    return *offset;
}

inline BigInt max_big(const BigInt& a, const BigInt& b) { return a < b ? b : a; }

// Walks a solution back along its diagonal to the least one.
inline Equivalent least_on_diagonal(const Sequence& m, const Sequence& n, BigInt p, BigInt q) {
    const BigInt lm = m.prefix_length();
    const BigInt ln = n.prefix_length();
    // Inside both tail regions the aligned values agree, so jump straight back.
    if (p > lm && q > ln) {
        const BigInt jump = p - lm < q - ln ? p - lm : q - ln;
        p -= jump;
        q -= jump;
    }
    while (p > 0 && q > 0 && value_at(m, p) == value_at(n, q)) {
        --p;
        --q;
    }
    return Equivalent{p, q};
}

}  // namespace detail

/// Decides m ~ n. Equivalent carries the witness least in (p + q, p).
inline EquivalenceVerdict decide_equivalent(const Sequence& m, const Sequence& n) {
    using detail::max_big;
    const BigInt lm = m.prefix_length();
    const BigInt ln = n.prefix_length();

    // A periodic tail is bounded and an exponential one is not.
    if (m.tail().index() != n.tail().index()) return Inequivalent{InequivalenceReason::TailStructureMismatch};

    if (const auto* ta = std::get_if<PeriodicTail>(&m.tail())) {
        const auto& tb = std::get<PeriodicTail>(n.tail());
        if (ta->values.size() != tb.values.size()) return Inequivalent{InequivalenceReason::TailStructureMismatch};
        const auto rho = detail::rotation_offset(ta->values, tb.values);
        if (!rho) return Inequivalent{InequivalenceReason::TailValueMismatch};

        // Tail-region pairs satisfy p - q = lm - ln + rho + r*t for an integer t.
        // Moving one whole cycle along p changes the sum difference by the cycle sum.
        const BigInt r = ta->values.size();
        BigInt cycle_sum = 0;
        for (const auto& v : ta->values) cycle_sum += v;
        const BigInt d0 = lm - ln + BigInt(*rho);
        const BigInt pa = max_big(lm, ln + d0);
        const BigInt qa = pa - d0;
        const BigInt diff = prefix_sum(m, pa) - prefix_sum(n, qa);
        if (diff % cycle_sum != 0) return Inequivalent{InequivalenceReason::NoSumAlignment};
        const BigInt t = -diff / cycle_sum;
        BigInt p = pa, q = qa;
        if (t >= 0) {
            p += r * t;
        } else {
            q += r * (-t);
        }
        return detail::least_on_diagonal(m, n, p, q);
    }

    const auto& ea = std::get<ExpSumTail>(m.tail());
    const auto& eb = std::get<ExpSumTail>(n.tail());
    const auto off = detail::exp_sum_offset(ea, eb);
    if (const auto* why = std::get_if<InequivalenceReason>(&off)) return Inequivalent{*why};
    const BigInt d = lm - ln + std::get<BigInt>(off);
    const BigInt pa = max_big(lm, ln + d);
    const BigInt qa = pa - d;
    // The sum difference is constant along the diagonal once both are in their tails.
    if (prefix_sum(m, pa) != prefix_sum(n, qa)) return Inequivalent{InequivalenceReason::NoSumAlignment};
    return detail::least_on_diagonal(m, n, pa, qa);
}

/// Bounded search used as a test oracle. true: some p, q <= max_shift align sums
/// and agree termwise up to `horizon`. false: no p, q <= max_shift align the sums.
/// nullopt: sums align somewhere but no candidate agrees to the horizon.
inline std::optional<bool> brute_force_equivalent(const Sequence& m, const Sequence& n, std::uint64_t max_shift, std::uint64_t horizon) {
    if (max_shift < 1) throw precondition_error("brute_force_equivalent: max_shift must be positive");
    if (horizon <= max_shift) throw precondition_error("brute_force_equivalent: horizon must exceed max_shift");

    auto values = [](const Sequence& s, std::uint64_t count) {
        std::vector<BigInt> v;
        v.reserve(count);
        for (std::uint64_t i = 1; i <= count; ++i) v.push_back(value_at(s, i));
        return v;
    };
    auto sums = [](const std::vector<BigInt>& v, std::uint64_t count) {
        std::vector<BigInt> s(count + 1, 0);
        for (std::uint64_t i = 1; i <= count; ++i) s[i] = s[i - 1] + v[i - 1];
        return s;
    };

    const auto head_m = values(m, max_shift);
    const auto head_n = values(n, max_shift);
    const auto sum_m = sums(head_m, max_shift);
    const auto sum_n = sums(head_n, max_shift);

    std::vector<std::pair<std::uint64_t, std::uint64_t>> aligned;
    for (std::uint64_t p = 0; p <= max_shift; ++p) {
        for (std::uint64_t q = 0; q <= max_shift; ++q) {
            if (sum_m[p] == sum_n[q]) aligned.emplace_back(p, q);
        }
    }
    if (aligned.empty()) return false;

    const auto vm = values(m, horizon);
    const auto vn = values(n, horizon);
    for (auto [p, q] : aligned) {
        bool agree = true;
        for (std::uint64_t k = 1; agree && p + k <= horizon && q + k <= horizon; ++k) {
            agree = vm[p + k - 1] == vn[q + k - 1];
        }
        if (agree) return true;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Equivalence-preserving transforms

/// (n1, n2, rest) -> (n1 + n2, rest).
inline Sequence merge_head(const Sequence& seq) {
    const Sequence full = materialize(seq, 2);
    std::vector<BigInt> prefix(full.prefix().begin() + 1, full.prefix().end());
    prefix.front() += full.prefix().front();
    return Sequence(std::move(prefix), full.tail());
}

/// (n1, rest) -> (a, n1 - a, rest) for 0 <= a <= n1.
inline Sequence split_head(const Sequence& seq, const BigInt& a) {
    const Sequence full = materialize(seq, 1);
    const BigInt& head = full.prefix().front();
    if (a < 0 || a > head) throw precondition_error("split_head: a = " + a.str() + " must lie in [0, " + head.str() + "]");
    std::vector<BigInt> prefix;
    prefix.reserve(full.prefix_length() + 1);
    prefix.push_back(a);
    prefix.push_back(head - a);
    prefix.insert(prefix.end(), full.prefix().begin() + 1, full.prefix().end());
    return Sequence(std::move(prefix), full.tail());
}

// ---------------------------------------------------------------------------
// The uncountable family BW(2^0 + 3^{j_0}, 2^1 + 3^{j_1}, ...) with affine j_i.

struct FamilySpec {
    std::uint64_t a = 0;  // j_i = a + b*i
    std::uint64_t b = 1;
    friend auto operator<=>(const FamilySpec&, const FamilySpec&) = default;
};

/// n_i = 2^{i-1} + 3^{a + b(i-1)}, i.e. expsum terms {(1, 2), (3^a, 3^b)}.
inline Sequence corollary_family(const FamilySpec& spec) {
    if (spec.b < 1) throw precondition_error("corollary_family: b must be >= 1 (j_i must increase)");
    return Sequence::exp_sum({}, {ExpTerm{1, 2}, ExpTerm{pow_big(3, spec.a), pow_big(3, spec.b)}});
}

struct PairVerdict {
    std::size_t first;
    std::size_t second;
    EquivalenceVerdict verdict;
};

/// decide_equivalent on every unordered pair, in (first, second) lexicographic order.
inline std::vector<PairVerdict> pairwise_inequivalence_report(const std::vector<FamilySpec>& specs) {
    std::set<FamilySpec> seen;
    for (const auto& s : specs) {
        if (!seen.insert(s).second) {
            throw precondition_error("pairwise_inequivalence_report: duplicate spec (a=" + std::to_string(s.a) + ", b=" + std::to_string(s.b) + ")");
        }
    }
    std::vector<Sequence> seqs;
    seqs.reserve(specs.size());
    for (const auto& s : specs) seqs.push_back(corollary_family(s));
    std::vector<PairVerdict> out;
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        for (std::size_t j = i + 1; j < seqs.size(); ++j) out.push_back({i, j, decide_equivalent(seqs[i], seqs[j])});
    }
    return out;
}

}  // namespace bw
