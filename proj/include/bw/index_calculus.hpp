#pragma once

// Index bookkeeping for nested BW stages.
//
// Every Bing or Whitehead stage sits in its parent torus with geometric
// index 2 and algebraic index 0; indices of deeper nestings follow from the
// product law N(T0, T2) = N(T0, T1) * N(T1, T2). Nothing here looks at
// embeddings: the values come from the stage kinds alone.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "bw/arith.hpp"
#include "bw/error.hpp"
#include "bw/sequence.hpp"

namespace bw {

enum class NodeKind { Root, Bing, Whitehead };

inline const char* to_string(NodeKind k) {
    switch (k) {
        case NodeKind::Root: return "Root";
        case NodeKind::Bing: return "Bing";
        case NodeKind::Whitehead: return "Whitehead";
    }
    return "?";
}

inline NodeKind node_kind(StageKind k) { return k == StageKind::Bing ? NodeKind::Bing : NodeKind::Whitehead; }

/// Per-stage indices of a single construction inside its parent torus.
inline constexpr unsigned stage_geometric_index(StageKind) noexcept { return 2; }
inline constexpr unsigned stage_algebraic_index(StageKind) noexcept { return 0; }
/// Number of tori a construction places in each parent component.
inline constexpr unsigned stage_multiplicity(StageKind k) noexcept { return k == StageKind::Bing ? 2 : 1; }

/// Finite tree of nested solid tori: node 0 is M_0, depth-k nodes are the components of M_k.
class StageTree {
public:
    struct Node {
        NodeKind kind;
        std::size_t depth;
        std::optional<std::size_t> parent;
        std::vector<std::size_t> children;
    };

    StageTree(const Pattern& pattern, std::size_t depth) {
        if (pattern.size() < depth) {
            throw precondition_error("StageTree: pattern has " + std::to_string(pattern.size()) + " entries, depth " + std::to_string(depth) + " requested");
        }
        pattern_.entries.assign(pattern.entries.begin(), pattern.entries.begin() + static_cast<std::ptrdiff_t>(depth));
        nodes_.push_back(Node{NodeKind::Root, 0, std::nullopt, {}});
        level_start_.push_back(0);
        std::size_t level_begin = 0;
        for (std::size_t k = 1; k <= depth; ++k) {
            const StageKind kind = pattern_.entries[k - 1];
            const std::size_t level_end = nodes_.size();
            level_start_.push_back(level_end);
            for (std::size_t leaf = level_begin; leaf < level_end; ++leaf) {
                for (unsigned c = 0; c < stage_multiplicity(kind); ++c) {
                    nodes_[leaf].children.push_back(nodes_.size());
                    nodes_.push_back(Node{node_kind(kind), k, leaf, {}});
                }
            }
            level_begin = level_end;
        }
        level_start_.push_back(nodes_.size());
    }

    static StageTree from_sequence(const Sequence& seq, std::size_t depth) {
        return depth == 0 ? StageTree(Pattern{}, 0) : StageTree(bw::pattern(seq, depth), depth);
    }

    std::size_t depth() const noexcept { return pattern_.size(); }
    const Pattern& pattern() const noexcept { return pattern_; }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    const Node& node(std::size_t id) const { return nodes_.at(id); }
    std::size_t size() const noexcept { return nodes_.size(); }

    /// Node ids at depth k, in construction order.
    std::vector<std::size_t> level(std::size_t k) const {
        if (k > depth()) throw precondition_error("StageTree::level: depth out of range");
        std::vector<std::size_t> ids;
        for (std::size_t i = level_start_[k]; i < level_start_[k + 1]; ++i) ids.push_back(i);
        return ids;
    }
    std::size_t count_at(std::size_t k) const {
        if (k > depth()) throw precondition_error("StageTree::count_at: depth out of range");
        return level_start_[k + 1] - level_start_[k];
    }

private:
    Pattern pattern_;
    std::vector<Node> nodes_;
    std::vector<std::size_t> level_start_;
};

inline void check_depth_order(std::size_t outer, std::size_t inner, const char* who) {
    if (outer > inner) {
        throw precondition_error(std::string(who) + ": outer depth " + std::to_string(outer) + " exceeds inner depth " + std::to_string(inner));
    }
}

/// Geometric index of M_inner in one component of M_outer, by the product law over the stages in between.
inline BigInt geometric_index_between(const StageTree& tree, std::size_t outer_depth, std::size_t inner_depth) {
    check_depth_order(outer_depth, inner_depth, "geometric_index_between");
    if (inner_depth > tree.depth()) {
        throw precondition_error("geometric_index_between: inner depth " + std::to_string(inner_depth) + " beyond tree depth " + std::to_string(tree.depth()));
    }
    BigInt index = 1;
    for (std::size_t k = outer_depth; k < inner_depth; ++k) index *= stage_geometric_index(tree.pattern().entries[k]);
    return index;
}

/// Algebraic index across the same range: multiplicative with every stage contributing 0.
inline std::uint64_t algebraic_index_between(std::size_t outer_depth, std::size_t inner_depth) {
    check_depth_order(outer_depth, inner_depth, "algebraic_index_between");
    return outer_depth == inner_depth ? 1 : 0;
}

/// Number of components of M_stage: 2^(Bing stages among the first `stage`).
inline BigInt component_count(const Sequence& seq, std::size_t stage) {
    if (stage == 0) return 1;
    const Pattern p = pattern(seq, stage);
    std::uint64_t bing = 0;
    for (auto k : p.entries) bing += k == StageKind::Bing ? 1 : 0;
    return pow2(bing);
}

/// Two index-0 tori in a solid torus have even combined geometric index.
/// Returns whether `union_index` is admissible.
inline bool parity_check(std::uint64_t index_a, std::uint64_t index_b, std::uint64_t union_index) {
    if (index_a != 0 || index_b != 0) {
        throw precondition_error("parity_check: both tori must have geometric index 0 (got " + std::to_string(index_a) + ", " +
                                 std::to_string(index_b) + ")");
    }
    return union_index % 2 == 0;
}

// ---------------------------------------------------------------------------
// Boundary-parallel rules

enum class LinkKind { Whitehead, BingPair };

/// Which side of the separating torus a boundary component lies on.
enum class Side { Inside, Outside };

/// An unknotted torus boundary separating the boundaries of a construction.
struct LinkSeparation {
    LinkKind link_kind;
    Side inner_first;                  // side of dW (Whitehead) or dF1 (Bing)
    std::optional<Side> inner_second;  // side of dF2; Bing only
    Side outer;                        // side of dT
};

/// A solid torus nested in another with geometric index 1.
struct IndexOneNesting {};

using SeparationConfig = std::variant<LinkSeparation, IndexOneNesting>;

struct ParallelToOuter {
    friend bool operator==(const ParallelToOuter&, const ParallelToOuter&) = default;
};
struct ParallelToInner {
    int which;  // 1 or 2 for F1 / F2; 1 for W
    friend bool operator==(const ParallelToInner&, const ParallelToInner&) = default;
};
struct EitherInnerOrOuter {
    friend bool operator==(const EitherInnerOrOuter&, const EitherInnerOrOuter&) = default;
};

using ParallelClass = std::variant<ParallelToOuter, ParallelToInner, EitherInnerOrOuter>;

inline std::string to_string(const ParallelClass& c) {
    if (std::holds_alternative<ParallelToOuter>(c)) return "ParallelToOuter";
    if (const auto* in = std::get_if<ParallelToInner>(&c)) return "ParallelToInner(F" + std::to_string(in->which) + ")";
    return "EitherInnerOrOuter";
}

/// What the separating torus must be parallel to.
///  - Whitehead, dW and dT on opposite sides: parallel to dW or to dT.
///  - Bing pair, exactly one boundary alone on its side: parallel to that boundary.
///    (dF1, dF2 together against dT gives ParallelToOuter.)
///  - Geometric index 1: the two boundaries are parallel.
inline ParallelClass parallel_class(const SeparationConfig& config) {
    if (std::holds_alternative<IndexOneNesting>(config)) return ParallelToOuter{};
    const auto& s = std::get<LinkSeparation>(config);
    if (s.link_kind == LinkKind::Whitehead) {
        if (s.inner_second) throw precondition_error("parallel_class: a Whitehead link has a single inner boundary");
        if (s.inner_first == s.outer) throw precondition_error("parallel_class: torus does not separate dW from dT");
        return EitherInnerOrOuter{};
    }
    if (!s.inner_second) throw precondition_error("parallel_class: a Bing pair needs the side of both dF1 and dF2");
    const Side f1 = s.inner_first, f2 = *s.inner_second, t = s.outer;
    if (f1 == f2 && f2 == t) throw precondition_error("parallel_class: torus separates none of dF1, dF2, dT");
    if (f1 == f2) return ParallelToOuter{};
    if (f2 == t) return ParallelToInner{1};
    return ParallelToInner{2};
}

// ---------------------------------------------------------------------------
// DOT export

inline std::string to_dot(const StageTree& tree) {
    std::ostringstream out;
    out << "digraph stages {\n";
    for (std::size_t i = 0; i < tree.size(); ++i) {
        const auto& n = tree.node(i);
        out << "  n" << i << " [label=\"" << to_string(n.kind) << " d" << n.depth << "\"];\n";
    }
    for (std::size_t i = 0; i < tree.size(); ++i) {
        for (auto c : tree.node(i).children) out << "  n" << i << " -> n" << c << ";\n";
    }
    out << "}\n";
    return out.str();
}

inline void export_dot(const StageTree& tree, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << to_dot(tree);
    if (!out) throw io_error("write failed: " + path);
}

}  // namespace bw
