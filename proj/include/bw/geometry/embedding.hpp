#pragma once

// Nested tube realization of the first stages of a defining sequence.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "bw/geometry/linking.hpp"
#include "bw/geometry/reference_links.hpp"
#include "bw/geometry/tube.hpp"
#include "bw/index_calculus.hpp"

namespace bw::geometry {

inline constexpr std::size_t kMinReferenceSamples = 64;
inline constexpr std::size_t kMaxEmbedDepth = 8;

struct EmbedOptions {
    std::size_t samples = 64;  ///< minimum core vertices per torus
    double root_major = 1.0;
    double root_minor = 0.35;
    double bing_ratio = 0.22;
    double whitehead_ratio = 0.30;
    LinkShape bing_shape = kBingShape;
    LinkShape whitehead_shape = kWhiteheadShape;
    double max_step = 0.1;  ///< longest core segment, in radii of the containing tube
    std::size_t max_core_vertices = 250000;
    double min_radius = 1e-9;
    bool validate = true;
};

/// StageTree whose nodes each carry a solid torus in space; node ids agree with the tree.
class EmbeddedStageTree {
public:
    EmbeddedStageTree(StageTree tree, std::vector<TubeEmbedding> tubes) : tree_(std::move(tree)), tubes_(std::move(tubes)) {
        if (tubes_.size() != tree_.size()) throw precondition_error("EmbeddedStageTree: one tube per node");
    }

    const StageTree& tree() const noexcept { return tree_; }
    std::size_t depth() const noexcept { return tree_.depth(); }
    std::size_t size() const noexcept { return tubes_.size(); }
    const TubeEmbedding& tube(std::size_t id) const { return tubes_.at(id); }
    const std::vector<TubeEmbedding>& tubes() const noexcept { return tubes_; }

private:
    StageTree tree_;
    std::vector<TubeEmbedding> tubes_;
};

namespace detail {

inline std::size_t vertex_budget(double local_length, const EmbedOptions& opt, std::size_t depth) {
    const double need = std::ceil(local_length / opt.max_step);
    if (!(need <= static_cast<double>(opt.max_core_vertices))) {
        throw degeneracy_error(static_cast<int>(depth), "core needs " + std::to_string(static_cast<long long>(need)) + " vertices, limit is " +
                                                            std::to_string(opt.max_core_vertices));
    }
    return std::max(opt.samples, static_cast<std::size_t>(need));
}

inline void check_simple(const TubeEmbedding& t, std::size_t depth) {
    const double r = t.radius();
    if (min_turning_radius(t.core(), r) <= r) throw degeneracy_error(static_cast<int>(depth), "core bends tighter than its tube radius");
    if (min_self_distance(t.core(), std::numbers::pi * r, 2.0 * r) < 2.0 * r) {
        throw degeneracy_error(static_cast<int>(depth), "tube meets itself");
    }
}

inline void check_nested(const TubeEmbedding& child, const TubeEmbedding& parent, std::size_t depth) {
    const PolyCurve& pc = parent.core();
    const SegmentGrid grid(pc, std::max(parent.radius(), mean_segment_length(pc)));
    for (const Vec3& x : child.core().vertices()) {
        double d = std::numeric_limits<double>::infinity();
        grid.query(x, x, parent.radius(), [&](std::size_t j) { d = std::min(d, point_segment_distance(x, pc.segment_start(j), pc.segment_end(j))); });
        if (!(d + child.radius() < parent.radius())) throw degeneracy_error(static_cast<int>(depth), "child tube leaves its parent");
    }
}

inline void check_disjoint(const TubeEmbedding& a, const TubeEmbedding& b, std::size_t depth) {
    const double gap = a.radius() + b.radius();
    if (min_distance(a.core(), b.core(), gap) < gap) throw degeneracy_error(static_cast<int>(depth), "sibling tubes meet");
}

inline TubeEmbedding child_tube(const TubeEmbedding& parent, const Stadium& shape, double ratio, const EmbedOptions& opt, std::size_t depth) {
    const double radius = parent.radius() * ratio;
    if (!(radius >= opt.min_radius)) {
        throw degeneracy_error(static_cast<int>(depth), "tube radius " + std::to_string(radius) + " is below " + std::to_string(opt.min_radius));
    }
    const std::size_t n = vertex_budget(shape.length(), opt, depth);
    return TubeEmbedding(place_in(parent, shape.sample(n)), radius);
}

inline TubeEmbedding root_tube(const EmbedOptions& opt) {
    if (!(opt.root_minor > 0.0 && opt.root_minor < opt.root_major)) throw precondition_error("root tube radius must lie in (0, major radius)");
    const double local_length = 2.0 * std::numbers::pi * opt.root_major / opt.root_minor;
    return TubeEmbedding(round_circle(opt.root_major, vertex_budget(local_length, opt, 0)), opt.root_minor);
}

/// Children of one tube for a given stage kind.
inline std::vector<TubeEmbedding> grow(const TubeEmbedding& parent, StageKind kind, const EmbedOptions& opt, std::size_t depth) {
    const double period = parent.local_period();
    std::vector<TubeEmbedding> out;
    if (kind == StageKind::Bing) {
        const auto [a, b] = bing_stadiums(period, opt.bing_shape);
        out.push_back(child_tube(parent, a, opt.bing_ratio, opt, depth));
        out.push_back(child_tube(parent, b, opt.bing_ratio, opt, depth));
    } else {
        out.push_back(child_tube(parent, whitehead_stadium(period, opt.whitehead_shape), opt.whitehead_ratio, opt, depth));
    }
    if (opt.validate) {
        for (const auto& c : out) {
            check_simple(c, depth);
            check_nested(c, parent, depth);
        }
        if (out.size() == 2) check_disjoint(out[0], out[1], depth);
    }
    return out;
}

}  // namespace detail

/// Realizes the first `depth` stages of `seq`. Each torus is the image of a reference
/// Bing or Whitehead curve under its parent's tube map.
inline EmbeddedStageTree embed_stages(const Sequence& seq, std::size_t depth, const EmbedOptions& opt = {}) {
    if (depth < 1 || depth > kMaxEmbedDepth) throw precondition_error("embed_stages: depth must be in [1, 8]");
    if (opt.samples < kMinCurveVertices) throw precondition_error("embed_stages: samples must be at least 8");
    StageTree tree = StageTree::from_sequence(seq, depth);
    std::vector<TubeEmbedding> tubes(tree.size());
    tubes[0] = detail::root_tube(opt);
    for (std::size_t id = 0; id < tree.size(); ++id) {
        const auto& node = tree.node(id);
        if (node.children.empty()) continue;
        const StageKind kind = tree.pattern().entries[node.depth];
        auto kids = detail::grow(tubes[id], kind, opt, node.depth + 1);
        if (kids.size() != node.children.size()) throw precondition_error("embed_stages: tree shape disagrees with stage kind");
        for (std::size_t k = 0; k < kids.size(); ++k) tubes[node.children[k]] = std::move(kids[k]);
    }
    return EmbeddedStageTree(std::move(tree), std::move(tubes));
}

/// The torus all reference curves live in: major radius 1 in the xy-plane.
inline TubeEmbedding reference_torus(const EmbedOptions& opt = {}) { return detail::root_tube(opt); }

inline void require_reference_samples(std::size_t samples) {
    if (samples < kMinReferenceSamples) throw precondition_error("reference curves need at least 64 samples, got " + std::to_string(samples));
}

/// Bing pair cores in the reference torus.
inline std::pair<PolyCurve, PolyCurve> bing_pair_cores(std::size_t samples) {
    require_reference_samples(samples);
    EmbedOptions opt;
    opt.samples = samples;
    auto kids = detail::grow(reference_torus(opt), StageKind::Bing, opt, 1);
    return {kids[0].core(), kids[1].core()};
}

/// Whitehead core in the reference torus.
inline PolyCurve whitehead_core(std::size_t samples) {
    require_reference_samples(samples);
    EmbedOptions opt;
    opt.samples = samples;
    return detail::grow(reference_torus(opt), StageKind::Whitehead, opt, 1).front().core();
}

}  // namespace bw::geometry
