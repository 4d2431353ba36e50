#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "bw/geometry/mesh.hpp"

namespace bw::geometry {
namespace {

PolyCurve circle(const Vec3& centre, const Vec3& u, const Vec3& v, double radius, std::size_t n) {
    std::vector<Vec3> pts;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        pts.push_back(centre + radius * (std::cos(t) * u + std::sin(t) * v));
    }
    return PolyCurve(std::move(pts));
}

PolyCurve hopf_a(std::size_t n = 64) { return circle(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), 1.0, n); }
PolyCurve hopf_b(std::size_t n = 64) { return circle(Vec3(1, 0, 0), Vec3::UnitX(), Vec3::UnitZ(), 1.0, n); }

/// (p, q) torus knot on the standard torus (R, r); used only to get pairs with large linking.
PolyCurve torus_curve(int p, int q, double big, double small, double phase, std::size_t n) {
    std::vector<Vec3> pts;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        const double rho = big + small * std::cos(q * t + phase);
        pts.emplace_back(rho * std::cos(p * t), rho * std::sin(p * t), small * std::sin(q * t + phase));
    }
    return PolyCurve(std::move(pts));
}

// Crossings of the half plane {y = 0, x > 0}: the meridional disk of the round reference torus at angle 0.
std::size_t half_plane_crossings(const PolyCurve& c) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Vec3 p = c.segment_start(i), q = c.segment_end(i);
        if ((p.y() < 0.0) == (q.y() < 0.0)) continue;
        const double t = p.y() / (p.y() - q.y());
        if (p.x() + t * (q.x() - p.x()) > 0.0) ++count;
    }
    return count;
}

double distance_to_unit_circle(const Vec3& p) { return std::hypot(std::hypot(p.x(), p.y()) - 1.0, p.z()); }

Eigen::Isometry3d random_motion(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::Quaterniond q(g(rng), g(rng), g(rng), g(rng));
    q.normalize();
    Eigen::Isometry3d m = Eigen::Isometry3d::Identity();
    m.rotate(q);
    m.pretranslate(Vec3(g(rng), g(rng), g(rng)) * 3.0);
    return m;
}

TEST(PolyCurve, Invariants) {
    EXPECT_THROW(PolyCurve(std::vector<Vec3>(7, Vec3::Zero())), precondition_error);
    std::vector<Vec3> v;
    for (int i = 0; i < 8; ++i) v.emplace_back(i, i * i, 0);
    v[3] = v[2];
    EXPECT_THROW(PolyCurve{v}, precondition_error);
    const auto c = hopf_a(100);
    EXPECT_NEAR(c.length(), 200.0 * std::sin(std::numbers::pi / 100.0), 1e-12);
    EXPECT_EQ(c.refined().size(), 200u);
}

TEST(PolyCurve, SegmentDistance) {
    EXPECT_NEAR(segment_distance(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0.5, 1, -1), Vec3(0.5, 1, 1)), 1.0, 1e-15);
    EXPECT_NEAR(segment_distance(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(2, 0, 0), Vec3(3, 0, 0)), 1.0, 1e-15);
    EXPECT_NEAR(segment_distance(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 2, 0), Vec3(1, 2, 0)), 2.0, 1e-15);
    // grid-accelerated query agrees with the exhaustive one
    const auto a = torus_curve(2, 3, 1.0, 0.3, 0.0, 300), b = torus_curve(2, 3, 1.0, 0.3, 1.0, 300);
    const double full = min_distance(a, b);
    EXPECT_DOUBLE_EQ(min_distance(a, b, 2.0 * full), full);
}

TEST(Linking, Hopf) {
    EXPECT_EQ(std::abs(linking_number(hopf_a(), hopf_b())), 1);
    EXPECT_NEAR(std::abs(exact_linking_sum(hopf_a(), hopf_b())), 1.0, 1e-9);
}

TEST(Linking, SplitCircles) {
    const auto a = circle(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), 1.0, 64);
    const auto b = circle(Vec3(3, 0, 0), Vec3::UnitX(), Vec3::UnitY(), 1.0, 64);
    EXPECT_EQ(linking_number(a, b), 0);
    const auto inner = circle(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), 0.5, 64);
    EXPECT_EQ(linking_number(a, inner), 0);
    EXPECT_NEAR(exact_linking_sum(a, inner), 0.0, 1e-12);
}

TEST(Linking, MidpointSumAgreesWithExactSolidAngles) {
    // the core circle links a (p, q) torus curve q times
    const auto core = circle(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), 1.0, 200);
    for (int q : {1, 2, 3, 5}) {
        const auto t = torus_curve(1, q, 1.0, 0.4, 0.0, 400);
        const double exact = exact_linking_sum(core, t);
        EXPECT_NEAR(std::abs(exact), q, 1e-8) << q;
        EXPECT_EQ(linking_number(core, t), static_cast<int>(std::lround(exact))) << q;
    }
}

TEST(Linking, SymmetricAndRigid) {
    std::mt19937_64 rng(41);
    const auto core = circle(Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), 1.0, 120);
    const auto t = torus_curve(2, 3, 1.0, 0.4, 0.0, 300);
    const int lk = linking_number(core, t);
    EXPECT_EQ(std::abs(lk), 3);
    EXPECT_EQ(linking_number(t, core), lk);
    for (int trial = 0; trial < 10; ++trial) {
        const auto m = random_motion(rng);
        auto f = [&](const Vec3& p) { return Vec3(m * p); };
        EXPECT_EQ(linking_number(core.transformed(f), t.transformed(f)), lk);
    }
}

TEST(Linking, RefinementShrinksResidual) {
    const auto coarse_a = hopf_a(16), coarse_b = hopf_b(16);
    const auto r0 = linking_number_detailed(coarse_a, coarse_b);
    const auto r1 = linking_number_detailed(coarse_a.refined(), coarse_b.refined());
    EXPECT_EQ(r0.value, r1.value);
    EXPECT_LT(std::abs(r1.raw - r1.value), std::abs(r0.raw - r0.value));
}

TEST(Linking, TooClose) {
    const auto a = hopf_a();
    auto shifted = a.transformed([](const Vec3& p) { return Vec3(p + Vec3(0, 0, 1e-12)); });
    EXPECT_THROW(linking_number(a, shifted), precondition_error);
}

TEST(Frames, OrthonormalAndNormal) {
    const auto c = torus_curve(2, 3, 1.0, 0.4, 0.0, 400);
    const auto t = vertex_tangents(c);
    const auto f = rotation_minimizing_frames(c);
    for (std::size_t i = 0; i < c.size(); ++i) {
        EXPECT_NEAR(f[i].n1.norm(), 1.0, 1e-12);
        EXPECT_NEAR(f[i].n2.norm(), 1.0, 1e-12);
        EXPECT_NEAR(f[i].n1.dot(f[i].n2), 0.0, 1e-12);
        EXPECT_NEAR(f[i].n1.dot(t[i]), 0.0, 1e-12);
        // frame turns little between neighbours once the holonomy is spread out
        EXPECT_GT(f[i].n1.dot(f[(i + 1) % c.size()].n1), 0.9);
    }
    // on a planar circle the transported frame has no holonomy: one axis stays vertical
    const auto ring = rotation_minimizing_frames(round_circle(1.0, 64));
    for (const auto& fr : ring) EXPECT_NEAR(std::abs(fr.n1.z()) + std::abs(fr.n2.z()), 1.0, 1e-9);
}

TEST(ReferenceCurves, SampleCountGuard) {
    EXPECT_THROW(bing_pair_cores(63), precondition_error);
    EXPECT_THROW(whitehead_core(10), precondition_error);
}

TEST(ReferenceCurves, BingPairLinkingContract) {
    const auto [a, b] = bing_pair_cores(256);
    const auto torus = reference_torus();
    const auto meridian = torus.meridian(0, 128);
    const auto lab = linking_number_detailed(a, b);
    EXPECT_EQ(lab.value, 0);
    EXPECT_LT(std::abs(lab.raw), 0.25);
    EXPECT_EQ(linking_number(a, meridian), 0);
    EXPECT_EQ(linking_number(b, meridian), 0);
    // the reference core itself does link the meridian
    EXPECT_EQ(std::abs(linking_number(torus.core(), torus.meridian(0, 128, 1.5))), 1);
    EXPECT_EQ(half_plane_crossings(a) + half_plane_crossings(b), 2u);
    EXPECT_NEAR(exact_linking_sum(a, b), 0.0, 1e-6);
    for (const auto* c : {&a, &b}) {
        for (const auto& p : c->vertices()) ASSERT_LT(distance_to_unit_circle(p), 0.35);
    }
}

TEST(ReferenceCurves, BingPairIsClasped) {
    // Each component bounds a flat band; the other one pierces it twice, in opposite directions.
    const auto [a, b] = bing_pair_cores(256);
    const auto torus = reference_torus();
    std::size_t least = 100, most = 0;
    for (std::size_t st = 0; st < torus.core().size(); ++st) {
        const std::size_t n = torus.disk_crossings(st, a) + torus.disk_crossings(st, b);
        EXPECT_EQ(n % 2, 0u) << st;
        least = std::min(least, n);
        most = std::max(most, n);
    }
    EXPECT_EQ(least, 2u);
    EXPECT_EQ(most, 4u);
    EXPECT_GT(min_distance(a, b), 2.0 * 0.22 * 0.35);
}

TEST(ReferenceCurves, WhiteheadContract) {
    const auto w = whitehead_core(256);
    const auto torus = reference_torus();
    EXPECT_EQ(linking_number(w, torus.meridian(0, 128)), 0);
    EXPECT_EQ(linking_number(w, torus.meridian(torus.core().size() / 2, 128)), 0);
    EXPECT_EQ(half_plane_crossings(w), 2u);
    std::size_t least = 100;
    for (std::size_t st = 0; st < torus.core().size(); ++st) least = std::min(least, torus.disk_crossings(st, w));
    EXPECT_EQ(least, 2u);
    for (const auto& p : w.vertices()) ASSERT_LT(distance_to_unit_circle(p), 0.35);
    EXPECT_GT(min_self_distance(w, std::numbers::pi * 0.3 * 0.35, 1.0), 2.0 * 0.3 * 0.35);
}

TEST(ReferenceCurves, InvariantUnderRefinementAndMotion) {
    std::mt19937_64 rng(77);
    const auto [a, b] = bing_pair_cores(128);
    const auto m = reference_torus().meridian(0, 64);
    EXPECT_EQ(linking_number(a.refined(), b.refined()), 0);
    const auto mo = random_motion(rng);
    auto f = [&](const Vec3& p) { return Vec3(mo * p); };
    EXPECT_EQ(linking_number(a.transformed(f), m.transformed(f)), 0);
    EXPECT_EQ(linking_number(b.transformed(f), a.transformed(f)), 0);
}

Sequence ones() { return Sequence::periodic({}, {1}); }
Sequence two_then_ones() { return Sequence::periodic({2}, {1}); }

TEST(Embedding, NodeCounts) {
    EmbedOptions opt;
    EXPECT_EQ(embed_stages(ones(), 1, opt).tree().count_at(1), 2u);
    EXPECT_EQ(embed_stages(ones(), 2, opt).tree().count_at(2), 2u);
    EXPECT_EQ(embed_stages(two_then_ones(), 2, opt).tree().count_at(2), 4u);
    EXPECT_THROW(embed_stages(ones(), 0, opt), precondition_error);
    EXPECT_THROW(embed_stages(ones(), 9, opt), precondition_error);
}

TEST(Embedding, CountsMatchComponentCount) {
    for (const auto& seq : {ones(), two_then_ones(), Sequence::periodic({0}, {2})}) {
        const auto t = embed_stages(seq, 3);
        for (std::size_t k = 0; k <= 3; ++k) EXPECT_EQ(BigInt(t.tree().count_at(k)), component_count(seq, k)) << k;
    }
}

// Borromean contract and index-2 crossings at every stage of a depth-3 tree.
TEST(Embedding, StageLinkContracts) {
    for (const auto& seq : {two_then_ones(), Sequence::periodic({0}, {2})}) {
        const auto t = embed_stages(seq, 3);
        for (std::size_t id = 0; id < t.size(); ++id) {
            const auto& node = t.tree().node(id);
            if (node.children.empty()) continue;
            const TubeEmbedding& parent = t.tube(id);
            const std::size_t station = parent.core().size() * 7 / 8;
            const PolyCurve meridian = parent.meridian(station, 128);
            std::size_t crossings = 0;
            for (auto c : node.children) {
                EXPECT_EQ(linking_number(t.tube(c).core(), meridian), 0) << id;
                crossings += parent.disk_crossings(station, t.tube(c).core());
            }
            if (node.children.size() == 2) {
                EXPECT_EQ(linking_number(t.tube(node.children[0]).core(), t.tube(node.children[1]).core()), 0) << id;
            }
            EXPECT_EQ(crossings, 2u) << id;
        }
    }
}

TEST(Embedding, RadiiFollowSchedule) {
    const auto t = embed_stages(Sequence::periodic({1}, {1}), 3);
    const std::string kinds = "BWB";
    for (std::size_t id = 1; id < t.size(); ++id) {
        const auto& node = t.tree().node(id);
        const double ratio = kinds[node.depth - 1] == 'B' ? 0.22 : 0.30;
        EXPECT_NEAR(t.tube(id).radius(), ratio * t.tube(*node.parent).radius(), 1e-15);
    }
}

TEST(Embedding, DegeneracyNamesDepth) {
    EmbedOptions opt;
    opt.max_core_vertices = 3000;
    try {
        embed_stages(ones(), 4, opt);
        FAIL() << "expected a degeneracy error";
    } catch (const degeneracy_error& e) {
        EXPECT_GE(e.depth(), 2);
        EXPECT_NE(std::string(e.what()).find("depth " + std::to_string(e.depth())), std::string::npos);
    }
    EmbedOptions tiny;
    tiny.min_radius = 0.05;
    try {
        embed_stages(ones(), 3, tiny);
        FAIL() << "expected a degeneracy error";
    } catch (const degeneracy_error& e) {
        EXPECT_EQ(e.depth(), 2);  // 0.35 * 0.22 * 0.30 < 0.05 at the second stage
    }
}

TEST(Embedding, OverlargeRatioIsRejected) {
    EmbedOptions opt;
    opt.bing_ratio = 0.5;
    EXPECT_THROW(embed_stages(ones(), 1, opt), degeneracy_error);
}

std::size_t count_lines(const std::string& text, const std::string& prefix) {
    std::istringstream in(text);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) n += line.rfind(prefix, 0) == 0;
    return n;
}

TEST(Mesh, ObjCounts) {
    const auto t = embed_stages(ones(), 1);
    MeshOptions opt;
    const std::string obj = to_obj(t, opt);
    EXPECT_EQ(count_lines(obj, "g "), 3u);
    std::size_t expected_vertices = 0;
    for (const auto& tube : t.tubes()) expected_vertices += tube.core().size() * opt.ring_segments;
    EXPECT_EQ(count_lines(obj, "v "), expected_vertices);
    EXPECT_EQ(count_lines(obj, "f "), 2 * expected_vertices);
    EXPECT_EQ(mesh_vertex_count(t, opt), expected_vertices);
    opt.include_root = false;
    EXPECT_EQ(count_lines(to_obj(t, opt), "g "), 2u);
    EXPECT_EQ(obj, to_obj(embed_stages(ones(), 1)));
}

TEST(Mesh, FacesReferenceValidVertices) {
    const auto t = embed_stages(Sequence::periodic({0}, {1}), 2);
    MeshOptions opt;
    opt.ring_segments = 5;
    const std::string obj = to_obj(t, opt);
    const std::size_t nv = count_lines(obj, "v ");
    std::istringstream in(obj);
    std::size_t lo = nv, hi = 0;
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("f ", 0) != 0) continue;
        std::istringstream f(line.substr(2));
        for (std::size_t x; f >> x;) lo = std::min(lo, x), hi = std::max(hi, x);
    }
    EXPECT_EQ(lo, 1u);
    EXPECT_EQ(hi, nv);
}

TEST(Mesh, DotNodeCount) {
    const auto t = embed_stages(two_then_ones(), 2);
    const std::string dot = to_dot(t.tree());
    EXPECT_EQ(count_lines(dot, "  n") - (t.size() - 1), t.size());
}

}  // namespace
}  // namespace bw::geometry
