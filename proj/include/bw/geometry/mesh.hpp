#pragma once

// Swept-tube triangle meshes in Wavefront OBJ form.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>

#include "bw/geometry/embedding.hpp"

namespace bw::geometry {

struct MeshOptions {
    std::size_t ring_segments = 16;  ///< vertices around each cross-section circle
    bool include_root = true;        ///< emit the outermost torus as a shell group
};

inline std::size_t mesh_vertex_count(const EmbeddedStageTree& t, const MeshOptions& opt = {}) {
    std::size_t n = 0;
    for (std::size_t id = opt.include_root ? 0 : 1; id < t.size(); ++id) n += t.tube(id).core().size() * opt.ring_segments;
    return n;
}

/// One "g" group per torus: a ring of vertices around every core vertex, consecutive rings
/// joined by quads, each quad split along a diagonal.
inline std::string to_obj(const EmbeddedStageTree& t, const MeshOptions& opt = {}) {
    if (opt.ring_segments < 3) throw precondition_error("to_obj: ring_segments must be at least 3");
    std::string out = "# nested solid tori\n";
    char line[128];
    std::size_t base = 1;
    for (std::size_t id = opt.include_root ? 0 : 1; id < t.size(); ++id) {
        const TubeEmbedding& tube = t.tube(id);
        const auto& node = t.tree().node(id);
        out += "g torus_" + std::to_string(id) + "_" + to_string(node.kind) + "_d" + std::to_string(node.depth) + "\n";
        const std::size_t n = tube.core().size(), m = opt.ring_segments;
        for (std::size_t i = 0; i < n; ++i) {
            const Frame& f = tube.frames()[i];
            for (std::size_t k = 0; k < m; ++k) {
                const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
                const Vec3 p = tube.core()[i] + tube.radius() * (std::cos(phi) * f.n1 + std::sin(phi) * f.n2);
                std::snprintf(line, sizeof line, "v %.6f %.6f %.6f\n", p.x(), p.y(), p.z());
                out += line;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < m; ++k) {
                const std::size_t a = base + i * m + k, b = base + i * m + (k + 1) % m;
                const std::size_t c = base + ((i + 1) % n) * m + (k + 1) % m, d = base + ((i + 1) % n) * m + k;
                std::snprintf(line, sizeof line, "f %zu %zu %zu\nf %zu %zu %zu\n", a, b, c, a, c, d);
                out += line;
            }
        }
        base += n * m;
    }
    return out;
}

inline void export_obj(const EmbeddedStageTree& t, const std::string& path, const MeshOptions& opt = {}) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << to_obj(t, opt);
    if (!out) throw io_error("write failed: " + path);
}

inline void export_dot(const EmbeddedStageTree& t, const std::string& path) { bw::export_dot(t.tree(), path); }

}  // namespace bw::geometry
