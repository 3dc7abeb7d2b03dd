#pragma once

// Intrinsic triangulated surface: faces with edge lengths plus per-face
// chart coordinates (hyperboloid or planar) that exist only to drive
// midpoint refinement. The FEM consumes lengths, never coordinates.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "sklab/hyperboloid.hpp"

namespace sklab {

using EdgeKey = std::uint64_t;

inline EdgeKey edge_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

enum class ChartKind { Hyperbolic, Euclidean };

struct TriangleMesh {
    int n_vertices = 0;
    std::vector<std::array<int, 3>> triangles;
    std::map<EdgeKey, double> edge_length;
    std::map<EdgeKey, int> boundary_edges; // edge -> boundary component index

    // refinement charts; empty corners marks a mesh that cannot refine
    ChartKind chart = ChartKind::Hyperbolic;
    std::vector<std::array<hyp::Vec3, 3>> corners;

    int genus = 0;
    int n_boundary = 0;
    std::vector<double> boundary_lengths; // targets in component order

    bool has_charts() const { return corners.size() == triangles.size(); }
    double length(int u, int v) const;
};

// Structural checks: positive lengths, strict triangle inequality per
// face, every edge on 1 or 2 faces, boundary edges exactly the 1-face
// ones and consistently labeled. Throws std::runtime_error on defects.
void check_mesh(const TriangleMesh& mesh);

// Sum of flat-triangle areas from the intrinsic edge lengths.
double mesh_area(const TriangleMesh& mesh);

// Per-component sums of boundary edge lengths.
std::vector<double> mesh_boundary_lengths(const TriangleMesh& mesh);

double max_edge_length(const TriangleMesh& mesh);

// One round of midpoint subdivision with chart midpoints: face count x4,
// sub-edges of a parent edge carry exactly half its length. New vertex
// ids are assigned in sorted parent-edge order.
TriangleMesh refine_mesh(const TriangleMesh& mesh);

// Text export/import; charts are not serialized, so a read-back mesh
// cannot be refined further.
void write_mesh(std::ostream& out, const TriangleMesh& mesh);
TriangleMesh read_mesh(std::istream& in);

} // namespace sklab
