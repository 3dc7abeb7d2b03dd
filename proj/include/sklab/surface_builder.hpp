#pragma once

// Realize a pants decomposition with Fenchel-Nielsen data as a concrete
// triangulated hyperbolic surface. Each pants is the double of a
// right-angled hexagon across its three seams; hexagons are fan
// triangulated, midpoint refined to the target resolution, and cuff
// circles are glued with the twist rounded to the vertex spacing.

#include "sklab/mesh.hpp"
#include "sklab/pants_graph.hpp"

namespace sklab {

struct BuildResult {
    TriangleMesh mesh;
    int depth = 0;                    // refinement rounds applied to each hexagon
    std::vector<double> twist_errors; // |twist - rounded twist| per gluing, < resolution/2
};

BuildResult build_surface(const PantsGraph& graph, double resolution);

// Thin wrapper returning only the mesh.
TriangleMesh build_mesh(const PantsGraph& graph, double resolution);

// Geodesic disk of radius R in the hyperbolic plane, meshed in polar
// rings; boundary edges are chords of the radius-R circle.
TriangleMesh build_hyperbolic_disk(double radius, double resolution);

// Flat disk of radius R (curvature 0), same layout.
TriangleMesh build_flat_disk(double radius, double resolution);

TriangleMesh build_from_spec(const SurfaceSpec& spec);

} // namespace sklab
