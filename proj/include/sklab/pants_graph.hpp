#pragma once

// Combinatorial pants decompositions with Fenchel-Nielsen data: cuff
// lengths and twists per interior gluing, target lengths per boundary
// slot. Surfaces are encoded as pants nodes with 3 cuff slots each.

#include <array>
#include <string>
#include <vector>

namespace sklab {

struct Gluing {
    int p, s; // pants, slot of one side
    int q, t; // pants, slot of the other side
    double length;
    double twist;
};

struct BoundarySlot {
    int p, s;
    double length;
};

struct PantsGraph {
    int n_pants = 0;
    std::vector<Gluing> gluings;
    std::vector<BoundarySlot> boundaries; // order fixes boundary-component labels
};

struct SurfaceTopology {
    int genus = 0;
    int n_boundary = 0;
};

// Checks slot usage, connectivity and Euler consistency; returns (g, n).
SurfaceTopology validate_graph(const PantsGraph& graph);

// Cuff lengths of one pants in slot order, mixing gluing and boundary data.
std::array<double, 3> pants_cuffs(const PantsGraph& graph, int pants);

// JSON text format: {"pants": P, "gluings": [[[p,s],[q,t],len,twist],...],
// "boundaries": [[p,s,len],...], "resolution": r, "type": "pants"}.
// Types "hyperbolic_disk" and "flat_disk" instead carry {"radius": R}.
struct SurfaceSpec {
    enum class Kind { Pants, HyperbolicDisk, FlatDisk } kind = Kind::Pants;
    PantsGraph graph;
    double radius = 1.0;
    double resolution = 0.1;
};

SurfaceSpec parse_surface_spec(const std::string& text);
SurfaceSpec load_surface_spec(const std::string& path);

} // namespace sklab
