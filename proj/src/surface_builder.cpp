#include "sklab/surface_builder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sklab/hyp_trig.hpp"

namespace sklab {

namespace {

constexpr int kMaxDepth = 10;

// Hexagon fan mesh with each of the 6 sides labeled as its own
// boundary component, refined `depth` times in the hyperboloid chart.
TriangleMesh hexagon_template(const Hexagon& hex, int depth) {
    const auto verts = realize_hexagon(hex);
    TriangleMesh m;
    m.chart = ChartKind::Hyperbolic;
    m.n_vertices = 6;
    m.n_boundary = 6;
    for (int f = 0; f < 4; ++f) {
        m.triangles.push_back({0, f + 1, f + 2});
        m.corners.push_back({verts[0], verts[f + 1], verts[f + 2]});
    }
    for (int s = 0; s < 6; ++s) {
        const int u = s, v = (s + 1) % 6;
        m.edge_length[edge_key(u, v)] = hyp::dist(verts[u], verts[v]);
        m.boundary_edges[edge_key(u, v)] = s;
    }
    for (int d = 2; d <= 4; ++d) m.edge_length[edge_key(0, d)] = hyp::dist(verts[0], verts[d]);
    for (int r = 0; r < depth; ++r) m = refine_mesh(m);
    return m;
}

// Vertex chain of hexagon side s from corner s to corner s+1.
std::vector<int> side_chain(const TriangleMesh& hex_mesh, int s) {
    std::map<int, std::vector<int>> adj;
    for (const auto& [e, comp] : hex_mesh.boundary_edges) {
        if (comp != s) continue;
        const int u = (int)(e >> 32), v = (int)(e & 0xffffffffu);
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<int> chain{s};
    int prev = -1;
    while (true) {
        const auto& nb = adj.at(chain.back());
        int next = -1;
        for (int cand : nb)
            if (cand != prev) next = cand;
        if (next == -1) throw std::logic_error("hexagon side chain broken");
        prev = chain.back();
        chain.push_back(next);
        if (next == (s + 1) % 6) break;
    }
    return chain;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a > b) std::swap(a, b);
        parent[b] = a; // smaller id wins, keeps compaction deterministic
    }
};

} // namespace

BuildResult build_surface(const PantsGraph& graph, double resolution) {
    const auto topo = validate_graph(graph);
    if (!(resolution > 0)) throw std::invalid_argument("build_surface: resolution must be positive");

    double min_cuff = std::numeric_limits<double>::infinity();
    std::vector<Hexagon> hexagons;
    for (int p = 0; p < graph.n_pants; ++p) {
        const auto cuffs = pants_cuffs(graph, p);
        min_cuff = std::min({min_cuff, cuffs[0], cuffs[1], cuffs[2]});
        hexagons.push_back(hexagon_from_cuffs(cuffs[0], cuffs[1], cuffs[2]));
    }
    if (!(resolution < min_cuff / 4))
        throw std::invalid_argument("build_surface: resolution must be below min cuff length / 4");

    // shared refinement depth: midpoint subdivision halves every edge bound
    double max_edge = 0;
    for (const auto& hex : hexagons) {
        const auto m = hexagon_template(hex, 0);
        max_edge = std::max(max_edge, max_edge_length(m));
    }
    int depth = 0;
    while (max_edge / (1 << depth) > resolution) {
        ++depth;
        if (depth > kMaxDepth) throw std::invalid_argument("build_surface: resolution too fine");
    }

    std::vector<TriangleMesh> templates;
    std::vector<int> base(graph.n_pants + 1, 0);
    for (int p = 0; p < graph.n_pants; ++p) {
        templates.push_back(hexagon_template(hexagons[p], depth));
        base[p + 1] = base[p] + 2 * templates[p].n_vertices;
    }
    const int total_raw = base[graph.n_pants];
    UnionFind uf(total_raw);

    auto copy_id = [&](int p, int h, int local) { return base[p] + h * templates[p].n_vertices + local; };

    // double each hexagon across the three seam sides (walk sides 1, 3, 5)
    for (int p = 0; p < graph.n_pants; ++p)
        for (int s : {1, 3, 5}) {
            const auto chain = side_chain(templates[p], s);
            for (int v : chain) uf.unite(copy_id(p, 0, v), copy_id(p, 1, v));
        }

    // cuff circles: positions j = 0..N-1 at arc j * len / N, starting at
    // the corner shared with the preceding seam
    const int half = 1 << depth; // points per half-cuff chain, minus one
    const int circ_n = 2 * half;
    auto cuff_circle = [&](int p, int slot) {
        const int side = 2 * slot;
        const auto chain = side_chain(templates[p], side);
        std::vector<int> circle(circ_n);
        for (int j = 0; j <= half; ++j) circle[j % circ_n] = copy_id(p, 0, chain[j]);
        for (int j = 1; j < half; ++j) circle[half + j] = copy_id(p, 1, chain[half - j]);
        circle[0] = copy_id(p, 0, chain[0]);
        return circle;
    };

    BuildResult result;
    result.depth = depth;
    for (const auto& gl : graph.gluings) {
        const auto circ_p = cuff_circle(gl.p, gl.s);
        const auto circ_q = cuff_circle(gl.q, gl.t);
        const double delta = gl.length / circ_n;
        const long shift = std::lround(gl.twist / delta);
        result.twist_errors.push_back(std::abs(gl.twist - (double)shift * delta));
        for (int j = 0; j < circ_n; ++j) {
            const int jq = (int)(((shift - j) % circ_n + circ_n) % circ_n);
            uf.unite(circ_p[j], circ_q[jq]);
        }
    }

    // compact ids in increasing-root order
    std::vector<int> final_id(total_raw, -1);
    int next = 0;
    for (int v = 0; v < total_raw; ++v) {
        const int r = uf.find(v);
        if (final_id[r] == -1) final_id[r] = next++;
        final_id[v] = final_id[r];
    }

    TriangleMesh& mesh = result.mesh;
    mesh.chart = ChartKind::Hyperbolic;
    mesh.n_vertices = next;
    mesh.genus = topo.genus;
    mesh.n_boundary = topo.n_boundary;
    for (const auto& b : graph.boundaries) mesh.boundary_lengths.push_back(b.length);

    for (int p = 0; p < graph.n_pants; ++p)
        for (int h = 0; h < 2; ++h) {
            const auto& t = templates[p];
            for (size_t f = 0; f < t.triangles.size(); ++f) {
                const auto& tri = t.triangles[f];
                const int a = final_id[copy_id(p, h, tri[0])];
                const int b = final_id[copy_id(p, h, tri[1])];
                const int c = final_id[copy_id(p, h, tri[2])];
                const auto& co = t.corners[f];
                // the second copy is the mirror image: reverse its winding
                if (h == 0) {
                    mesh.triangles.push_back({a, b, c});
                    mesh.corners.push_back(co);
                } else {
                    mesh.triangles.push_back({a, c, b});
                    mesh.corners.push_back({co[0], co[2], co[1]});
                }
            }
            for (const auto& [e, l] : t.edge_length) {
                const int u = final_id[copy_id(p, h, (int)(e >> 32))];
                const int v = final_id[copy_id(p, h, (int)(e & 0xffffffffu))];
                mesh.edge_length.try_emplace(edge_key(u, v), l);
            }
        }

    // orientation audit: each interior edge must be traversed once per
    // direction by its two faces, or the twist gluing direction is wrong
    {
        std::map<std::pair<int, int>, int> directed;
        for (const auto& tri : mesh.triangles)
            for (int k = 0; k < 3; ++k) ++directed[{tri[k], tri[(k + 1) % 3]}];
        for (const auto& [uv, cnt] : directed) {
            if (cnt > 1) throw std::logic_error("build_surface: inconsistent face orientations");
        }
    }

    // cuff circle edges carry the exact arc length: a geodesic segment
    // between nearby points of a closed geodesic is the arc itself
    auto stamp_circle = [&](const std::vector<int>& circle, double len, int comp) {
        const double delta = len / circ_n;
        for (int j = 0; j < circ_n; ++j) {
            const EdgeKey e = edge_key(final_id[circle[j]], final_id[circle[(j + 1) % circ_n]]);
            mesh.edge_length[e] = delta;
            if (comp >= 0) mesh.boundary_edges[e] = comp;
        }
    };
    for (const auto& gl : graph.gluings) stamp_circle(cuff_circle(gl.p, gl.s), gl.length, -1);
    for (size_t bi = 0; bi < graph.boundaries.size(); ++bi) {
        const auto& b = graph.boundaries[bi];
        stamp_circle(cuff_circle(b.p, b.s), b.length, (int)bi);
    }

    check_mesh(mesh);
    return result;
}

TriangleMesh build_mesh(const PantsGraph& graph, double resolution) {
    return build_surface(graph, resolution).mesh;
}

namespace {

TriangleMesh build_disk(double radius, double resolution, ChartKind kind) {
    if (!(radius > 0) || !(resolution > 0) || resolution >= radius)
        throw std::invalid_argument("disk: need 0 < resolution < radius");
    const double circumference =
        kind == ChartKind::Euclidean ? 2 * M_PI * radius : 2 * M_PI * std::sinh(radius);
    const int rings = std::max(2, (int)std::ceil(radius / resolution));
    const int spokes = std::max(8, (int)std::ceil(circumference / resolution));
    if ((long)rings * spokes > 4'000'000) throw std::invalid_argument("disk: resolution too fine");

    auto chart_point = [&](double r, double theta) -> hyp::Vec3 {
        if (kind == ChartKind::Euclidean) return {r * std::cos(theta), r * std::sin(theta), 0.0};
        return {std::sinh(r) * std::cos(theta), std::sinh(r) * std::sin(theta), std::cosh(r)};
    };
    auto chart_dist = [&](const hyp::Vec3& a, const hyp::Vec3& b) {
        if (kind == ChartKind::Euclidean)
            return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]));
        return hyp::dist(a, b);
    };

    TriangleMesh m;
    m.chart = kind;
    m.genus = 0;
    m.n_boundary = 1;
    m.boundary_lengths = {circumference};
    // vertex 0 at the center; ring j (1-based) vertex i at id 1 + (j-1)*spokes + i
    m.n_vertices = 1 + rings * spokes;
    auto vid = [&](int j, int i) { return 1 + (j - 1) * spokes + ((i % spokes + spokes) % spokes); };
    auto vpos = [&](int j, int i) {
        return chart_point(radius * j / rings, 2 * M_PI * ((i % spokes + spokes) % spokes) / spokes);
    };
    const hyp::Vec3 center = chart_point(0, 0);

    auto add_face = [&](int a, int b, int c, const hyp::Vec3& pa, const hyp::Vec3& pb, const hyp::Vec3& pc) {
        m.triangles.push_back({a, b, c});
        m.corners.push_back({pa, pb, pc});
        m.edge_length.try_emplace(edge_key(a, b), chart_dist(pa, pb));
        m.edge_length.try_emplace(edge_key(b, c), chart_dist(pb, pc));
        m.edge_length.try_emplace(edge_key(c, a), chart_dist(pc, pa));
    };

    for (int i = 0; i < spokes; ++i) add_face(0, vid(1, i), vid(1, i + 1), center, vpos(1, i), vpos(1, i + 1));
    for (int j = 1; j < rings; ++j)
        for (int i = 0; i < spokes; ++i) {
            add_face(vid(j, i), vid(j + 1, i), vid(j + 1, i + 1), vpos(j, i), vpos(j + 1, i), vpos(j + 1, i + 1));
            add_face(vid(j, i), vid(j + 1, i + 1), vid(j, i + 1), vpos(j, i), vpos(j + 1, i + 1), vpos(j, i + 1));
        }
    for (int i = 0; i < spokes; ++i) m.boundary_edges[edge_key(vid(rings, i), vid(rings, i + 1))] = 0;

    check_mesh(m);
    return m;
}

} // namespace

TriangleMesh build_hyperbolic_disk(double radius, double resolution) {
    return build_disk(radius, resolution, ChartKind::Hyperbolic);
}

TriangleMesh build_flat_disk(double radius, double resolution) {
    return build_disk(radius, resolution, ChartKind::Euclidean);
}

TriangleMesh build_from_spec(const SurfaceSpec& spec) {
    switch (spec.kind) {
        case SurfaceSpec::Kind::HyperbolicDisk: return build_hyperbolic_disk(spec.radius, spec.resolution);
        case SurfaceSpec::Kind::FlatDisk: return build_flat_disk(spec.radius, spec.resolution);
        case SurfaceSpec::Kind::Pants: default: return build_mesh(spec.graph, spec.resolution);
    }
}

} // namespace sklab
