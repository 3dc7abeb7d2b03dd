#include "sklab/mesh.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sklab {

namespace {

hyp::Vec3 chart_midpoint(ChartKind kind, const hyp::Vec3& p, const hyp::Vec3& q) {
    if (kind == ChartKind::Euclidean)
        return {(p[0] + q[0]) / 2, (p[1] + q[1]) / 2, (p[2] + q[2]) / 2};
    return hyp::midpoint(p, q);
}

double chart_dist(ChartKind kind, const hyp::Vec3& p, const hyp::Vec3& q) {
    if (kind == ChartKind::Euclidean)
        return std::sqrt((p[0] - q[0]) * (p[0] - q[0]) + (p[1] - q[1]) * (p[1] - q[1]) +
                         (p[2] - q[2]) * (p[2] - q[2]));
    return hyp::dist(p, q);
}

double heron(double a, double b, double c) {
    // numerically stable form, sides sorted a >= b >= c
    if (a < b) std::swap(a, b);
    if (b < c) std::swap(b, c);
    if (a < b) std::swap(a, b);
    const double t = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    return t <= 0 ? 0.0 : 0.25 * std::sqrt(t);
}

} // namespace

double TriangleMesh::length(int u, int v) const {
    const auto it = edge_length.find(edge_key(u, v));
    if (it == edge_length.end()) throw std::runtime_error("mesh: missing edge length");
    return it->second;
}

void check_mesh(const TriangleMesh& mesh) {
    std::map<EdgeKey, int> face_count;
    for (const auto& t : mesh.triangles) {
        for (int k = 0; k < 3; ++k) {
            const int u = t[k], v = t[(k + 1) % 3];
            if (u == v || u < 0 || v < 0 || u >= mesh.n_vertices || v >= mesh.n_vertices)
                throw std::runtime_error("mesh: bad triangle vertex");
            ++face_count[edge_key(u, v)];
        }
        const double a = mesh.length(t[0], t[1]);
        const double b = mesh.length(t[1], t[2]);
        const double c = mesh.length(t[2], t[0]);
        if (!(a > 0 && b > 0 && c > 0)) throw std::runtime_error("mesh: nonpositive edge length");
        if (!(a + b > c && b + c > a && c + a > b))
            throw std::runtime_error("mesh: triangle inequality violated");
    }
    for (const auto& [e, cnt] : face_count) {
        if (cnt > 2) throw std::runtime_error("mesh: edge on more than two faces");
        const bool is_boundary = mesh.boundary_edges.count(e) > 0;
        if (cnt == 1 && !is_boundary) throw std::runtime_error("mesh: unlabeled boundary edge");
        if (cnt == 2 && is_boundary) throw std::runtime_error("mesh: interior edge labeled boundary");
    }
    for (const auto& [e, comp] : mesh.boundary_edges) {
        if (!face_count.count(e)) throw std::runtime_error("mesh: boundary label on missing edge");
        if (comp < 0 || comp >= mesh.n_boundary) throw std::runtime_error("mesh: bad boundary component");
    }
}

double mesh_area(const TriangleMesh& mesh) {
    double area = 0;
    for (const auto& t : mesh.triangles)
        area += heron(mesh.length(t[0], t[1]), mesh.length(t[1], t[2]), mesh.length(t[2], t[0]));
    return area;
}

std::vector<double> mesh_boundary_lengths(const TriangleMesh& mesh) {
    std::vector<double> sums(mesh.n_boundary, 0.0);
    for (const auto& [e, comp] : mesh.boundary_edges) sums[comp] += mesh.edge_length.at(e);
    return sums;
}

double max_edge_length(const TriangleMesh& mesh) {
    double m = 0;
    for (const auto& [e, l] : mesh.edge_length) m = std::max(m, l);
    return m;
}

TriangleMesh refine_mesh(const TriangleMesh& mesh) {
    if (!mesh.has_charts()) throw std::runtime_error("refine_mesh: mesh carries no charts");

    TriangleMesh out;
    out.chart = mesh.chart;
    out.genus = mesh.genus;
    out.n_boundary = mesh.n_boundary;
    out.boundary_lengths = mesh.boundary_lengths;

    // midpoint ids in sorted parent-edge order
    std::map<EdgeKey, int> mid_id;
    for (const auto& [e, l] : mesh.edge_length) {
        const int id = mesh.n_vertices + (int)mid_id.size();
        mid_id.emplace(e, id);
    }
    out.n_vertices = mesh.n_vertices + (int)mid_id.size();

    // halved parent edges keep exact half lengths; boundary labels descend
    for (const auto& [e, l] : mesh.edge_length) {
        const int u = (int)(e >> 32), v = (int)(e & 0xffffffffu);
        const int m = mid_id.at(e);
        out.edge_length[edge_key(u, m)] = l / 2;
        out.edge_length[edge_key(m, v)] = l / 2;
        const auto b = mesh.boundary_edges.find(e);
        if (b != mesh.boundary_edges.end()) {
            out.boundary_edges[edge_key(u, m)] = b->second;
            out.boundary_edges[edge_key(m, v)] = b->second;
        }
    }

    out.triangles.reserve(4 * mesh.triangles.size());
    out.corners.reserve(4 * mesh.triangles.size());
    for (size_t f = 0; f < mesh.triangles.size(); ++f) {
        const auto& t = mesh.triangles[f];
        const auto& c = mesh.corners[f];
        const int m01 = mid_id.at(edge_key(t[0], t[1]));
        const int m12 = mid_id.at(edge_key(t[1], t[2]));
        const int m20 = mid_id.at(edge_key(t[2], t[0]));
        const hyp::Vec3 p01 = chart_midpoint(mesh.chart, c[0], c[1]);
        const hyp::Vec3 p12 = chart_midpoint(mesh.chart, c[1], c[2]);
        const hyp::Vec3 p20 = chart_midpoint(mesh.chart, c[2], c[0]);

        // interior edges of this face, measured in its chart
        out.edge_length[edge_key(m01, m12)] = chart_dist(mesh.chart, p01, p12);
        out.edge_length[edge_key(m12, m20)] = chart_dist(mesh.chart, p12, p20);
        out.edge_length[edge_key(m20, m01)] = chart_dist(mesh.chart, p20, p01);

        out.triangles.push_back({t[0], m01, m20});
        out.corners.push_back({c[0], p01, p20});
        out.triangles.push_back({m01, t[1], m12});
        out.corners.push_back({p01, c[1], p12});
        out.triangles.push_back({m20, m12, t[2]});
        out.corners.push_back({p20, p12, c[2]});
        out.triangles.push_back({m01, m12, m20});
        out.corners.push_back({p01, p12, p20});
    }
    return out;
}

void write_mesh(std::ostream& out, const TriangleMesh& mesh) {
    out << "mesh " << mesh.n_vertices << " " << mesh.triangles.size() << " " << mesh.edge_length.size()
        << " " << mesh.boundary_edges.size() << " " << mesh.genus << " " << mesh.n_boundary << "\n";
    out.precision(17);
    for (const auto& t : mesh.triangles) out << t[0] << " " << t[1] << " " << t[2] << "\n";
    for (const auto& [e, l] : mesh.edge_length)
        out << (int)(e >> 32) << " " << (int)(e & 0xffffffffu) << " " << l << "\n";
    for (const auto& [e, comp] : mesh.boundary_edges)
        out << (int)(e >> 32) << " " << (int)(e & 0xffffffffu) << " " << comp << "\n";
}

TriangleMesh read_mesh(std::istream& in) {
    std::string tag;
    in >> tag;
    if (tag != "mesh") throw std::runtime_error("mesh import: bad header");
    TriangleMesh mesh;
    size_t n_tri = 0, n_edge = 0, n_bd = 0;
    in >> mesh.n_vertices >> n_tri >> n_edge >> n_bd >> mesh.genus >> mesh.n_boundary;
    mesh.triangles.resize(n_tri);
    for (auto& t : mesh.triangles) in >> t[0] >> t[1] >> t[2];
    for (size_t i = 0; i < n_edge; ++i) {
        int u, v;
        double l;
        in >> u >> v >> l;
        mesh.edge_length[edge_key(u, v)] = l;
    }
    for (size_t i = 0; i < n_bd; ++i) {
        int u, v, comp;
        in >> u >> v >> comp;
        mesh.boundary_edges[edge_key(u, v)] = comp;
    }
    if (!in) throw std::runtime_error("mesh import: truncated");
    return mesh;
}

} // namespace sklab
