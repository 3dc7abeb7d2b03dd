#include "sklab/steklov.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cmath>
#include <stdexcept>

namespace sklab {

namespace {

double cot_from_sides(double opp, double s1, double s2) {
    // angle between s1 and s2, opposite side opp
    const double cosv = (s1 * s1 + s2 * s2 - opp * opp) / (2 * s1 * s2);
    const double sinv = std::sqrt(std::max(0.0, 1.0 - cosv * cosv));
    if (sinv <= 0) throw std::runtime_error("steklov: degenerate triangle");
    return cosv / sinv;
}

} // namespace

SteklovSpectrum steklov_spectrum(const TriangleMesh& mesh, int k) {
    if (k < 1) throw std::invalid_argument("steklov_spectrum: k must be >= 1");
    if (mesh.boundary_edges.empty()) throw std::invalid_argument("steklov_spectrum: mesh has no boundary");

    const int nv = mesh.n_vertices;
    std::vector<char> on_boundary(nv, 0);
    for (const auto& [e, comp] : mesh.boundary_edges) {
        on_boundary[(int)(e >> 32)] = 1;
        on_boundary[(int)(e & 0xffffffffu)] = 1;
    }
    std::vector<int> bverts, iverts;
    for (int v = 0; v < nv; ++v) (on_boundary[v] ? bverts : iverts).push_back(v);
    const int nb = (int)bverts.size(), ni = (int)iverts.size();
    if (k + 1 > nb) throw std::invalid_argument("steklov_spectrum: k exceeds boundary unknown count");

    std::vector<int> pos(nv, -1); // index within its block
    for (int i = 0; i < nb; ++i) pos[bverts[i]] = i;
    for (int i = 0; i < ni; ++i) pos[iverts[i]] = i;

    // stiffness: cotangent weights from the intrinsic edge lengths;
    // the (interior, boundary) block is recorded once, transposes skipped
    std::vector<Eigen::Triplet<double>> t_bb, t_ib, t_ii;
    auto add_entry = [&](int u, int v, double w) {
        const bool ub = on_boundary[u], vb = on_boundary[v];
        if (ub && vb) t_bb.emplace_back(pos[u], pos[v], w);
        else if (!ub && !vb) t_ii.emplace_back(pos[u], pos[v], w);
        else if (!ub && vb) t_ib.emplace_back(pos[u], pos[v], w);
    };
    for (const auto& tri : mesh.triangles) {
        const double a = mesh.length(tri[1], tri[2]);
        const double b = mesh.length(tri[2], tri[0]);
        const double c = mesh.length(tri[0], tri[1]);
        const double w0 = 0.5 * cot_from_sides(a, b, c); // angle at vertex 0, opposite side a
        const double w1 = 0.5 * cot_from_sides(b, c, a);
        const double w2 = 0.5 * cot_from_sides(c, a, b);
        const int u = tri[0], v = tri[1], w = tri[2];
        add_entry(v, v, w0); add_entry(w, w, w0); add_entry(v, w, -w0); add_entry(w, v, -w0);
        add_entry(w, w, w1); add_entry(u, u, w1); add_entry(w, u, -w1); add_entry(u, w, -w1);
        add_entry(u, u, w2); add_entry(v, v, w2); add_entry(u, v, -w2); add_entry(v, u, -w2);
    }

    Eigen::SparseMatrix<double> k_ii(std::max(ni, 1), std::max(ni, 1)), k_ib(std::max(ni, 1), nb);
    Eigen::MatrixXd schur = Eigen::MatrixXd::Zero(nb, nb);
    for (const auto& t : t_bb) schur(t.row(), t.col()) += t.value();

    // boundary mass from boundary edge lengths
    Eigen::MatrixXd m_bb = Eigen::MatrixXd::Zero(nb, nb);
    double boundary_length = 0;
    for (const auto& [e, comp] : mesh.boundary_edges) {
        const int u = pos[(int)(e >> 32)], v = pos[(int)(e & 0xffffffffu)];
        const double h = mesh.edge_length.at(e);
        boundary_length += h;
        m_bb(u, u) += h / 3;
        m_bb(v, v) += h / 3;
        m_bb(u, v) += h / 6;
        m_bb(v, u) += h / 6;
    }

    // Schur complement onto the boundary block
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    if (ni) {
        k_ii.setFromTriplets(t_ii.begin(), t_ii.end());
        k_ib.setFromTriplets(t_ib.begin(), t_ib.end());
        ldlt.compute(k_ii);
        if (ldlt.info() != Eigen::Success)
            throw std::runtime_error("steklov_spectrum: singular interior block (disconnected mesh?)");
        for (int j = 0; j < nb; ++j) {
            const Eigen::VectorXd rhs = k_ib.col(j);
            if (rhs.isZero(0)) continue;
            const Eigen::VectorXd x = ldlt.solve(rhs);
            schur.col(j) -= k_ib.transpose() * x;
        }
        schur = 0.5 * (schur + schur.transpose().eval());
    }

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(schur, m_bb);
    if (ges.info() != Eigen::Success) throw std::runtime_error("steklov_spectrum: eigensolve failed");

    SteklovSpectrum out;
    out.boundary_length = boundary_length;
    const int count = k + 1;
    out.eigenvalues.assign(ges.eigenvalues().data(), ges.eigenvalues().data() + count);
    out.normalized_first = out.eigenvalues[1] * boundary_length;
    out.under_resolved = !(std::abs(out.eigenvalues[0]) < 1e-8 * std::abs(out.eigenvalues[1]));

    for (int j = 0; j < count; ++j) {
        const Eigen::VectorXd y = ges.eigenvectors().col(j);
        Eigen::VectorXd u_int;
        if (ni) u_int = -ldlt.solve(k_ib * y);
        std::vector<double> nodal(nv, 0.0);
        for (int i = 0; i < nb; ++i) nodal[bverts[i]] = y[i];
        for (int i = 0; i < ni; ++i) nodal[iverts[i]] = u_int[i];
        out.eigenfunctions.push_back(std::move(nodal));

        const double num = y.dot(schur * y);
        const double den = y.dot(m_bb * y);
        out.rayleigh_residuals.push_back(std::abs(num / den - out.eigenvalues[j]));
    }

    // group numerically split multiplicities
    for (int j = 0; j < count; ++j) {
        const double s = out.eigenvalues[j];
        if (!out.multiplicity_clusters.empty()) {
            const double prev = out.eigenvalues[out.multiplicity_clusters.back().back()];
            const double scale = std::max({std::abs(s), std::abs(prev), 1e-12});
            if (std::abs(s - prev) <= 1e-6 * scale) {
                out.multiplicity_clusters.back().push_back(j);
                continue;
            }
        }
        out.multiplicity_clusters.push_back({j});
    }
    return out;
}

double normalized_sigma1(const SteklovSpectrum& s) {
    if (s.eigenvalues.size() < 2)
        throw std::invalid_argument("normalized_sigma1: need at least 2 eigenvalues");
    return s.eigenvalues[1] * s.boundary_length;
}

BoundReport verify_upper_bounds(double normalized_sigma1, int genus, int k_boundary) {
    if (genus < 0 || k_boundary < 1) throw std::invalid_argument("verify_upper_bounds: bad (g, k)");
    BoundReport r;
    r.normalized_sigma1 = normalized_sigma1;
    r.genus_boundary_bound = 2 * M_PI * (genus + k_boundary);
    r.genus_only_bound = 8 * M_PI * (genus + 1);
    r.slack_genus_boundary = r.genus_boundary_bound - normalized_sigma1;
    r.slack_genus_only = r.genus_only_bound - normalized_sigma1;
    r.ok_genus_boundary = r.slack_genus_boundary >= 0;
    r.ok_genus_only = r.slack_genus_only >= 0;
    return r;
}

} // namespace sklab
