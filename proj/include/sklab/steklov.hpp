#pragma once

// Steklov spectra of triangulated surfaces: P1 stiffness assembled from
// the intrinsic edge lengths (flat-triangle secant metric), boundary
// mass from boundary edges, interior unknowns eliminated by a Schur
// complement, then a dense symmetric generalized eigensolve on the
// boundary block.

#include <vector>

#include "sklab/mesh.hpp"

namespace sklab {

struct SteklovSpectrum {
    std::vector<double> eigenvalues; // sigma_0 <= ... <= sigma_k
    // full nodal vectors indexed by mesh vertex id, one per eigenvalue
    std::vector<std::vector<double>> eigenfunctions;
    double boundary_length = 0;
    double normalized_first = 0; // sigma_1 * boundary length
    bool under_resolved = false; // sigma_0 not below 1e-8 * sigma_1
    std::vector<double> rayleigh_residuals;
    std::vector<std::vector<int>> multiplicity_clusters; // relative 1e-6 grouping
};

// k + 1 smallest Steklov eigenvalues of the discrete problem.
SteklovSpectrum steklov_spectrum(const TriangleMesh& mesh, int k);

double normalized_sigma1(const SteklovSpectrum& s);

struct BoundReport {
    double normalized_sigma1 = 0;
    double genus_boundary_bound = 0; // 2 pi (g + k)
    double genus_only_bound = 0;     // 8 pi (g + 1)
    double slack_genus_boundary = 0;
    double slack_genus_only = 0;
    bool ok_genus_boundary = false;
    bool ok_genus_only = false;
};

BoundReport verify_upper_bounds(double normalized_sigma1, int genus, int k_boundary);

} // namespace sklab
