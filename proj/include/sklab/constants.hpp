#pragma once

// Isoperimetric-constant estimation: candidate curve systems generated
// from the pants decomposition (sub-multicurves, seam systems, boundary
// self-arcs, their equidistant offsets, circles and half-circles), the
// resulting upper estimates for the Cheeger constant h_C, the modified
// Jammes constant h_J (admissible regions touching the boundary with
// every complement component meeting the boundary), and the geodesic
// Cheeger constant H; plus superlevel-set sweeps of the first Steklov
// eigenfunction. All reported constants are upper estimates of infima.

#include <limits>
#include <string>
#include <vector>

#include "sklab/mesh.hpp"
#include "sklab/pants_graph.hpp"
#include "sklab/steklov.hpp"

namespace sklab {

enum class SegmentKind {
    ClosedGeodesic,
    EquidistantCurve,
    Circle,
    BoundaryArc,    // free-boundary geodesic arc
    EquidistantArc, // free-boundary equidistant arc
    HalfCircle,
    GeodesicPiece, // partial cuff arc from a region frontier
};

struct CurveSegment {
    SegmentKind kind;
    double length;
};

struct CurveSystem {
    std::vector<CurveSegment> segments;
    double total_length = 0;
    double area_small = 0, area_large = 0; // |A| <= |B|
    bool separates = true;
    // Jammes data for the region Omega the system bounds
    bool jammes_admissible = false;
    double jammes_interior = 0;
    double jammes_exterior = 0;
    double omega_area = 0;
    bool all_complement_components_meet_boundary = false;
    // typed geodesic system (closed geodesics / free-boundary arcs only)
    bool geodesic_system = false;
    std::string description;

    double cheeger_value() const {
        return std::max(total_length / area_small, total_length / area_large);
    }
};

struct ConstantsReport {
    double h_cheeger_upper = std::numeric_limits<double>::infinity();
    double h_jammes_upper = std::numeric_limits<double>::infinity();
    double h_geodesic_upper = std::numeric_limits<double>::infinity();
    double geodesic_companion = 0; // H_upper / (H_upper + 1)
    std::string cheeger_witness, jammes_witness, geodesic_witness;
    double sigma1 = std::numeric_limits<double>::quiet_NaN();
    double jammes_slack = std::numeric_limits<double>::quiet_NaN();
    bool levelset_used = false;
    double total_area = 0;
};

// Candidate systems with exact lengths and areas from the decomposition
// data. `mesh` is optional and used only for cross-check metadata.
std::vector<CurveSystem> enumerate_candidates(const PantsGraph& graph, int offset_samples = 64,
                                              int radius_samples = 64);

ConstantsReport estimate_constants(const std::vector<CurveSystem>& candidates, const TriangleMesh& mesh);

// Superlevel sets of the first eigenfunction merged into the report.
ConstantsReport levelset_sweep(const SteklovSpectrum& spectrum, const TriangleMesh& mesh,
                               ConstantsReport report, int levels = 64);

// sigma_1 - h_C h_J / 4; negative slack is a warning, never an error.
double jammes_check(double sigma1, ConstantsReport& report);

// PL level-set measurement of a nodal field on the mesh.
struct LevelSetSlice {
    double isoline_length = 0;    // length of {f = level} inside the surface
    double superlevel_area = 0;   // area of {f >= level}
    double exterior_length = 0;   // boundary length where f >= level
};
LevelSetSlice measure_level_set(const TriangleMesh& mesh, const std::vector<double>& nodal, double level);

// Distance-to-cuff nodal field in the hexagon charts of a one-pants
// surface; supports the offset-formula cross-checks.
std::vector<double> cuff_distance_field(const TriangleMesh& mesh, const PantsGraph& graph, int slot);

struct CaseReport {
    double half_collar_width = 0;     // (1/2 - eps) log g
    double window_low = 0;            // (2 - eps) log g
    double window_high = 0;           // 2 log g
    double jammes_case_collar = 1;    // interior boundary inside the half-collar
    double jammes_case_crossing = 0;  // (1 - 2 eps)/2
    double jammes_lower = 0;          // min of the two cases
    double factor_collar = 2;         // comparison factor, collar case
    double factor_crossing = 0;       // (3 - 2 eps)/(1 - 2 eps)
    double comparison_constant = 0;   // 1 / max(2, (3-2eps)/(1-2eps))
    double cheeger_threshold = 0;     // log 2/(2 pi + log 2) - eps
    double cheeger_lower = 0;         // min(C, 1) * threshold
    double assembled_sigma_lower = 0; // jammes_lower * cheeger_lower / 4
};

CaseReport large_genus_case_bounds(double g, double eps);

// log(2)/(2 pi + log 2) to `digits` significant digits.
std::string cheeger_threshold_digits(int digits);

} // namespace sklab
