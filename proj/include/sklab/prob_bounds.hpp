#pragma once

// Finite-genus evaluators for the probability/expectation bound
// expressions: boundary-length schedules and their admissibility, the
// two collar-failure decay chains, the multicurve-count bound, the
// half-surface bound with its arc-count cap and reindexing inequality.
// Implied constants are symbolic; the suite asserts shapes (monotone
// decay, sign, crossings), never absolute probabilities.

#include <functional>
#include <string>
#include <vector>

#include "sklab/wp_volumes.hpp"

namespace sklab::pb {

using wp::Real;

struct BoundaryLengthSchedule {
    int n = 1;
    std::function<std::vector<double>(double)> lengths; // g -> n lengths
    std::string description;
};

BoundaryLengthSchedule half_log_schedule(int n); // total length = (1/2) log g, split evenly

struct ScheduleCheck {
    bool lengths_above_one = false;
    bool sum_increasing = false;
    double max_sum_ratio_to_log = 0; // sup over grid of (sum L)/log g
    bool ratio_below_one = false;
    std::vector<std::string> lines;
};

ScheduleCheck check_schedule(const BoundaryLengthSchedule& schedule, const std::vector<double>& g_grid);

struct DecayCurve {
    std::string label;
    std::vector<std::pair<double, double>> samples; // (g, value), g increasing

    bool decreasing_from(double g0) const;
    double top_value() const;
};

std::vector<double> geometric_grid(double lo = 1e3, double hi = 1e9, int per_decade = 1);

// The two chains bounding the collar-failure probability: a boundary
// pair chain L1 L2 / g^{1/2+eps} and a self-pair chain log^2 g / g^{2 eps}.
std::pair<DecayCurve, DecayCurve> collar_failure_bounds(const BoundaryLengthSchedule& schedule,
                                                        double eps, const std::vector<double>& g_grid);

struct MulticurveBound {
    double structural = 0; // e^{2L} / g^m, constants symbolic
    double inner_sum = 0;  // sum_s L^s/(s!)^2
    double inner_bound = 0; // e^{2 sqrt L}
};

MulticurveBound multicurve_expectation_bound(double g, int n, int m, double L);

// floor(c1 k pi / ((1 - 2 eps) log g)): max count of boundary-orthogonal
// arcs a frontier of total length c1 k pi can contain.
long max_arc_count(double c1, long k, double eps, double g);

struct HalfSurfaceBound {
    bool table_backed = false;
    Real value = 0;       // e^{2 pi m c2 + (c2/c1) sum L} W_m W_{K-m} / V_{g,n}
    std::string symbolic; // structure when the table does not reach
};

HalfSurfaceBound half_surface_bound(wp::VolumeTable& table, int g, int n, int m, double c1, double c2,
                                    double sum_lengths);

// e^{2 pi m c2} W_m W_{K-m} <= e^{2 pi m' c2 (1+e')/(1-e')} W_{m'} W_{K-m'}
// for m' = K - m; checked with the tabled values.
bool reindex_inequality_holds(wp::VolumeTable& table, int K, int m, double c2, double eps_prime);

struct WindowReport {
    ScheduleCheck schedule;
    bool omega_unbounded = false;    // omega increasing along the grid
    bool omega_ratio_vanishing = false; // omega/loglog g decreasing along the grid
    std::vector<std::string> lines;  // window endpoints and ratios per g
};

WindowReport admissibility_and_windows(const BoundaryLengthSchedule& schedule,
                                       const std::function<double(double)>& omega,
                                       const std::vector<double>& g_grid);

// threshold constants at high precision (paths independent from the
// estimator module)
std::string ln2_over_2pi_digits(int digits);
std::string cheeger_threshold_digits(int digits);
std::string assembled_constant_digits(int digits); // (1/2)(ln2/(2pi+ln2))/4

} // namespace sklab::pb
