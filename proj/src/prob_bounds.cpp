#include "sklab/prob_bounds.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace sklab::pb {

BoundaryLengthSchedule half_log_schedule(int n) {
    BoundaryLengthSchedule s;
    s.n = n;
    s.lengths = [n](double g) {
        return std::vector<double>(n, 0.5 * std::log(g) / n);
    };
    std::ostringstream os;
    os << "sum L = (1/2) log g over " << n << " components";
    s.description = os.str();
    return s;
}

ScheduleCheck check_schedule(const BoundaryLengthSchedule& schedule, const std::vector<double>& g_grid) {
    ScheduleCheck c;
    c.lengths_above_one = true;
    c.sum_increasing = true;
    c.ratio_below_one = true;
    double prev_sum = -1;
    for (double g : g_grid) {
        const auto ls = schedule.lengths(g);
        if ((int)ls.size() != schedule.n) throw std::invalid_argument("schedule arity mismatch");
        double sum = 0;
        for (double l : ls) {
            sum += l;
            if (!(l > 1)) c.lengths_above_one = false;
        }
        if (sum <= prev_sum) c.sum_increasing = false;
        prev_sum = sum;
        const double ratio = sum / std::log(g);
        c.max_sum_ratio_to_log = std::max(c.max_sum_ratio_to_log, ratio);
        if (!(ratio < 1)) c.ratio_below_one = false;
        std::ostringstream os;
        os << "g=" << g << " sum=" << sum << " sum/log g=" << ratio;
        c.lines.push_back(os.str());
    }
    return c;
}

bool DecayCurve::decreasing_from(double g0) const {
    bool any = false;
    for (size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].first <= g0) continue;
        any = true;
        if (!(samples[i].second < samples[i - 1].second)) return false;
    }
    return any;
}

double DecayCurve::top_value() const {
    if (samples.empty()) throw std::logic_error("empty curve");
    return samples.back().second;
}

std::vector<double> geometric_grid(double lo, double hi, int per_decade) {
    std::vector<double> g;
    const double step = std::pow(10.0, 1.0 / per_decade);
    for (double x = lo; x <= hi * (1 + 1e-9); x *= step) g.push_back(x);
    return g;
}

std::pair<DecayCurve, DecayCurve> collar_failure_bounds(const BoundaryLengthSchedule& schedule,
                                                        double eps, const std::vector<double>& g_grid) {
    if (!(eps > 0 && eps < 0.5)) throw std::invalid_argument("collar_failure_bounds: eps in (0, 1/2)");
    DecayCurve pair_chain, self_chain;
    pair_chain.label = "boundary-pair chain L1 L2 / g^{1/2+eps}";
    self_chain.label = "self-pair chain log^2 g / g^{2 eps}";
    for (double g : g_grid) {
        const auto ls = schedule.lengths(g);
        const double l1 = ls[0];
        const double l2 = ls.size() > 1 ? ls[1] : ls[0];
        pair_chain.samples.push_back({g, l1 * l2 / std::pow(g, 0.5 + eps)});
        const double lg = std::log(g);
        self_chain.samples.push_back({g, lg * lg / std::pow(g, 2 * eps)});
    }
    return {pair_chain, self_chain};
}

MulticurveBound multicurve_expectation_bound(double g, int n, int m, double L) {
    if (!(L > 1)) throw std::invalid_argument("multicurve_expectation_bound: L > 1 required");
    if (m < 1 || n < 0 || !(g >= 1)) throw std::invalid_argument("multicurve_expectation_bound: bad input");
    MulticurveBound b;
    b.structural = std::exp(2 * L) / std::pow(g, m);
    double term = 1, acc = 1;
    for (int s = 1; s < 400; ++s) {
        term *= L / (double(s) * double(s));
        acc += term;
        if (term < 1e-18 * acc) break;
    }
    b.inner_sum = acc;
    b.inner_bound = std::exp(2 * std::sqrt(L));
    return b;
}

long max_arc_count(double c1, long k, double eps, double g) {
    if (!(eps > 0 && eps < 0.5) || !(g > 1)) throw std::invalid_argument("max_arc_count: bad input");
    return (long)std::floor(c1 * (double)k * M_PI / ((1 - 2 * eps) * std::log(g)));
}

HalfSurfaceBound half_surface_bound(wp::VolumeTable& table, int g, int n, int m, double c1, double c2,
                                    double sum_lengths) {
    if (!(c1 < c2)) throw std::invalid_argument("half_surface_bound: requires c1 < c2");
    if (m < 0) throw std::invalid_argument("half_surface_bound: m >= 0");
    HalfSurfaceBound out;
    const int K = 2 * g - 2 + n;
    const bool tabled = m == 0 || table.tilde_w_available(m);
    const bool tabled2 = table.tilde_w_available(K - m);
    const bool vol_ok = 2 * g - 2 + n > 0 && 3 * g + n - 3 <= table.budget();
    if (tabled && tabled2 && vol_ok && K - m > 0) {
        const Real factor = exp(Real(2 * M_PI * m * c2 + (c2 / c1) * sum_lengths));
        const Real wm = m == 0 ? Real(1) : table.tilde_w(m).to_real();
        const Real wk = table.tilde_w(K - m).to_real();
        const Real vg = table.get(g, n).at_zero().to_real();
        out.table_backed = true;
        out.value = factor * wm * wk / vg;
        return out;
    }
    std::ostringstream os;
    os << "exp(2 pi * " << m << " * c2 + (c2/c1) * " << sum_lengths << ") * W(" << m << ") * W(" << K - m
       << ") / V(" << g << "," << n << ")";
    out.symbolic = os.str();
    return out;
}

bool reindex_inequality_holds(wp::VolumeTable& table, int K, int m, double c2, double eps_prime) {
    const int mp = K - m;
    if (mp <= 0 || m <= 0) throw std::invalid_argument("reindex_inequality_holds: bad indices");
    if (!(c2 > 0) || !(eps_prime >= 0 && eps_prime < 1))
        throw std::invalid_argument("reindex_inequality_holds: bad parameters");
    if (!table.tilde_w_available(m) || !table.tilde_w_available(mp))
        throw std::invalid_argument("reindex_inequality_holds: index out of table");
    // the half-surface weight products on the two sides coincide, so the
    // inequality reduces to the exponents; decide it in exact arithmetic
    const wp::Rational ep(eps_prime);
    return wp::Rational(m) * (1 - ep) <= wp::Rational(mp) * (1 + ep);
}

WindowReport admissibility_and_windows(const BoundaryLengthSchedule& schedule,
                                       const std::function<double(double)>& omega,
                                       const std::vector<double>& g_grid) {
    WindowReport rep;
    rep.schedule = check_schedule(schedule, g_grid);
    rep.omega_unbounded = true;
    rep.omega_ratio_vanishing = true;
    double prev_w = -1e300, prev_ratio = 1e300;
    for (double g : g_grid) {
        const double w = omega(g);
        const double loglog = std::log(std::log(g));
        const double ratio = w / loglog;
        if (!(w > prev_w)) rep.omega_unbounded = false;
        if (!(ratio < prev_ratio)) rep.omega_ratio_vanishing = false;
        prev_w = w;
        prev_ratio = ratio;
        const double center = 2 * std::log(g) - 4 * loglog;
        std::ostringstream os;
        os << "g=" << g << " window=[" << center - w << ", " << center + w << "] omega/loglog=" << ratio;
        rep.lines.push_back(os.str());
    }
    return rep;
}

namespace {

Real pi_from_atan() { return 4 * atan(Real(1)); }

std::string digits_of(const Real& v, int digits) {
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

} // namespace

std::string ln2_over_2pi_digits(int digits) {
    return digits_of(log(Real(2)) / (2 * pi_from_atan()), digits);
}

std::string cheeger_threshold_digits(int digits) {
    const Real l2 = log(Real(2));
    return digits_of(l2 / (2 * pi_from_atan() + l2), digits);
}

std::string assembled_constant_digits(int digits) {
    const Real l2 = log(Real(2));
    const Real c = Real(1) / 2;                     // limiting Jammes constant
    const Real c1 = l2 / (2 * pi_from_atan() + l2); // limiting Cheeger constant
    return digits_of(c * c1 / 4, digits);
}

} // namespace sklab::pb
