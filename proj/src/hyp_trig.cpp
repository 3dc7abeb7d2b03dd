#include "sklab/hyp_trig.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sklab {

using detail::seam_between;

void check_length(double l, const char* what) {
    if (!std::isfinite(l) || l < 1e-6 || l > 50.0)
        throw std::domain_error(std::string(what) + " must lie in [1e-6, 50], got " + std::to_string(l));
}

Hexagon hexagon_from_cuffs(double l1, double l2, double l3) {
    check_length(l1, "cuff length");
    check_length(l2, "cuff length");
    check_length(l3, "cuff length");
    Hexagon h;
    h.a = {l1 / 2, l2 / 2, l3 / 2};
    for (int i = 0; i < 3; ++i) {
        // b[i] adjacent to a[i], a[i+2], opposite a[i+1]
        h.b[i] = seam_between(h.a[i], h.a[(i + 2) % 3], h.a[(i + 1) % 3]);
    }
    return h;
}

double hexagon_relation_error(const Hexagon& h) {
    double err = 0;
    for (int i = 0; i < 3; ++i) {
        const double u = h.a[i], v = h.a[(i + 2) % 3], w = h.a[(i + 1) % 3];
        const double lhs = std::cosh(h.b[i]);
        const double rhs = (std::cosh(w) + std::cosh(u) * std::cosh(v)) / (std::sinh(u) * std::sinh(v));
        err = std::max(err, std::abs(lhs - rhs) / rhs);
    }
    return err;
}

std::array<double, 6> hexagon_walk_sides(const Hexagon& h) {
    return {h.a[0], h.b[1], h.a[1], h.b[2], h.a[2], h.b[0]};
}

std::array<hyp::Vec3, 6> realize_hexagon(const Hexagon& h) {
    return walk_right_angled_hexagon(hexagon_walk_sides(h));
}

SeamLengths pants_seams(double l1, double l2, double l3) {
    check_length(l1, "cuff length");
    check_length(l2, "cuff length");
    check_length(l3, "cuff length");
    const double a1 = l1 / 2, a2 = l2 / 2, a3 = l3 / 2;
    return {seam_between(a1, a2, a3), seam_between(a2, a3, a1), seam_between(a3, a1, a2)};
}

CollarData collar_width(double eta, double alpha, double beta) {
    check_length(eta, "eta");
    check_length(alpha, "alpha");
    check_length(beta, "beta");
    CollarData c;
    c.eta = eta;
    c.alpha = alpha;
    c.beta = beta;
    c.width = detail::collar_width_closed(eta, alpha, beta);
    c.seam = seam_between(alpha / 2, eta / 2, beta / 2);
    return c;
}

CollarGap collar_asymptotic_gap(double eta, double alpha, double beta) {
    if (!(eta > 1.0))
        throw std::invalid_argument("collar_asymptotic_gap requires eta > 1");
    const CollarData c = collar_width(eta, alpha, beta);
    const double lin = std::max({(alpha - eta) / 2, (beta - eta) / 2, (alpha + beta - eta) / 4, 0.0});
    CollarGap g;
    g.gap = c.width - lin;
    g.length_margin = 4 * c.width + eta + kCollarGapBound - (alpha + beta);
    return g;
}

double xi_length_bound(double eta, double eta_tilde, double d) {
    if (!(eta > 0) || !(eta_tilde > 0) || d < 0)
        throw std::domain_error("xi_length_bound: lengths must be positive, d nonnegative");
    return eta + eta_tilde + 2 * d;
}

} // namespace sklab
