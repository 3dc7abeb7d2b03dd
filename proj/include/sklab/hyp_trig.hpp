#pragma once

// Right-angled hexagon trigonometry for pairs of pants: orthogeodesic
// seam lengths, half-collar widths, and the associated length bounds.
// All formulas are evaluated in cancellation-free form; inputs outside
// [1e-6, 50] are rejected rather than computed.

#include <array>
#include <cmath>

#include "sklab/hyperboloid.hpp"

namespace sklab {

// A right-angled hexagon with alternating cuff half-sides a[i] and seam
// sides b[i]. Geometric cyclic order is (a1, b2, a2, b3, a3, b1): the
// seam b[i] is adjacent to a[i] and a[(i+2)%3] and opposite a[(i+1)%3],
// so that cosh b1 = (cosh a2 + cosh a1 cosh a3) / (sinh a1 sinh a3) and
// cyclic permutations.
struct Hexagon {
    std::array<double, 3> a;
    std::array<double, 3> b;
};

struct SeamLengths {
    double b12, b23, b31; // seam joining cuffs (i,j), perpendicular to both
};

struct CollarData {
    double eta, alpha, beta; // boundary and its two pants partners
    double width;            // maximal half-collar width d of eta
    double seam;             // orthogeodesic joining eta and alpha
};

struct CollarGap {
    double gap;            // width - max{(a-e)/2, (b-e)/2, (a+b-e)/4, 0}
    double length_margin;  // 4d + eta + M - (alpha + beta), nonnegative on the tested grid
};

// Empirical uniform bound on |CollarGap::gap| over the test grid
// eta, alpha, beta in [1.1, 40] (frozen by a sweep in the test suite).
inline constexpr double kCollarGapBound = 3.0;

// Valid length range guard shared by all operations.
void check_length(double l, const char* what);

namespace detail {

// acosh(1 + x) without cancellation for small x.
template <typename S>
S acosh1p(S x) {
    using std::log1p, std::sqrt;
    if (x < S(0)) x = S(0);
    return S(log1p(x + S(sqrt(x * (S(2) + x)))));
}

// Seam adjacent to half-sides u and v with opposite half-side w:
// cosh s = (cosh w + cosh u cosh v) / (sinh u sinh v), computed via
// cosh s - 1 = (cosh w + cosh(u - v)) / (sinh u sinh v), all positive.
template <typename S>
S seam_between(S u, S v, S w) {
    using std::cosh, std::sinh;
    const S x = (S(cosh(w)) + S(cosh(u - v))) / (S(sinh(u)) * S(sinh(v)));
    return acosh1p(x);
}

// Half-collar width of eta in the pants (eta, alpha, beta), closed form.
template <typename S>
S collar_width_closed(S eta, S alpha, S beta) {
    using std::cosh, std::sinh, std::sqrt;
    const S ce = S(cosh(eta / 2)), ca = S(cosh(alpha / 2)), cb = S(cosh(beta / 2));
    const S se = S(sinh(eta / 2));
    const S num = cb * cb + ca * ca + S(2) * ca * cb * ce;
    const S n_full = num + ce * ce - S(1);
    const S x = num / (se * (S(sqrt(n_full)) + se)); // cosh d - 1
    return acosh1p(x);
}

// Walk sides (a1, b2, a2, b3, a3, b1) of the hexagon with the given cuff
// lengths, all in the scalar type S.
template <typename S>
std::array<S, 6> hexagon_sides_from_cuffs(S l1, S l2, S l3) {
    const S a1 = l1 / 2, a2 = l2 / 2, a3 = l3 / 2;
    const S b1 = seam_between(a1, a3, a2);
    const S b2 = seam_between(a2, a1, a3);
    const S b3 = seam_between(a3, a2, a1);
    return {a1, b2, a2, b3, a3, b1};
}

} // namespace detail

// Hexagon with a[i] = l[i]/2 and seams from the right-angled relations.
Hexagon hexagon_from_cuffs(double l1, double l2, double l3);

// Max relative error over the three seam relations.
double hexagon_relation_error(const Hexagon& h);

// Walk a closed right-angled polygon in the hyperboloid model starting
// at the origin along the x-axis geodesic: vertex[k] -> vertex[k+1]
// spans side k. Templated so oracles can run in quad precision.
template <typename S>
std::array<hyp::V3<S>, 6> walk_right_angled_hexagon(const std::array<S, 6>& sides) {
    using std::atan;
    std::array<hyp::V3<S>, 6> verts;
    hyp::M3<S> frame;
    const hyp::M3<S> turn = hyp::rotate(S(2) * S(atan(S(1)))); // pi/2
    for (int k = 0; k < 6; ++k) {
        verts[k] = hyp::apply(frame, hyp::origin<S>());
        frame = hyp::mul(hyp::mul(frame, hyp::translate_x(sides[k])), turn);
    }
    return verts;
}

// Sides of a hexagon in geometric cyclic order (a1, b2, a2, b3, a3, b1).
std::array<double, 6> hexagon_walk_sides(const Hexagon& h);

// Vertices of the hexagon realized in the hyperboloid model.
std::array<hyp::Vec3, 6> realize_hexagon(const Hexagon& h);

// Orthogeodesic seam lengths of the pair of pants with the given cuff
// lengths. Symmetric under permuting cuffs with matching relabeling.
SeamLengths pants_seams(double l1, double l2, double l3);

// Maximal half-collar width of eta inside the pants (eta, alpha, beta):
// cosh d = sinh(alpha/2) sinh(seam), equal to the closed form
// sqrt(ch^2(b/2)+ch^2(a/2)+ch^2(e/2)+2 ch(a/2)ch(b/2)ch(e/2)-1)/sinh(e/2).
CollarData collar_width(double eta, double alpha, double beta);

// Deviation of the collar width from its piecewise-linear asymptote;
// requires eta > 1.
CollarGap collar_asymptotic_gap(double eta, double alpha, double beta);

// Upper bound eta + eta_tilde + 2d for the length of a geodesic bounding
// a pair of pants together with eta and eta_tilde at seam distance d.
double xi_length_bound(double eta, double eta_tilde, double d);

} // namespace sklab
