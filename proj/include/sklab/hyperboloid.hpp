#pragma once

// Hyperboloid model of the hyperbolic plane: points live on the sheet
// <x,x> = -1, x2 > 0 of R^{2,1} with the Minkowski form
// <x,y> = x0*y0 + x1*y1 - x2*y2. Isometries are 3x3 matrices preserving
// the form; geodesics are intersections with planes through the origin
// and are encoded by their unit spacelike normals.
//
// Everything is templated on the scalar so that verification oracles can
// run in quad precision; production code uses double.

#include <array>
#include <cmath>
#include <stdexcept>

namespace sklab::hyp {

template <typename S>
using V3 = std::array<S, 3>;

template <typename S>
struct M3 {
    std::array<S, 9> m{S(1), S(0), S(0), S(0), S(1), S(0), S(0), S(0), S(1)};
    S operator()(int r, int c) const { return m[3 * r + c]; }
    S& operator()(int r, int c) { return m[3 * r + c]; }
};

using Vec3 = V3<double>;
using Mat3 = M3<double>;

template <typename S>
S minkowski(const V3<S>& a, const V3<S>& b) {
    return a[0] * b[0] + a[1] * b[1] - a[2] * b[2];
}

template <typename S>
V3<S> add(const V3<S>& a, const V3<S>& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

template <typename S>
V3<S> scale(const V3<S>& a, S s) {
    return {a[0] * s, a[1] * s, a[2] * s};
}

template <typename S>
M3<S> mul(const M3<S>& a, const M3<S>& b) {
    M3<S> r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            S s{0};
            for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

template <typename S>
V3<S> apply(const M3<S>& a, const V3<S>& v) {
    V3<S> r;
    for (int i = 0; i < 3; ++i) r[i] = a(i, 0) * v[0] + a(i, 1) * v[1] + a(i, 2) * v[2];
    return r;
}

template <typename S>
V3<S> origin() {
    return {S(0), S(0), S(1)};
}

// Translation by t along the geodesic through the origin in direction (1,0).
template <typename S>
M3<S> translate_x(S t) {
    using std::cosh, std::sinh;
    M3<S> r;
    const S c = cosh(t), s = sinh(t);
    r(0, 0) = c;     r(0, 1) = S(0); r(0, 2) = s;
    r(1, 0) = S(0);  r(1, 1) = S(1); r(1, 2) = S(0);
    r(2, 0) = s;     r(2, 1) = S(0); r(2, 2) = c;
    return r;
}

// Rotation by angle a about the origin.
template <typename S>
M3<S> rotate(S a) {
    using std::cos, std::sin;
    M3<S> r;
    const S c = cos(a), s = sin(a);
    r(0, 0) = c;    r(0, 1) = -s;   r(0, 2) = S(0);
    r(1, 0) = s;    r(1, 1) = c;    r(1, 2) = S(0);
    r(2, 0) = S(0); r(2, 1) = S(0); r(2, 2) = S(1);
    return r;
}

template <typename S>
S dist(const V3<S>& p, const V3<S>& q) {
    using std::acosh;
    const S c = -minkowski(p, q);
    return c <= S(1) ? S(0) : S(acosh(c));
}

// Project a near-hyperboloid vector back onto the sheet.
template <typename S>
V3<S> normalize_point(const V3<S>& p) {
    using std::sqrt;
    const S s = sqrt(-minkowski(p, p));
    V3<S> r = scale(p, S(1) / s);
    if (r[2] < S(0)) r = scale(r, S(-1));
    return r;
}

// Point at arc length s along the geodesic from p toward q.
template <typename S>
V3<S> geodesic_point(const V3<S>& p, const V3<S>& q, S s) {
    using std::cosh, std::sinh, std::sqrt;
    const S d = dist(p, q);
    if (d == S(0)) return p;
    V3<S> u = add(q, scale(p, minkowski(p, q)));
    const S un = sqrt(minkowski(u, u));
    u = scale(u, S(1) / un);
    return normalize_point(add(scale(p, S(cosh(s))), scale(u, S(sinh(s)))));
}

template <typename S>
V3<S> midpoint(const V3<S>& p, const V3<S>& q) {
    return normalize_point(add(p, q));
}

// Minkowski cross product: <cross(a,b), c> = det(a,b,c).
template <typename S>
V3<S> cross(const V3<S>& p, const V3<S>& q) {
    return {p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], -(p[0] * q[1] - p[1] * q[0])};
}

// Unit spacelike normal of the geodesic through two distinct points.
template <typename S>
V3<S> geodesic_normal(const V3<S>& p, const V3<S>& q) {
    using std::sqrt;
    V3<S> n = cross(p, q);
    const S nn = minkowski(n, n);
    if (nn <= S(0)) throw std::domain_error("geodesic_normal: points coincide or are antipodal");
    return scale(n, S(1) / S(sqrt(nn)));
}

// Intersection point of two crossing geodesics given by their normals.
template <typename S>
V3<S> line_intersection(const V3<S>& n1, const V3<S>& n2) {
    V3<S> p = cross(n1, n2);
    if (minkowski(p, p) >= S(0)) throw std::domain_error("line_intersection: lines do not cross");
    return normalize_point(p);
}

// Foot on line n1 of the common perpendicular between disjoint lines.
template <typename S>
V3<S> perpendicular_foot(const V3<S>& n1, const V3<S>& n2) {
    using std::sqrt;
    V3<S> m = cross(n1, n2); // normal of the common perpendicular
    const S mm = minkowski(m, m);
    if (mm <= S(0)) throw std::domain_error("perpendicular_foot: lines cross");
    m = scale(m, S(1) / S(sqrt(mm)));
    return line_intersection(n1, m);
}

// Distance between two disjoint geodesics given by unit normals; 0 if
// they intersect or are asymptotic.
template <typename S>
S line_distance(const V3<S>& n1, const V3<S>& n2) {
    using std::abs, std::acosh;
    const S c = abs(minkowski(n1, n2));
    return c <= S(1) ? S(0) : S(acosh(c));
}

template <typename S>
S point_line_distance(const V3<S>& p, const V3<S>& n) {
    using std::abs, std::asinh;
    return S(asinh(abs(minkowski(p, n))));
}

// Reflection across the geodesic with unit spacelike normal n.
template <typename S>
M3<S> reflect(const V3<S>& n) {
    M3<S> r;
    const S sgn[3] = {S(1), S(1), S(-1)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r(i, j) = (i == j ? S(1) : S(0)) - S(2) * n[i] * n[j] * sgn[j];
    return r;
}

} // namespace sklab::hyp
