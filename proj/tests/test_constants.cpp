#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "sklab/constants.hpp"
#include "sklab/hyp_trig.hpp"
#include "sklab/steklov.hpp"
#include "sklab/surface_builder.hpp"

using namespace sklab;

namespace {

PantsGraph single_pants(double l1, double l2, double l3) {
    PantsGraph g;
    g.n_pants = 1;
    g.boundaries = {{0, 0, l1}, {0, 1, l2}, {0, 2, l3}};
    return g;
}

PantsGraph one_holed_torus(double interior, double boundary, double twist) {
    PantsGraph g;
    g.n_pants = 1;
    g.gluings = {{0, 1, 0, 2, interior, twist}};
    g.boundaries = {{0, 0, boundary}};
    return g;
}

PantsGraph four_holed(double l, double interior, double twist) {
    PantsGraph g;
    g.n_pants = 2;
    g.gluings = {{0, 2, 1, 0, interior, twist}};
    g.boundaries = {{0, 0, l}, {0, 1, l}, {1, 1, l}, {1, 2, l}};
    return g;
}

bool has_kinds(const CurveSystem& c, std::vector<SegmentKind> kinds) {
    if (c.segments.size() != kinds.size()) return false;
    std::vector<SegmentKind> got;
    for (const auto& s : c.segments) got.push_back(s.kind);
    std::sort(got.begin(), got.end());
    std::sort(kinds.begin(), kinds.end());
    return got == kinds;
}

} // namespace

TEST_CASE("symmetric pants: hexagon halving and self-arc candidates with exact values") {
    const auto cands = enumerate_candidates(single_pants(2, 2, 2));
    const auto seams = pants_seams(2, 2, 2);
    const double b = seams.b12;
    const double d2 = 2 * collar_width(2, 2, 2).width;

    // halving along the three seams: regions of one half-pants
    bool found_halving = false, found_selfarc = false;
    for (const auto& c : cands) {
        if (has_kinds(c, {SegmentKind::BoundaryArc, SegmentKind::BoundaryArc, SegmentKind::BoundaryArc}) &&
            c.omega_area == doctest::Approx(M_PI)) {
            found_halving = true;
            CHECK(c.total_length == doctest::Approx(3 * b).epsilon(1e-12));
            CHECK(c.jammes_exterior == doctest::Approx(3.0).epsilon(1e-12));
            CHECK(c.jammes_admissible);
            CHECK(c.geodesic_system);
        }
        if (has_kinds(c, {SegmentKind::BoundaryArc}) && c.segments[0].length == doctest::Approx(d2)) {
            found_selfarc = true;
            CHECK(c.omega_area == doctest::Approx(M_PI));
            // symmetric pants: the arc feet bisect the cuff
            CHECK(c.jammes_exterior == doctest::Approx(3.0).epsilon(1e-9));
            CHECK(c.geodesic_system);
        }
    }
    CHECK(found_halving);
    CHECK(found_selfarc);
}

TEST_CASE("symmetric pants report: the self-arc wins all three constants") {
    const auto mesh = build_mesh(single_pants(2, 2, 2), 0.3);
    const auto cands = enumerate_candidates(single_pants(2, 2, 2));
    const auto rep = estimate_constants(cands, mesh);
    const double d2 = 2 * collar_width(2, 2, 2).width;
    CHECK(rep.h_geodesic_upper == doctest::Approx(d2 / M_PI).epsilon(1e-9));
    CHECK(rep.h_jammes_upper == doctest::Approx(d2 / 3.0).epsilon(1e-9));
    CHECK(rep.h_cheeger_upper <= d2 / M_PI + 1e-9);
    CHECK(rep.geodesic_companion ==
          doctest::Approx(rep.h_geodesic_upper / (rep.h_geodesic_upper + 1)));
    // report-level companion consistency
    CHECK(rep.h_cheeger_upper >= rep.geodesic_companion - 1e-9);
}

TEST_CASE("self-arc foot positions: perpendicularity oracle on random pants") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> len(0.8, 6.0);
    for (int it = 0; it < 50; ++it) {
        const double l1 = len(rng), l2 = len(rng), l3 = len(rng);
        const auto hex = hexagon_from_cuffs(l1, l2, l3);
        const auto v = realize_hexagon(hex);
        for (int i = 0; i < 3; ++i) {
            const int side = 2 * i, far = (2 * i + 3) % 6;
            const auto n1 = hyp::geodesic_normal(v[side], v[(side + 1) % 6]);
            const auto n2 = hyp::geodesic_normal(v[far], v[(far + 1) % 6]);
            const auto foot = hyp::perpendicular_foot(n1, n2);
            const double u = hyp::dist(v[side], foot);
            const double li = std::array<double, 3>{l1, l2, l3}[i];
            CHECK(u > 0);
            CHECK(u < li / 2);
            // the foot realizes the collar width against the far seam
            const double w = collar_width(li, std::array<double, 3>{l1, l2, l3}[(i + 1) % 3],
                                          std::array<double, 3>{l1, l2, l3}[(i + 2) % 3])
                                 .width;
            CHECK(hyp::point_line_distance(foot, n2) == doctest::Approx(w).epsilon(1e-9));
        }
    }
}

TEST_CASE("one-holed torus: no bare multicurve, but arc+cuff systems exist") {
    const auto cands = enumerate_candidates(one_holed_torus(2, 2, 0.3));
    bool bare_multicurve = false, arc_plus_cuff = false, two_arc_region = false;
    for (const auto& c : cands) {
        if (has_kinds(c, {SegmentKind::ClosedGeodesic})) bare_multicurve = true;
        if (has_kinds(c, {SegmentKind::BoundaryArc, SegmentKind::ClosedGeodesic})) {
            arc_plus_cuff = true;
            CHECK(c.separates);
            CHECK(c.geodesic_system);
            CHECK(c.area_small == doctest::Approx(M_PI));
        }
        // hexagon region: three seams (each ending on the interior
        // curve, so mere geodesic pieces) plus partial cuff arcs
        int n_pieces = 0;
        for (const auto& s : c.segments) n_pieces += s.kind == SegmentKind::GeodesicPiece;
        if (n_pieces == (int)c.segments.size() && n_pieces >= 4 &&
            c.omega_area == doctest::Approx(M_PI)) {
            two_arc_region = true;
            CHECK_FALSE(c.geodesic_system);
            CHECK(c.jammes_admissible);
        }
    }
    CHECK_FALSE(bare_multicurve); // the single interior cuff does not separate
    CHECK(arc_plus_cuff);
    CHECK(two_arc_region);
}

TEST_CASE("four-holed sphere: interior cuff separates; offsets follow the length law") {
    const double interior = 2.0;
    const auto cands = enumerate_candidates(four_holed(1.8, interior, 0.4));
    const CurveSystem* base = nullptr;
    std::vector<const CurveSystem*> offsets;
    for (const auto& c : cands) {
        if (has_kinds(c, {SegmentKind::ClosedGeodesic}) &&
            c.segments[0].length == doctest::Approx(interior))
            base = &c;
        if (c.segments.size() == 1 && c.segments[0].kind == SegmentKind::EquidistantCurve)
            offsets.push_back(&c);
    }
    REQUIRE(base != nullptr);
    CHECK(base->separates);
    CHECK(base->area_small == doctest::Approx(2 * M_PI));
    CHECK(base->jammes_admissible);
    CHECK(base->jammes_exterior == doctest::Approx(2 * 1.8));

    REQUIRE(!offsets.empty());
    for (const auto* o : offsets) {
        // length = l cosh t and swept area = l sinh t are linked by
        // len^2 - (area gain)^2 = l^2
        const double len = o->segments[0].length;
        const double gain = o->omega_area - 2 * M_PI;
        CHECK(len * len - gain * gain == doctest::Approx(interior * interior).epsilon(1e-9));
        CHECK(len > interior);
    }
}

TEST_CASE("closed surface: no admissible region, estimate throws") {
    PantsGraph closed;
    closed.n_pants = 2;
    closed.gluings = {{0, 0, 1, 0, 2.0, 0.0}, {0, 1, 1, 1, 2.0, 0.1}, {0, 2, 1, 2, 2.0, 0.2}};
    const auto mesh = build_mesh(closed, 0.3);
    const auto cands = enumerate_candidates(closed);
    CHECK(!cands.empty());
    for (const auto& c : cands) CHECK_FALSE(c.jammes_admissible);
    CHECK_THROWS_AS((void)estimate_constants(cands, mesh), std::invalid_argument);
}

TEST_CASE("equal-area split uses the common ratio") {
    CurveSystem c;
    c.segments = {{SegmentKind::ClosedGeodesic, 2.0}};
    c.total_length = 2.0;
    c.area_small = c.area_large = 3.0;
    CHECK(c.cheeger_value() == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("collar quotient identity: offsets never beat the geodesic companion") {
    // l' cosh d / (A' + l' sinh d) >= H/(H+1) whenever H <= l'/A'
    std::mt19937 rng(33);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    int violations = 0;
    for (int it = 0; it < 10000; ++it) {
        const double lp = u(rng) * 20, ap = u(rng) * 30, d = u(rng) * 4 - 0.04;
        const double dd = std::max(0.0, d);
        const double h = u(rng) * (lp / ap);
        const double lhs = lp * std::cosh(dd) / (ap + lp * std::sinh(dd));
        if (!(lhs >= h / (h + 1) - 1e-12)) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("level-set measurement against disk geometry") {
    const auto mesh = build_hyperbolic_disk(1.0, 0.1);
    // nodal field = distance to the center, read off the chart corners
    std::vector<double> radius(mesh.n_vertices, -1);
    for (size_t f = 0; f < mesh.triangles.size(); ++f)
        for (int k = 0; k < 3; ++k) {
            const int v = mesh.triangles[f][k];
            if (radius[v] < 0) radius[v] = std::acosh(std::max(1.0, mesh.corners[f][k][2]));
        }
    double prev_area = 1e18;
    for (double r : {0.3, 0.5, 0.7}) {
        const auto slice = measure_level_set(mesh, radius, r);
        CHECK(slice.isoline_length == doctest::Approx(2 * M_PI * std::sinh(r)).epsilon(0.02));
        const double annulus = 2 * M_PI * (std::cosh(1.0) - std::cosh(r));
        CHECK(slice.superlevel_area == doctest::Approx(annulus).epsilon(0.02));
        CHECK(slice.superlevel_area < prev_area); // superlevel areas shrink in the level
        prev_area = slice.superlevel_area;
        CHECK(slice.exterior_length == doctest::Approx(2 * M_PI * std::sinh(1.0)).epsilon(0.02));
    }
}

TEST_CASE("offset formulas match mesh level sets of the cuff distance field") {
    const auto graph = single_pants(2, 2, 2);
    const auto mesh = build_mesh(graph, 0.1);
    const auto field = cuff_distance_field(mesh, graph, 0);
    for (double t : {0.3, 0.6}) {
        const auto slice = measure_level_set(mesh, field, t);
        // the collar sublevel is swept by the offset of the length-2 cuff
        CHECK(slice.isoline_length == doctest::Approx(2 * std::cosh(t)).epsilon(0.02));
        const double collar_area = mesh_area(mesh) - slice.superlevel_area;
        CHECK(collar_area == doctest::Approx(2 * std::sinh(t)).epsilon(0.02));
    }
}

TEST_CASE("disk level-set sweep refines the report and the slack is nonnegative") {
    const auto mesh = build_hyperbolic_disk(1.0, 0.08);
    const auto spec = steklov_spectrum(mesh, 1);

    ConstantsReport rep;
    rep.total_area = mesh_area(mesh);
    rep.h_cheeger_upper = 1e9;
    rep.h_jammes_upper = 1e9;
    auto swept = levelset_sweep(spec, mesh, rep);
    CHECK(swept.levelset_used);
    CHECK(swept.h_cheeger_upper < 1e9);
    CHECK(swept.h_jammes_upper < 1e9);

    const double slack = jammes_check(spec.eigenvalues[1], swept);
    MESSAGE("disk slack = ", slack, " hC = ", swept.h_cheeger_upper, " hJ = ", swept.h_jammes_upper);
    CHECK(slack >= -1e-6);
    CHECK(swept.jammes_slack == slack);
    // level sets of the first eigenfunction are near-half-disks, so the
    // quotient approaches diameter / half boundary = 2R/(pi sinh R)
    CHECK(swept.h_jammes_upper == doctest::Approx(2.0 / (M_PI * std::sinh(1.0))).epsilon(0.1));
}

TEST_CASE("levelset_sweep rejects constant data") {
    const auto mesh = build_hyperbolic_disk(1.0, 0.2);
    SteklovSpectrum fake;
    fake.eigenfunctions = {std::vector<double>(mesh.n_vertices, 1.0),
                           std::vector<double>(mesh.n_vertices, 1.0)};
    ConstantsReport rep;
    CHECK_THROWS_AS((void)levelset_sweep(fake, mesh, rep), std::runtime_error);
}

TEST_CASE("proof-pipeline calculator") {
    const auto r = large_genus_case_bounds(std::exp(10.0), 0.1);
    CHECK(r.half_collar_width == doctest::Approx(4.0));
    CHECK(r.window_low == doctest::Approx(19.0));
    CHECK(r.window_high == doctest::Approx(20.0));
    CHECK(r.jammes_case_crossing == doctest::Approx(0.4));
    CHECK(r.factor_crossing == doctest::Approx(3.5));
    CHECK(r.jammes_lower == doctest::Approx(0.4));

    // shrinking eps: crossing bound -> 1/2, threshold -> log2/(2pi+log2)
    const auto r0 = large_genus_case_bounds(100.0, 1e-9);
    CHECK(r0.jammes_case_crossing == doctest::Approx(0.5));
    CHECK(r0.cheeger_threshold == doctest::Approx(std::log(2.0) / (2 * M_PI + std::log(2.0))));

    // all reported lower bounds nonincreasing in eps
    double prev_j = 1e9, prev_c = 1e9, prev_a = 1e9;
    for (double eps : {0.01, 0.05, 0.1, 0.2, 0.24}) {
        const auto rr = large_genus_case_bounds(50.0, eps);
        CHECK(rr.jammes_lower <= prev_j);
        CHECK(rr.cheeger_lower <= prev_c);
        CHECK(rr.assembled_sigma_lower <= prev_a);
        prev_j = rr.jammes_lower;
        prev_c = rr.cheeger_lower;
        prev_a = rr.assembled_sigma_lower;
    }
    CHECK_THROWS_AS(large_genus_case_bounds(10.0, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(large_genus_case_bounds(1.0, 0.1), std::invalid_argument);
}

TEST_CASE("quarter product is bilinear in the two constants") {
    ConstantsReport a;
    a.h_cheeger_upper = 0.3;
    a.h_jammes_upper = 0.7;
    ConstantsReport b;
    b.h_cheeger_upper = 0.6;
    b.h_jammes_upper = 1.4;
    const double slack_a = 1.0 - jammes_check(1.0, a);
    const double slack_b = 1.0 - jammes_check(1.0, b);
    CHECK(slack_b == doctest::Approx(4 * slack_a));
}

TEST_CASE("threshold constant digits") {
    const auto s = cheeger_threshold_digits(30);
    CHECK(s.substr(0, 6) == "0.0993");
    MESSAGE("log2/(2pi+log2) = ", s);
}
