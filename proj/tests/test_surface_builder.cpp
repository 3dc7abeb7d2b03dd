#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sklab/mesh.hpp"
#include "sklab/pants_graph.hpp"
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

PantsGraph closed_genus2(double l, double twist) {
    PantsGraph g;
    g.n_pants = 2;
    g.gluings = {{0, 0, 1, 0, l, twist}, {0, 1, 1, 1, l, 0.0}, {0, 2, 1, 2, l, -twist}};
    return g;
}

} // namespace

TEST_CASE("validate_graph basics") {
    CHECK(validate_graph(single_pants(2, 2, 2)).genus == 0);
    CHECK(validate_graph(single_pants(2, 2, 2)).n_boundary == 3);

    const auto closed = validate_graph(closed_genus2(2, 0));
    CHECK(closed.genus == 2);
    CHECK(closed.n_boundary == 0);

    PantsGraph four_holed;
    four_holed.n_pants = 2;
    four_holed.gluings = {{0, 2, 1, 0, 2.0, 0.0}};
    four_holed.boundaries = {{0, 0, 1.5}, {0, 1, 1.5}, {1, 1, 1.5}, {1, 2, 1.5}};
    const auto s04 = validate_graph(four_holed);
    CHECK(s04.genus == 0);
    CHECK(s04.n_boundary == 4);

    const auto s11 = validate_graph(one_holed_torus(2, 2, 0.5));
    CHECK(s11.genus == 1);
    CHECK(s11.n_boundary == 1);
}

TEST_CASE("validate_graph rejects defects") {
    PantsGraph reused = single_pants(2, 2, 2);
    reused.boundaries.push_back({0, 0, 1.0});
    CHECK_THROWS_AS(validate_graph(reused), std::invalid_argument);

    PantsGraph dangling;
    dangling.n_pants = 1;
    dangling.boundaries = {{0, 0, 1.0}, {0, 1, 1.0}};
    CHECK_THROWS_AS(validate_graph(dangling), std::invalid_argument);

    PantsGraph disconnected;
    disconnected.n_pants = 2;
    disconnected.boundaries = {{0, 0, 1}, {0, 1, 1}, {0, 2, 1}, {1, 0, 1}, {1, 1, 1}, {1, 2, 1}};
    CHECK_THROWS_AS(validate_graph(disconnected), std::invalid_argument);

    PantsGraph self_glued;
    self_glued.n_pants = 1;
    self_glued.gluings = {{0, 0, 0, 0, 1.0, 0.0}};
    self_glued.boundaries = {{0, 1, 1}, {0, 2, 1}};
    CHECK_THROWS_AS(validate_graph(self_glued), std::invalid_argument);
}

TEST_CASE("single pants mesh: area, boundary lengths, manifoldness") {
    const auto res = build_surface(single_pants(2, 2, 2), 0.2);
    const auto& m = res.mesh;
    check_mesh(m);
    CHECK(m.genus == 0);
    CHECK(m.n_boundary == 3);

    const double area = mesh_area(m);
    CHECK(std::abs(area - 2 * M_PI) / (2 * M_PI) < 0.02);

    const auto blen = mesh_boundary_lengths(m);
    REQUIRE(blen.size() == 3);
    for (double l : blen) CHECK(l == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("one-holed torus: single boundary of the requested length, area 2 pi") {
    const auto m = build_mesh(one_holed_torus(2.0, 3.0, 0.7), 0.15);
    check_mesh(m);
    CHECK(m.genus == 1);
    CHECK(m.n_boundary == 1);
    const auto blen = mesh_boundary_lengths(m);
    REQUIRE(blen.size() == 1);
    CHECK(blen[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(mesh_area(m) - 2 * M_PI) / (2 * M_PI) < 0.02);
}

TEST_CASE("closed genus-2 surface meshes and satisfies the curvature total") {
    const auto m = build_mesh(closed_genus2(2.5, 0.4), 0.25);
    check_mesh(m);
    CHECK(m.n_boundary == 0);
    CHECK(mesh_boundary_lengths(m).empty());
    const double target = 2 * M_PI * (2 * 2 - 2);
    CHECK(std::abs(mesh_area(m) - target) / target < 0.02);
}

TEST_CASE("refinement: area converges monotonically to the curvature total, determinism") {
    // flat-triangle areas on hyperbolic side lengths overshoot, so the
    // approach is monotone from above
    auto m = build_mesh(single_pants(2, 2.5, 3), 0.4);
    const double target = 2 * M_PI;
    double prev_gap = mesh_area(m) - target;
    CHECK(prev_gap > 0);
    for (int r = 0; r < 2; ++r) {
        m = refine_mesh(m);
        check_mesh(m);
        const double gap = mesh_area(m) - target;
        CHECK(gap > 0);
        CHECK(gap < prev_gap);
        CHECK(prev_gap / gap > 3.0); // near-quadratic
        prev_gap = gap;
    }

    const auto a = build_mesh(single_pants(2, 2.5, 3), 0.4);
    const auto b = build_mesh(single_pants(2, 2.5, 3), 0.4);
    CHECK(a.triangles == b.triangles);
    CHECK(a.edge_length == b.edge_length);
    CHECK(a.boundary_edges == b.boundary_edges);
}

TEST_CASE("refining a refined mesh equals two refinements applied in sequence") {
    const auto m = build_mesh(single_pants(2, 2, 2), 0.45);
    const auto once = refine_mesh(m);
    const auto twice_a = refine_mesh(once);
    const auto twice_b = refine_mesh(refine_mesh(m));
    CHECK(twice_a.triangles == twice_b.triangles);
    CHECK(twice_a.edge_length == twice_b.edge_length);
}

TEST_CASE("disk boundary chord defect shrinks quadratically with resolution") {
    // boundary edges are chords of the circle; rebuilding at finer
    // resolution shrinks the inscribed-polygon defect by ~4x per halving
    const double exact = 2 * M_PI * std::sinh(1.0);
    double res = 0.3;
    double prev = exact - mesh_boundary_lengths(build_hyperbolic_disk(1.0, res))[0];
    CHECK(prev > 0);
    for (int r = 0; r < 2; ++r) {
        res /= 2;
        const double defect = exact - mesh_boundary_lengths(build_hyperbolic_disk(1.0, res))[0];
        CHECK(defect > 0);
        CHECK(prev / defect > 3.0);
        prev = defect;
    }
}

TEST_CASE("twist equivariance: full twist returns the same isometry class") {
    const double l = 2.0;
    const auto a = build_mesh(one_holed_torus(l, 2.5, 0.3), 0.2);
    const auto b = build_mesh(one_holed_torus(l, 2.5, 0.3 + l), 0.2);
    std::vector<double> ea, eb;
    for (const auto& [e, v] : a.edge_length) ea.push_back(v);
    for (const auto& [e, v] : b.edge_length) eb.push_back(v);
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    REQUIRE(ea.size() == eb.size());
    for (size_t i = 0; i < ea.size(); ++i) CHECK(ea[i] == doctest::Approx(eb[i]).epsilon(1e-12));
}

TEST_CASE("boundary component labels follow the input order") {
    PantsGraph g;
    g.n_pants = 1;
    g.boundaries = {{0, 1, 2.0}, {0, 0, 1.6}, {0, 2, 2.4}}; // deliberately scrambled slots
    const auto m = build_mesh(g, 0.15);
    const auto blen = mesh_boundary_lengths(m);
    REQUIRE(blen.size() == 3);
    CHECK(blen[0] == doctest::Approx(2.0));
    CHECK(blen[1] == doctest::Approx(1.6));
    CHECK(blen[2] == doctest::Approx(2.4));
}

TEST_CASE("twist rounding error stays below half the resolution") {
    for (double tw : {0.0, 0.1, 0.37, 1.234, -0.6}) {
        const auto res = build_surface(one_holed_torus(2.0, 2.0, tw), 0.2);
        REQUIRE(res.twist_errors.size() == 1);
        CHECK(res.twist_errors[0] < 0.1);
    }
}

TEST_CASE("build guards") {
    CHECK_THROWS_AS(build_mesh(single_pants(2, 2, 2), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_mesh(single_pants(2, 2, 2), 0.6), std::invalid_argument);
    CHECK_THROWS_AS(build_hyperbolic_disk(1.0, 2.0), std::invalid_argument);
}

TEST_CASE("mesh io roundtrip; imported meshes cannot refine") {
    const auto m = build_mesh(single_pants(2, 2, 2), 0.3);
    std::stringstream ss;
    write_mesh(ss, m);
    const auto back = read_mesh(ss);
    CHECK(back.n_vertices == m.n_vertices);
    CHECK(back.triangles == m.triangles);
    CHECK(back.boundary_edges == m.boundary_edges);
    CHECK(back.edge_length.size() == m.edge_length.size());
    CHECK_FALSE(back.has_charts());
    CHECK_THROWS_AS(refine_mesh(back), std::runtime_error);
}

TEST_CASE("surface spec parsing") {
    const auto spec = parse_surface_spec(R"({
        "type": "pants", "pants": 1,
        "gluings": [[[0,1],[0,2], 2.0, 0.25]],
        "boundaries": [[0,0, 2.0]],
        "resolution": 0.2
    })");
    CHECK(spec.kind == SurfaceSpec::Kind::Pants);
    CHECK(spec.graph.n_pants == 1);
    REQUIRE(spec.graph.gluings.size() == 1);
    CHECK(spec.graph.gluings[0].twist == 0.25);
    CHECK(spec.resolution == 0.2);

    const auto disk = parse_surface_spec(R"({"type": "hyperbolic_disk", "radius": 1.0, "resolution": 0.1})");
    CHECK(disk.kind == SurfaceSpec::Kind::HyperbolicDisk);
    CHECK_THROWS(parse_surface_spec("{not json"));
    CHECK_THROWS(parse_surface_spec(R"({"type": "bagel"})"));
}
