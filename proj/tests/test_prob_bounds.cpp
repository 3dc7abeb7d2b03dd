#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "sklab/prob_bounds.hpp"
#include "sklab/report.hpp"

using namespace sklab;
using namespace sklab::pb;

TEST_CASE("schedule admissibility on the geometric grid") {
    const auto grid = geometric_grid();
    REQUIRE(grid.size() == 7);
    const auto s = half_log_schedule(1);
    const auto c = check_schedule(s, grid);
    CHECK(c.lengths_above_one);
    CHECK(c.sum_increasing);
    CHECK(c.ratio_below_one);
    CHECK(c.max_sum_ratio_to_log == doctest::Approx(0.5));

    // two components of (1/4) log g each fail the >1 test at g = 1000
    const auto s4 = half_log_schedule(2);
    const auto c4 = check_schedule(s4, {1e3});
    CHECK(c4.max_sum_ratio_to_log == doctest::Approx(0.5));
    CHECK(c4.lengths_above_one); // (1/4) log 1000 = 1.73 > 1
}

TEST_CASE("collar failure chains decay and cross the threshold") {
    const auto grid = geometric_grid();
    const auto s = half_log_schedule(2);
    const auto [pair_chain, self_chain] = collar_failure_bounds(s, 0.1, grid);

    // anchor g = 1: first expression reduces to L1 L2
    const auto anchor = collar_failure_bounds(s, 0.1, {std::exp(1.0)});
    const double l = 0.25 * 1.0; // each component (1/4) log g at log g = 1
    CHECK(anchor.first.samples[0].second == doctest::Approx(l * l / std::exp(0.6)));

    CHECK(pair_chain.decreasing_from(1e4));
    CHECK(self_chain.decreasing_from(1e4));
    CHECK(pair_chain.top_value() < 1e-3);
    // the self-pair chain decays like g^{-2 eps}: at eps = 0.1 it is
    // still 6.8 at g = 1e9 (the 1e-3 crossing sits near 1e33)
    CHECK(self_chain.top_value() == doctest::Approx(std::pow(std::log(1e9), 2) / std::pow(1e9, 0.2)));
    CHECK(self_chain.top_value() < self_chain.samples.front().second);

    // curve 2 at g = 1e6 exceeds its value at g = 1e9
    CHECK(self_chain.samples[3].second > self_chain.top_value());

    // tail monotonicity threshold: decreasing beyond e^{1/eps}
    const double g0 = std::exp(1.0 / 0.1);
    auto fine = collar_failure_bounds(s, 0.1, geometric_grid(g0 * 1.01, g0 * 1e4, 4));
    CHECK(fine.second.decreasing_from(g0));

    CHECK_THROWS_AS(collar_failure_bounds(s, 0.7, grid), std::invalid_argument);
}

TEST_CASE("multicurve expectation bound") {
    // g = 1 anchor: structural part is e^{2L}
    const auto b1 = multicurve_expectation_bound(1.0, 1, 1, 3.0);
    CHECK(b1.structural == doctest::Approx(std::exp(6.0)));

    // window substitution L = (1/2 - eps) log g scales as g^{(1-2eps)-m}
    const double eps = 0.1;
    for (double g : {1e4, 1e6, 1e8}) {
        const double L = (0.5 - eps) * std::log(g);
        const auto b = multicurve_expectation_bound(g, 1, 1, L);
        CHECK(b.structural == doctest::Approx(std::pow(g, (1 - 2 * eps) - 1)).epsilon(1e-9));
    }
    // and decays monotonically along the grid for m = 1 (as g^{-2 eps})
    double prev = 1e300;
    for (double g : geometric_grid(1e4, 1e9)) {
        const auto b = multicurve_expectation_bound(g, 1, 1, (0.5 - eps) * std::log(g));
        CHECK(b.structural < prev);
        prev = b.structural;
    }
    CHECK(prev == doctest::Approx(std::pow(1e9, -0.2)));

    // inner series against its closed bound over (1, 100]
    for (double L = 1.001; L <= 100.0; L += 0.75) {
        const auto b = multicurve_expectation_bound(2.0, 1, 1, L);
        CHECK(b.inner_sum <= b.inner_bound);
        CHECK(b.inner_sum > 0.5 * b.inner_bound / (2 * std::sqrt(M_PI) * std::pow(L, 0.25) + 1));
    }
    CHECK_THROWS_AS(multicurve_expectation_bound(2.0, 1, 1, 0.5), std::invalid_argument);
}

TEST_CASE("arc count cap") {
    // m (1-2eps) log g <= c1 k pi
    CHECK(max_arc_count(0.1, 10, 0.1, std::exp(1.0)) == (long)std::floor(0.1 * 10 * M_PI / 0.8));
    CHECK(max_arc_count(0.1, 0, 0.1, 100.0) == 0);
    const long m = max_arc_count(0.11, 20, 0.05, 1e6);
    CHECK(m * (1 - 2 * 0.05) * std::log(1e6) <= 0.11 * 20 * M_PI + 1e-9);
}

TEST_CASE("half-surface bound: table-backed and symbolic") {
    wp::VolumeTable table;
    const auto hb = half_surface_bound(table, 3, 1, 2, 0.05, 0.08, 2.0);
    CHECK(hb.table_backed);
    CHECK(hb.value > 0);

    // m = 0 degenerates to the boundary-only factor W_0 treated as 1
    const auto h0 = half_surface_bound(table, 3, 1, 0, 0.05, 0.08, 2.0);
    CHECK(h0.table_backed);
    const double expect = std::exp((0.08 / 0.05) * 2.0);
    CHECK(static_cast<double>(h0.value) ==
          doctest::Approx(expect * static_cast<double>(table.tilde_w(5).to_real()) /
                          static_cast<double>(table.get(3, 1).at_zero().to_real())));

    const auto sym = half_surface_bound(table, 8, 1, 9, 0.05, 0.08, 2.0);
    CHECK_FALSE(sym.table_backed);
    CHECK(sym.symbolic.find("W(9)") != std::string::npos);

    CHECK_THROWS_AS(half_surface_bound(table, 3, 1, 1, 0.1, 0.05, 2.0), std::invalid_argument);
}

TEST_CASE("reindexing inequality holds exactly on tabled pairs") {
    wp::VolumeTable table;
    for (int K : {4, 5, 6, 7, 8})
        for (double ep : {0.01, 0.1, 0.3}) {
            // the reindexing range: K/2 <= m <= (1 + eps')K/2
            const int m_hi = (int)std::floor((1 + ep) * K / 2.0);
            for (int m = (K + 1) / 2; m <= m_hi && m < K; ++m) {
                if (!table.tilde_w_available(m) || !table.tilde_w_available(K - m)) continue;
                CHECK(reindex_inequality_holds(table, K, m, 0.05, ep));
            }
        }
    // eps' = 0 at the midpoint: both sides coincide
    CHECK(reindex_inequality_holds(table, 6, 3, 0.05, 0.0));
}

TEST_CASE("omega windows") {
    const auto grid = geometric_grid();
    const auto rep = admissibility_and_windows(
        half_log_schedule(1), [](double g) { return std::sqrt(std::log(std::log(g))); }, grid);
    CHECK(rep.schedule.ratio_below_one);
    CHECK(rep.omega_unbounded);
    CHECK(rep.omega_ratio_vanishing);
    CHECK(rep.lines.size() == grid.size());

    // window at g = e^e: center 2e - 4
    const auto one = admissibility_and_windows(
        half_log_schedule(1), [](double) { return 1.0; }, {std::exp(std::exp(1.0))});
    std::ostringstream want;
    want << 2 * std::exp(1.0) - 4 - 1;
    CHECK(one.lines[0].find("window=[") != std::string::npos);
}

TEST_CASE("threshold constants at 30+ digits") {
    const auto a = ln2_over_2pi_digits(32);
    CHECK(a.substr(0, 7) == "0.11031");
    const auto b = cheeger_threshold_digits(32);
    CHECK(b.substr(0, 7) == "0.09935");
    const auto c = assembled_constant_digits(32);
    // (1/2)(0.0993569...)/4 = 0.0124196...
    CHECK(c.substr(0, 7) == "0.01241");
    MESSAGE("ln2/2pi = ", a, "  threshold = ", b, "  assembled = ", c);
}

TEST_CASE("csv and svg artifacts") {
    std::ostringstream csv;
    write_csv(csv, {"label", "g", "value"}, {{"x", "10", "0.5"}, {"x", "100", "0.25"}});
    CHECK(csv.str() == "label,g,value\nx,10,0.5\nx,100,0.25\n");
    CHECK_THROWS_AS(write_csv(csv, {"a"}, {{"1", "2"}}), std::invalid_argument);

    DecayCurve c;
    c.label = "demo";
    c.samples = {{1e3, 1e-1}, {1e4, 1e-2}, {1e5, 1e-3}};
    std::ostringstream svg;
    write_svg_loglog(svg, {c});
    CHECK(svg.str().find("<svg") == 0);
    CHECK(svg.str().find("polyline") != std::string::npos);
    CHECK(svg.str().find("demo") != std::string::npos);

    CHECK(config_hash("abc") == config_hash("abc"));
    CHECK(config_hash("abc") != config_hash("abd"));
    CHECK(config_hash("x").size() == 16);
}
