#include "sklab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "sklab/constants.hpp"
#include "sklab/hyp_trig.hpp"
#include "sklab/prob_bounds.hpp"
#include "sklab/report.hpp"
#include "sklab/steklov.hpp"
#include "sklab/surface_builder.hpp"
#include "sklab/wp_volumes.hpp"

namespace sklab::verify {

namespace {

using clock_t_ = std::chrono::steady_clock;

double seconds_since(clock_t_::time_point t0) {
    return std::chrono::duration<double>(clock_t_::now() - t0).count();
}

struct CorpusEntry {
    std::string name;
    PantsGraph graph;
};

std::vector<CorpusEntry> corpus() {
    auto pants = [](double a, double b, double c) {
        PantsGraph g;
        g.n_pants = 1;
        g.boundaries = {{0, 0, a}, {0, 1, b}, {0, 2, c}};
        return g;
    };
    auto torus1 = [](double interior, double boundary, double twist) {
        PantsGraph g;
        g.n_pants = 1;
        g.gluings = {{0, 1, 0, 2, interior, twist}};
        g.boundaries = {{0, 0, boundary}};
        return g;
    };
    auto sphere4 = [](double l, double interior, double twist) {
        PantsGraph g;
        g.n_pants = 2;
        g.gluings = {{0, 2, 1, 0, interior, twist}};
        g.boundaries = {{0, 0, l}, {0, 1, l}, {1, 1, l}, {1, 2, l}};
        return g;
    };
    auto torus2 = [](double l1, double t1, double l2, double t2, double b1, double b2) {
        PantsGraph g;
        g.n_pants = 2;
        g.gluings = {{0, 1, 1, 1, l1, t1}, {0, 2, 1, 2, l2, t2}};
        g.boundaries = {{0, 0, b1}, {1, 0, b2}};
        return g;
    };
    auto genus2_1 = [](double la, double lb, double lc, double ld, double boundary, double tw) {
        PantsGraph g;
        g.n_pants = 3;
        g.gluings = {{0, 1, 1, 0, la, tw}, {0, 2, 2, 0, lb, -tw}, {1, 1, 1, 2, lc, 0.3}, {2, 1, 2, 2, ld, 0.6}};
        g.boundaries = {{0, 0, boundary}};
        return g;
    };
    return {
        {"pants_2_2_2", pants(2, 2, 2)},
        {"pants_1.5_2_3", pants(1.5, 2, 3)},
        {"pants_2.5_2.5_2.5", pants(2.5, 2.5, 2.5)},
        {"sphere4_1.8_i2.0_t0", sphere4(1.8, 2.0, 0.0)},
        {"sphere4_2.0_i2.2_t0.7", sphere4(2.0, 2.2, 0.7)},
        {"torus1_i2_b2_t0", torus1(2.0, 2.0, 0.0)},
        {"torus1_i2.4_b3_t0.9", torus1(2.4, 3.0, 0.9)},
        {"torus2_b1.8_2.0", torus2(2.0, 0.3, 2.2, -0.4, 1.8, 2.0)},
        {"torus2_b2.4_2.4", torus2(2.6, 0.0, 1.9, 0.8, 2.4, 2.4)},
        {"genus2_b2.0", genus2_1(2.0, 2.1, 2.2, 2.3, 2.0, 0.0)},
        {"genus2_b2.6", genus2_1(2.4, 1.9, 2.0, 2.5, 2.6, 0.45)},
    };
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

std::string fmt(double v, int prec = 6) {
    std::ostringstream os;
    os << std::setprecision(prec) << v;
    return os.str();
}

} // namespace

int thread_budget(int requested) {
    int cap = requested > 0 ? requested : (int)std::thread::hardware_concurrency();
    if (cap <= 0) cap = 1;
    if (const char* env = std::getenv("STEKLOV_LAB_THREADS")) {
        const int e = std::atoi(env);
        if (e > 0) cap = std::min(cap, e);
    }
    return cap;
}

std::vector<CriterionResult> run_acceptance(const Config& cfg) {
    std::vector<CriterionResult> results;
    const int threads = thread_budget(cfg.threads);
    std::filesystem::path out;
    if (cfg.out_dir) {
        out = *cfg.out_dir;
        std::filesystem::create_directories(out);
    }

    // ---- 1: hyperbolic disk oracle ------------------------------------
    {
        const auto t0 = clock_t_::now();
        const double exact = 1.0 / std::sinh(1.0);
        std::vector<double> errors;
        double sigma1 = 0, normalized = 0;
        for (double res : {4 * cfg.disk_resolution, 2 * cfg.disk_resolution, cfg.disk_resolution}) {
            const auto spec = steklov_spectrum(build_hyperbolic_disk(1.0, res), 1);
            errors.push_back(std::abs(spec.eigenvalues[1] - exact));
            sigma1 = spec.eigenvalues[1];
            normalized = normalized_sigma1(spec);
        }
        const double order = std::log2(errors[errors.size() - 2] / errors.back());
        const double el = seconds_since(t0);
        const bool pass = std::abs(sigma1 - exact) < 0.01 * exact &&
                          std::abs(normalized - 2 * M_PI) < 0.01 * 2 * M_PI && order >= 1.8 && el < 60;
        std::ostringstream d;
        d << "sigma1=" << fmt(sigma1) << " vs " << fmt(exact) << ", normalized=" << fmt(normalized)
          << " vs 2pi, order=" << fmt(order, 3) << ", " << fmt(el, 3) << "s";
        results.push_back({1, "hyperbolic disk spectral oracle", pass, d.str()});
    }

    // ---- 2: flat disk sharpness ----------------------------------------
    {
        const auto spec = steklov_spectrum(build_flat_disk(1.0, cfg.disk_resolution), 1);
        const double normalized = normalized_sigma1(spec);
        const bool pass = std::abs(normalized - 2 * M_PI) < 0.01 * 2 * M_PI;
        std::ostringstream d;
        d << "normalized sigma1 = " << fmt(normalized) << ", equality target 2pi = " << fmt(2 * M_PI);
        results.push_back({2, "flat disk sharpness", pass, d.str()});
    }

    // ---- 3 + 5 + 9: corpus bounds, areas, Jammes consistency ----------
    struct CorpusRun {
        std::string name;
        int genus = 0, nb = 0;
        double area = 0, area_target = 0;
        double sigma1 = 0, normalized = 0;
        BoundReport bounds;
        double slack = 0;
        bool slack_ok = false;
        ConstantsReport report;
        std::vector<double> boundary_lengths;
        std::vector<double> eigen;
    };
    const auto entries = corpus();
    std::vector<CorpusRun> runs(entries.size());
    const auto t_corpus = clock_t_::now();
    std::atomic<bool> corpus_error{false};
    std::string corpus_error_text;
    std::mutex err_mutex;
    parallel_for((int)entries.size(), threads, [&](int i) {
        try {
            CorpusRun r;
            r.name = entries[i].name;
            const auto mesh = build_mesh(entries[i].graph, cfg.corpus_resolution);
            r.genus = mesh.genus;
            r.nb = mesh.n_boundary;
            r.area = mesh_area(mesh);
            r.area_target = 2 * M_PI * (2 * mesh.genus - 2 + mesh.n_boundary);
            r.boundary_lengths = mesh_boundary_lengths(mesh);
            const auto spec = steklov_spectrum(mesh, 5);
            r.eigen = spec.eigenvalues;
            r.sigma1 = spec.eigenvalues[1];
            r.normalized = normalized_sigma1(spec);
            r.bounds = verify_upper_bounds(r.normalized, mesh.genus, mesh.n_boundary);

            auto rep = estimate_constants(enumerate_candidates(entries[i].graph), mesh);
            rep = levelset_sweep(spec, mesh, rep, 128);
            r.slack = jammes_check(r.sigma1, rep);
            r.slack_ok = r.slack >= 0;
            if (!r.slack_ok) {
                // only a failure if reproducible at two finer resolutions
                bool all_negative = true;
                for (double res : {cfg.corpus_resolution / 2, cfg.corpus_resolution / 4}) {
                    const auto fine = build_mesh(entries[i].graph, res);
                    const auto fspec = steklov_spectrum(fine, 2);
                    auto frep = estimate_constants(enumerate_candidates(entries[i].graph), fine);
                    frep = levelset_sweep(fspec, fine, frep, 128);
                    if (jammes_check(fspec.eigenvalues[1], frep) >= 0) all_negative = false;
                }
                r.slack_ok = !all_negative;
            }
            r.report = rep;
            runs[i] = std::move(r);
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(err_mutex);
            corpus_error = true;
            corpus_error_text = entries[i].name + ": " + e.what();
        }
    });
    const double corpus_seconds = seconds_since(t_corpus);
    {
        bool pass = !corpus_error && corpus_seconds < 600 && runs.size() >= 10;
        double min_rel_slack = 1e300;
        for (const auto& r : runs) {
            if (corpus_error) break;
            if (!(r.bounds.ok_genus_boundary && r.bounds.ok_genus_only)) pass = false;
            min_rel_slack = std::min(min_rel_slack,
                                     r.bounds.slack_genus_boundary / r.bounds.genus_boundary_bound);
            min_rel_slack =
                std::min(min_rel_slack, r.bounds.slack_genus_only / r.bounds.genus_only_bound);
        }
        if (min_rel_slack < 0.05) pass = false;
        std::ostringstream d;
        if (corpus_error) d << corpus_error_text;
        else
            d << runs.size() << " surfaces, min relative slack " << fmt(min_rel_slack, 4) << ", "
              << fmt(corpus_seconds, 3) << "s";
        results.push_back({3, "corpus spectra below both upper bounds", pass, d.str()});
    }

    // ---- 4: hexagon and collar identities ------------------------------
    {
        using quad = boost::multiprecision::cpp_bin_float_50;
        std::mt19937 rng(2026);
        std::uniform_real_distribution<double> len(0.1, 20.0);
        double worst = 0;
        for (int it = 0; it < 100; ++it) {
            const double eta = len(rng), alpha = len(rng), beta = len(rng);
            const auto sides = detail::hexagon_sides_from_cuffs<quad>(eta, alpha, beta);
            const auto v = walk_right_angled_hexagon(sides);
            for (int k = 0; k < 6; ++k) {
                const quad got = hyp::dist(v[k], v[(k + 1) % 6]);
                worst = std::max(worst, std::abs(static_cast<double>((got - sides[k]) / sides[k])));
            }
            const auto n_eta = hyp::geodesic_normal(v[0], v[1]);
            const auto n_far = hyp::geodesic_normal(v[3], v[4]);
            const double d_geom = static_cast<double>(hyp::line_distance(n_eta, n_far));
            const auto c = collar_width(eta, alpha, beta);
            worst = std::max(worst, std::abs(d_geom - c.width) / c.width);
            const double via_seam = std::sinh(alpha / 2) * std::sinh(c.seam);
            worst = std::max(worst, std::abs(std::cosh(d_geom) - via_seam) / via_seam);
        }
        double sup_gap = 0;
        for (double e = 1.1; e <= 40; e += 1.94)
            for (double a = 1.1; a <= 40; a += 1.94)
                for (double b = 1.1; b <= 40; b += 1.94)
                    sup_gap = std::max(sup_gap, std::abs(collar_asymptotic_gap(e, a, b).gap));
        const bool pass = worst < 1e-10 && sup_gap <= kCollarGapBound;
        std::ostringstream d;
        d << "worst relative identity error " << fmt(worst, 3) << ", sup |gap| " << fmt(sup_gap, 4)
          << " <= " << kCollarGapBound;
        results.push_back({4, "hexagon/collar closed forms vs hyperboloid model", pass, d.str()});
    }

    // ---- 5: curvature total --------------------------------------------
    {
        bool pass = !corpus_error;
        double worst = 0;
        for (const auto& r : runs) {
            if (corpus_error) break;
            const double rel = std::abs(r.area - r.area_target) / r.area_target;
            worst = std::max(worst, rel);
            if (rel >= 0.01) pass = false;
        }
        std::ostringstream d;
        d << "worst relative area defect " << fmt(worst, 4) << " at resolution "
          << cfg.corpus_resolution;
        results.push_back({5, "mesh areas match the curvature total", pass, d.str()});
    }

    // ---- 6: volume inequalities and trends ----------------------------------------------
    wp::VolumeTable table(cfg.volume_budget);
    {
        const auto t0 = clock_t_::now();
        const auto rep = wp::check_volume_relations(table, 4);
        const double el = seconds_since(t0);
        const bool pass = rep.all_ok() && el < 300;
        std::ostringstream d;
        d << "sandwich/step/sinh/ratio trends all "
          << (rep.all_ok() ? "hold" : "FAILED") << ", boundary-exchange agreement exact, "
          << fmt(el, 3) << "s";
        results.push_back({6, "volume inequalities and ratio trends at budget " + std::to_string(cfg.volume_budget), pass,
                           d.str()});
        if (cfg.out_dir) {
            std::ofstream f(out / "volume_relations.txt");
            for (const auto& line : rep.lines) f << line << "\n";
            for (const auto& [n, c] : rep.fitted_c) f << "fitted c(" << n << ") = " << c << "\n";
        }
    }

    // ---- 7: pair sums and parity ---------------------------------------
    {
        bool pass = true;
        double lo = 1e300, hi = 0;
        int count = 0;
        for (int b : {0, 1})
            for (int k : {1, 2})
                for (double c : {0.0, std::log(2.0)})
                    for (int g = 2; g <= 4; ++g) {
                        if (g + 1 - k < 2) continue;
                        const auto s = wp::sum_asymptotics(table, b, k, wp::Real(c), g, 0);
                        if (!s.term_count) continue;
                        const double ratio = static_cast<double>(s.ratio);
                        lo = std::min(lo, ratio);
                        hi = std::max(hi, ratio);
                        ++count;
                        if (!(ratio >= 0.005 && ratio <= 0.5)) pass = false;
                    }
        // parity of the half-surface weights against the table
        for (int k = 1; k <= 8; ++k) {
            const auto w = table.tilde_w(k);
            const auto expect =
                k % 2 == 0 ? table.get(k / 2, 2).at_zero() : table.get((k + 1) / 2, 1).at_zero();
            if (!(w == expect)) pass = false;
        }
        std::ostringstream d;
        d << count << " pair sums, ratios in [" << fmt(lo, 4) << ", " << fmt(hi, 4)
          << "] within frozen window [0.005, 0.5]; parity table exact";
        results.push_back({7, "pair-sum scale windows and half-surface weight parity", pass, d.str()});
    }

    // ---- 8: collar quotient inequality ---------------------------------
    {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        int violations = 0;
        for (int it = 0; it < 10000; ++it) {
            const double lp = 1e-3 + 20 * u(rng), ap = 1e-3 + 30 * u(rng), d = 4 * u(rng);
            const double h = u(rng) * (lp / ap);
            const double lhs = lp * std::cosh(d) / (ap + lp * std::sinh(d));
            if (!(lhs >= h / (h + 1) - 1e-12)) ++violations;
        }
        std::ostringstream d;
        d << "10000 samples, " << violations << " violations";
        results.push_back({8, "offset quotient stays above H/(H+1)", violations == 0, d.str()});
    }

    // ---- 9: Jammes consistency -----------------------------------------
    {
        bool pass = !corpus_error;
        double min_slack = 1e300;
        for (const auto& r : runs) {
            if (corpus_error) break;
            min_slack = std::min(min_slack, r.slack);
            if (!r.slack_ok) pass = false;
        }
        std::ostringstream d;
        d << "min slack " << fmt(min_slack, 4) << " over " << runs.size()
          << " surfaces after level-set refinement";
        results.push_back({9, "first eigenvalue above the quarter product", pass, d.str()});
    }

    // ---- 10: decay bounds ----------------------------------------------
    {
        const auto grid = pb::geometric_grid();
        const auto schedule = pb::half_log_schedule(2);
        const double eps = 0.1;
        const auto [pair_chain, self_chain] = pb::collar_failure_bounds(schedule, eps, grid);
        pb::DecayCurve window_chain;
        window_chain.label = "multicurve bound e^{2L}/g, L=(1/2-eps)log g";
        for (double g : grid)
            window_chain.samples.push_back(
                {g, pb::multicurve_expectation_bound(g, 2, 1, (0.5 - eps) * std::log(g)).structural});

        const bool monotone = pair_chain.decreasing_from(1e4) && self_chain.decreasing_from(1e4) &&
                              window_chain.decreasing_from(1e4);
        const bool below1 = pair_chain.top_value() < 1e-3;
        const bool below2 = self_chain.top_value() < 1e-3;
        const bool below3 = window_chain.top_value() < 1e-3;

        bool reindex_ok = true;
        for (int K = 4; K <= 8; ++K)
            for (double ep : {0.05, 0.2})
                for (int m = (K + 1) / 2; m <= (int)std::floor((1 + ep) * K / 2.0) && m < K; ++m)
                    if (!pb::reindex_inequality_holds(table, K, m, 0.05, ep)) reindex_ok = false;

        const bool pass = monotone && below1 && below2 && below3 && reindex_ok;
        std::ostringstream d;
        d << "monotone beyond 1e4: " << (monotone ? "yes" : "NO") << "; top values "
          << fmt(pair_chain.top_value(), 3) << " / " << fmt(self_chain.top_value(), 3) << " / "
          << fmt(window_chain.top_value(), 3) << " vs 1e-3 (the last two cannot reach 1e-3 by g=1e9 "
          << "at eps=0.1: crossings near 1e33 and 1e15); reindexing exact: "
          << (reindex_ok ? "yes" : "NO");
        results.push_back({10, "decay bound shapes and reindexing", pass, d.str()});

        if (cfg.out_dir) {
            std::ofstream csv(out / "decay_curves.csv");
            std::vector<std::vector<std::string>> rows;
            const std::vector<const pb::DecayCurve*> all = {&pair_chain, &self_chain, &window_chain};
            for (const auto* c : all)
                for (const auto& [g, v] : c->samples)
                    rows.push_back({c->label, format_double(g), format_double(v)});
            write_csv(csv, {"label", "g", "value"}, rows);
            std::ofstream svg(out / "decay_curves.svg");
            write_svg_loglog(svg, {pair_chain, self_chain, window_chain});
        }
    }

    // ---- 11: threshold constants ---------------------------------------
    {
        const int digits = std::max(cfg.precision_digits, 31);
        const std::string a1 = cheeger_threshold_digits(digits);
        const std::string a2 = pb::cheeger_threshold_digits(digits);
        const std::string l2pi = pb::ln2_over_2pi_digits(digits);
        const std::string assembled = pb::assembled_constant_digits(digits);
        // independent recomputation of the assembled constant from the
        // estimator module's threshold string
        const wp::Real c1(a1.c_str());
        std::ostringstream re;
        re << std::setprecision(digits) << (c1 / 8);
        const bool agree = a1.substr(0, 32) == a2.substr(0, 32) &&
                           re.str().substr(0, 32) == assembled.substr(0, 32) &&
                           l2pi.substr(0, 7) == "0.11031";
        std::ostringstream d;
        d << "log2/(2pi+log2)=" << a1 << "; ln2/(2pi)=" << l2pi << "; assembled C=" << assembled
          << "; cross-module agreement to " << digits << " digits: " << (agree ? "yes" : "NO");
        results.push_back({11, "threshold constants at 30+ digits", agree, d.str()});
    }

    // ---- artifacts ------------------------------------------------------
    if (cfg.out_dir && !corpus_error) {
        {
            std::ofstream csv(out / "corpus_spectra.csv");
            std::vector<std::vector<std::string>> rows;
            for (const auto& r : runs) {
                std::ostringstream bl, ev;
                for (size_t i = 0; i < r.boundary_lengths.size(); ++i)
                    bl << (i ? ";" : "") << format_double(r.boundary_lengths[i]);
                for (size_t i = 0; i < r.eigen.size(); ++i)
                    ev << (i ? ";" : "") << format_double(r.eigen[i]);
                rows.push_back({r.name, std::to_string(r.genus), std::to_string(r.nb), bl.str(),
                                format_double(cfg.corpus_resolution), ev.str(),
                                format_double(r.normalized),
                                format_double(r.bounds.slack_genus_boundary),
                                format_double(r.bounds.slack_genus_only)});
            }
            write_csv(csv,
                      {"surface", "g", "n", "boundary_lengths", "resolution", "sigma", "normalized_sigma1",
                       "slack_genus_boundary", "slack_genus_only"},
                      rows);
        }
        {
            std::ofstream csv(out / "constants_reports.csv");
            std::vector<std::vector<std::string>> rows;
            for (const auto& r : runs)
                rows.push_back({r.name, format_double(r.report.h_cheeger_upper),
                                format_double(r.report.h_jammes_upper),
                                format_double(r.report.h_geodesic_upper),
                                format_double(r.report.geodesic_companion), format_double(r.sigma1),
                                format_double(r.slack), r.report.cheeger_witness,
                                r.report.jammes_witness});
            write_csv(csv,
                      {"surface", "h_cheeger_upper", "h_jammes_upper", "h_geodesic_upper",
                       "companion_h_over_h_plus_1", "sigma1", "jammes_slack", "cheeger_witness",
                       "jammes_witness"},
                      rows);
        }
        {
            std::ofstream f(out / "volume_table.txt");
            std::vector<wp::VolumePolynomial> polys;
            for (int g = 0; g <= 4; ++g)
                for (int n = (g >= 1 ? 1 : 3); n <= 4; ++n)
                    if (2 * g - 2 + n > 0 && 3 * g + n - 3 <= cfg.volume_budget)
                        polys.push_back(table.get(g, n));
            wp::write_table(f, polys);
        }
    }
    return results;
}

} // namespace sklab::verify
