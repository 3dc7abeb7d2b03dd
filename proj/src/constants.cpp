#include "sklab/constants.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "sklab/hyp_trig.hpp"

namespace sklab {

namespace {

struct PantsData {
    std::array<double, 3> cuffs;
    std::array<double, 3> seam;     // seam[i] joins slots i and (i+1)%3
    std::array<double, 3> self_arc; // 2 d_i: boundary-to-itself arc at slot i
    std::array<double, 3> foot_u;   // arc position of the self-arc foot on cuff i
    std::array<int, 3> boundary_index{-1, -1, -1};
    std::array<int, 3> gluing_index{-1, -1, -1};
};

// slot i's half-cuff is walk side 2i; the seam joining slots (i, i+1)
// is walk side: (0,1)->1, (1,2)->3, (2,0)->5
PantsData analyze_pants(const PantsGraph& graph, int p) {
    PantsData d;
    d.cuffs = pants_cuffs(graph, p);
    const auto s = pants_seams(d.cuffs[0], d.cuffs[1], d.cuffs[2]);
    d.seam = {s.b12, s.b23, s.b31};
    const auto hex = hexagon_from_cuffs(d.cuffs[0], d.cuffs[1], d.cuffs[2]);
    const auto v = realize_hexagon(hex);
    for (int i = 0; i < 3; ++i) {
        const auto c = collar_width(d.cuffs[i], d.cuffs[(i + 1) % 3], d.cuffs[(i + 2) % 3]);
        d.self_arc[i] = 2 * c.width;
        // altitude from the slot-i side (walk side 2i) to the far seam
        // (walk side (2i+3) mod 6); feet via the hyperboloid chart
        const int side = 2 * i, far = (2 * i + 3) % 6;
        const auto n_cuff = hyp::geodesic_normal(v[side], v[(side + 1) % 6]);
        const auto n_far = hyp::geodesic_normal(v[far], v[(far + 1) % 6]);
        const auto foot = hyp::perpendicular_foot(n_cuff, n_far);
        d.foot_u[i] = hyp::dist(v[side], foot);
    }
    for (size_t gi = 0; gi < graph.gluings.size(); ++gi) {
        if (graph.gluings[gi].p == p) d.gluing_index[graph.gluings[gi].s] = (int)gi;
        if (graph.gluings[gi].q == p) d.gluing_index[graph.gluings[gi].t] = (int)gi;
    }
    for (size_t bi = 0; bi < graph.boundaries.size(); ++bi)
        if (graph.boundaries[bi].p == p) d.boundary_index[graph.boundaries[bi].s] = (int)bi;
    return d;
}

double wrap(double x, double l) {
    x = std::fmod(x, l);
    return x < 0 ? x + l : x;
}

// one side-to-side contact arc of a cuff circle
struct CircleArc {
    double length;
    int hex_a, hex_b; // hexagon ids 2p + h; hex_b = -1 marks surface boundary
};

struct RegionModel {
    int n_hex = 0;
    std::vector<std::pair<int, int>> seams;          // (hex0, hex1) with seam lengths below
    std::vector<double> seam_length;                 // aligned with `seams`
    std::vector<std::array<int, 2>> seam_slots;      // cuff slots the seam touches (global slot = 3p+s)
    std::vector<CircleArc> arcs;                     // gluing-circle contact arcs
    std::vector<std::vector<CircleArc>> per_gluing;  // grouped by gluing for full-circle detection
    std::vector<double> hex_exterior;                // boundary length carried by each hexagon
    std::vector<char> slot_is_boundary;              // global slot
    std::vector<char> hex_touches_boundary;
};

RegionModel build_region_model(const PantsGraph& graph, const std::vector<PantsData>& pants) {
    RegionModel m;
    m.n_hex = 2 * graph.n_pants;
    m.hex_exterior.assign(m.n_hex, 0.0);
    m.hex_touches_boundary.assign(m.n_hex, 0);
    m.slot_is_boundary.assign(3 * graph.n_pants, 0);

    for (int p = 0; p < graph.n_pants; ++p)
        for (int i = 0; i < 3; ++i) {
            m.seams.push_back({2 * p, 2 * p + 1});
            m.seam_length.push_back(pants[p].seam[i]);
            m.seam_slots.push_back({3 * p + i, 3 * p + (i + 1) % 3});
        }

    for (const auto& b : graph.boundaries) {
        m.slot_is_boundary[3 * b.p + b.s] = 1;
        for (int h = 0; h < 2; ++h) {
            m.hex_exterior[2 * b.p + h] += b.length / 2;
            m.hex_touches_boundary[2 * b.p + h] = 1;
        }
    }

    for (const auto& gl : graph.gluings) {
        const double l = gl.length;
        const double tau = wrap(gl.twist, l);
        std::vector<double> cuts = {0, l / 2, tau, wrap(tau + l / 2, l)};
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end(),
                               [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                   cuts.end());
        std::vector<CircleArc> arcs;
        for (size_t i = 0; i < cuts.size(); ++i) {
            const double a = cuts[i];
            const double b = i + 1 < cuts.size() ? cuts[i + 1] : cuts[0] + l;
            if (b - a < 1e-12) continue;
            const double mid = wrap((a + b) / 2, l);
            const int hp = 2 * gl.p + (mid < l / 2 ? 0 : 1);
            const double y = wrap(tau - mid, l);
            const int hq = 2 * gl.q + (y < l / 2 ? 0 : 1);
            arcs.push_back({b - a, hp, hq});
        }
        for (const auto& a : arcs) m.arcs.push_back(a);
        m.per_gluing.push_back(arcs);
    }
    return m;
}

// frontier and side data of a hexagon subset
struct RegionCut {
    double frontier = 0;
    double exterior_in = 0; // boundary length inside the subset
    bool omega_connected = false;
    bool complement_connected = false;
    bool complement_meets_boundary = false;
    bool typed_geodesic = false;
    std::vector<CurveSegment> segments;
};

RegionCut cut_region(const RegionModel& m, unsigned mask) {
    RegionCut r;
    auto in = [&](int hex) { return (mask >> hex) & 1u; };

    bool typed = true;
    for (size_t i = 0; i < m.seams.size(); ++i) {
        if (in(m.seams[i].first) != in(m.seams[i].second)) {
            r.frontier += m.seam_length[i];
            const bool feet_on_boundary = m.slot_is_boundary[m.seam_slots[i][0]] &&
                                          m.slot_is_boundary[m.seam_slots[i][1]];
            r.segments.push_back({feet_on_boundary ? SegmentKind::BoundaryArc : SegmentKind::GeodesicPiece,
                                  m.seam_length[i]});
            if (!feet_on_boundary) typed = false;
        }
    }
    for (size_t gi = 0; gi < m.per_gluing.size(); ++gi) {
        const auto& arcs = m.per_gluing[gi];
        int cut_count = 0;
        double cut_len = 0;
        for (const auto& a : arcs)
            if (in(a.hex_a) != in(a.hex_b)) {
                ++cut_count;
                cut_len += a.length;
            }
        if (cut_count == 0) continue;
        r.frontier += cut_len;
        if (cut_count == (int)arcs.size()) {
            r.segments.push_back({SegmentKind::ClosedGeodesic, cut_len});
        } else {
            typed = false;
            r.segments.push_back({SegmentKind::GeodesicPiece, cut_len});
        }
    }
    for (int h = 0; h < m.n_hex; ++h)
        if (in(h)) r.exterior_in += m.hex_exterior[h];

    // connectivity over hexagon contacts (seams and positive-length arcs)
    std::vector<std::vector<int>> adj(m.n_hex);
    for (const auto& s : m.seams) {
        adj[s.first].push_back(s.second);
        adj[s.second].push_back(s.first);
    }
    for (const auto& a : m.arcs) {
        adj[a.hex_a].push_back(a.hex_b);
        adj[a.hex_b].push_back(a.hex_a);
    }
    auto component_scan = [&](bool inside) {
        std::vector<int> comp(m.n_hex, -1);
        int n_comp = 0;
        for (int h = 0; h < m.n_hex; ++h) {
            if (in(h) != inside || comp[h] != -1) continue;
            std::vector<int> stack{h};
            comp[h] = n_comp;
            while (!stack.empty()) {
                const int cur = stack.back();
                stack.pop_back();
                for (int nb : adj[cur])
                    if (in(nb) == inside && comp[nb] == -1) {
                        comp[nb] = n_comp;
                        stack.push_back(nb);
                    }
            }
            ++n_comp;
        }
        return std::make_pair(comp, n_comp);
    };
    const auto [comp_in, n_in] = component_scan(true);
    const auto [comp_out, n_out] = component_scan(false);
    r.omega_connected = n_in == 1;
    r.complement_connected = n_out == 1;
    r.typed_geodesic = typed && r.omega_connected && r.complement_connected;

    std::vector<char> meets(n_out, 0);
    for (int h = 0; h < m.n_hex; ++h)
        if (!in(h) && m.hex_touches_boundary[h]) meets[comp_out[h]] = 1;
    r.complement_meets_boundary = n_out > 0;
    for (int c = 0; c < n_out; ++c)
        if (!meets[c]) r.complement_meets_boundary = false;
    return r;
}

std::string segments_summary(const std::vector<CurveSegment>& segs) {
    int closed = 0, arcs = 0, pieces = 0, equi = 0, circ = 0;
    for (const auto& s : segs) switch (s.kind) {
            case SegmentKind::ClosedGeodesic: ++closed; break;
            case SegmentKind::BoundaryArc: ++arcs; break;
            case SegmentKind::GeodesicPiece: ++pieces; break;
            case SegmentKind::EquidistantCurve:
            case SegmentKind::EquidistantArc: ++equi; break;
            case SegmentKind::Circle:
            case SegmentKind::HalfCircle: ++circ; break;
        }
    std::ostringstream os;
    os << "[";
    bool first = true;
    auto put = [&](int n, const char* name) {
        if (!n) return;
        if (!first) os << ",";
        os << n << " " << name;
        first = false;
    };
    put(closed, "closed");
    put(arcs, "arc");
    put(pieces, "piece");
    put(equi, "equidistant");
    put(circ, "circle");
    os << "]";
    return os.str();
}

void finalize(CurveSystem& c, double omega_area, double total_area) {
    c.omega_area = omega_area;
    c.area_small = std::min(omega_area, total_area - omega_area);
    c.area_large = std::max(omega_area, total_area - omega_area);
    c.total_length = 0;
    for (const auto& s : c.segments) c.total_length += s.length;
}

// collar radius below which the one-sided equidistant neighborhood of a
// simple geodesic stays embedded; arcs use their doubled length
double collar_radius(const CurveSystem& base) {
    double r = std::numeric_limits<double>::infinity();
    for (const auto& s : base.segments) {
        const double len = s.kind == SegmentKind::BoundaryArc ? 2 * s.length : s.length;
        r = std::min(r, std::asinh(1.0 / std::sinh(len / 2)));
    }
    return r;
}

} // namespace

std::vector<CurveSystem> enumerate_candidates(const PantsGraph& graph, int offset_samples,
                                              int radius_samples) {
    const auto topo = validate_graph(graph);
    const double total_area = 2 * M_PI * (2 * topo.genus - 2 + topo.n_boundary);

    std::vector<PantsData> pants;
    for (int p = 0; p < graph.n_pants; ++p) pants.push_back(analyze_pants(graph, p));

    std::vector<CurveSystem> out;

    // hexagon-granularity regions: frontier pieces are seams and cuff arcs
    const RegionModel model = build_region_model(graph, pants);
    if (model.n_hex <= 16) {
        for (unsigned mask = 1; mask + 1 < (1u << model.n_hex); ++mask) {
            const RegionCut cut = cut_region(model, mask);
            if (cut.frontier <= 0) continue;
            CurveSystem c;
            c.segments = cut.segments;
            c.separates = cut.omega_connected && cut.complement_connected;
            c.geodesic_system = cut.typed_geodesic;
            c.jammes_exterior = cut.exterior_in;
            c.jammes_interior = cut.frontier;
            c.all_complement_components_meet_boundary = cut.complement_meets_boundary;
            const double area = M_PI * (double)std::popcount(mask);
            finalize(c, area, total_area);
            c.jammes_admissible = cut.exterior_in > 0 && cut.complement_meets_boundary &&
                                  area <= total_area / 2 + 1e-9;
            std::ostringstream os;
            os << "region of " << std::popcount(mask) << " half-pants " << segments_summary(c.segments);
            c.description = os.str();
            out.push_back(std::move(c));
        }
    }

    // boundary self-arc at a boundary slot, optionally together with a
    // subset of the interior cuffs
    const int n_gluings = (int)graph.gluings.size();
    for (int p = 0; p < graph.n_pants; ++p)
        for (int i = 0; i < 3; ++i) {
            if (pants[p].boundary_index[i] < 0) continue;
            for (unsigned cuffmask = 0; cuffmask < (1u << n_gluings); ++cuffmask) {
                // nodes: 0 = half-pants with slot (i+1), 1 = half-pants with
                // slot (i+2), 2 + q = other pants q (skipping p)
                const int nn = graph.n_pants + 1;
                std::vector<std::vector<int>> adj(nn);
                auto node_of = [&](int pq, int slot) {
                    if (pq != p) return 2 + (pq > p ? pq - 1 : pq);
                    if (slot == (i + 1) % 3) return 0;
                    if (slot == (i + 2) % 3) return 1;
                    return -1; // the split boundary slot itself
                };
                bool valid = true;
                std::vector<int> cut_gluings;
                for (int gi = 0; gi < n_gluings; ++gi) {
                    if ((cuffmask >> gi) & 1u) {
                        cut_gluings.push_back(gi);
                        continue;
                    }
                    const auto& gl = graph.gluings[gi];
                    const int a = node_of(gl.p, gl.s), b = node_of(gl.q, gl.t);
                    if (a < 0 || b < 0) { valid = false; break; }
                    adj[a].push_back(b);
                    adj[b].push_back(a);
                }
                if (!valid) continue;
                // two components required, and each cut cuff must join them
                std::vector<int> comp(nn, -1);
                int n_comp = 0;
                for (int v = 0; v < nn; ++v) {
                    if (comp[v] != -1) continue;
                    std::vector<int> stack{v};
                    comp[v] = n_comp;
                    while (!stack.empty()) {
                        int cur = stack.back();
                        stack.pop_back();
                        for (int nb : adj[cur])
                            if (comp[nb] == -1) {
                                comp[nb] = n_comp;
                                stack.push_back(nb);
                            }
                    }
                    ++n_comp;
                }
                if (n_comp != 2) continue;
                bool cuts_join = true;
                for (int gi : cut_gluings) {
                    const auto& gl = graph.gluings[gi];
                    if (comp[node_of(gl.p, gl.s)] == comp[node_of(gl.q, gl.t)]) cuts_join = false;
                }
                if (!cuts_join) continue;

                if (comp[0] == comp[1]) continue; // the arc must lie between the pieces
                const double li = pants[p].cuffs[i];
                const double u = pants[p].foot_u[i];
                // piece 0 (next slot in walk order) holds cuff arc l - 2u
                std::array<double, 2> area{M_PI, M_PI}, exterior{0, 0};
                exterior[comp[0]] += li - 2 * u;
                exterior[comp[1]] += 2 * u;
                std::array<char, 2> meets{0, 0};
                meets[comp[0]] = meets[comp[1]] = 1; // both touch the split boundary cuff
                for (int q = 0; q < graph.n_pants; ++q) {
                    if (q == p) continue;
                    const int node = 2 + (q > p ? q - 1 : q);
                    area[comp[node]] += 2 * M_PI;
                    for (int s = 0; s < 3; ++s)
                        if (pants[q].boundary_index[s] >= 0) {
                            exterior[comp[node]] += pants[q].cuffs[s];
                            meets[comp[node]] = 1;
                        }
                }
                for (int s = 0; s < 3; ++s) {
                    if (s == i || pants[p].boundary_index[s] < 0) continue;
                    const int node = s == (i + 1) % 3 ? 0 : 1;
                    exterior[comp[node]] += pants[p].cuffs[s];
                }

                std::vector<CurveSegment> segs{{SegmentKind::BoundaryArc, pants[p].self_arc[i]}};
                for (int gi : cut_gluings)
                    segs.push_back({SegmentKind::ClosedGeodesic, graph.gluings[gi].length});

                for (int side = 0; side < 2; ++side) {
                    CurveSystem c;
                    c.segments = segs;
                    c.separates = true;
                    c.geodesic_system = true;
                    finalize(c, area[side], total_area);
                    c.jammes_interior = c.total_length;
                    c.jammes_exterior = exterior[side];
                    c.all_complement_components_meet_boundary = meets[1 - side];
                    c.jammes_admissible = exterior[side] > 0 && meets[1 - side] &&
                                          area[side] <= total_area / 2 + 1e-9;
                    std::ostringstream os;
                    os << "self-arc at pants " << p << " slot " << i;
                    if (!cut_gluings.empty()) os << " + " << cut_gluings.size() << " cuffs";
                    os << " side " << side;
                    c.description = os.str();
                    out.push_back(std::move(c));
                }
            }
        }

    // equidistant offsets of typed geodesic candidates, pushed into the
    // larger side: lengths scale by cosh t, swept area is len * sinh t
    const size_t n_base = out.size();
    for (size_t bi = 0; bi < n_base; ++bi) {
        const CurveSystem base = out[bi];
        if (!base.geodesic_system || !base.separates) continue;
        const double t_cap = collar_radius(base);
        for (int j = 1; j <= offset_samples; ++j) {
            const double t = t_cap * j / offset_samples;
            const double swept = base.total_length * std::sinh(t);
            if (swept >= base.area_large - 1e-9) break;
            CurveSystem c;
            for (const auto& s : base.segments)
                c.segments.push_back({s.kind == SegmentKind::BoundaryArc ? SegmentKind::EquidistantArc
                                                                         : SegmentKind::EquidistantCurve,
                                      s.length * std::cosh(t)});
            c.separates = true;
            c.geodesic_system = false;
            // grow the smaller side; keep the base exterior (an
            // underestimate, so the quotient stays an upper estimate)
            finalize(c, base.area_small + swept, total_area);
            c.jammes_interior = c.total_length;
            c.jammes_exterior = base.omega_area == base.area_small ? base.jammes_exterior : 0;
            c.all_complement_components_meet_boundary = base.all_complement_components_meet_boundary;
            c.jammes_admissible = base.jammes_admissible && base.omega_area == base.area_small &&
                                  c.omega_area <= total_area / 2 + 1e-9 && c.jammes_exterior > 0;
            std::ostringstream os;
            os << base.description << " offset t=" << std::setprecision(3) << t;
            c.description = os.str();
            out.push_back(std::move(c));
        }
    }

    // circles and boundary half-circles at sampled radii
    double w_min = std::numeric_limits<double>::infinity();
    for (int p = 0; p < graph.n_pants; ++p)
        for (int i = 0; i < 3; ++i) w_min = std::min(w_min, pants[p].self_arc[i] / 2);
    const double r_cap = std::min({w_min, 1.5, std::acosh(1 + total_area / (4 * M_PI))});
    for (int j = 1; j <= radius_samples; ++j) {
        const double r = r_cap * j / radius_samples;
        {
            CurveSystem c;
            c.segments = {{SegmentKind::Circle, 2 * M_PI * std::sinh(r)}};
            c.separates = true;
            c.geodesic_system = false;
            finalize(c, 2 * M_PI * (std::cosh(r) - 1), total_area);
            c.jammes_interior = c.total_length;
            c.jammes_exterior = 0;
            c.jammes_admissible = false;
            std::ostringstream os;
            os << "circle r=" << std::setprecision(3) << r;
            c.description = os.str();
            out.push_back(std::move(c));
        }
        if (!graph.boundaries.empty()) {
            CurveSystem c;
            c.segments = {{SegmentKind::HalfCircle, M_PI * std::sinh(r)}};
            c.separates = true;
            c.geodesic_system = false;
            const double area = M_PI * (std::cosh(r) - 1);
            finalize(c, area, total_area);
            c.jammes_interior = c.total_length;
            c.jammes_exterior = 2 * r;
            c.all_complement_components_meet_boundary = true;
            c.jammes_admissible = area <= total_area / 2 + 1e-9;
            std::ostringstream os;
            os << "half-circle r=" << std::setprecision(3) << r;
            c.description = os.str();
            out.push_back(std::move(c));
        }
    }
    return out;
}

ConstantsReport estimate_constants(const std::vector<CurveSystem>& candidates, const TriangleMesh& mesh) {
    if (candidates.empty()) throw std::invalid_argument("estimate_constants: no candidates");
    ConstantsReport rep;
    rep.total_area = 2 * M_PI * (2 * mesh.genus - 2 + mesh.n_boundary);

    auto better = [](double v, double len, size_t nseg, double bv, double blen, size_t bn) {
        if (v != bv) return v < bv;
        if (len != blen) return len < blen;
        return nseg < bn;
    };
    double c_len = 0, j_len = 0, g_len = 0;
    size_t c_n = 0, j_n = 0, g_n = 0;
    bool any_jammes = false;

    for (const auto& c : candidates) {
        if (c.area_small > 0) {
            const double v = c.cheeger_value();
            if (better(v, c.total_length, c.segments.size(), rep.h_cheeger_upper, c_len, c_n)) {
                rep.h_cheeger_upper = v;
                rep.cheeger_witness = c.description;
                c_len = c.total_length;
                c_n = c.segments.size();
            }
            if (c.geodesic_system && c.separates) {
                if (better(v, c.total_length, c.segments.size(), rep.h_geodesic_upper, g_len, g_n)) {
                    rep.h_geodesic_upper = v;
                    rep.geodesic_witness = c.description;
                    g_len = c.total_length;
                    g_n = c.segments.size();
                }
            }
        }
        if (c.jammes_admissible && c.jammes_exterior > 0) {
            any_jammes = true;
            const double v = c.jammes_interior / c.jammes_exterior;
            if (better(v, c.total_length, c.segments.size(), rep.h_jammes_upper, j_len, j_n)) {
                rep.h_jammes_upper = v;
                rep.jammes_witness = c.description;
                j_len = c.total_length;
                j_n = c.segments.size();
            }
        }
    }
    if (!any_jammes)
        throw std::invalid_argument("estimate_constants: no admissible region touches the boundary");
    rep.geodesic_companion = rep.h_geodesic_upper / (rep.h_geodesic_upper + 1);
    return rep;
}

namespace {

// flat embedding of a face from its intrinsic edge lengths
struct FlatFace {
    std::array<double, 2> p0, p1, p2;
};

FlatFace embed_face(double c, double a, double b) {
    // |p0p1| = c, |p1p2| = a, |p2p0| = b
    FlatFace f;
    f.p0 = {0, 0};
    f.p1 = {c, 0};
    const double x = (c * c + b * b - a * a) / (2 * c);
    f.p2 = {x, std::sqrt(std::max(0.0, b * b - x * x))};
    return f;
}

} // namespace

LevelSetSlice measure_level_set(const TriangleMesh& mesh, const std::vector<double>& nodal, double level) {
    if ((int)nodal.size() != mesh.n_vertices)
        throw std::invalid_argument("measure_level_set: nodal size mismatch");
    LevelSetSlice slice;
    for (const auto& t : mesh.triangles) {
        const double c = mesh.length(t[0], t[1]);
        const double a = mesh.length(t[1], t[2]);
        const double b = mesh.length(t[2], t[0]);
        const FlatFace f = embed_face(c, a, b);
        const std::array<std::array<double, 2>, 3> pts = {f.p0, f.p1, f.p2};
        const std::array<double, 3> val = {nodal[t[0]] - level, nodal[t[1]] - level, nodal[t[2]] - level};

        // clip the superlevel polygon and collect the crossing segment
        std::vector<std::array<double, 2>> poly;
        std::vector<std::array<double, 2>> crossings;
        for (int k = 0; k < 3; ++k) {
            const int k2 = (k + 1) % 3;
            if (val[k] >= 0) poly.push_back(pts[k]);
            if ((val[k] >= 0) != (val[k2] >= 0)) {
                const double s = val[k] / (val[k] - val[k2]);
                const std::array<double, 2> x = {pts[k][0] + s * (pts[k2][0] - pts[k][0]),
                                                 pts[k][1] + s * (pts[k2][1] - pts[k][1])};
                poly.push_back(x);
                crossings.push_back(x);
            }
        }
        if (crossings.size() == 2) {
            const double dx = crossings[0][0] - crossings[1][0];
            const double dy = crossings[0][1] - crossings[1][1];
            slice.isoline_length += std::sqrt(dx * dx + dy * dy);
        }
        double area2 = 0;
        for (size_t k = 0; k + 1 < poly.size(); ++k) {
            const auto& p = poly[k];
            const auto& q = poly[k + 1];
            area2 += p[0] * q[1] - q[0] * p[1];
        }
        if (poly.size() >= 3) {
            const auto& p = poly.back();
            const auto& q = poly.front();
            area2 += p[0] * q[1] - q[0] * p[1];
        }
        slice.superlevel_area += std::abs(area2) / 2;
    }
    for (const auto& [e, comp] : mesh.boundary_edges) {
        const double fu = nodal[(int)(e >> 32)] - level;
        const double fv = nodal[(int)(e & 0xffffffffu)] - level;
        const double h = mesh.edge_length.at(e);
        if (fu >= 0 && fv >= 0) slice.exterior_length += h;
        else if ((fu >= 0) != (fv >= 0)) slice.exterior_length += h * std::max(fu, fv) / std::abs(fu - fv);
    }
    return slice;
}

std::vector<double> cuff_distance_field(const TriangleMesh& mesh, const PantsGraph& graph, int slot) {
    if (graph.n_pants != 1)
        throw std::invalid_argument("cuff_distance_field: single-pants surfaces only");
    if (!mesh.has_charts()) throw std::invalid_argument("cuff_distance_field: mesh carries no charts");
    const auto cuffs = pants_cuffs(graph, 0);
    const auto hex = hexagon_from_cuffs(cuffs[0], cuffs[1], cuffs[2]);
    const auto v = realize_hexagon(hex);
    const int side = 2 * slot;
    const auto n = hyp::geodesic_normal(v[side], v[(side + 1) % 6]);

    std::vector<double> field(mesh.n_vertices, std::numeric_limits<double>::quiet_NaN());
    for (size_t f = 0; f < mesh.triangles.size(); ++f)
        for (int k = 0; k < 3; ++k) {
            const int vid = mesh.triangles[f][k];
            if (std::isnan(field[vid])) field[vid] = hyp::point_line_distance(mesh.corners[f][k], n);
        }
    return field;
}

ConstantsReport levelset_sweep(const SteklovSpectrum& spectrum, const TriangleMesh& mesh,
                               ConstantsReport report, int levels) {
    if (spectrum.eigenfunctions.size() < 2)
        throw std::invalid_argument("levelset_sweep: first eigenfunction missing");
    std::vector<double> f = spectrum.eigenfunctions[1];
    double fmax = *std::max_element(f.begin(), f.end());
    double fmin = *std::min_element(f.begin(), f.end());
    if (fmax - fmin < 1e-12 * std::max(std::abs(fmax), std::abs(fmin)))
        throw std::runtime_error("levelset_sweep: eigenfunction is constant (under-resolved)");

    const double total = mesh_area(mesh);
    // choose the sign with the smaller nonnegative-part area
    if (measure_level_set(mesh, f, 0.0).superlevel_area > total / 2) {
        for (double& x : f) x = -x;
        std::swap(fmax, fmin);
        fmax = -fmax;
    }

    // vertex adjacency for the complement-connectivity test
    std::vector<std::vector<int>> adj(mesh.n_vertices);
    for (const auto& t : mesh.triangles)
        for (int k = 0; k < 3; ++k) {
            adj[t[k]].push_back(t[(k + 1) % 3]);
            adj[t[(k + 1) % 3]].push_back(t[k]);
        }
    std::vector<char> on_boundary(mesh.n_vertices, 0);
    for (const auto& [e, comp] : mesh.boundary_edges) {
        on_boundary[(int)(e >> 32)] = 1;
        on_boundary[(int)(e & 0xffffffffu)] = 1;
    }
    auto complement_ok = [&](double level) {
        // every component of {f < level} must reach the surface boundary
        std::vector<char> seen(mesh.n_vertices, 0);
        for (int v0 = 0; v0 < mesh.n_vertices; ++v0) {
            if (seen[v0] || f[v0] >= level) continue;
            bool meets = false;
            std::vector<int> stack{v0};
            seen[v0] = 1;
            while (!stack.empty()) {
                const int cur = stack.back();
                stack.pop_back();
                if (on_boundary[cur]) meets = true;
                for (int nb : adj[cur])
                    if (!seen[nb] && f[nb] < level) {
                        seen[nb] = 1;
                        stack.push_back(nb);
                    }
            }
            if (!meets) return false;
        }
        return true;
    };

    for (int j = 1; j <= levels; ++j) {
        const double level = fmax * j / (levels + 1);
        const auto slice = measure_level_set(mesh, f, level);
        if (slice.isoline_length <= 0 || slice.superlevel_area <= 0 ||
            slice.superlevel_area >= total - 1e-12)
            continue;
        const double hc = std::max(slice.isoline_length / slice.superlevel_area,
                                   slice.isoline_length / (total - slice.superlevel_area));
        if (hc < report.h_cheeger_upper) {
            report.h_cheeger_upper = hc;
            std::ostringstream os;
            os << "level set f >= " << std::setprecision(4) << level;
            report.cheeger_witness = os.str();
        }
        if (slice.exterior_length > 0 && slice.superlevel_area <= total / 2 + 1e-9 &&
            complement_ok(level)) {
            const double hj = slice.isoline_length / slice.exterior_length;
            if (hj < report.h_jammes_upper) {
                report.h_jammes_upper = hj;
                std::ostringstream os;
                os << "level set f >= " << std::setprecision(4) << level;
                report.jammes_witness = os.str();
            }
        }
    }
    report.levelset_used = true;
    return report;
}

double jammes_check(double sigma1, ConstantsReport& report) {
    report.sigma1 = sigma1;
    report.jammes_slack = sigma1 - 0.25 * report.h_cheeger_upper * report.h_jammes_upper;
    return report.jammes_slack;
}

CaseReport large_genus_case_bounds(double g, double eps) {
    if (!(eps > 0 && eps < 0.25)) throw std::invalid_argument("large_genus_case_bounds: eps in (0, 1/4)");
    if (!(g >= 2)) throw std::invalid_argument("large_genus_case_bounds: g >= 2");
    const double logg = std::log(g);
    CaseReport r;
    r.half_collar_width = (0.5 - eps) * logg;
    r.window_low = (2 - eps) * logg;
    r.window_high = 2 * logg;
    r.jammes_case_collar = 1.0;
    r.jammes_case_crossing = (1 - 2 * eps) / 2;
    r.jammes_lower = std::min(r.jammes_case_collar, r.jammes_case_crossing);
    r.factor_collar = 2.0;
    r.factor_crossing = (3 - 2 * eps) / (1 - 2 * eps);
    r.comparison_constant = 1.0 / std::max(r.factor_collar, r.factor_crossing);
    r.cheeger_threshold = std::log(2.0) / (2 * M_PI + std::log(2.0)) - eps;
    r.cheeger_lower = std::min(r.comparison_constant, 1.0) * r.cheeger_threshold;
    r.assembled_sigma_lower = 0.25 * r.jammes_lower * r.cheeger_lower;
    return r;
}

std::string cheeger_threshold_digits(int digits) {
    using Real = boost::multiprecision::cpp_dec_float_100;
    const Real pi = acos(Real(-1));
    const Real v = log(Real(2)) / (2 * pi + log(Real(2)));
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

} // namespace sklab
