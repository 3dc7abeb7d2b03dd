#include "sklab/pants_graph.hpp"

#include <array>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sklab {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

SurfaceTopology validate_graph(const PantsGraph& graph) {
    if (graph.n_pants <= 0) throw std::invalid_argument("pants graph: no pants");
    std::vector<int> slot_use(3 * graph.n_pants, 0);
    auto slot_id = [&](int p, int s) {
        if (p < 0 || p >= graph.n_pants || s < 0 || s > 2)
            throw std::invalid_argument("pants graph: slot out of range");
        return 3 * p + s;
    };
    UnionFind uf(graph.n_pants);
    for (const auto& g : graph.gluings) {
        ++slot_use[slot_id(g.p, g.s)];
        ++slot_use[slot_id(g.q, g.t)];
        if (g.p == g.q && g.s == g.t) throw std::invalid_argument("pants graph: slot glued to itself");
        if (!(g.length > 0)) throw std::invalid_argument("pants graph: nonpositive cuff length");
        uf.unite(g.p, g.q);
    }
    for (const auto& b : graph.boundaries) {
        ++slot_use[slot_id(b.p, b.s)];
        if (!(b.length > 0)) throw std::invalid_argument("pants graph: nonpositive boundary length");
    }
    for (int id = 0; id < (int)slot_use.size(); ++id) {
        if (slot_use[id] > 1) throw std::invalid_argument("pants graph: slot used twice");
        if (slot_use[id] == 0) throw std::invalid_argument("pants graph: unassigned slot");
    }
    for (int p = 1; p < graph.n_pants; ++p)
        if (uf.find(p) != uf.find(0)) throw std::invalid_argument("pants graph: disconnected");

    const int n = (int)graph.boundaries.size();
    // chi = -P and chi = 2 - 2g - n
    const int twice_g = 2 + graph.n_pants - n;
    if (twice_g < 0 || twice_g % 2 != 0) throw std::invalid_argument("pants graph: non-integer genus");
    return {twice_g / 2, n};
}

std::array<double, 3> pants_cuffs(const PantsGraph& graph, int pants) {
    std::array<double, 3> cuffs{0, 0, 0};
    for (const auto& g : graph.gluings) {
        if (g.p == pants) cuffs[g.s] = g.length;
        if (g.q == pants) cuffs[g.t] = g.length;
    }
    for (const auto& b : graph.boundaries)
        if (b.p == pants) cuffs[b.s] = b.length;
    for (double c : cuffs)
        if (!(c > 0)) throw std::invalid_argument("pants graph: pants with unassigned slot");
    return cuffs;
}

SurfaceSpec parse_surface_spec(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("surface spec: ") + e.what());
    }
    SurfaceSpec spec;
    const std::string kind = j.value("type", "pants");
    spec.resolution = j.value("resolution", 0.1);
    if (kind == "hyperbolic_disk" || kind == "flat_disk") {
        spec.kind = kind == "flat_disk" ? SurfaceSpec::Kind::FlatDisk : SurfaceSpec::Kind::HyperbolicDisk;
        spec.radius = j.value("radius", 1.0);
        if (!(spec.radius > 0)) throw std::runtime_error("surface spec: radius must be positive");
        return spec;
    }
    if (kind != "pants") throw std::runtime_error("surface spec: unknown type " + kind);
    spec.graph.n_pants = j.at("pants").get<int>();
    for (const auto& g : j.value("gluings", nlohmann::json::array())) {
        Gluing gl;
        gl.p = g.at(0).at(0).get<int>();
        gl.s = g.at(0).at(1).get<int>();
        gl.q = g.at(1).at(0).get<int>();
        gl.t = g.at(1).at(1).get<int>();
        gl.length = g.at(2).get<double>();
        gl.twist = g.at(3).get<double>();
        spec.graph.gluings.push_back(gl);
    }
    for (const auto& b : j.value("boundaries", nlohmann::json::array())) {
        BoundarySlot bs;
        bs.p = b.at(0).get<int>();
        bs.s = b.at(1).get<int>();
        bs.length = b.at(2).get<double>();
        spec.graph.boundaries.push_back(bs);
    }
    return spec;
}

SurfaceSpec load_surface_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open surface spec: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_surface_spec(ss.str());
}

} // namespace sklab
