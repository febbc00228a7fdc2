#include "lifs/graph_directed.hpp"

#include <algorithm>
#include <cmath>

namespace lifs {

int DirectedGraph::vertex_index(const std::string& name) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == name) return static_cast<int>(i);
    return -1;
}

namespace {

// Apply one edge map to a base-space set and snap back to the grid.
SetApprox map_cells(const ContractionMap& map, const SetApprox& a, const Space& base) {
    std::vector<PointId> ids;
    ids.reserve(a.size());
    for (PointId p : a.ids) ids.push_back(base.snap(map.apply(base.coords(p), base)));
    return SetApprox::of(base, std::move(ids));
}

}  // namespace

void GraphDirectedIFS::validate() const {
    if (graph.vertices.empty() || graph.edges.empty())
        fail(ErrorCode::SchemaError, "graph needs at least one vertex and one edge");
    if (vertex_sets.size() != graph.vertices.size() ||
        edge_maps.size() != graph.edges.size())
        fail(ErrorCode::SchemaError, "vertex sets / edge maps do not match the graph");
    const int m = static_cast<int>(graph.vertices.size());
    for (auto& e : graph.edges)
        if (e.initial < 0 || e.initial >= m || e.terminal < 0 || e.terminal >= m)
            fail(ErrorCode::SchemaError, "edge endpoint outside the vertex list");
    for (size_t i = 0; i < edge_maps.size(); ++i) {
        edge_maps[i].validate_lip(*base);
        const auto& e = graph.edges[i];
        SetApprox source = vertex_sets[e.terminal].cells(*base);
        SetApprox image = map_cells(edge_maps[i], source, *base);
        for (PointId p : image.ids)
            if (!vertex_sets[e.initial].contains(p, *base))
                fail(ErrorCode::DomainNotNested,
                     "edge '" + e.label + "' leaves its target vertex set");
    }
}

GdAttractor gd_attractor_direct(const GraphDirectedIFS& gd, int k) {
    if (k < 1) fail(ErrorCode::SchemaError, "depth must be >= 1");
    const int m = static_cast<int>(gd.graph.vertices.size());
    GdAttractor out;
    for (int v = 0; v < m; ++v) out.sets.push_back(gd.vertex_sets[v].cells(*gd.base));
    for (int step = 0; step < k; ++step) {
        std::vector<SetApprox> next(m, SetApprox{gd.base, {}});
        for (size_t i = 0; i < gd.graph.edges.size(); ++i) {
            const auto& e = gd.graph.edges[i];
            if (out.sets[e.terminal].is_empty()) continue;
            next[e.initial] = set_union(
                next[e.initial], map_cells(gd.edge_maps[i], out.sets[e.terminal], *gd.base));
        }
        bool changed = false;
        for (int v = 0; v < m; ++v) changed = changed || !(next[v] == out.sets[v]);
        out.sets = std::move(next);
        if (!changed) break;
    }
    for (int v = 0; v < m; ++v)
        if (out.sets[v].is_empty()) out.unreachable.push_back(v);
    return out;
}

EnrichedSystem enrich(const GraphDirectedIFS& gd) {
    EnrichedSystem sys;
    sys.space = std::make_unique<Space>(Space::enriched(*gd.base, gd.graph.vertices));
    std::vector<Branch> branches;
    for (size_t i = 0; i < gd.graph.edges.size(); ++i) {
        const auto& e = gd.graph.edges[i];
        DomainSet domain = gd.vertex_sets[e.terminal];
        domain.vertex = e.terminal;
        ContractionMap map = gd.edge_maps[i];
        map.target_vertex = e.initial;
        map.name = e.label;
        branches.push_back({e.label, std::move(domain), std::move(map)});
    }
    sys.ifs = std::make_unique<LocalIFS>(*sys.space, std::move(branches));
    return sys;
}

std::vector<SetApprox> slice(const SetApprox& b, const Space& base) {
    int vertices = std::max<int>(
        1, static_cast<int>(b.space->cell_count() / base.cell_count()));
    std::vector<SetApprox> out(vertices, SetApprox{&base, {}});
    for (PointId p : b.ids) {
        int v = static_cast<int>(p / base.cell_count());
        out[v].ids.push_back(p % base.cell_count());
    }
    return out;  // per-vertex ids inherit the sorted order
}

EquivalenceReport equivalence_check(const GraphDirectedIFS& gd, int k, double tol) {
    gd.validate();
    EquivalenceReport rep;
    double lambda = 0;
    for (auto& map : gd.edge_maps) lambda = std::max(lambda, map.lip);
    if (tol < 0)
        tol = std::pow(lambda, k) * gd.base->diameter() + 2 * gd.base->snap_error();
    rep.tolerance = tol;

    GdAttractor direct = gd_attractor_direct(gd, k);
    EnrichedSystem sys = enrich(gd);
    std::vector<SetApprox> slices = slice(attractor(*sys.ifs, k), *gd.base);

    rep.ok = true;
    const int m = static_cast<int>(gd.graph.vertices.size());
    for (int v = 0; v < m; ++v) {
        double d;
        if (direct.sets[v].is_empty() || slices[v].is_empty())
            d = (direct.sets[v].is_empty() && slices[v].is_empty())
                    ? 0.0
                    : gd.base->diameter();
        else
            d = hausdorff(slices[v], direct.sets[v]);
        rep.vertex_dist.push_back(d);
        if (d > tol) rep.ok = false;
    }

    // residual of A_v = union of f_e(A_{t(e)}) on the direct tuple
    for (int v = 0; v < m; ++v) {
        SetApprox rhs{gd.base, {}};
        for (size_t i = 0; i < gd.graph.edges.size(); ++i) {
            const auto& e = gd.graph.edges[i];
            if (e.initial != v || direct.sets[e.terminal].is_empty()) continue;
            rhs = set_union(rhs, map_cells(gd.edge_maps[i], direct.sets[e.terminal], *gd.base));
        }
        double d;
        if (rhs.is_empty() || direct.sets[v].is_empty())
            d = (rhs.is_empty() && direct.sets[v].is_empty()) ? 0.0 : gd.base->diameter();
        else
            d = hausdorff(rhs, direct.sets[v]);
        rep.invariance.push_back(d);
        if (d > tol) rep.ok = false;
    }
    return rep;
}

}  // namespace lifs
