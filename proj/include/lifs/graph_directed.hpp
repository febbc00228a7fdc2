#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lifs/ifs.hpp"

namespace lifs {

// Finite directed multigraph. An edge labels one contraction mapping the
// terminal vertex set into the initial one (the arrow reads initial ->
// terminal, matching A_v = union of f_e(A_{t(e)}) over edges with i(e) = v).
struct DirectedGraph {
    struct Edge {
        std::string label;
        int initial = 0;   // i(e)
        int terminal = 0;  // t(e)
    };
    std::vector<std::string> vertices;
    std::vector<Edge> edges;

    int vertex_index(const std::string& name) const;
};

struct GraphDirectedIFS {
    DirectedGraph graph;
    const Space* base = nullptr;           // grid the vertex sets live on
    std::vector<DomainSet> vertex_sets;    // indexed like graph.vertices
    std::vector<ContractionMap> edge_maps;  // indexed like graph.edges

    // Structural and typing checks: indices in range, lip < 1, and
    // f_e(X_{t(e)}) inside X_{i(e)} on the grid. Throws on violation.
    void validate() const;
};

struct GdAttractor {
    std::vector<SetApprox> sets;      // per vertex, on the base space
    std::vector<int> unreachable;     // vertices whose set iterated to empty
};

// Depth-k iterate of the tuple operator from the vertex sets.
GdAttractor gd_attractor_direct(const GraphDirectedIFS& gd, int k);

struct EnrichedSystem {
    std::unique_ptr<Space> space;  // base grid crossed with the vertex set
    std::unique_ptr<LocalIFS> ifs;
};

// Reduction to a single local system: one branch per edge on X x V, with domain
// X_{t(e)} x {t(e)} and map (x, v) -> (f_e(x), i(e)).
EnrichedSystem enrich(const GraphDirectedIFS& gd);

// Per-vertex projection of a set on the enriched space back to the base.
std::vector<SetApprox> slice(const SetApprox& b, const Space& base);

struct EquivalenceReport {
    std::vector<double> vertex_dist;   // enriched slice vs direct iterate
    std::vector<double> invariance;    // residual of the per-vertex set equations
    double tolerance = 0;
    bool ok = false;
};

// Run both pipelines to depth k and compare per vertex; tol < 0 selects
// lambda^k * diam + 2 * snap error.
EquivalenceReport equivalence_check(const GraphDirectedIFS& gd, int k, double tol = -1);

}  // namespace lifs
