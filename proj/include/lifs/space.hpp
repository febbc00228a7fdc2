#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lifs/errors.hpp"

namespace lifs {

// Opaque index of one grid-cell center (Euclidean backends) or one length-L
// symbol string (symbolic backend). Ids are totally ordered; the order is
// lexicographic in (vertex, axis-0 index, axis-1 index, ...) respectively in
// the symbol string read left to right.
using PointId = std::uint64_t;

enum class SpaceKind { Grid, Symbolic, Enriched };

// Concrete position of a point. Which fields are meaningful depends on the
// space kind: `x` for Grid/Enriched, `sym` for Symbolic, `vertex` for
// Enriched only.
struct Coords {
    std::vector<double> x;
    std::vector<int> sym;
    int vertex = 0;
};

// Discretized model of a compact metric space. Three backends:
//  - Grid: box [lo_1,hi_1] x ... x [lo_d,hi_d] cut into cells of side h,
//    points represented by cell centers;
//  - Symbolic: strings of length L over {0..A-1} with the ultrametric
//    d(x,y) = e^{-N}, N = longest common prefix;
//  - Enriched: a Grid crossed with a finite vertex set, with metric
//    d((x,v),(y,w)) = d(x,y) + [v != w]  (used for graph-directed systems).
class Space {
public:
    static Space grid(std::vector<std::array<double, 2>> bounds, double cell_size);
    static Space symbolic(int alphabet, int length);
    static Space enriched(const Space& grid_base, std::vector<std::string> vertices);

    SpaceKind kind() const { return kind_; }
    bool euclidean() const { return kind_ != SpaceKind::Symbolic; }

    // Grid / Enriched accessors.
    int dim() const { return static_cast<int>(bounds_.size()); }
    double cell_size() const { return h_; }
    double axis_lo(int a) const { return bounds_[a][0]; }
    double axis_hi(int a) const { return bounds_[a][1]; }
    std::int64_t axis_cells(int a) const { return axis_cells_[a]; }

    // Symbolic accessors.
    int alphabet() const { return alphabet_; }
    int length() const { return length_; }

    // Enriched accessors.
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    const std::string& vertex_name(int v) const { return vertices_[v]; }
    int vertex_index(const std::string& name) const;  // -1 if unknown

    // Total number of representable points; `base_cell_count` excludes the
    // vertex factor (equals cell_count for non-enriched spaces).
    std::uint64_t cell_count() const { return cells_; }
    std::uint64_t base_cell_count() const { return base_cells_; }

    Coords coords(PointId p) const;
    PointId snap(const Coords& c) const;
    double distance(PointId p, PointId q) const;
    double diameter() const { return diameter_; }

    // Per-application snapping error bound: h*sqrt(dim)/2 on grids, e^{-L}
    // on symbol spaces (truncation loss), 0 conceptually but kept positive
    // so tolerance formulas never degenerate.
    double snap_error() const;

    // Nearest cell index along one axis, ties toward the lower index.
    // Throws OutOfBounds when x exits the axis range by more than h/2.
    std::int64_t snap_index(int axis, double x) const;

    // Grid index <-> id plumbing (base part only for enriched spaces).
    PointId encode(const std::vector<std::int64_t>& idx, int vertex = 0) const;
    void decode(PointId p, std::vector<std::int64_t>& idx, int& vertex) const;
    int symbol_at(PointId p, int position) const;  // symbolic

    // Longest common prefix of two symbol strings.
    int common_prefix(PointId p, PointId q) const;

    bool operator==(const Space& o) const;

private:
    SpaceKind kind_ = SpaceKind::Grid;
    std::vector<std::array<double, 2>> bounds_;
    double h_ = 0;
    std::vector<std::int64_t> axis_cells_;
    std::vector<std::uint64_t> strides_;
    int alphabet_ = 0;
    int length_ = 0;
    std::vector<std::string> vertices_;
    std::uint64_t cells_ = 0;
    std::uint64_t base_cells_ = 0;
    double diameter_ = 0;
};

}  // namespace lifs
