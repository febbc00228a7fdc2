#pragma once

#include <vector>

#include "lifs/set_approx.hpp"
#include "lifs/space.hpp"

namespace lifs {

// Closed axis-aligned box; degenerate axes (lo == hi) are allowed and pick
// out the single cell row the value snaps to.
struct Box {
    std::vector<double> lo, hi;
};

// A closed subset of the space, as a union of primitive clauses. A point
// belongs to the domain when any clause holds. `vertex` (enriched spaces)
// restricts the whole domain to one vertex copy.
struct DomainSet {
    bool full = false;
    std::vector<Box> boxes;
    std::vector<Coords> points;
    std::vector<int> allowed_symbols;  // nonempty: strings over this sub-alphabet
    std::vector<PointId> explicit_ids;  // sorted
    int vertex = -1;

    static DomainSet whole_space();
    static DomainSet box1d(double lo, double hi);
    static DomainSet of_boxes(std::vector<Box> boxes);
    static DomainSet of_points(std::vector<Coords> points);
    static DomainSet sequences_over(std::vector<int> symbols);
    static DomainSet explicit_set(const SetApprox& s);

    // Grid membership. Box clauses cover exactly the cells whose axis index
    // lies between the snapped indices of lo and hi, so a degenerate box
    // contains exactly the cell its value snaps to and membership is always
    // consistent with `snap`.
    bool contains(PointId p, const Space& space) const;

    // Materialize all member cells (guarded for huge spaces).
    SetApprox cells(const Space& space, std::uint64_t max_cells = (1ull << 23)) const;

    bool is_empty_def() const {
        return !full && boxes.empty() && points.empty() && allowed_symbols.empty() &&
               explicit_ids.empty();
    }
};

}  // namespace lifs
