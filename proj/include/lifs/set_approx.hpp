#pragma once

#include <iosfwd>
#include <vector>

#include "lifs/space.hpp"

namespace lifs {

// Finite outer approximation of a compact subset: a sorted, duplicate-free
// list of point ids. The empty list is a legal value and represents the
// empty set; only the distance functions reject it.
struct SetApprox {
    const Space* space = nullptr;
    std::vector<PointId> ids;

    static SetApprox empty(const Space& s) { return SetApprox{&s, {}}; }
    static SetApprox of(const Space& s, std::vector<PointId> ids);
    // Every representable point. Guarded: spaces beyond `max_cells` ids
    // cannot be materialized (symbolic backends can be huge).
    static SetApprox full(const Space& s, std::uint64_t max_cells = (1ull << 23));

    bool is_empty() const { return ids.empty(); }
    std::size_t size() const { return ids.size(); }
    bool contains(PointId p) const;

    bool operator==(const SetApprox& o) const { return ids == o.ids; }
};

SetApprox set_union(const SetApprox& a, const SetApprox& b);
SetApprox set_intersect(const SetApprox& a, const SetApprox& b);
SetApprox set_difference(const SetApprox& a, const SetApprox& b);
bool is_subset(const SetApprox& a, const SetApprox& b);

// Hausdorff-Pompeiu distance max{sup_a inf_b d, sup_b inf_a d}. Exact on the
// discretization (grid backends use an exact squared distance transform).
// Throws EmptySetDistance when either side is empty.
double hausdorff(const SetApprox& a, const SetApprox& b);

// One-sided sup_a inf_b d(a, b).
double directed_hausdorff(const SetApprox& a, const SetApprox& b);

// Closest approach inf_a inf_b d(a, b).
double min_distance(const SetApprox& a, const SetApprox& b);

// Grow a grid set by one cell along every axis (base axes only on enriched
// spaces). Used for conservative image-overlap tests.
SetApprox dilate_one_cell(const SetApprox& a);

// One point per line: comma-separated center coordinates, or the symbol
// string, at full precision.
void write_csv(std::ostream& os, const SetApprox& a);

}  // namespace lifs
