#pragma once

#include <string>
#include <vector>

#include "lifs/domain.hpp"
#include "lifs/maps.hpp"
#include "lifs/set_approx.hpp"

namespace lifs {

struct Branch {
    std::string name;
    DomainSet domain;
    ContractionMap map;
};

// A finite family of maps f_j, each defined on a closed subset X_j of the
// space. Branch indices are 1-based everywhere (symbol j names branch j;
// symbol 0 is reserved for the natural-extension identity).
class LocalIFS {
public:
    LocalIFS(const Space& space, std::vector<Branch> branches);

    const Space& space() const { return *space_; }
    int size() const { return static_cast<int>(branches_.size()); }
    const Branch& branch(int j) const { return branches_[j - 1]; }
    double lambda() const { return lambda_; }
    bool contractive() const { return contractive_; }

    bool in_domain(int j, PointId p) const;
    // snap(f_j(p)); the caller is responsible for p in X_j when that matters.
    PointId step(int j, PointId p) const;

    const SetApprox& domain_cells(int j) const;
    SetApprox union_domain_cells() const;
    bool domain_is_full(int j) const;

    // Branch labels applicable at p: { j : p in X_j }.
    std::vector<int> address_of(PointId p) const;

    // Accumulated snapping error over an infinite orbit:
    // per-application error / (1 - lambda).
    double accumulated_snap_error() const;
    // Default tolerance for depth-k attractor comparisons:
    // lambda^k * diam + 2 * accumulated snapping error.
    double default_tolerance(int k) const;

private:
    const Space* space_;
    std::vector<Branch> branches_;
    double lambda_ = 0;
    bool contractive_ = true;
    mutable std::vector<SetApprox> cells_cache_;
    mutable std::vector<std::vector<char>> mask_cache_;  // grid membership masks
};

// Single term of the set operator: snap(f_j(A ∩ X_j)). Empty results are legal.
SetApprox apply_branch(const LocalIFS& ifs, int j, const SetApprox& a);
// Same with A = the whole space: snap(f_j(X_j)).
SetApprox apply_branch_full(const LocalIFS& ifs, int j);

// The set operator F(B) = ∪_j f_j(B ∩ X_j) and its full-space value F(X).
SetApprox hutchinson(const LocalIFS& ifs, const SetApprox& a);
SetApprox hutchinson_full(const LocalIFS& ifs);

// F^k(X). The true maximal invariant set lies within
// lambda^k*diam + accumulated snapping error of the result; the sequence in
// k is nested decreasing, so iteration stops early once it stabilizes.
// Throws NonContractive unless all branches contract. May return ∅.
SetApprox attractor(const LocalIFS& ifs, int k);

struct BasinReport {
    bool inv = false;        // F(A0) ⊆ A0 and attractor ⊆ A0 (exact set checks)
    bool out = false;        // ∩_{i≤k} F^i(A0) within tolerance of the attractor
    bool attracted = false;  // F^k(A0) within tolerance of the attractor
    int first_empty_depth = -1;
    std::vector<double> distances;  // per-depth hausdorff(F^i(A0), attractor)
    double tolerance = 0;
};

// Classify a nonempty candidate A0 against the three nested basins.
// tau < 0 selects the default tolerance.
BasinReport basin_classify(const LocalIFS& ifs, const SetApprox& a0, int k, double tau = -1);

struct CompareReport {
    bool operator_monotone = false;
    bool attractor_monotone = false;
};

// Monotonicity in the domains: ifs_t must restrict ifs_s branchwise
// (checked on the grid; DomainNotNested otherwise).
CompareReport compare_restrictions(const LocalIFS& ifs_t, const LocalIFS& ifs_s,
                                   const SetApprox& k_set, int depth);

// Condensation operator F_C(B) = F(B) ∪ C for full-domain systems.
// Throws NotGlobal when a domain is proper or C is empty.
SetApprox condensation_hutchinson(const LocalIFS& ifs, const SetApprox& c, const SetApprox& a);
// Iterate F_C from the full grid to depth k.
SetApprox condensation_attractor(const LocalIFS& ifs, const SetApprox& c, int k);

// Open set condition: pairwise disjointness of branch images f_j(X_j),
// tested conservatively with a one-cell dilation so images touching along a
// cell boundary count as overlapping.
bool osc_check(const LocalIFS& ifs);

}  // namespace lifs
