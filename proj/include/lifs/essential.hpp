#pragma once

#include <utility>
#include <vector>

#include "lifs/code_space.hpp"
#include "lifs/ifs.hpp"

namespace lifs {

// Depth-k iterate of the set operator split into the cylinders that keep an
// admissible history at lookahead m (their union is `value`) and the ones
// whose every left-extension dies within m more symbols.
struct EssentialApprox {
    int depth = 0;
    int lookahead = 0;
    std::vector<Word> words;  // essential depth-k words
    SetApprox value;          // union of their cylinders over K
    // non-essential words carrying cells of F^k(K), with the extension depth
    // at which their history provably dies
    std::vector<std::pair<Word, int>> pruned;
    SetApprox pruned_value;
};

// A word is treated as essential at lookahead m when some admissible word of
// depth k+m ends in it; equivalently, folding the word over the m-th full
// iterate of the space leaves at least one cell. Larger m only shrinks the
// result; the target object is the m -> infinity limit.
EssentialApprox essential_part(const LocalIFS& ifs, const SetApprox& k_set, int k, int m,
                               std::uint64_t max_nodes = (1ull << 22));

struct ConvergencePoint {
    int k = 0;
    double dist_ess = 0;
    double bound = 0;
};

struct ConvergenceReport {
    double lambda = 0;
    double diam = 0;
    int k_ref = 0;  // attractor reference depth
    std::vector<ConvergencePoint> series;
    bool ok = false;
};

// Rate certificate: hausdorff(essential part of F^k(A0), attractor) against
// the guaranteed lambda^k * diam envelope, for k = 1..k_max. A0 must be
// attracted to the attractor (checked; throws Inconsistent otherwise).
ConvergenceReport convergence_report(const LocalIFS& ifs, const SetApprox& a0, int k_max,
                                     int m);

// Two-stage pipeline: compute the unrestricted attractor of the same maps,
// then iterate the restricted operator down from it. Requires every branch
// map to be total on the space; throws NotGlobalizable otherwise.
SetApprox attractor_from_global(const LocalIFS& ifs, int k);

}  // namespace lifs
