#pragma once

#include <map>
#include <string>
#include <vector>

#include "lifs/code_space.hpp"
#include "lifs/ifs.hpp"

namespace lifs {

// One forward step of an orbit: the current point and the branch applied to
// it. Symbol 0 is the bookkeeping identity of the natural extension, legal
// only where no branch domain contains the point.
struct OrbitStep {
    PointId point = 0;
    int symbol = 0;
};

struct FiniteOrbit {
    std::vector<OrbitStep> steps;

    // Index of the first identity step; steps.size() when the orbit never
    // dies within the horizon (the finite stand-in for an infinite orbit).
    int length() const;
};

enum class OrbitStrategy { Greedy, Exhaustive };

// Forward orbit from x over max_len steps. Greedy always applies the
// smallest applicable branch; exhaustive maximizes the orbit length (and
// breaks ties toward the smallest symbol). Once the point leaves every
// domain the orbit is padded with identity steps.
FiniteOrbit extend_orbit(const LocalIFS& ifs, PointId x, int max_len,
                         OrbitStrategy strategy = OrbitStrategy::Exhaustive);

// Decreasing sets of points that can keep iterating: levels[i] holds the
// points admitting an orbit of length > i (so levels[0] is the union of the
// branch domains; the conceptual level before it is the whole space).
struct SurvivorSet {
    std::vector<SetApprox> levels;
    int stabilized_at = -1;  // first index whose level equals the next one

    const SetApprox& final_level() const { return levels.back(); }
};

SurvivorSet survivor_sets(const LocalIFS& ifs, int depth);

// Infinite-orbit core approximation: attractor(k) ∩ final survivor level.
SetApprox a_infinity(const LocalIFS& ifs, int k, int depth);

// Attractor points from which every orbit dies: attractor(k) minus the final
// survivor level.
SetApprox endpoints(const LocalIFS& ifs, int k, int depth);

// Closest approach of the endpoint set to the infinite-orbit core. A small
// value flags endpoints accumulating on the core; it is a diagnostic that
// shrinks with the resolution, not a limit claim.
// Throws EmptyEndpointSet when there are no endpoints.
double endpoint_gap(const LocalIFS& ifs, int k, int depth);

// A two-sided itinerary: an admissible past word whose code point is the
// current position, and the forward orbit continuing from it.
struct TwoSidedItinerary {
    Word past;
    FiniteOrbit future;
};

// Throws Inconsistent when the future violates the step or address
// invariants, or its first point is not the past's code point (within tol).
void validate_itinerary(const LocalIFS& ifs, const TwoSidedItinerary& it, double tol);

// One step of the extended shift: consume the first future symbol a0 and
// append it to the past. Throws AtEndpoint when a0 = 0 and Inconsistent when
// a0 does not apply at the past's code point.
TwoSidedItinerary extended_shift_step(const LocalIFS& ifs, const TwoSidedItinerary& it);

struct NaturalExtensionReport {
    int checked = 0;
    int inconsistent = 0;
    double max_deviation = 0;   // forward commutation: f_{b_-1}(π(drop-right b)) vs π(b)
    double tolerance = 0;
    int inverse_checked = 0;    // backward commutation through invertible branches
    int inverse_skipped = 0;    // constant / non-invertible branches
    double max_inverse_deviation = 0;
    bool ok = false;
};

// Sample random admissible pasts of the given depth, extend them forward,
// and verify that advancing the two-sided state commutes with applying the
// branch map (and its inverse where one exists).
NaturalExtensionReport natural_extension_check(const LocalIFS& ifs, int samples, int depth,
                                               unsigned seed = 1);

struct OrbitHistogram {
    std::map<std::string, int> counts;
    bool structured = false;  // four-type classification applied
};

// Random-itinerary histogram over orbit fates. Systems shaped like the
// two-constant-tail family (branches 3 and 4 constant, 4 reachable only
// after 3) are split into the four types I..IV; anything else gets the
// generic {infinite, len=k} split.
OrbitHistogram classify_orbits(const LocalIFS& ifs, int depth, int samples,
                               unsigned seed = 1);

}  // namespace lifs
