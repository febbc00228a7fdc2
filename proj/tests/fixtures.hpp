#pragma once

// Shared programmatic test systems: a full-domain Cantor system, the
// four-branch interval system with an isolated condensation-like point, the
// two-dimensional Cantor-slab system with constant branches to the corner
// points, and the three-symbol sequence-space system.

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "lifs/ifs.hpp"

namespace fixtures {

using namespace lifs;

struct System {
    std::unique_ptr<Space> space;
    std::unique_ptr<LocalIFS> ifs;
    LocalIFS& operator*() { return *ifs; }
};

// f1 = x/3, f2 = x/3 + 2/3 on all of [0,1]. h defaults to a power of 1/3 so
// triadic endpoints sit on cell edges and iterates stabilize exactly.
inline System cantor_full(double h = 1.0 / 729) {
    System s;
    s.space = std::make_unique<Space>(Space::grid({{{0.0, 1.0}}}, h));
    std::vector<Branch> br;
    br.push_back({"f1", DomainSet::whole_space(), ContractionMap::affine1d(1.0 / 3, 0.0)});
    br.push_back({"f2", DomainSet::whole_space(), ContractionMap::affine1d(1.0 / 3, 2.0 / 3)});
    s.ifs = std::make_unique<LocalIFS>(*s.space, std::move(br));
    return s;
}

// On [0,4]: f1 = x/3, f2 = x/3 + 2/3 and f3 ≡ 2 on [0,1]; f4 ≡ 4 on {3}.
// Attractor: middle-third Cantor set ∪ {2}.
inline System interval4(double h = 1.0 / 729) {
    System s;
    s.space = std::make_unique<Space>(Space::grid({{{0.0, 4.0}}}, h));
    DomainSet unit = DomainSet::box1d(0.0, 1.0);
    std::vector<Branch> br;
    br.push_back({"f1", unit, ContractionMap::affine1d(1.0 / 3, 0.0)});
    br.push_back({"f2", unit, ContractionMap::affine1d(1.0 / 3, 2.0 / 3)});
    br.push_back({"f3", unit, ContractionMap::constant(Coords{{2.0}, {}, 0})});
    br.push_back({"f4", DomainSet::of_points({Coords{{3.0}, {}, 0}}),
                  ContractionMap::constant(Coords{{4.0}, {}, 0})});
    s.ifs = std::make_unique<LocalIFS>(*s.space, std::move(br));
    return s;
}

// Cantor-slab domains on [0,1]^2: X1 = X2 = ([0,1/3] ∪ [2/3,1]) × {0}.
inline DomainSet slab_domain() {
    return DomainSet::of_boxes({Box{{0.0, 0.0}, {1.0 / 3, 0.0}}, Box{{2.0 / 3, 0.0}, {1.0, 0.0}}});
}

// variant 1: two horizontal Cantor branches; variant 2 adds f3 ≡ (1,1) on
// the slab; variant 3 adds f4 ≡ (0,1) on the slab ∪ {(1,1)}.
inline System slab(int variant, double h = 1.0 / 729) {
    System s;
    s.space = std::make_unique<Space>(Space::grid({{{0.0, 1.0}, {0.0, 1.0}}}, h));
    DomainSet x12 = slab_domain();
    std::vector<Branch> br;
    br.push_back({"f1", x12,
                  ContractionMap::affine({1.0 / 3, 0, 0, 1.0 / 3}, {0.0, 0.0}, 1.0 / 3)});
    br.push_back({"f2", x12,
                  ContractionMap::affine({1.0 / 3, 0, 0, 1.0 / 3}, {2.0 / 3, 0.0}, 1.0 / 3)});
    if (variant >= 2)
        br.push_back({"f3", x12, ContractionMap::constant(Coords{{1.0, 1.0}, {}, 0})});
    if (variant >= 3) {
        DomainSet x4 = slab_domain();
        x4.points.push_back(Coords{{1.0, 1.0}, {}, 0});
        br.push_back({"f4", x4, ContractionMap::constant(Coords{{0.0, 1.0}, {}, 0})});
    }
    s.ifs = std::make_unique<LocalIFS>(*s.space, std::move(br));
    return s;
}

// Sequence space over {0,1,2}: branch 1 prepends 0, branch 2 prepends 1,
// branch 3 is the adjacent-sum map; all domains are the binary strings.
inline System sequence_system(int length = 16) {
    System s;
    s.space = std::make_unique<Space>(Space::symbolic(3, length));
    DomainSet binary = DomainSet::sequences_over({0, 1});
    std::vector<Branch> br;
    br.push_back({"f0", binary, ContractionMap::prepend(0)});
    br.push_back({"f1", binary, ContractionMap::prepend(1)});
    br.push_back({"f2", binary, ContractionMap::adjacent_sum(0.5)});
    s.ifs = std::make_unique<LocalIFS>(*s.space, std::move(br));
    return s;
}

// Analytic distance from x to the middle-third Cantor set in [0,1].
inline double cantor_distance(double x, int depth = 40) {
    if (x < 0) return -x;
    if (x > 1) return x - 1;
    double scale = 1.0;
    for (int i = 0; i < depth; ++i) {
        if (x <= 1.0 / 3) {
            x *= 3;
        } else if (x >= 2.0 / 3) {
            x = 3 * x - 2;
        } else {
            return scale * std::min(x - 1.0 / 3, 2.0 / 3 - x);
        }
        scale /= 3;
    }
    return 0.0;
}

// Independent digit-test oracle: grid cells within half a cell of the Cantor
// set (scaled into [0,1]), as a set on `space`.
inline SetApprox cantor_oracle_cells(const Space& space, double lo = 0.0, double hi = 1.0) {
    std::vector<PointId> ids;
    double h = space.cell_size();
    for (std::uint64_t i = 0; i < space.cell_count(); ++i) {
        double x = space.coords(i).x[0];
        if (x < lo - h || x > hi + h) continue;
        if (cantor_distance((x - lo) / (hi - lo)) * (hi - lo) <= h / 2) ids.push_back(i);
    }
    return SetApprox::of(space, std::move(ids));
}

}  // namespace fixtures
