#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "lifs/essential.hpp"

using namespace lifs;
using namespace fixtures;

TEST_CASE("full-domain systems have no inessential cylinders") {
    auto cantor = cantor_full(1.0 / 243);
    SetApprox full = SetApprox::full(*cantor.space);
    SetApprox fk = full;
    for (int k = 1; k <= 4; ++k) {
        fk = hutchinson(*cantor, fk);
        for (int m = 0; m <= 3; ++m) {
            EssentialApprox ess = essential_part(*cantor, full, k, m);
            CHECK(ess.value == fk);
            CHECK(ess.pruned.empty());
        }
    }
}

TEST_CASE("the isolated cylinder is pruned at lookahead one") {
    auto sys = interval4();
    const Space& sp = *sys.space;
    SetApprox full = SetApprox::full(sp);
    EssentialApprox ess = essential_part(*sys, full, 1, 1);
    PointId four = sp.snap(Coords{{4.0}, {}, 0});
    PointId two = sp.snap(Coords{{2.0}, {}, 0});
    CHECK_FALSE(ess.value.contains(four));
    CHECK(ess.value.contains(two));
    REQUIRE(ess.pruned.size() == 1);
    CHECK(ess.pruned[0].first == Word{4});
    CHECK(ess.pruned[0].second == 1);
    CHECK(ess.pruned_value == SetApprox::of(sp, {four}));
}

TEST_CASE("essential + pruned cylinders partition the iterate") {
    auto sys = interval4();
    SetApprox full = SetApprox::full(*sys.space);
    for (int k = 1; k <= 4; ++k) {
        SetApprox fk = full;
        for (int i = 0; i < k; ++i) fk = hutchinson(*sys, fk);
        for (int m = 0; m <= 2; ++m) {
            EssentialApprox ess = essential_part(*sys, full, k, m);
            CHECK(set_union(ess.value, ess.pruned_value) == fk);
            CHECK(is_subset(ess.value, fk));
        }
    }
}

TEST_CASE("lookahead is monotone and stabilizes") {
    auto sys = interval4();
    SetApprox full = SetApprox::full(*sys.space);
    SetApprox prev = essential_part(*sys, full, 2, 0).value;
    for (int m = 1; m <= 4; ++m) {
        SetApprox cur = essential_part(*sys, full, 2, m).value;
        CHECK(is_subset(cur, prev));
        prev = cur;
    }
    CHECK(essential_part(*sys, full, 2, 2).value == essential_part(*sys, full, 2, 5).value);
}

TEST_CASE("slab system: every surviving cylinder is essential") {
    auto el2 = slab(2);
    SetApprox full = SetApprox::full(*el2.space);
    SetApprox f2 = hutchinson(*el2, hutchinson_full(*el2));
    EssentialApprox ess = essential_part(*el2, full, 2, 3);
    CHECK(ess.value == f2);
    CHECK(ess.pruned.empty());
}

TEST_CASE("convergence certificate") {
    auto sys = interval4();
    const Space& sp = *sys.space;
    SetApprox full = SetApprox::full(sp);
    ConvergenceReport rep = convergence_report(*sys, full, 8, 2);
    CHECK(rep.ok);
    CHECK(rep.lambda == doctest::Approx(1.0 / 3));
    REQUIRE(rep.series.size() == 8);
    for (auto& pt : rep.series) CHECK(pt.dist_ess <= pt.bound);
    // one-step contraction up to the discretization floor
    for (size_t i = 1; i < rep.series.size(); ++i)
        CHECK(rep.series[i].dist_ess <=
              rep.lambda * rep.series[i - 1].dist_ess + 3 * sp.snap_error());

    SetApprox a = attractor(*sys, 14);
    ConvergenceReport tight = convergence_report(*sys, a, 5, 2);
    for (auto& pt : tight.series) CHECK(pt.dist_ess <= 4 * sp.snap_error());

    SetApprox three = SetApprox::of(sp, {sp.snap(Coords{{3.0}, {}, 0})});
    CHECK_THROWS_AS(convergence_report(*sys, three, 4, 2), Error);
}

TEST_CASE("detour through the unrestricted attractor") {
    auto sys = interval4();
    SetApprox via_global = attractor_from_global(*sys, 14);
    CHECK(hausdorff(via_global, attractor(*sys, 14)) <= 5e-3);

    auto el2 = slab(2);
    const Space& sp = *el2.space;
    SetApprox g2 = attractor_from_global(*el2, 12);
    double h = sp.cell_size();
    std::vector<PointId> oracle;
    for (std::uint64_t i = 0; i < sp.cell_count(); ++i) {
        Coords c = sp.coords(i);
        if (c.x[1] < h && cantor_distance(c.x[0]) <= h / 2) oracle.push_back(i);
    }
    oracle.push_back(sp.snap(Coords{{1.0, 1.0}, {}, 0}));
    CHECK(hausdorff(g2, SetApprox::of(sp, std::move(oracle))) <= 5e-3);

    auto seqs = sequence_system();
    CHECK_THROWS_AS(attractor_from_global(*seqs, 4), Error);
}
