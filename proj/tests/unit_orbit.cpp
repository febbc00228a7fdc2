#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "lifs/orbit.hpp"

using namespace lifs;
using namespace fixtures;

namespace {

Coords seq(std::vector<int> prefix) {
    prefix.resize(16, 0);
    return Coords{{}, std::move(prefix), 0};
}

}  // namespace

TEST_CASE("orbit extension endpoints and fixed points") {
    auto el3 = slab(3);
    const Space& sp = *el3.space;
    PointId p = sp.snap(Coords{{0.0, 1.0}, {}, 0});
    PointId q = sp.snap(Coords{{1.0, 1.0}, {}, 0});

    FiniteOrbit at_p = extend_orbit(*el3, p, 6);
    CHECK(at_p.length() == 0);
    for (auto& st : at_p.steps) CHECK(st.point == p);

    FiniteOrbit at_q = extend_orbit(*el3, q, 6);
    CHECK(at_q.length() == 1);
    CHECK(at_q.steps[0].symbol == 4);
    CHECK(at_q.steps[1].point == p);

    auto cantor = cantor_full(1.0 / 243);
    PointId zero = cantor.space->snap(Coords{{0.0}, {}, 0});
    FiniteOrbit fix = extend_orbit(*cantor, zero, 10, OrbitStrategy::Greedy);
    CHECK(fix.length() == 10);
    for (auto& st : fix.steps) {
        CHECK(st.symbol == 1);
        CHECK(st.point == zero);
    }
}

TEST_CASE("exhaustive search outlives the greedy choice") {
    // branch 1 jumps out of every domain; branch 2 stays put
    Space sp = Space::grid({{{0.0, 3.0}}}, 0.01);
    DomainSet unit = DomainSet::box1d(0.0, 1.0);
    std::vector<Branch> br;
    br.push_back({"f1", unit, ContractionMap::constant(Coords{{2.0}, {}, 0})});
    br.push_back({"f2", unit, ContractionMap::affine1d(0.5, 0.0)});
    LocalIFS ifs(sp, std::move(br));
    PointId x = sp.snap(Coords{{0.5}, {}, 0});
    CHECK(extend_orbit(ifs, x, 8, OrbitStrategy::Greedy).length() == 1);
    CHECK(extend_orbit(ifs, x, 8, OrbitStrategy::Exhaustive).length() == 8);
}

TEST_CASE("survivors of a full-domain system") {
    auto cantor = cantor_full(1.0 / 243);
    SurvivorSet s = survivor_sets(*cantor, 6);
    CHECK(s.stabilized_at == 0);
    CHECK(s.final_level() == SetApprox::full(*cantor.space));
    CHECK_THROWS_AS(endpoint_gap(*cantor, 8, 6), Error);
    CHECK(endpoints(*cantor, 8, 6).is_empty());
}

TEST_CASE("survivor levels decrease and stabilize") {
    auto sys = interval4();
    SurvivorSet s = survivor_sets(*sys, 8);
    for (size_t i = 1; i < s.levels.size(); ++i)
        CHECK(is_subset(s.levels[i], s.levels[i - 1]));
    CHECK(s.stabilized_at >= 0);
    // the isolated points 3 and their image 4 drop out; [0,1] survives
    const Space& sp = *sys.space;
    CHECK(s.final_level().contains(sp.snap(Coords{{0.5}, {}, 0})));
    CHECK_FALSE(s.final_level().contains(sp.snap(Coords{{3.0}, {}, 0})));

    SetApprox core = a_infinity(*sys, 14, 8);
    CHECK(hausdorff(core, cantor_oracle_cells(sp)) <= 5e-3);
    SetApprox ends = endpoints(*sys, 14, 8);
    CHECK(ends == SetApprox::of(sp, {sp.snap(Coords{{2.0}, {}, 0})}));
    CHECK(endpoint_gap(*sys, 14, 8) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("slab endpoints are the two constant targets") {
    auto el3 = slab(3);
    const Space& sp = *el3.space;
    PointId p = sp.snap(Coords{{0.0, 1.0}, {}, 0});
    PointId q = sp.snap(Coords{{1.0, 1.0}, {}, 0});
    SetApprox ends = endpoints(*el3, 14, 8);
    CHECK(ends == SetApprox::of(sp, {q, p}));

    SetApprox core = a_infinity(*el3, 14, 8);
    double h = sp.cell_size();
    std::vector<PointId> oracle;
    for (std::uint64_t i = 0; i < sp.cell_count(); ++i) {
        Coords c = sp.coords(i);
        if (c.x[1] < h && cantor_distance(c.x[0]) <= h / 2) oracle.push_back(i);
    }
    CHECK(hausdorff(core, SetApprox::of(sp, std::move(oracle))) <= 5e-3);
    CHECK(endpoint_gap(*el3, 14, 8) > 0.5);
}

TEST_CASE("sequence system: binary core and accumulating endpoints") {
    auto sys = sequence_system();
    const Space& sp = *sys.space;
    SetApprox core = a_infinity(*sys, 6, 4);
    CHECK(core == DomainSet::sequences_over({0, 1}).cells(sp));

    SetApprox ends = endpoints(*sys, 6, 4);
    CHECK_FALSE(ends.is_empty());
    for (int n = 1; n <= 10; ++n) {
        std::vector<int> b(16, 0);
        b[n] = b[n + 1] = 1;
        PointId bn = sp.snap(Coords{{}, b, 0});
        PointId img = sys.ifs->step(3, bn);
        CHECK(ends.contains(img));
        CHECK(sp.distance(bn, img) == doctest::Approx(std::exp(-n)));
        CHECK(core.contains(bn));
    }
    CHECK(endpoint_gap(*sys, 6, 4) <= std::exp(-10.0));
}

TEST_CASE("extended shift steps") {
    auto cantor = cantor_full(1.0 / 243);
    const Space& sp = *cantor.space;
    TwoSidedItinerary it;
    it.past = {1, 1, 1};
    PointId x = code_map(*cantor, it.past).point;
    it.future = extend_orbit(*cantor, x, 6, OrbitStrategy::Greedy);
    validate_itinerary(*cantor, it, 1e-12);
    for (int i = 0; i < 4; ++i) {
        PointId before = code_map(*cantor, it.past).point;
        int a0 = it.future.steps[0].symbol;
        it = extended_shift_step(*cantor, it);
        double tol = 2 * std::pow(1.0 / 3, static_cast<double>(it.past.size()) - 1) +
                     2 * sp.snap_error();
        CHECK(sp.distance(code_map(*cantor, it.past).point,
                          cantor.ifs->step(a0, before)) <= tol);
    }
    CHECK(it.past.size() == 7);
}

TEST_CASE("extended shift hits the endpoint") {
    auto el3 = slab(3);
    TwoSidedItinerary it;
    it.past = {1, 2, 1};
    PointId x = code_map(*el3, it.past).point;
    it.future = extend_orbit(*el3, x, 4, OrbitStrategy::Greedy);
    // force the type-IV continuation: 3 to q, 4 to p, then identity
    it.future.steps[0].symbol = 3;
    it.future.steps[1] = {el3.ifs->step(3, x), 4};
    PointId p = el3.space->snap(Coords{{0.0, 1.0}, {}, 0});
    for (size_t i = 2; i < it.future.steps.size(); ++i) it.future.steps[i] = {p, 0};
    validate_itinerary(*el3, it, 1e-12);
    it = extended_shift_step(*el3, it);
    it = extended_shift_step(*el3, it);
    CHECK(it.past == Word{1, 2, 1, 3, 4});
    CHECK_THROWS_AS(extended_shift_step(*el3, it), Error);
}

TEST_CASE("inconsistent itineraries are rejected") {
    auto sys = interval4();
    TwoSidedItinerary it;
    it.past = {3};  // code point 2, where nothing applies
    PointId two = sys.space->snap(Coords{{2.0}, {}, 0});
    it.future.steps = {{two, 1}, {two, 0}};
    CHECK_THROWS_AS(validate_itinerary(*sys, it, 1e-12), Error);
    CHECK_THROWS_AS(extended_shift_step(*sys, it), Error);

    // seam mismatch: future starts away from the past's code point
    TwoSidedItinerary seam;
    seam.past = {1};
    seam.future.steps = {{two, 0}};
    CHECK_THROWS_AS(validate_itinerary(*sys, seam, 1e-12), Error);
}

TEST_CASE("natural extension commutes on the gallery systems") {
    auto cantor = cantor_full(1.0 / 243);
    NaturalExtensionReport r1 = natural_extension_check(*cantor, 40, 8);
    CHECK(r1.ok);
    CHECK(r1.checked == 40);
    CHECK(r1.inconsistent == 0);
    CHECK(r1.inverse_checked == 40);

    auto el3 = slab(3);
    NaturalExtensionReport r2 = natural_extension_check(*el3, 40, 8);
    CHECK(r2.ok);
    CHECK(r2.inconsistent == 0);
    CHECK(r2.inverse_checked + r2.inverse_skipped == r2.checked);
    CHECK(r2.inverse_skipped > 0);  // constant branches have no inverse

    auto seqs = sequence_system();
    NaturalExtensionReport r3 = natural_extension_check(*seqs, 25, 8);
    CHECK(r3.ok);
    CHECK(r3.inverse_checked == 0);
}

TEST_CASE("orbit histograms") {
    auto el3 = slab(3);
    OrbitHistogram h = classify_orbits(*el3, 6, 20000);
    CHECK(h.structured);
    for (auto& [key, count] : h.counts) CHECK(key != "other");
    CHECK(h.counts["I"] > 0);
    CHECK(h.counts["II"] > 0);
    CHECK(h.counts["III"] > 0);
    CHECK(h.counts["IV"] > 0);

    auto cantor = cantor_full(1.0 / 243);
    OrbitHistogram hc = classify_orbits(*cantor, 10, 200);
    CHECK_FALSE(hc.structured);
    CHECK(hc.counts["infinite"] == 200);

    auto sys = interval4();
    OrbitHistogram hi = classify_orbits(*sys, 10, 500);
    CHECK_FALSE(hi.structured);
    CHECK(hi.counts["infinite"] > 0);
    int finite = 0;
    for (auto& [key, count] : hi.counts)
        if (key != "infinite") finite += count;
    CHECK(finite > 0);
}
