#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "lifs/set_approx.hpp"
#include "lifs/space.hpp"

using namespace lifs;

static Space unit_grid() { return Space::grid({{{0.0, 1.0}}}, 0.1); }

TEST_CASE("snap on [0,1] h=0.1") {
    Space s = unit_grid();
    CHECK(s.cell_count() == 10);
    CHECK(s.snap(Coords{{0.0}, {}, 0}) == 0);
    CHECK(s.coords(0).x[0] == doctest::Approx(0.05));
    CHECK(s.snap(Coords{{0.05}, {}, 0}) == 0);
    CHECK(s.snap(Coords{{0.999}, {}, 0}) == 9);
    // Interior cell edge: tie toward the lower index.
    CHECK(s.snap(Coords{{0.3}, {}, 0}) == 2);
    CHECK_THROWS_AS(s.snap(Coords{{1.2}, {}, 0}), Error);
    CHECK_THROWS_AS(s.snap(Coords{{-0.06}, {}, 0}), Error);
}

TEST_CASE("snap near an interior value on a fine grid") {
    Space s = Space::grid({{{0.0, 4.0}}}, 0.01);
    PointId p = s.snap(Coords{{2.0}, {}, 0});
    CHECK(std::abs(s.coords(p).x[0] - 2.0) <= 0.005);
}

TEST_CASE("snap/coords round-trip is the identity") {
    Space s = Space::grid({{{0.0, 1.0}, {-1.0, 2.0}}}, 0.05);
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::uint64_t> pick(0, s.cell_count() - 1);
    for (int i = 0; i < 500; ++i) {
        PointId p = pick(rng);
        CHECK(s.snap(s.coords(p)) == p);
    }
}

TEST_CASE("euclidean distance") {
    Space s = Space::grid({{{0.0, 2.0}, {0.0, 2.0}}}, 0.1);
    PointId p = s.snap(Coords{{0.5, 1.5}, {}, 0});
    PointId q = s.snap(Coords{{1.2, 0.2}, {}, 0});
    CHECK(s.distance(p, p) == 0.0);
    CHECK(s.distance(p, q) == doctest::Approx(std::sqrt(0.7 * 0.7 + 1.3 * 1.3)).epsilon(0.01));
}

TEST_CASE("symbolic distance is e^{-prefix}") {
    Space s = Space::symbolic(2, 8);
    PointId p = s.snap(Coords{{}, {0, 1, 1, 0, 0, 0, 0, 0}, 0});
    PointId q = s.snap(Coords{{}, {0, 1, 0, 0, 0, 0, 0, 0}, 0});
    CHECK(s.distance(p, q) == doctest::Approx(std::exp(-2.0)));
    CHECK(s.distance(p, p) == 0.0);
    CHECK(s.diameter() == 1.0);
    CHECK_THROWS_AS(s.snap(Coords{{}, {0, 1, 2, 0, 0, 0, 0, 0}, 0}), Error);
}

TEST_CASE("symbolic distance is an ultrametric") {
    Space s = Space::symbolic(3, 6);
    std::mt19937 rng(11);
    std::uniform_int_distribution<std::uint64_t> pick(0, s.cell_count() - 1);
    for (int i = 0; i < 2000; ++i) {
        PointId x = pick(rng), y = pick(rng), z = pick(rng);
        CHECK(s.distance(x, z) <= std::max(s.distance(x, y), s.distance(y, z)) + 1e-12);
    }
}

TEST_CASE("hausdorff basics") {
    Space s = Space::grid({{{0.0, 1.0}}}, 0.001);
    auto interval = [&](double lo, double hi) {
        std::vector<PointId> ids;
        for (std::uint64_t i = 0; i < s.cell_count(); ++i) {
            double x = s.coords(i).x[0];
            if (x >= lo && x <= hi) ids.push_back(i);
        }
        return SetApprox::of(s, std::move(ids));
    };
    SetApprox whole = interval(0, 1);
    SetApprox gap = set_union(interval(0, 1.0 / 3), interval(2.0 / 3, 1));
    CHECK(hausdorff(whole, whole) == 0.0);
    CHECK(hausdorff(whole, gap) == doctest::Approx(1.0 / 6).epsilon(0.02));

    SetApprox a = SetApprox::of(s, {s.snap(Coords{{0.0}, {}, 0})});
    SetApprox b = SetApprox::of(s, {s.snap(Coords{{1.0}, {}, 0})});
    CHECK(hausdorff(a, b) == doctest::Approx(1.0).epsilon(0.01));
    CHECK_THROWS_AS(hausdorff(a, SetApprox::empty(s)), Error);
}

TEST_CASE("hausdorff is a metric on small grids") {
    Space s = Space::grid({{{0.0, 1.0}, {0.0, 1.0}}}, 0.25);
    std::mt19937 rng(3);
    std::uniform_int_distribution<std::uint64_t> pick(0, s.cell_count() - 1);
    auto random_set = [&] {
        std::vector<PointId> ids;
        int n = 1 + static_cast<int>(pick(rng) % 6);
        for (int i = 0; i < n; ++i) ids.push_back(pick(rng));
        return SetApprox::of(s, std::move(ids));
    };
    for (int i = 0; i < 300; ++i) {
        SetApprox a = random_set(), b = random_set(), c = random_set();
        double ab = hausdorff(a, b), ba = hausdorff(b, a);
        CHECK(ab == ba);
        CHECK((ab == 0.0) == (a == b));
        CHECK(hausdorff(a, c) <= ab + hausdorff(b, c) + 1e-12);
    }
}

TEST_CASE("hausdorff of unions is bounded by the worst pair") {
    Space s = Space::grid({{{0.0, 1.0}}}, 0.05);
    std::mt19937 rng(5);
    std::uniform_int_distribution<std::uint64_t> pick(0, s.cell_count() - 1);
    auto random_set = [&] {
        std::vector<PointId> ids{pick(rng)};
        while (pick(rng) % 3) ids.push_back(pick(rng));
        return SetApprox::of(s, std::move(ids));
    };
    for (int trial = 0; trial < 200; ++trial) {
        int m = 2 + static_cast<int>(pick(rng) % 3);
        SetApprox ua = SetApprox::empty(s), ub = SetApprox::empty(s);
        double worst = 0;
        for (int i = 0; i < m; ++i) {
            SetApprox a = random_set(), b = random_set();
            worst = std::max(worst, hausdorff(a, b));
            ua = set_union(ua, a);
            ub = set_union(ub, b);
        }
        CHECK(hausdorff(ua, ub) <= worst + 1e-12);
    }
}

TEST_CASE("distance transform agrees with brute force") {
    Space s = Space::grid({{{0.0, 1.0}, {0.0, 1.0}}}, 0.02);  // 50x50: transform path
    std::mt19937 rng(17);
    std::uniform_int_distribution<std::uint64_t> pick(0, s.cell_count() - 1);
    std::vector<PointId> av, bv;
    for (int i = 0; i < 400; ++i) av.push_back(pick(rng));
    for (int i = 0; i < 350; ++i) bv.push_back(pick(rng));
    SetApprox a = SetApprox::of(s, av), b = SetApprox::of(s, bv);
    double brute = 0;
    for (PointId p : a.ids) {
        double best = 1e30;
        for (PointId q : b.ids) best = std::min(best, s.distance(p, q));
        brute = std::max(brute, best);
    }
    CHECK(directed_hausdorff(a, b) == doctest::Approx(brute).epsilon(1e-12));
}

TEST_CASE("enriched metric adds the vertex indicator") {
    Space base = Space::grid({{{0.0, 1.0}}}, 0.1);
    Space y = Space::enriched(base, {"u", "v"});
    CHECK(y.cell_count() == 20);
    PointId a = y.snap(Coords{{0.25}, {}, 0});
    PointId b = y.snap(Coords{{0.25}, {}, 1});
    PointId c = y.snap(Coords{{0.75}, {}, 1});
    CHECK(y.distance(a, b) == doctest::Approx(1.0));
    CHECK(y.distance(a, c) == doctest::Approx(1.5));
    CHECK(y.distance(b, c) == doctest::Approx(0.5));
    CHECK(y.diameter() == doctest::Approx(2.0));

    SetApprox left{&y, {a}};
    SetApprox right{&y, {b, c}};
    CHECK(hausdorff(left, right) == doctest::Approx(1.5));
}

TEST_CASE("csv dump") {
    Space s = Space::symbolic(2, 4);
    SetApprox a = SetApprox::of(s, {s.snap(Coords{{}, {0, 1, 1, 0}, 0})});
    std::ostringstream os;
    write_csv(os, a);
    CHECK(os.str() == "0110\n");
}
