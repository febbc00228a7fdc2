#include "lifs/domain.hpp"

#include <algorithm>
#include <cmath>

namespace lifs {

DomainSet DomainSet::whole_space() {
    DomainSet d;
    d.full = true;
    return d;
}

DomainSet DomainSet::box1d(double lo, double hi) {
    DomainSet d;
    d.boxes.push_back(Box{{lo}, {hi}});
    return d;
}

DomainSet DomainSet::of_boxes(std::vector<Box> boxes) {
    DomainSet d;
    d.boxes = std::move(boxes);
    return d;
}

DomainSet DomainSet::of_points(std::vector<Coords> points) {
    DomainSet d;
    d.points = std::move(points);
    return d;
}

DomainSet DomainSet::sequences_over(std::vector<int> symbols) {
    DomainSet d;
    d.allowed_symbols = std::move(symbols);
    std::sort(d.allowed_symbols.begin(), d.allowed_symbols.end());
    return d;
}

DomainSet DomainSet::explicit_set(const SetApprox& s) {
    DomainSet d;
    d.explicit_ids = s.ids;
    return d;
}

bool DomainSet::contains(PointId p, const Space& space) const {
    if (space.kind() == SpaceKind::Enriched && vertex >= 0) {
        if (static_cast<int>(p / space.base_cell_count()) != vertex) return false;
    }
    if (full) return true;
    if (space.kind() == SpaceKind::Symbolic) {
        if (!allowed_symbols.empty()) {
            bool ok = true;
            for (int i = 0; i < space.length() && ok; ++i)
                ok = std::binary_search(allowed_symbols.begin(), allowed_symbols.end(),
                                        space.symbol_at(p, i));
            if (ok) return true;
        }
        for (const Coords& pt : points)
            if (space.snap(pt) == p) return true;
        return std::binary_search(explicit_ids.begin(), explicit_ids.end(), p);
    }
    std::vector<std::int64_t> idx;
    int v;
    space.decode(p, idx, v);
    for (const Box& b : boxes) {
        bool inside = true;
        for (int a = 0; a < space.dim() && inside; ++a) {
            inside = idx[a] >= space.snap_index(a, b.lo[a]) &&
                     idx[a] <= space.snap_index(a, b.hi[a]);
        }
        if (inside) return true;
    }
    PointId base = p % space.base_cell_count();
    for (const Coords& pt : points) {
        if (space.kind() == SpaceKind::Enriched) {
            if (space.snap(pt) % space.base_cell_count() == base) return true;
        } else if (space.snap(pt) == p) {
            return true;
        }
    }
    return std::binary_search(explicit_ids.begin(), explicit_ids.end(), p);
}

SetApprox DomainSet::cells(const Space& space, std::uint64_t max_cells) const {
    std::vector<PointId> out;
    const bool enriched = space.kind() == SpaceKind::Enriched;
    const int v0 = (enriched && vertex >= 0) ? vertex : 0;
    const int v1 = (enriched && vertex >= 0) ? vertex
                   : enriched                ? space.vertex_count() - 1
                                             : 0;
    if (full) {
        std::uint64_t base = space.base_cell_count();
        std::uint64_t total = base * static_cast<std::uint64_t>(v1 - v0 + 1);
        if (total > max_cells)
            fail(ErrorCode::BudgetExceeded, "domain too large to materialize");
        for (int v = v0; v <= v1; ++v)
            for (std::uint64_t i = 0; i < base; ++i)
                out.push_back(static_cast<std::uint64_t>(v) * base + i);
        return SetApprox::of(space, std::move(out));
    }
    if (space.kind() == SpaceKind::Symbolic) {
        if (!allowed_symbols.empty()) {
            const int L = space.length();
            double count = std::pow(static_cast<double>(allowed_symbols.size()), L);
            if (count > static_cast<double>(max_cells))
                fail(ErrorCode::BudgetExceeded, "symbol domain too large to materialize");
            std::vector<int> digit(L, 0);
            for (;;) {
                std::uint64_t id = 0;
                for (int i = 0; i < L; ++i)
                    id = id * static_cast<std::uint64_t>(space.alphabet()) +
                         static_cast<std::uint64_t>(allowed_symbols[digit[i]]);
                out.push_back(id);
                int i = L - 1;
                while (i >= 0 && digit[i] == static_cast<int>(allowed_symbols.size()) - 1)
                    digit[i--] = 0;
                if (i < 0) break;
                ++digit[i];
            }
        }
    } else {
        for (const Box& b : boxes) {
            std::vector<std::int64_t> lo(space.dim()), hi(space.dim()), idx(space.dim());
            std::uint64_t count = 1;
            for (int a = 0; a < space.dim(); ++a) {
                lo[a] = space.snap_index(a, b.lo[a]);
                hi[a] = space.snap_index(a, b.hi[a]);
                count *= static_cast<std::uint64_t>(hi[a] - lo[a] + 1);
            }
            if (out.size() + count * (v1 - v0 + 1) > max_cells)
                fail(ErrorCode::BudgetExceeded, "box domain too large to materialize");
            idx = lo;
            for (;;) {
                for (int v = v0; v <= v1; ++v) out.push_back(space.encode(idx, v));
                int a = space.dim() - 1;
                while (a >= 0 && idx[a] == hi[a]) idx[a--] = lo[a];
                if (a < 0) break;
                ++idx[a];
            }
        }
    }
    for (const Coords& pt : points) {
        PointId p = space.snap(pt);
        if (enriched && vertex >= 0)
            p = p % space.base_cell_count() + static_cast<std::uint64_t>(vertex) * space.base_cell_count();
        out.push_back(p);
    }
    for (PointId p : explicit_ids) out.push_back(p);
    return SetApprox::of(space, std::move(out));
}

}  // namespace lifs
