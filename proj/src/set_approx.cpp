#include "lifs/set_approx.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace lifs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Large finite stand-in for "no seed": keeps the parabola envelope
// arithmetic finite while dominating every real squared distance.
constexpr double kFar = 1e18;

// One-dimensional squared distance transform (lower envelope of parabolas).
void dt_line(const double* f, int n, double* d, int* v, double* z) {
    int k = 0;
    v[0] = 0;
    z[0] = -kInf;
    z[1] = kInf;
    for (int q = 1; q < n; ++q) {
        double s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) /
                   (2.0 * q - 2.0 * v[k]);
        while (s <= z[k]) {
            --k;
            s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) /
                (2.0 * q - 2.0 * v[k]);
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kInf;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        d[q] = double(q - v[k]) * (q - v[k]) + f[v[k]];
    }
}

// Exact squared Euclidean distance transform (in cell-index units) over the
// base grid; seeds are the base ids in `members`.
std::vector<double> squared_edt(const Space& s, const std::vector<PointId>& base_ids) {
    const std::uint64_t n = s.base_cell_count();
    std::vector<double> grid(n, kFar);
    for (PointId p : base_ids) grid[p] = 0.0;

    std::vector<std::int64_t> dims(s.dim());
    for (int a = 0; a < s.dim(); ++a) dims[a] = s.axis_cells(a);
    std::vector<std::uint64_t> strides(s.dim(), 1);
    for (int a = s.dim() - 2; a >= 0; --a)
        strides[a] = strides[a + 1] * static_cast<std::uint64_t>(dims[a + 1]);

    std::int64_t maxdim = *std::max_element(dims.begin(), dims.end());
    std::vector<double> f(maxdim), d(maxdim), z(maxdim + 1);
    std::vector<int> v(maxdim);

    for (int a = 0; a < s.dim(); ++a) {
        const std::int64_t na = dims[a];
        const std::uint64_t stride = strides[a];
        const std::uint64_t lines = n / static_cast<std::uint64_t>(na);
        for (std::uint64_t line = 0; line < lines; ++line) {
            // Base offset of this line: expand `line` skipping axis a.
            std::uint64_t rem = line, off = 0;
            for (int b = s.dim() - 1; b >= 0; --b) {
                if (b == a) continue;
                std::uint64_t ib = rem % static_cast<std::uint64_t>(dims[b]);
                rem /= static_cast<std::uint64_t>(dims[b]);
                off += ib * strides[b];
            }
            for (std::int64_t i = 0; i < na; ++i)
                f[i] = grid[off + static_cast<std::uint64_t>(i) * stride];
            dt_line(f.data(), static_cast<int>(na), d.data(), v.data(), z.data());
            for (std::int64_t i = 0; i < na; ++i)
                grid[off + static_cast<std::uint64_t>(i) * stride] = d[i];
        }
    }
    return grid;
}

enum class Mode { MaxMin, MinMin };

double grid_one_sided(const SetApprox& a, const SetApprox& b, Mode mode) {
    const Space& s = *a.space;
    const double h = s.cell_size();
    if (s.kind() == SpaceKind::Grid) {
        if (a.size() * b.size() <= 20000) {
            // Small sets: direct evaluation is cheaper than a full transform.
            double acc = (mode == Mode::MaxMin) ? 0.0 : kInf;
            for (PointId p : a.ids) {
                double best = kInf;
                for (PointId q : b.ids) best = std::min(best, s.distance(p, q));
                acc = (mode == Mode::MaxMin) ? std::max(acc, best) : std::min(acc, best);
            }
            return acc;
        }
        auto d2 = squared_edt(s, b.ids);
        double acc = (mode == Mode::MaxMin) ? 0.0 : kInf;
        for (PointId p : a.ids) {
            double d = std::sqrt(d2[p]) * h;
            acc = (mode == Mode::MaxMin) ? std::max(acc, d) : std::min(acc, d);
        }
        return acc;
    }
    // Enriched: per-vertex transform plus a vertex-crossing term (+1).
    const std::uint64_t base = s.base_cell_count();
    const int m = s.vertex_count();
    std::vector<std::vector<PointId>> slices(m);
    std::vector<PointId> all;
    for (PointId q : b.ids) {
        slices[static_cast<int>(q / base)].push_back(q % base);
        all.push_back(q % base);
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::vector<std::vector<double>> d2v(m);
    for (int v = 0; v < m; ++v)
        if (!slices[v].empty()) d2v[v] = squared_edt(s, slices[v]);
    auto d2all = squared_edt(s, all);
    double acc = (mode == Mode::MaxMin) ? 0.0 : kInf;
    for (PointId p : a.ids) {
        int v = static_cast<int>(p / base);
        PointId pb = p % base;
        double best = 1.0 + std::sqrt(d2all[pb]) * h;
        if (!d2v[v].empty()) best = std::min(best, std::sqrt(d2v[v][pb]) * h);
        acc = (mode == Mode::MaxMin) ? std::max(acc, best) : std::min(acc, best);
    }
    return acc;
}

double symbolic_one_sided(const SetApprox& a, const SetApprox& b, Mode mode) {
    // Lexicographic neighbors in the sorted id list realize the longest
    // common prefix, so two candidates per query point suffice.
    const Space& s = *a.space;
    double acc = (mode == Mode::MaxMin) ? 0.0 : kInf;
    for (PointId p : a.ids) {
        auto it = std::lower_bound(b.ids.begin(), b.ids.end(), p);
        int best = 0;
        if (it != b.ids.end()) best = std::max(best, s.common_prefix(p, *it));
        if (it != b.ids.begin()) best = std::max(best, s.common_prefix(p, *(it - 1)));
        double d = (it != b.ids.end() && *it == p) ? 0.0 : std::exp(-static_cast<double>(best));
        acc = (mode == Mode::MaxMin) ? std::max(acc, d) : std::min(acc, d);
    }
    return acc;
}

double one_sided(const SetApprox& a, const SetApprox& b, Mode mode) {
    if (a.space->kind() == SpaceKind::Symbolic) return symbolic_one_sided(a, b, mode);
    return grid_one_sided(a, b, mode);
}

void check_nonempty_pair(const SetApprox& a, const SetApprox& b) {
    if (a.space == nullptr || b.space == nullptr || !(*a.space == *b.space))
        fail(ErrorCode::Internal, "set distance across different spaces");
    if (a.is_empty() || b.is_empty())
        fail(ErrorCode::EmptySetDistance, "Hausdorff distance is undefined for the empty set");
}

}  // namespace

SetApprox SetApprox::of(const Space& s, std::vector<PointId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return SetApprox{&s, std::move(ids)};
}

SetApprox SetApprox::full(const Space& s, std::uint64_t max_cells) {
    if (s.cell_count() > max_cells)
        fail(ErrorCode::BudgetExceeded, "space too large to materialize as a full set");
    SetApprox r{&s, {}};
    r.ids.resize(s.cell_count());
    for (std::uint64_t i = 0; i < s.cell_count(); ++i) r.ids[i] = i;
    return r;
}

bool SetApprox::contains(PointId p) const {
    return std::binary_search(ids.begin(), ids.end(), p);
}

SetApprox set_union(const SetApprox& a, const SetApprox& b) {
    SetApprox r{a.space, {}};
    r.ids.reserve(a.size() + b.size());
    std::set_union(a.ids.begin(), a.ids.end(), b.ids.begin(), b.ids.end(),
                   std::back_inserter(r.ids));
    return r;
}

SetApprox set_intersect(const SetApprox& a, const SetApprox& b) {
    SetApprox r{a.space, {}};
    std::set_intersection(a.ids.begin(), a.ids.end(), b.ids.begin(), b.ids.end(),
                          std::back_inserter(r.ids));
    return r;
}

SetApprox set_difference(const SetApprox& a, const SetApprox& b) {
    SetApprox r{a.space, {}};
    std::set_difference(a.ids.begin(), a.ids.end(), b.ids.begin(), b.ids.end(),
                        std::back_inserter(r.ids));
    return r;
}

bool is_subset(const SetApprox& a, const SetApprox& b) {
    return std::includes(b.ids.begin(), b.ids.end(), a.ids.begin(), a.ids.end());
}

double hausdorff(const SetApprox& a, const SetApprox& b) {
    check_nonempty_pair(a, b);
    if (a == b) return 0.0;
    return std::max(one_sided(a, b, Mode::MaxMin), one_sided(b, a, Mode::MaxMin));
}

double directed_hausdorff(const SetApprox& a, const SetApprox& b) {
    check_nonempty_pair(a, b);
    return one_sided(a, b, Mode::MaxMin);
}

double min_distance(const SetApprox& a, const SetApprox& b) {
    check_nonempty_pair(a, b);
    return one_sided(a, b, Mode::MinMin);
}

SetApprox dilate_one_cell(const SetApprox& a) {
    const Space& s = *a.space;
    if (s.kind() == SpaceKind::Symbolic) return a;
    std::vector<PointId> out;
    std::vector<std::int64_t> idx, nb;
    int vertex;
    for (PointId p : a.ids) {
        s.decode(p, idx, vertex);
        nb = idx;
        // Enumerate the {-1,0,1}^dim neighborhood, clipped to the grid.
        int d = s.dim();
        std::vector<int> off(d, -1);
        for (;;) {
            bool ok = true;
            for (int ax = 0; ax < d; ++ax) {
                nb[ax] = idx[ax] + off[ax];
                if (nb[ax] < 0 || nb[ax] >= s.axis_cells(ax)) { ok = false; break; }
            }
            if (ok) out.push_back(s.encode(nb, vertex));
            int ax = d - 1;
            while (ax >= 0 && off[ax] == 1) off[ax--] = -1;
            if (ax < 0) break;
            ++off[ax];
        }
    }
    return SetApprox::of(s, std::move(out));
}

void write_csv(std::ostream& os, const SetApprox& a) {
    const Space& s = *a.space;
    char buf[64];
    for (PointId p : a.ids) {
        Coords c = s.coords(p);
        if (s.kind() == SpaceKind::Symbolic) {
            for (int v : c.sym) os << v;
        } else {
            for (size_t i = 0; i < c.x.size(); ++i) {
                if (i) os << ',';
                std::snprintf(buf, sizeof buf, "%.17g", c.x[i]);
                os << buf;
            }
            if (s.kind() == SpaceKind::Enriched) os << ',' << s.vertex_name(c.vertex);
        }
        os << '\n';
    }
}

}  // namespace lifs
