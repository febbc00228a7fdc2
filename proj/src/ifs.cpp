#include "lifs/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lifs {

namespace {
constexpr std::uint64_t kMaskCap = 1ull << 24;

// Hausdorff distance extended to empty operands: two empty sets coincide,
// one empty set is infinitely far from a nonempty one.
double distance_or_degenerate(const SetApprox& a, const SetApprox& b) {
    if (a.is_empty() && b.is_empty()) return 0.0;
    if (a.is_empty() || b.is_empty()) return std::numeric_limits<double>::infinity();
    return hausdorff(a, b);
}
}  // namespace

LocalIFS::LocalIFS(const Space& space, std::vector<Branch> branches)
    : space_(&space), branches_(std::move(branches)) {
    if (branches_.empty()) fail(ErrorCode::SchemaError, "a local IFS needs at least one branch");
    lambda_ = 0;
    for (auto& b : branches_) {
        lambda_ = std::max(lambda_, b.map.lip);
        if (b.map.non_contractive() || b.map.lip >= 1) contractive_ = false;
    }
    cells_cache_.resize(branches_.size());
    mask_cache_.resize(branches_.size());
}

const SetApprox& LocalIFS::domain_cells(int j) const {
    auto& slot = cells_cache_[j - 1];
    if (slot.space == nullptr) slot = branches_[j - 1].domain.cells(*space_);
    return slot;
}

bool LocalIFS::in_domain(int j, PointId p) const {
    if (space_->kind() != SpaceKind::Symbolic && space_->cell_count() <= kMaskCap) {
        auto& mask = mask_cache_[j - 1];
        if (mask.empty()) {
            mask.assign(space_->cell_count(), 0);
            for (PointId q : domain_cells(j).ids) mask[q] = 1;
        }
        return mask[p] != 0;
    }
    return branches_[j - 1].domain.contains(p, *space_);
}

PointId LocalIFS::step(int j, PointId p) const {
    return space_->snap(branches_[j - 1].map.apply(space_->coords(p), *space_));
}

SetApprox LocalIFS::union_domain_cells() const {
    SetApprox u = SetApprox::empty(*space_);
    for (int j = 1; j <= size(); ++j) u = set_union(u, domain_cells(j));
    return u;
}

bool LocalIFS::domain_is_full(int j) const {
    if (branches_[j - 1].domain.full &&
        (space_->kind() != SpaceKind::Enriched || branches_[j - 1].domain.vertex < 0))
        return true;
    return domain_cells(j).size() == space_->cell_count();
}

std::vector<int> LocalIFS::address_of(PointId p) const {
    std::vector<int> labels;
    for (int j = 1; j <= size(); ++j)
        if (in_domain(j, p)) labels.push_back(j);
    return labels;
}

double LocalIFS::accumulated_snap_error() const {
    double denom = 1.0 - std::min(lambda_, 0.999999);
    return space_->snap_error() / denom;
}

double LocalIFS::default_tolerance(int k) const {
    return std::pow(lambda_, k) * space_->diameter() + 2 * accumulated_snap_error();
}

SetApprox apply_branch(const LocalIFS& ifs, int j, const SetApprox& a) {
    std::vector<PointId> out;
    for (PointId p : a.ids)
        if (ifs.in_domain(j, p)) out.push_back(ifs.step(j, p));
    return SetApprox::of(ifs.space(), std::move(out));
}

SetApprox apply_branch_full(const LocalIFS& ifs, int j) {
    std::vector<PointId> out;
    for (PointId p : ifs.domain_cells(j).ids) out.push_back(ifs.step(j, p));
    return SetApprox::of(ifs.space(), std::move(out));
}

SetApprox hutchinson(const LocalIFS& ifs, const SetApprox& a) {
    SetApprox r = SetApprox::empty(ifs.space());
    for (int j = 1; j <= ifs.size(); ++j) r = set_union(r, apply_branch(ifs, j, a));
    return r;
}

SetApprox hutchinson_full(const LocalIFS& ifs) {
    SetApprox r = SetApprox::empty(ifs.space());
    for (int j = 1; j <= ifs.size(); ++j) r = set_union(r, apply_branch_full(ifs, j));
    return r;
}

SetApprox attractor(const LocalIFS& ifs, int k) {
    if (!ifs.contractive())
        fail(ErrorCode::NonContractive, "attractor iteration needs a contractive system");
    if (k < 1) fail(ErrorCode::SchemaError, "attractor depth must be >= 1");
    SetApprox s = hutchinson_full(ifs);
    for (int i = 2; i <= k; ++i) {
        SetApprox next = hutchinson(ifs, s);
        if (next == s) break;  // nested sequence stabilized: F^i(X) = F^k(X)
        s = std::move(next);
    }
    return s;
}

BasinReport basin_classify(const LocalIFS& ifs, const SetApprox& a0, int k, double tau) {
    if (a0.is_empty()) fail(ErrorCode::SchemaError, "basin candidate must be nonempty");
    BasinReport rep;
    rep.tolerance = tau >= 0 ? tau : ifs.default_tolerance(k);
    SetApprox ref = attractor(ifs, k);

    rep.inv = is_subset(hutchinson(ifs, a0), a0) && is_subset(ref, a0);

    SetApprox cur = a0;
    SetApprox inter = a0;
    for (int i = 1; i <= k; ++i) {
        cur = hutchinson(ifs, cur);
        if (cur.is_empty() && rep.first_empty_depth < 0) rep.first_empty_depth = i;
        rep.distances.push_back(distance_or_degenerate(cur, ref));
        inter = set_intersect(inter, cur);
    }
    rep.out = rep.first_empty_depth < 0 && distance_or_degenerate(inter, ref) <= rep.tolerance;
    rep.attracted = distance_or_degenerate(cur, ref) <= rep.tolerance;
    return rep;
}

CompareReport compare_restrictions(const LocalIFS& ifs_t, const LocalIFS& ifs_s,
                                   const SetApprox& k_set, int depth) {
    if (ifs_t.size() != ifs_s.size())
        fail(ErrorCode::DomainNotNested, "restriction comparison needs matching branch lists");
    for (int j = 1; j <= ifs_t.size(); ++j)
        if (!is_subset(ifs_t.domain_cells(j), ifs_s.domain_cells(j)))
            fail(ErrorCode::DomainNotNested,
                 "branch " + std::to_string(j) + " domain is not nested");
    CompareReport rep;
    rep.operator_monotone = is_subset(hutchinson(ifs_t, k_set), hutchinson(ifs_s, k_set));
    rep.attractor_monotone = is_subset(attractor(ifs_t, depth), attractor(ifs_s, depth));
    return rep;
}

SetApprox condensation_hutchinson(const LocalIFS& ifs, const SetApprox& c, const SetApprox& a) {
    for (int j = 1; j <= ifs.size(); ++j)
        if (!ifs.domain_is_full(j))
            fail(ErrorCode::NotGlobal, "condensation requires full branch domains");
    if (c.is_empty()) fail(ErrorCode::NotGlobal, "condensation set must be nonempty");
    return set_union(hutchinson(ifs, a), c);
}

SetApprox condensation_attractor(const LocalIFS& ifs, const SetApprox& c, int k) {
    SetApprox s = set_union(hutchinson_full(ifs), c);
    for (int i = 2; i <= k; ++i) {
        SetApprox next = condensation_hutchinson(ifs, c, s);
        if (next == s) break;
        s = std::move(next);
    }
    return s;
}

bool osc_check(const LocalIFS& ifs) {
    if (!ifs.contractive())
        fail(ErrorCode::NonContractive, "open set condition check needs a contractive system");
    std::vector<SetApprox> images, fat;
    for (int j = 1; j <= ifs.size(); ++j) {
        images.push_back(apply_branch_full(ifs, j));
        fat.push_back(dilate_one_cell(images.back()));
    }
    for (size_t i = 0; i < images.size(); ++i)
        for (size_t j = i + 1; j < images.size(); ++j)
            if (!set_intersect(fat[i], images[j]).is_empty()) return false;
    return true;
}

}  // namespace lifs
