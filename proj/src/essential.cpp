#include "lifs/essential.hpp"

#include <algorithm>
#include <cmath>

namespace lifs {

namespace {

struct EssentialScan {
    const LocalIFS& ifs;
    const std::vector<SetApprox>& full_iterates;  // [e] = F^e(X) for e >= 1
    EssentialApprox& out;
    std::uint64_t max_nodes;
    std::uint64_t visited = 0;
    std::vector<PointId> value_ids, pruned_ids;

    // S_K folds the word over the query set, S_X over the lookahead iterate;
    // the latter nonempty at depth k certifies an admissible extension.
    void walk(Word& w, const SetApprox& s_k, const SetApprox& s_x) {
        if (++visited > max_nodes)
            fail(ErrorCode::BudgetExceeded, "essential-part scan exceeds the word budget");
        if (static_cast<int>(w.size()) == out.depth) {
            if (!s_x.is_empty()) {
                out.words.push_back(w);
                value_ids.insert(value_ids.end(), s_k.ids.begin(), s_k.ids.end());
            } else if (!s_k.is_empty()) {
                out.pruned.emplace_back(w, 0);  // extinction depth filled in later
                pruned_ids.insert(pruned_ids.end(), s_k.ids.begin(), s_k.ids.end());
            }
            return;
        }
        for (int j = 1; j <= ifs.size(); ++j) {
            SetApprox next_k = apply_branch(ifs, j, s_k);
            SetApprox next_x = apply_branch(ifs, j, s_x);
            if (next_k.is_empty() && next_x.is_empty()) continue;
            w.push_back(j);
            walk(w, next_k, next_x);
            w.pop_back();
        }
    }
};

// Fold w over F^e(X); e = 0 starts from the whole space.
SetApprox fold_over_iterate(const LocalIFS& ifs, const Word& w,
                            const std::vector<SetApprox>& full_iterates, int e) {
    SetApprox v = e == 0 ? apply_branch_full(ifs, w[0])
                         : apply_branch(ifs, w[0], full_iterates[e]);
    for (size_t i = 1; i < w.size() && !v.is_empty(); ++i) v = apply_branch(ifs, w[i], v);
    return v;
}

}  // namespace

EssentialApprox essential_part(const LocalIFS& ifs, const SetApprox& k_set, int k, int m,
                               std::uint64_t max_nodes) {
    if (k < 1 || m < 0) fail(ErrorCode::SchemaError, "essential part needs k >= 1, m >= 0");
    EssentialApprox out;
    out.depth = k;
    out.lookahead = m;
    out.value.space = &ifs.space();
    out.pruned_value.space = &ifs.space();

    std::vector<SetApprox> iterates(static_cast<size_t>(m) + 1, SetApprox{&ifs.space(), {}});
    for (int e = 1; e <= m; ++e)
        iterates[e] = e == 1 ? hutchinson_full(ifs) : hutchinson(ifs, iterates[e - 1]);

    EssentialScan scan{ifs, iterates, out, max_nodes, 0, {}, {}};
    for (int j = 1; j <= ifs.size(); ++j) {
        SetApprox s_k = apply_branch(ifs, j, k_set);
        SetApprox s_x = m == 0 ? apply_branch_full(ifs, j) : apply_branch(ifs, j, iterates[m]);
        if (s_k.is_empty() && s_x.is_empty()) continue;
        Word w{j};
        scan.walk(w, s_k, s_x);
    }
    out.value = SetApprox::of(ifs.space(), std::move(scan.value_ids));
    out.pruned_value = SetApprox::of(ifs.space(), std::move(scan.pruned_ids));

    // smallest lookahead that already kills each pruned word (monotone in e)
    for (auto& [w, depth] : out.pruned) {
        int e = 1;
        while (e <= m && !fold_over_iterate(ifs, w, iterates, e).is_empty()) ++e;
        depth = e;
    }
    return out;
}

ConvergenceReport convergence_report(const LocalIFS& ifs, const SetApprox& a0, int k_max,
                                     int m) {
    ConvergenceReport rep;
    rep.lambda = ifs.lambda();
    rep.diam = ifs.space().diameter();
    rep.k_ref = k_max + 6;
    BasinReport basin = basin_classify(ifs, a0, k_max);
    if (!basin.attracted)
        fail(ErrorCode::Inconsistent, "initial set is not attracted to the attractor");
    SetApprox target = attractor(ifs, rep.k_ref);
    const double slack =
        2 * (std::pow(rep.lambda, rep.k_ref) * rep.diam + ifs.space().snap_error());
    rep.ok = true;
    for (int k = 1; k <= k_max; ++k) {
        ConvergencePoint pt;
        pt.k = k;
        pt.dist_ess = hausdorff(essential_part(ifs, a0, k, m).value, target);
        pt.bound = std::pow(rep.lambda, k) * rep.diam + slack;
        if (pt.dist_ess > pt.bound) rep.ok = false;
        rep.series.push_back(pt);
    }
    return rep;
}

SetApprox attractor_from_global(const LocalIFS& ifs, int k) {
    std::vector<Branch> total;
    for (int j = 1; j <= ifs.size(); ++j) {
        const Branch& b = ifs.branch(j);
        const bool globalizable = std::holds_alternative<AffinePart>(b.map.impl) ||
                                  std::holds_alternative<ConstantPart>(b.map.impl) ||
                                  std::holds_alternative<PrependPart>(b.map.impl);
        if (!globalizable)
            fail(ErrorCode::NotGlobalizable,
                 "branch '" + b.name + "' has no total extension");
        total.push_back({b.name, DomainSet::whole_space(), b.map});
    }
    LocalIFS global(ifs.space(), std::move(total));
    SetApprox b = attractor(global, k);
    for (int i = 0; i < k && !b.is_empty(); ++i) b = hutchinson(ifs, b);
    return b;
}

}  // namespace lifs
