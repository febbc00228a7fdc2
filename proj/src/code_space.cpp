#include "lifs/code_space.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lifs {

Word append(Word w, int j) {
    w.push_back(j);
    return w;
}

int suffix_agreement(const Word& a, const Word& b) {
    int n = 0;
    int m = static_cast<int>(std::min(a.size(), b.size()));
    while (n < m && a[a.size() - 1 - n] == b[b.size() - 1 - n]) ++n;
    return n;
}

static void check_word(const LocalIFS& ifs, const Word& w) {
    if (w.empty()) fail(ErrorCode::InadmissibleWord, "empty word");
    for (int s : w)
        if (s < 1 || s > ifs.size())
            fail(ErrorCode::InvalidSymbol, "word symbol outside branch range");
}

CylinderSet cylinder(const LocalIFS& ifs, const Word& w) {
    check_word(ifs, w);
    SetApprox v = apply_branch_full(ifs, w[0]);
    for (size_t i = 1; i < w.size() && !v.is_empty(); ++i) v = apply_branch(ifs, w[i], v);
    return CylinderSet{w, std::move(v)};
}

const CodeNode& CodeTree::at(const Word& w) const {
    auto it = nodes.find(w);
    if (it == nodes.end()) fail(ErrorCode::InadmissibleWord, "word not in the tree");
    return it->second;
}

std::vector<Word> CodeTree::words_at(int d) const {
    std::vector<Word> out;
    for (auto& [w, node] : nodes)
        if (static_cast<int>(w.size()) == d) out.push_back(w);
    return out;
}

std::uint64_t CodeTree::count_at(int d) const {
    std::uint64_t n = 0;
    for (auto& [w, node] : nodes)
        if (static_cast<int>(w.size()) == d) ++n;
    return n;
}

namespace {

void grow(const LocalIFS& ifs, CodeTree& tree, Word& w, const SetApprox& value,
          std::uint64_t max_nodes) {
    if (tree.nodes.size() >= max_nodes)
        fail(ErrorCode::BudgetExceeded, "admissible word tree exceeds the node budget");
    CodeNode node;
    node.representative = value.ids[0];
    node.cells = value.size();
    const bool interior = static_cast<int>(w.size()) < tree.depth;
    for (int j = 1; j <= ifs.size(); ++j) {
        SetApprox child = apply_branch(ifs, j, value);
        if (child.is_empty()) continue;
        node.extend_mask |= 1u << (j - 1);
        if (interior) {
            w.push_back(j);
            grow(ifs, tree, w, child, max_nodes);
            w.pop_back();
        }
    }
    tree.nodes.emplace(w, node);
}

}  // namespace

CodeTree enumerate_codespace(const LocalIFS& ifs, int depth, std::uint64_t max_nodes) {
    if (depth < 1) fail(ErrorCode::SchemaError, "tree depth must be >= 1");
    CodeTree tree;
    tree.depth = depth;
    tree.branch_count = ifs.size();
    for (int j = 1; j <= ifs.size(); ++j) {
        SetApprox v = apply_branch_full(ifs, j);
        if (v.is_empty()) continue;
        Word w{j};
        grow(ifs, tree, w, v, max_nodes);
    }
    return tree;
}

CodePoint code_map(const LocalIFS& ifs, const Word& w) {
    CylinderSet c = cylinder(ifs, w);
    if (c.value.is_empty()) fail(ErrorCode::InadmissibleWord, "cylinder is empty");
    return CodePoint{c.value.ids[0],
                     std::pow(ifs.lambda(), static_cast<double>(w.size())) *
                         ifs.space().diameter()};
}

std::vector<int> address(const LocalIFS& ifs, PointId x) { return ifs.address_of(x); }

std::vector<Word> restricted_shift_domain(const LocalIFS& ifs, int j, const CodeTree& tree) {
    std::vector<Word> out;
    for (auto& [w, node] : tree.nodes)
        if (ifs.in_domain(j, node.representative)) out.push_back(w);
    return out;
}

SemiconjugacyReport verify_semiconjugacy(const LocalIFS& ifs, const CodeTree& tree) {
    SemiconjugacyReport rep;
    const double diam = ifs.space().diameter();
    const double snap_err = ifs.space().snap_error();
    rep.ok = true;
    for (auto& [w, node] : tree.nodes) {
        int d = static_cast<int>(w.size());
        if (d >= tree.depth) continue;  // the appended word must still be a tree node
        for (int j : ifs.address_of(node.representative)) {
            ++rep.checked;
            auto it = tree.nodes.find(append(w, j));
            if (it == tree.nodes.end()) {
                ++rep.coherence_failures;
                rep.ok = false;
                continue;
            }
            double dist = ifs.space().distance(it->second.representative,
                                               ifs.step(j, node.representative));
            double tol = 2 * std::pow(ifs.lambda(), d) * diam + 2 * snap_err;
            if (dist > rep.max_violation) {
                rep.max_violation = dist;
                rep.worst = w;
            }
            rep.max_excess = std::max(rep.max_excess, dist - tol);
            if (dist > tol) rep.ok = false;
        }
    }
    return rep;
}

HolderReport verify_holder(const LocalIFS& ifs, const CodeTree& tree, int samples,
                           unsigned seed) {
    HolderReport rep;
    rep.alpha = -std::log(ifs.lambda());
    std::vector<Word> leaves = tree.words_at(tree.depth);
    if (leaves.empty()) return rep;
    const double diam = ifs.space().diameter();
    const double slack =
        2 * (std::pow(ifs.lambda(), tree.depth) * diam + ifs.space().snap_error());
    std::mt19937 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, leaves.size() - 1);
    rep.ok = true;
    for (int i = 0; i < samples; ++i) {
        const Word& a = leaves[pick(rng)];
        const Word& b = leaves[pick(rng)];
        int n = suffix_agreement(a, b);
        // d_-(a,b)^alpha = (e^{-n})^{-log lambda} = lambda^n
        double bound = diam * std::pow(ifs.lambda(), n) + slack;
        double dist =
            ifs.space().distance(tree.at(a).representative, tree.at(b).representative);
        ++rep.checked;
        rep.max_ratio = std::max(rep.max_ratio, dist / bound);
        if (dist > bound) rep.ok = false;
    }
    return rep;
}

bool shift_invariance_check(const CodeTree& tree) {
    if (tree.depth < 2) fail(ErrorCode::SchemaError, "need depth >= 2");
    // Words that extend rightward are exactly the drop-right images of the
    // deeper level; the rest must be endpoint-terminal.
    for (auto& [w, node] : tree.nodes) {
        int d = static_cast<int>(w.size());
        if (d == tree.depth - 1 && node.extend_mask == 0) {
            // endpoint-terminal: acceptable only when no branch applies
            continue;
        }
        if (d == tree.depth) {
            // the depth-(k-1) suffix must itself be admissible
            Word suffix(w.begin() + 1, w.end());
            if (!tree.has(suffix)) return false;
        }
    }
    for (auto& [w, node] : tree.nodes) {
        if (static_cast<int>(w.size()) != tree.depth - 1) continue;
        if (node.extend_mask == 0) continue;
        // must genuinely extend: some child is a depth-k node
        bool found = false;
        for (int j = 1; j <= tree.branch_count && !found; ++j)
            if ((node.extend_mask >> (j - 1)) & 1u) found = tree.has(append(w, j));
        if (!found) return false;
    }
    return true;
}

namespace {

struct RevIndex {
    // depth-(k-1) words with the given extension bit clear, sorted by
    // reversed word so suffix agreement becomes prefix agreement.
    std::vector<Word> rev;

    static Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

    int max_agreement(const Word& rc) const {
        auto it = std::lower_bound(rev.begin(), rev.end(), rc);
        int best = 0;
        auto prefix = [&](const Word& a) {
            int n = 0;
            int m = static_cast<int>(std::min(a.size(), rc.size()));
            while (n < m && a[n] == rc[n]) ++n;
            return n;
        };
        if (it != rev.end()) best = std::max(best, prefix(*it));
        if (it != rev.begin()) best = std::max(best, prefix(*(it - 1)));
        return best;
    }

    // Range of entries sharing the first `a` symbols of rc.
    std::pair<std::vector<Word>::const_iterator, std::vector<Word>::const_iterator>
    prefix_range(const Word& rc, int a) const {
        Word lo(rc.begin(), rc.begin() + a);
        auto first = std::lower_bound(rev.begin(), rev.end(), lo);
        Word hi = std::move(lo);
        hi.back() += 1;  // exclusive upper bound of the prefix block
        return {first, std::lower_bound(first, rev.cend(), hi)};
    }

    // One witness word per achievable agreement level, highest level first.
    // A word agrees at exactly level a when it shares the a-prefix of rc but
    // not the (a+1)-prefix, so each level needs two range lookups.
    std::vector<std::pair<int, Word>> family(const Word& rc) const {
        std::vector<std::pair<int, Word>> out;
        for (int a = max_agreement(rc); a >= 1; --a) {
            auto [first, last] = prefix_range(rc, a);
            auto inner = (a < static_cast<int>(rc.size()))
                             ? prefix_range(rc, a + 1)
                             : std::make_pair(last, last);
            const Word* pick = nullptr;
            if (first != inner.first)
                pick = &*first;
            else if (inner.second != last)
                pick = &*inner.second;
            if (pick) out.emplace_back(a, Word(pick->rbegin(), pick->rend()));
        }
        return out;
    }
};

}  // namespace

SftReport sft_witness(const LocalIFS& ifs, const CodeTree& tree, int min_chain,
                      std::uint64_t budget, int max_witnesses) {
    SftReport rep;
    if (tree.depth < 3) return rep;
    const int d = tree.depth - 1;
    std::uint64_t work = 0;
    for (int j = 1; j <= ifs.size(); ++j) {
        RevIndex out_idx;
        std::vector<Word> in_words;
        for (auto& [w, node] : tree.nodes) {
            if (static_cast<int>(w.size()) != d) continue;
            if ((node.extend_mask >> (j - 1)) & 1u)
                in_words.push_back(w);
            else
                out_idx.rev.push_back(RevIndex::reversed(w));
        }
        if (out_idx.rev.empty() || in_words.empty()) continue;
        std::sort(out_idx.rev.begin(), out_idx.rev.end());

        // Rank candidates by how closely inadmissible words approach them.
        std::vector<std::pair<int, const Word*>> ranked;
        for (const Word& c : in_words) {
            work += static_cast<std::uint64_t>(d);
            if (work > budget) fail(ErrorCode::BudgetExceeded, "witness search budget");
            int a = out_idx.max_agreement(RevIndex::reversed(c));
            if (a >= min_chain) ranked.emplace_back(a, &c);
        }
        std::sort(ranked.begin(), ranked.end(),
                  [](auto& x, auto& y) { return x.first > y.first || (x.first == y.first && *x.second < *y.second); });
        int taken = 0;
        for (auto& [a, cp] : ranked) {
            if (taken >= max_witnesses) break;
            auto fam = out_idx.family(RevIndex::reversed(*cp));
            if (static_cast<int>(fam.size()) < min_chain) continue;
            SftWitness wit;
            wit.symbol = j;
            wit.word = *cp;
            wit.family = std::move(fam);
            rep.witnesses.push_back(std::move(wit));
            ++taken;
        }
    }
    return rep;
}

}  // namespace lifs
