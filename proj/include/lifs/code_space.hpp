#pragma once

#include <map>
#include <vector>

#include "lifs/ifs.hpp"

namespace lifs {

// A finite word (b_{-k},...,b_{-1}) of branch symbols, stored left to right
// with the most recent symbol last. Entries are 1-based branch indices.
using Word = std::vector<int>;

// w * j: append the next symbol on the right.
Word append(Word w, int j);

// Longest common suffix of two words (the relevant closeness measure:
// words are close when they agree on a long recent past).
int suffix_agreement(const Word& a, const Word& b);

struct CylinderSet {
    Word word;
    SetApprox value;
};

// V_w = f_{b_{-1}}(... f_{b_{-k+1}}(f_{b_{-k}}(X_{b_{-k}}) ∩ X_{b_{-k+1}}) ...):
// fold from the oldest symbol, intersecting with the next domain before every
// application. An empty value marks the word as inadmissible.
CylinderSet cylinder(const LocalIFS& ifs, const Word& w);

struct CodeNode {
    PointId representative = 0;  // smallest id of the (nonempty) cylinder
    std::uint64_t cells = 0;
    unsigned extend_mask = 0;  // bit j-1 set when w * j is admissible
};

// All admissible words up to a fixed depth, suffix- and prefix-closed.
// Cylinder sets are transient during construction; nodes keep only the
// canonical representative, the cell count and the rightward extension mask.
struct CodeTree {
    int depth = 0;
    int branch_count = 0;
    std::map<Word, CodeNode> nodes;

    bool has(const Word& w) const { return nodes.find(w) != nodes.end(); }
    const CodeNode& at(const Word& w) const;
    std::vector<Word> words_at(int d) const;
    std::uint64_t count_at(int d) const;
};

// Depth-first enumeration by right-append; a word enters the tree iff its
// cylinder retains at least one cell. Throws BudgetExceeded past max_nodes.
CodeTree enumerate_codespace(const LocalIFS& ifs, int depth,
                             std::uint64_t max_nodes = (1ull << 22));

struct CodePoint {
    PointId point = 0;  // canonical member of the cylinder
    double radius = 0;  // lambda^k * diam: distance bound to any admissible limit
};

// Finite-depth stand-in for the coding limit. Throws InadmissibleWord.
CodePoint code_map(const LocalIFS& ifs, const Word& w);

// Branch labels applicable at x: { j : x ∈ X_j }. Empty marks an endpoint.
std::vector<int> address(const LocalIFS& ifs, PointId x);

// Words of the tree whose code point lies in X_j: the finite-depth domain of
// the symbol-append map w ↦ w * j.
std::vector<Word> restricted_shift_domain(const LocalIFS& ifs, int j, const CodeTree& tree);

struct SemiconjugacyReport {
    int checked = 0;
    int coherence_failures = 0;  // j applicable at the code point but w * j inadmissible
    double max_violation = 0;    // worst distance(code(w * j), f_j(code(w)))
    double max_excess = 0;       // worst violation minus its per-depth tolerance
    Word worst;
    bool ok = false;
};

// Check code(w * j) ≈ f_j(code(w)) for every tree node w of depth < k and
// every applicable j, within 2·lambda^d·diam + 2·snapErr at depth d.
SemiconjugacyReport verify_semiconjugacy(const LocalIFS& ifs, const CodeTree& tree);

struct HolderReport {
    int checked = 0;
    double alpha = 0;      // -log lambda
    double max_ratio = 0;  // worst distance / bound
    bool ok = false;
};

// Sampled pairs of depth-k words agreeing on a length-N suffix must have code
// points within diam·lambda^N plus the finite-depth slack.
HolderReport verify_holder(const LocalIFS& ifs, const CodeTree& tree, int samples,
                           unsigned seed = 1);

// Finite proxy for shift invariance of the admissible-word set: every
// depth-(k-1) node either extends rightward by some admissible symbol or is
// endpoint-terminal (no branch applies at its code point), and dropping the
// rightmost symbol of a depth-k node always lands on a depth-(k-1) node.
bool shift_invariance_check(const CodeTree& tree);

struct SftWitness {
    int symbol = 0;                          // U = [symbol]
    Word word;                               // c with c * symbol admissible
    std::vector<std::pair<int, Word>> family;  // (suffix agreement, inadmissible-extension word)
};

struct SftReport {
    std::vector<SftWitness> witnesses;
};

// Heuristic openness failure search for the word shift: find c whose
// rightward extension by `symbol` is admissible while words agreeing with c
// on ever longer suffixes cannot be extended. A witness needs at least
// min_chain distinct agreement levels; finding none proves nothing.
SftReport sft_witness(const LocalIFS& ifs, const CodeTree& tree, int min_chain = 3,
                      std::uint64_t budget = (1ull << 26), int max_witnesses = 8);

}  // namespace lifs
