#pragma once

#include <string>
#include <variant>
#include <vector>

#include "lifs/space.hpp"

namespace lifs {

// Map variants. Affine and Constant act on grid coordinates; Prepend and
// AdjacentSum act on symbol strings; Identity exists only for the
// natural-extension bookkeeping symbol 0 and is never contractive.
struct AffinePart {
    std::vector<double> matrix;  // row-major dim x dim
    std::vector<double> offset;  // dim entries
};
struct ConstantPart {
    Coords value;
};
struct PrependPart {
    int symbol = 0;
};
// Truncation semantics at length L: y_1 = y_2 = 0 and y_i = x_{i-2} + x_{i-1}
// for 3 <= i <= L (1-based), consuming only x_1..x_{L-1}.
struct AdjacentSumPart {};
struct IdentityPart {};

struct ContractionMap {
    std::variant<AffinePart, ConstantPart, PrependPart, AdjacentSumPart, IdentityPart> impl;
    double lip = 0;          // declared Lipschitz constant
    int target_vertex = -1;  // enriched spaces: vertex of the image (-1 keeps it)
    std::string name;

    static ContractionMap affine(std::vector<double> matrix, std::vector<double> offset,
                                 double lip);
    static ContractionMap affine1d(double a, double b);  // lip = |a|
    static ContractionMap constant(Coords value);
    static ContractionMap prepend(int symbol);
    static ContractionMap adjacent_sum(double lip = 0.5);
    static ContractionMap identity();

    bool non_contractive() const { return std::holds_alternative<IdentityPart>(impl); }

    Coords apply(const Coords& c, const Space& space) const;

    // Tightest Lipschitz constant this implementation can certify
    // (2D affine: closed-form largest singular value; higher dimensions:
    // power iteration on M^T M).
    double operator_norm(const Space& space) const;

    // Throws LipschitzMismatch when the declared lip under-states the norm
    // or is out of range.
    void validate_lip(const Space& space) const;

    bool invertible() const;  // affine with nonsingular matrix
    Coords apply_inverse(const Coords& c, const Space& space) const;
};

}  // namespace lifs
