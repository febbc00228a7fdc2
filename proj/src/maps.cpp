#include "lifs/maps.hpp"

#include <cmath>

namespace lifs {

ContractionMap ContractionMap::affine(std::vector<double> matrix, std::vector<double> offset,
                                      double lip) {
    ContractionMap m;
    m.impl = AffinePart{std::move(matrix), std::move(offset)};
    m.lip = lip;
    return m;
}

ContractionMap ContractionMap::affine1d(double a, double b) {
    return affine({a}, {b}, std::abs(a));
}

ContractionMap ContractionMap::constant(Coords value) {
    ContractionMap m;
    m.impl = ConstantPart{std::move(value)};
    m.lip = 0;
    return m;
}

ContractionMap ContractionMap::prepend(int symbol) {
    ContractionMap m;
    m.impl = PrependPart{symbol};
    m.lip = std::exp(-1.0);
    return m;
}

ContractionMap ContractionMap::adjacent_sum(double lip) {
    ContractionMap m;
    m.impl = AdjacentSumPart{};
    m.lip = lip;
    return m;
}

ContractionMap ContractionMap::identity() {
    ContractionMap m;
    m.impl = IdentityPart{};
    m.lip = 1.0;
    return m;
}

Coords ContractionMap::apply(const Coords& c, const Space& space) const {
    Coords out = c;
    if (const auto* a = std::get_if<AffinePart>(&impl)) {
        const int d = space.dim();
        out.x.assign(d, 0.0);
        for (int i = 0; i < d; ++i) {
            double acc = a->offset[i];
            for (int j = 0; j < d; ++j) acc += a->matrix[i * d + j] * c.x[j];
            out.x[i] = acc;
        }
    } else if (const auto* k = std::get_if<ConstantPart>(&impl)) {
        out = k->value;
        out.vertex = c.vertex;
    } else if (const auto* p = std::get_if<PrependPart>(&impl)) {
        const int L = space.length();
        out.sym.assign(L, 0);
        out.sym[0] = p->symbol;
        for (int i = 1; i < L; ++i) out.sym[i] = c.sym[i - 1];
    } else if (std::holds_alternative<AdjacentSumPart>(impl)) {
        const int L = space.length();
        out.sym.assign(L, 0);
        for (int i = 2; i < L; ++i) out.sym[i] = c.sym[i - 2] + c.sym[i - 1];
    }
    // IdentityPart: out already equals c.
    if (target_vertex >= 0) out.vertex = target_vertex;
    return out;
}

double ContractionMap::operator_norm(const Space& space) const {
    if (std::holds_alternative<ConstantPart>(impl)) return 0.0;
    if (std::holds_alternative<IdentityPart>(impl)) return 1.0;
    if (std::holds_alternative<PrependPart>(impl) || std::holds_alternative<AdjacentSumPart>(impl))
        return std::exp(-1.0);  // both extend any common prefix by exactly one symbol
    const auto& a = std::get<AffinePart>(impl);
    const int d = space.dim();
    if (d == 1) return std::abs(a.matrix[0]);
    if (d == 2) {
        // Largest singular value of [p q; r s] in closed form.
        double p = a.matrix[0], q = a.matrix[1], r = a.matrix[2], s = a.matrix[3];
        double f = p * p + q * q + r * r + s * s;
        double det = p * s - q * r;
        double disc = std::sqrt(std::max(0.0, f * f - 4 * det * det));
        return std::sqrt((f + disc) / 2.0);
    }
    // Power iteration on M^T M with a fixed deterministic start.
    std::vector<double> v(d), w(d), u(d);
    for (int i = 0; i < d; ++i) v[i] = 1.0 / (i + 1);
    double norm = 0;
    for (int iter = 0; iter < 500; ++iter) {
        for (int i = 0; i < d; ++i) {
            w[i] = 0;
            for (int j = 0; j < d; ++j) w[i] += a.matrix[i * d + j] * v[j];
        }
        for (int j = 0; j < d; ++j) {
            u[j] = 0;
            for (int i = 0; i < d; ++i) u[j] += a.matrix[i * d + j] * w[i];
        }
        double len = 0;
        for (double x : u) len += x * x;
        len = std::sqrt(len);
        if (len == 0) return 0;
        for (int j = 0; j < d; ++j) v[j] = u[j] / len;
        norm = std::sqrt(len);
    }
    return norm;
}

void ContractionMap::validate_lip(const Space& space) const {
    if (non_contractive()) return;  // identity branch is exempt by design
    if (!(lip >= 0) || lip >= 1)
        fail(ErrorCode::LipschitzMismatch,
             "declared Lipschitz constant of '" + name + "' must lie in [0,1)");
    double actual = operator_norm(space);
    if (actual > lip + 1e-9)
        fail(ErrorCode::LipschitzMismatch,
             "map '" + name + "' has operator norm " + std::to_string(actual) +
                 " above its declared Lipschitz constant " + std::to_string(lip));
}

bool ContractionMap::invertible() const {
    const auto* a = std::get_if<AffinePart>(&impl);
    if (a == nullptr) return false;
    const int d = static_cast<int>(a->offset.size());
    if (d == 1) return a->matrix[0] != 0;
    if (d == 2) return std::abs(a->matrix[0] * a->matrix[3] - a->matrix[1] * a->matrix[2]) > 1e-15;
    return false;  // higher dimensions: not needed, report as non-invertible
}

Coords ContractionMap::apply_inverse(const Coords& c, const Space& space) const {
    const auto& a = std::get<AffinePart>(impl);
    const int d = space.dim();
    Coords out = c;
    if (d == 1) {
        out.x[0] = (c.x[0] - a.offset[0]) / a.matrix[0];
    } else {
        double det = a.matrix[0] * a.matrix[3] - a.matrix[1] * a.matrix[2];
        double rx = c.x[0] - a.offset[0], ry = c.x[1] - a.offset[1];
        out.x[0] = (a.matrix[3] * rx - a.matrix[1] * ry) / det;
        out.x[1] = (-a.matrix[2] * rx + a.matrix[0] * ry) / det;
    }
    return out;
}

}  // namespace lifs
