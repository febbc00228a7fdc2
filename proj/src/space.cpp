#include "lifs/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lifs {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::OutOfBounds: return "OutOfBounds";
        case ErrorCode::InvalidSymbol: return "InvalidSymbol";
        case ErrorCode::EmptySetDistance: return "EmptySetDistance";
        case ErrorCode::NonContractive: return "NonContractive";
        case ErrorCode::DomainNotNested: return "DomainNotNested";
        case ErrorCode::NotGlobal: return "NotGlobal";
        case ErrorCode::NotGlobalizable: return "NotGlobalizable";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::InadmissibleWord: return "InadmissibleWord";
        case ErrorCode::AtEndpoint: return "AtEndpoint";
        case ErrorCode::Inconsistent: return "Inconsistent";
        case ErrorCode::EmptyEndpointSet: return "EmptyEndpointSet";
        case ErrorCode::EmptyIterate: return "EmptyIterate";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::OpenDomainRejected: return "OpenDomainRejected";
        case ErrorCode::LipschitzMismatch: return "LipschitzMismatch";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

Space Space::grid(std::vector<std::array<double, 2>> bounds, double cell_size) {
    if (bounds.empty()) fail(ErrorCode::SchemaError, "grid space needs at least one axis");
    if (!(cell_size > 0)) fail(ErrorCode::SchemaError, "cell size must be positive");
    Space s;
    s.kind_ = SpaceKind::Grid;
    s.bounds_ = std::move(bounds);
    s.h_ = cell_size;
    double diag2 = 0;
    for (auto& b : s.bounds_) {
        if (!(b[0] < b[1]))
            fail(ErrorCode::SchemaError, "axis bounds must satisfy lo < hi");
        auto n = static_cast<std::int64_t>(std::ceil((b[1] - b[0]) / cell_size - 1e-9));
        if (n < 1) n = 1;
        s.axis_cells_.push_back(n);
        diag2 += (b[1] - b[0]) * (b[1] - b[0]);
    }
    s.strides_.assign(s.bounds_.size(), 1);
    for (int a = static_cast<int>(s.bounds_.size()) - 2; a >= 0; --a)
        s.strides_[a] = s.strides_[a + 1] * static_cast<std::uint64_t>(s.axis_cells_[a + 1]);
    s.base_cells_ = s.strides_[0] * static_cast<std::uint64_t>(s.axis_cells_[0]);
    s.cells_ = s.base_cells_;
    s.diameter_ = std::sqrt(diag2);
    return s;
}

Space Space::symbolic(int alphabet, int length) {
    if (alphabet < 2) fail(ErrorCode::SchemaError, "alphabet size must be >= 2");
    if (length < 4) fail(ErrorCode::SchemaError, "truncation length must be >= 4");
    Space s;
    s.kind_ = SpaceKind::Symbolic;
    s.alphabet_ = alphabet;
    s.length_ = length;
    double count = std::pow(static_cast<double>(alphabet), length);
    if (count > 9e15) fail(ErrorCode::BudgetExceeded, "symbol space too large to index");
    s.base_cells_ = 1;
    for (int i = 0; i < length; ++i) s.base_cells_ *= static_cast<std::uint64_t>(alphabet);
    s.cells_ = s.base_cells_;
    s.diameter_ = 1.0;  // e^0: distinct first symbols
    return s;
}

Space Space::enriched(const Space& grid_base, std::vector<std::string> vertices) {
    if (grid_base.kind() != SpaceKind::Grid)
        fail(ErrorCode::SchemaError, "enriched space needs a grid base");
    if (vertices.empty()) fail(ErrorCode::SchemaError, "enriched space needs vertices");
    Space s = grid_base;
    s.kind_ = SpaceKind::Enriched;
    s.vertices_ = std::move(vertices);
    s.cells_ = s.base_cells_ * s.vertices_.size();
    s.diameter_ = grid_base.diameter_ + (s.vertices_.size() > 1 ? 1.0 : 0.0);
    return s;
}

int Space::vertex_index(const std::string& name) const {
    for (int i = 0; i < static_cast<int>(vertices_.size()); ++i)
        if (vertices_[i] == name) return i;
    return -1;
}

std::int64_t Space::snap_index(int axis, double x) const {
    const double lo = bounds_[axis][0];
    const double hi = bounds_[axis][1];
    const std::int64_t n = axis_cells_[axis];
    if (x < lo - h_ / 2 - 1e-9 * (1 + std::abs(lo)) ||
        x > hi + h_ / 2 + 1e-9 * (1 + std::abs(hi))) {
        std::ostringstream os;
        os << "coordinate " << x << " exits axis " << axis << " range [" << lo << ", " << hi
           << "] by more than h/2";
        fail(ErrorCode::OutOfBounds, os.str());
    }
    double t = (x - lo) / h_;
    double r = std::floor(t + 0.5);
    std::int64_t i;
    if (std::abs(t - r) <= 1e-6) {
        // x sits (numerically) on a cell edge: tie toward the lower index.
        i = static_cast<std::int64_t>(r) - 1;
    } else {
        i = static_cast<std::int64_t>(std::floor(t));
    }
    if (i < 0) i = 0;
    if (i >= n) i = n - 1;
    return i;
}

PointId Space::encode(const std::vector<std::int64_t>& idx, int vertex) const {
    std::uint64_t id = 0;
    for (size_t a = 0; a < idx.size(); ++a)
        id += static_cast<std::uint64_t>(idx[a]) * strides_[a];
    return id + static_cast<std::uint64_t>(vertex) * base_cells_;
}

void Space::decode(PointId p, std::vector<std::int64_t>& idx, int& vertex) const {
    vertex = static_cast<int>(p / base_cells_);
    std::uint64_t rest = p % base_cells_;
    idx.resize(bounds_.size());
    for (size_t a = 0; a < bounds_.size(); ++a) {
        idx[a] = static_cast<std::int64_t>(rest / strides_[a]);
        rest %= strides_[a];
    }
}

int Space::symbol_at(PointId p, int position) const {
    // position 0 = first (most significant) symbol.
    std::uint64_t q = p;
    for (int i = length_ - 1; i > position; --i) q /= static_cast<std::uint64_t>(alphabet_);
    return static_cast<int>(q % static_cast<std::uint64_t>(alphabet_));
}

Coords Space::coords(PointId p) const {
    Coords c;
    if (kind_ == SpaceKind::Symbolic) {
        c.sym.resize(length_);
        std::uint64_t q = p;
        for (int i = length_ - 1; i >= 0; --i) {
            c.sym[i] = static_cast<int>(q % static_cast<std::uint64_t>(alphabet_));
            q /= static_cast<std::uint64_t>(alphabet_);
        }
        return c;
    }
    std::vector<std::int64_t> idx;
    decode(p, idx, c.vertex);
    c.x.resize(idx.size());
    for (size_t a = 0; a < idx.size(); ++a)
        c.x[a] = bounds_[a][0] + (static_cast<double>(idx[a]) + 0.5) * h_;
    return c;
}

PointId Space::snap(const Coords& c) const {
    if (kind_ == SpaceKind::Symbolic) {
        if (static_cast<int>(c.sym.size()) < length_)
            fail(ErrorCode::InvalidSymbol, "symbol string shorter than truncation length");
        std::uint64_t id = 0;
        for (int i = 0; i < length_; ++i) {
            int s = c.sym[i];
            if (s < 0 || s >= alphabet_)
                fail(ErrorCode::InvalidSymbol, "symbol outside alphabet");
            id = id * static_cast<std::uint64_t>(alphabet_) + static_cast<std::uint64_t>(s);
        }
        return id;
    }
    if (c.x.size() != bounds_.size())
        fail(ErrorCode::OutOfBounds, "coordinate dimension mismatch");
    std::vector<std::int64_t> idx(bounds_.size());
    for (size_t a = 0; a < bounds_.size(); ++a)
        idx[a] = snap_index(static_cast<int>(a), c.x[a]);
    int vertex = (kind_ == SpaceKind::Enriched) ? c.vertex : 0;
    if (vertex < 0 || vertex >= std::max(1, vertex_count()))
        fail(ErrorCode::OutOfBounds, "vertex index out of range");
    return encode(idx, vertex);
}

int Space::common_prefix(PointId p, PointId q) const {
    if (p == q) return length_;
    int n = 0;
    while (n < length_ && symbol_at(p, n) == symbol_at(q, n)) ++n;
    return n;
}

double Space::distance(PointId p, PointId q) const {
    if (kind_ == SpaceKind::Symbolic) {
        if (p == q) return 0.0;
        return std::exp(-static_cast<double>(common_prefix(p, q)));
    }
    std::vector<std::int64_t> ip, iq;
    int vp, vq;
    decode(p, ip, vp);
    decode(q, iq, vq);
    double d2 = 0;
    for (size_t a = 0; a < ip.size(); ++a) {
        double d = static_cast<double>(ip[a] - iq[a]) * h_;
        d2 += d * d;
    }
    return std::sqrt(d2) + ((vp != vq) ? 1.0 : 0.0);
}

double Space::snap_error() const {
    if (kind_ == SpaceKind::Symbolic) return std::exp(-static_cast<double>(length_));
    return h_ * std::sqrt(static_cast<double>(dim())) / 2.0;
}

bool Space::operator==(const Space& o) const {
    return kind_ == o.kind_ && bounds_ == o.bounds_ && h_ == o.h_ && alphabet_ == o.alphabet_ &&
           length_ == o.length_ && vertices_ == o.vertices_;
}

}  // namespace lifs
