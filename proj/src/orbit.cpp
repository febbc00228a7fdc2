#include "lifs/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lifs {

int FiniteOrbit::length() const {
    for (size_t i = 0; i < steps.size(); ++i)
        if (steps[i].symbol == 0) return static_cast<int>(i);
    // never dies within the horizon: all recorded symbols are applications
    return static_cast<int>(steps.size()) - 1;
}

namespace {

bool level_contains(const SetApprox& level, PointId p) {
    return std::binary_search(level.ids.begin(), level.ids.end(), p);
}

}  // namespace

SurvivorSet survivor_sets(const LocalIFS& ifs, int depth) {
    if (depth < 1) fail(ErrorCode::SchemaError, "survivor depth must be >= 1");
    SurvivorSet s;
    s.levels.push_back(ifs.union_domain_cells());
    for (int k = 1; k < depth; ++k) {
        const SetApprox& cur = s.levels.back();
        std::vector<PointId> keep;
        for (PointId p : cur.ids) {
            for (int j : ifs.address_of(p)) {
                if (level_contains(cur, ifs.step(j, p))) {
                    keep.push_back(p);
                    break;
                }
            }
        }
        SetApprox next{&ifs.space(), std::move(keep)};  // already sorted
        if (next.ids == cur.ids) {
            s.stabilized_at = static_cast<int>(s.levels.size()) - 1;
            break;
        }
        s.levels.push_back(std::move(next));
    }
    return s;
}

FiniteOrbit extend_orbit(const LocalIFS& ifs, PointId x, int max_len,
                         OrbitStrategy strategy) {
    FiniteOrbit orbit;
    SurvivorSet surv;
    if (strategy == OrbitStrategy::Exhaustive && max_len > 0)
        surv = survivor_sets(ifs, max_len);

    // Orbit length achievable from p, clamped to the horizon.
    auto cap = [&](PointId p) {
        int n = static_cast<int>(surv.levels.size());
        int c = 0;
        while (c < n && level_contains(surv.levels[c], p)) ++c;
        if (c == n && surv.stabilized_at >= 0) return max_len;  // survives forever
        return std::min(c, max_len);
    };

    PointId p = x;
    bool dead = false;
    for (int i = 0; i <= max_len; ++i) {
        std::vector<int> addr = dead ? std::vector<int>{} : ifs.address_of(p);
        if (addr.empty()) {
            orbit.steps.push_back({p, 0});
            dead = true;
            continue;
        }
        int pick = addr.front();
        if (strategy == OrbitStrategy::Exhaustive && i < max_len) {
            int best = -1;
            for (int j : addr) {
                int c = std::min(cap(ifs.step(j, p)), max_len - i - 1);
                if (c > best) {
                    best = c;
                    pick = j;
                }
            }
        }
        orbit.steps.push_back({p, pick});
        if (i < max_len) p = ifs.step(pick, p);
    }
    return orbit;
}

SetApprox a_infinity(const LocalIFS& ifs, int k, int depth) {
    return set_intersect(attractor(ifs, k), survivor_sets(ifs, depth).final_level());
}

SetApprox endpoints(const LocalIFS& ifs, int k, int depth) {
    return set_difference(attractor(ifs, k), survivor_sets(ifs, depth).final_level());
}

double endpoint_gap(const LocalIFS& ifs, int k, int depth) {
    SetApprox a = attractor(ifs, k);
    SetApprox w = survivor_sets(ifs, depth).final_level();
    SetApprox ends = set_difference(a, w);
    if (ends.is_empty()) fail(ErrorCode::EmptyEndpointSet, "no endpoints at this depth");
    return min_distance(ends, set_intersect(a, w));
}

void validate_itinerary(const LocalIFS& ifs, const TwoSidedItinerary& it, double tol) {
    if (it.future.steps.empty()) fail(ErrorCode::Inconsistent, "empty future orbit");
    CodePoint cp = code_map(ifs, it.past);
    const Space& sp = ifs.space();
    if (sp.distance(cp.point, it.future.steps[0].point) > tol)
        fail(ErrorCode::Inconsistent, "future does not start at the past's code point");
    bool dead = false;
    for (size_t i = 0; i < it.future.steps.size(); ++i) {
        const OrbitStep& st = it.future.steps[i];
        if (st.symbol == 0) {
            if (!ifs.address_of(st.point).empty())
                fail(ErrorCode::Inconsistent, "identity symbol on an applicable point");
            dead = true;
        } else {
            if (dead) fail(ErrorCode::Inconsistent, "application after the orbit ended");
            if (!ifs.in_domain(st.symbol, st.point))
                fail(ErrorCode::Inconsistent, "symbol not applicable at its point");
        }
        if (i + 1 < it.future.steps.size()) {
            PointId next = st.symbol == 0 ? st.point : ifs.step(st.symbol, st.point);
            if (next != it.future.steps[i + 1].point)
                fail(ErrorCode::Inconsistent, "orbit points do not chain");
        }
    }
}

TwoSidedItinerary extended_shift_step(const LocalIFS& ifs, const TwoSidedItinerary& it) {
    if (it.future.steps.empty()) fail(ErrorCode::Inconsistent, "empty future orbit");
    int a0 = it.future.steps[0].symbol;
    if (a0 == 0) fail(ErrorCode::AtEndpoint, "orbit already terminated");
    CodePoint cp = code_map(ifs, it.past);
    if (!ifs.in_domain(a0, cp.point))
        fail(ErrorCode::Inconsistent, "first future symbol not applicable at the code point");
    TwoSidedItinerary out;
    out.past = append(it.past, a0);
    out.future.steps.assign(it.future.steps.begin() + 1, it.future.steps.end());
    return out;
}

NaturalExtensionReport natural_extension_check(const LocalIFS& ifs, int samples, int depth,
                                               unsigned seed) {
    NaturalExtensionReport rep;
    const Space& sp = ifs.space();
    const double diam = sp.diameter();
    rep.tolerance =
        2 * sp.snap_error() + 2 * std::pow(ifs.lambda(), std::max(depth - 1, 1)) * diam;
    std::mt19937 rng(seed);
    rep.ok = true;
    for (int s = 0; s < samples; ++s) {
        // random admissible past, tracking cylinder representatives
        Word past;
        std::vector<PointId> reps;
        SetApprox value{&sp, {}};
        for (int d = 0; d < depth; ++d) {
            std::vector<std::pair<int, SetApprox>> options;
            for (int j = 1; j <= ifs.size(); ++j) {
                SetApprox child =
                    past.empty() ? apply_branch_full(ifs, j) : apply_branch(ifs, j, value);
                if (!child.is_empty()) options.emplace_back(j, std::move(child));
            }
            if (options.empty()) break;
            auto& choice = options[rng() % options.size()];
            past.push_back(choice.first);
            value = std::move(choice.second);
            reps.push_back(value.ids[0]);
        }
        if (past.size() < 2) continue;
        ++rep.checked;

        // one inverse-shift step: dropping the last symbol and re-applying
        // its branch must land back on the full word's code point
        const int last = past.back();
        PointId prev = reps[reps.size() - 2];
        PointId full = reps.back();
        double dev = sp.distance(ifs.step(last, prev), full);
        rep.max_deviation = std::max(rep.max_deviation, dev);
        if (dev > rep.tolerance) rep.ok = false;

        const ContractionMap& map = ifs.branch(last).map;
        if (map.invertible()) {
            ++rep.inverse_checked;
            PointId back = sp.snap(map.apply_inverse(sp.coords(full), sp));
            double lip = std::max(map.lip, 0.05);
            double inv_dev = sp.distance(back, prev);
            rep.max_inverse_deviation = std::max(rep.max_inverse_deviation, inv_dev);
            if (inv_dev > rep.tolerance / lip + 2 * sp.snap_error()) rep.ok = false;
        } else {
            ++rep.inverse_skipped;
        }

        // the forward continuation must satisfy the orbit bookkeeping
        TwoSidedItinerary it;
        it.past = past;
        it.future = extend_orbit(ifs, full, std::min(depth, 8));
        try {
            validate_itinerary(ifs, it, rep.tolerance);
        } catch (const Error&) {
            ++rep.inconsistent;
            rep.ok = false;
        }
    }
    return rep;
}

namespace {

bool two_constant_tail(const LocalIFS& ifs) {
    if (ifs.size() != 4) return false;
    for (int j : {3, 4})
        if (!std::holds_alternative<ConstantPart>(ifs.branch(j).map.impl)) return false;
    const Space& sp = ifs.space();
    PointId q = sp.snap(std::get<ConstantPart>(ifs.branch(3).map.impl).value);
    PointId p = sp.snap(std::get<ConstantPart>(ifs.branch(4).map.impl).value);
    return ifs.address_of(q) == std::vector<int>{4} && ifs.address_of(p).empty();
}

}  // namespace

OrbitHistogram classify_orbits(const LocalIFS& ifs, int depth, int samples, unsigned seed) {
    OrbitHistogram hist;
    hist.structured = two_constant_tail(ifs);
    SetApprox a = attractor(ifs, depth);
    if (a.is_empty()) return hist;
    std::mt19937 rng(seed);
    for (int s = 0; s < samples; ++s) {
        PointId x = a.ids[rng() % a.ids.size()];
        std::vector<int> symbols;
        for (int i = 0; i < depth; ++i) {
            auto addr = ifs.address_of(x);
            if (addr.empty()) break;
            int j = addr[rng() % addr.size()];
            symbols.push_back(j);
            x = ifs.step(j, x);
        }
        int len = static_cast<int>(symbols.size());
        std::string key;
        if (hist.structured) {
            // first constant-branch symbol decides the fate: 3 leads through
            // q to p (type IV), starting at q gives 4 directly (type III)
            int special = 0;
            for (int sym : symbols)
                if (sym >= 3) {
                    special = sym;
                    break;
                }
            if (len == 0)
                key = "II";
            else if (special == 3)
                key = "IV";
            else if (special == 4)
                key = "III";
            else
                key = len == depth ? "I" : "other";
        } else {
            key = len == depth ? "infinite" : "len=" + std::to_string(len);
        }
        ++hist.counts[key];
    }
    return hist;
}

}  // namespace lifs
