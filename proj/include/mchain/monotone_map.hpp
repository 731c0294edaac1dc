#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "mchain/rational.hpp"

namespace mchain {

/// A continuous, nondecreasing, surjective piecewise-linear self-map of [0,1],
/// stored as its breakpoint list in canonical form: t strictly increasing,
/// first breakpoint (0,0), last (1,1), no three consecutive collinear points.
class MonotoneMap {
public:
    using Breakpoint = std::pair<Rational, Rational>;

    static MonotoneMap make(std::vector<Breakpoint> raw) {
        if (raw.empty()) throw EmptyInput("make_map: empty breakpoint list");
        for (std::size_t i = 1; i < raw.size(); ++i) {
            if (raw[i].first == raw[i - 1].first)
                throw DuplicateParameter("make_map: repeated parameter " + to_fraction(raw[i].first));
            if (raw[i].first < raw[i - 1].first)
                throw NotMonotone("make_map: parameters not increasing");
            if (raw[i].second < raw[i - 1].second)
                throw NotMonotone("make_map: values decreasing at t=" + to_fraction(raw[i].first));
        }
        if (raw.front() != Breakpoint{Rational(0), Rational(0)} ||
            raw.back() != Breakpoint{Rational(1), Rational(1)})
            throw EndpointViolation("make_map: breakpoints must run from (0,0) to (1,1)");
        MonotoneMap f;
        f.bps_ = merge_collinear(std::move(raw));
        return f;
    }

    static const MonotoneMap& identity() {
        static const MonotoneMap id = make({{Rational(0), Rational(0)}, {Rational(1), Rational(1)}});
        return id;
    }

    const std::vector<Breakpoint>& breakpoints() const { return bps_; }

    bool operator==(const MonotoneMap& other) const = default;

    /// Exact value of the interpolant at t.
    Rational operator()(const Rational& t) const {
        if (t < 0 || t > 1) throw OutOfDomain("eval_at: t=" + to_fraction(t) + " outside [0,1]");
        auto it = std::lower_bound(bps_.begin(), bps_.end(), t,
                                   [](const Breakpoint& bp, const Rational& x) { return bp.first < x; });
        if (it != bps_.end() && it->first == t) return it->second;
        const Breakpoint& hi = *it;
        const Breakpoint& lo = *(it - 1);
        return lo.second + (hi.second - lo.second) * (t - lo.first) / (hi.first - lo.first);
    }

private:
    static std::vector<Breakpoint> merge_collinear(std::vector<Breakpoint> pts) {
        std::vector<Breakpoint> out;
        out.reserve(pts.size());
        for (auto& p : pts) {
            while (out.size() >= 2) {
                const auto& a = out[out.size() - 2];
                const auto& b = out.back();
                // collinear iff slopes of a->b and b->p agree
                if ((b.second - a.second) * (p.first - b.first) ==
                    (p.second - b.second) * (b.first - a.first))
                    out.pop_back();
                else
                    break;
            }
            out.push_back(std::move(p));
        }
        return out;
    }

    std::vector<Breakpoint> bps_;
};

/// Free-function alias over the class factory.
inline MonotoneMap make_map(std::vector<MonotoneMap::Breakpoint> raw) {
    return MonotoneMap::make(std::move(raw));
}

inline Rational eval_at(const MonotoneMap& f, const Rational& t) { return f(t); }

namespace detail {

/// Merged, sorted, deduplicated t-grid of several maps.
inline std::vector<Rational> merged_grid(const std::vector<const MonotoneMap*>& fs) {
    std::vector<Rational> grid;
    for (const auto* f : fs)
        for (const auto& bp : f->breakpoints()) grid.push_back(bp.first);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

} // namespace detail

/// Exact sup-metric distance; attained on the merged breakpoint grid.
inline Rational sup_distance(const MonotoneMap& f, const MonotoneMap& g) {
    Rational best(0);
    for (const auto& t : detail::merged_grid({&f, &g})) {
        Rational d = abs(f(t) - g(t));
        if (d > best) best = d;
    }
    return best;
}

/// Pointwise average of a nonempty family; again an element of M_[0,1].
inline MonotoneMap average(const std::vector<MonotoneMap>& fs) {
    if (fs.empty()) throw EmptyInput("average: empty list");
    std::vector<const MonotoneMap*> ptrs;
    for (const auto& f : fs) ptrs.push_back(&f);
    std::vector<MonotoneMap::Breakpoint> bps;
    for (const auto& t : detail::merged_grid(ptrs)) {
        Rational v(0);
        for (const auto& f : fs) v += f(t);
        bps.emplace_back(t, v / Rational(static_cast<long>(fs.size())));
    }
    return MonotoneMap::make(std::move(bps));
}

/// The closed interval f^{-1}({v}); lo = hi unless v is a plateau value.
inline std::pair<Rational, Rational> preimage_interval(const MonotoneMap& f, const Rational& v) {
    if (v < 0 || v > 1) throw OutOfRange("preimage_interval: value outside [0,1]");
    const auto& bps = f.breakpoints();
    Rational lo, hi;
    bool found = false;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        const auto& [t0, v0] = bps[i];
        const auto& [t1, v1] = bps[i + 1];
        if (v < v0 || v > v1) continue;
        Rational a, b;
        if (v0 == v1) { // plateau segment at value v
            a = t0;
            b = t1;
        } else {
            a = b = t0 + (t1 - t0) * (v - v0) / (v1 - v0);
        }
        if (!found) {
            lo = a;
            hi = b;
            found = true;
        } else {
            hi = b;
        }
    }
    if (!found) throw OutOfRange("preimage_interval: value not attained"); // unreachable for v in [0,1]
    return {lo, hi};
}

/// Composition f∘g of two elements of M_[0,1]; again an element of M_[0,1].
inline MonotoneMap compose(const MonotoneMap& f, const MonotoneMap& g) {
    std::vector<Rational> grid;
    for (const auto& bp : g.breakpoints()) grid.push_back(bp.first);
    for (const auto& bp : f.breakpoints()) {
        auto [lo, hi] = preimage_interval(g, bp.first);
        grid.push_back(lo);
        grid.push_back(hi);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    std::vector<MonotoneMap::Breakpoint> bps;
    for (const auto& s : grid) bps.emplace_back(s, f(g(s)));
    return MonotoneMap::make(std::move(bps));
}

} // namespace mchain
