#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mchain/chain.hpp"

namespace mchain {

namespace detail {

/// Continuous piecewise-linear function of one variable on [0,1],
/// represented by its breakpoints. Used internally for exact envelope
/// computations; not part of the public surface.
struct PLF {
    std::vector<std::pair<Rational, Rational>> pts; // t strictly increasing, spans [0,1]

    Rational operator()(const Rational& t) const {
        auto it = std::lower_bound(pts.begin(), pts.end(), t,
                                   [](const auto& p, const Rational& x) { return p.first < x; });
        if (it != pts.end() && it->first == t) return it->second;
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        return lo.second + (hi.second - lo.second) * (t - lo.first) / (hi.first - lo.first);
    }
};

inline PLF pl_combine(const PLF& a, const PLF& b, bool take_min) {
    std::vector<Rational> grid;
    for (const auto& p : a.pts) grid.push_back(p.first);
    for (const auto& p : b.pts) grid.push_back(p.first);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    std::vector<Rational> full;
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        full.push_back(grid[k]);
        Rational d0 = a(grid[k]) - b(grid[k]);
        Rational d1 = a(grid[k + 1]) - b(grid[k + 1]);
        if ((d0 > 0 && d1 < 0) || (d0 < 0 && d1 > 0))
            full.push_back(grid[k] + (grid[k + 1] - grid[k]) * d0 / (d0 - d1));
    }
    full.push_back(grid.back());
    PLF out;
    for (const auto& t : full) {
        Rational va = a(t), vb = b(t);
        out.pts.emplace_back(t, take_min ? std::min(va, vb) : std::max(va, vb));
    }
    return out;
}

inline PLF pl_min(const PLF& a, const PLF& b) { return pl_combine(a, b, true); }
inline PLF pl_max(const PLF& a, const PLF& b) { return pl_combine(a, b, false); }

/// clamp(c0 + c1 t, 0, 1) on [0,1] as a PLF.
inline PLF pl_clamped_line(const Rational& c0, const Rational& c1) {
    auto clampv = [](Rational v) {
        if (v < 0) return Rational(0);
        if (v > 1) return Rational(1);
        return v;
    };
    std::vector<Rational> ts{Rational(0), Rational(1)};
    if (c1 != 0) {
        for (int lvl = 0; lvl <= 1; ++lvl) {
            Rational tc = (Rational(lvl) - c0) / c1;
            if (tc > 0 && tc < 1) ts.push_back(tc);
        }
        std::sort(ts.begin(), ts.end());
    }
    PLF out;
    for (const auto& t : ts) out.pts.emplace_back(t, clampv(c0 + c1 * t));
    return out;
}

struct Seg {
    Chain::Point base; // start vertex
    Chain::Point dir;  // end - start, componentwise >= 0
};

inline std::vector<Seg> segments_of(const Chain& c) {
    std::vector<Seg> segs;
    const auto& vs = c.vertices();
    for (std::size_t k = 0; k + 1 < vs.size(); ++k) {
        Seg s;
        s.base = vs[k];
        s.dir.reserve(vs[k].size());
        for (std::size_t i = 0; i < vs[k].size(); ++i) s.dir.push_back(vs[k + 1][i] - vs[k][i]);
        segs.push_back(std::move(s));
    }
    return segs;
}

/// Exact l-infinity distance from a point to one segment: a tiny 1-D
/// minimax over the segment parameter, solved on its candidate set
/// (endpoints and pairwise crossings of the constraint lines).
inline Rational linf_point_segment(const Chain::Point& p, const Seg& s) {
    struct Line {
        Rational a, b; // value a + b u
    };
    std::vector<Line> lines;
    for (std::size_t i = 0; i < p.size(); ++i) {
        Rational c = p[i] - s.base[i];
        lines.push_back({c, -s.dir[i]});
        lines.push_back({-c, s.dir[i]});
    }
    std::vector<Rational> cands{Rational(0), Rational(1)};
    for (std::size_t k = 0; k < lines.size(); ++k)
        for (std::size_t l = k + 1; l < lines.size(); ++l) {
            if (lines[k].b == lines[l].b) continue;
            Rational u = (lines[l].a - lines[k].a) / (lines[k].b - lines[l].b);
            if (u > 0 && u < 1) cands.push_back(u);
        }
    std::optional<Rational> best;
    for (const auto& u : cands) {
        Rational m(0);
        for (const auto& ln : lines) m = std::max(m, Rational(ln.a + ln.b * u));
        if (!best || m < *best) best = m;
    }
    return *best;
}

inline Rational linf_point_chain(const Chain::Point& p, const Chain& c) {
    std::optional<Rational> best;
    for (const auto& s : segments_of(c)) {
        Rational d = linf_point_segment(p, s);
        if (!best || d < *best) best = d;
    }
    return *best;
}

/// The set of parameters t of s1 whose point lies within distance d of
/// segment s2 (an interval, possibly empty): a conjunction of linear
/// inequalities in t obtained by eliminating the s2 parameter.
inline std::optional<std::pair<Rational, Rational>> feasible_interval(const Seg& s1, const Seg& s2,
                                                                     const Rational& d) {
    struct Line {
        Rational a, b; // bound a + b t on the s2 parameter
    };
    std::vector<Line> los{{Rational(0), Rational(0)}};
    std::vector<Line> his{{Rational(1), Rational(0)}};
    Rational tlo(0), thi(1);
    auto add_halfline = [&](const Rational& c, const Rational& e) -> bool {
        // constraint c + e t >= 0 on [tlo, thi]
        if (e == 0) return c >= 0;
        Rational bound = -c / e;
        if (e > 0) {
            if (bound > tlo) tlo = bound;
        } else {
            if (bound < thi) thi = bound;
        }
        return tlo <= thi;
    };
    for (std::size_t i = 0; i < s1.base.size(); ++i) {
        Rational c = s1.base[i] - s2.base[i]; // x_i(t) - A_i = c + D_i t
        if (s2.dir[i] == 0) {
            if (!add_halfline(d - c, -s1.dir[i])) return std::nullopt; // c + D t <= d
            if (!add_halfline(d + c, s1.dir[i])) return std::nullopt;  // c + D t >= -d
        } else {
            los.push_back({(c - d) / s2.dir[i], s1.dir[i] / s2.dir[i]});
            his.push_back({(c + d) / s2.dir[i], s1.dir[i] / s2.dir[i]});
        }
    }
    for (const auto& lo : los)
        for (const auto& hi : his)
            if (!add_halfline(hi.a - lo.a, hi.b - lo.b)) return std::nullopt;
    return std::make_pair(tlo, thi);
}

/// Is every point of c1 within distance d of c2?
inline bool within_neighborhood(const Chain& c1, const Chain& c2, const Rational& d) {
    auto segs2 = segments_of(c2);
    for (const auto& s1 : segments_of(c1)) {
        std::vector<std::pair<Rational, Rational>> ivs;
        for (const auto& s2 : segs2)
            if (auto iv = feasible_interval(s1, s2, d)) ivs.push_back(*iv);
        std::sort(ivs.begin(), ivs.end());
        Rational covered(0);
        for (const auto& [lo, hi] : ivs) {
            if (lo > covered) return false;
            if (hi > covered) covered = hi;
        }
        if (covered < 1) return false;
    }
    return true;
}

/// Exact distance-to-segment profile along s1: the convex PL function
/// t -> min_u max_i |s1(t) - s2(u)|_i, built from the candidate
/// minimizer paths (boundaries and pairwise crossings of constraints).
inline PLF seg_pair_profile(const Seg& s1, const Seg& s2) {
    struct Plane {
        Rational a, b, g; // value a + b t + g u
    };
    std::vector<Plane> planes;
    for (std::size_t i = 0; i < s1.base.size(); ++i) {
        Rational c = s1.base[i] - s2.base[i];
        planes.push_back({c, s1.dir[i], -s2.dir[i]});
        planes.push_back({-c, -s1.dir[i], s2.dir[i]});
    }
    std::vector<PLF> paths; // candidate u(t) curves, clamped to [0,1]
    paths.push_back(pl_clamped_line(Rational(0), Rational(0)));
    paths.push_back(pl_clamped_line(Rational(1), Rational(0)));
    for (std::size_t k = 0; k < planes.size(); ++k)
        for (std::size_t l = k + 1; l < planes.size(); ++l) {
            if (planes[k].g == planes[l].g) continue;
            Rational den = planes[k].g - planes[l].g;
            paths.push_back(
                pl_clamped_line((planes[l].a - planes[k].a) / den, (planes[l].b - planes[k].b) / den));
        }
    std::optional<PLF> result;
    for (const auto& uc : paths) {
        std::optional<PLF> phi;
        for (const auto& pl : planes) {
            PLF term;
            for (const auto& [t, u] : uc.pts) term.pts.emplace_back(t, pl.a + pl.b * t + pl.g * u);
            phi = phi ? pl_max(*phi, term) : term;
        }
        result = result ? pl_min(*result, *phi) : *phi;
    }
    return *result;
}

/// sup over x in c1 of d(x, c2), exactly, via the piecewise-linear
/// envelope of all segment-pair distance profiles.
inline Rational directed_hausdorff_exact(const Chain& c1, const Chain& c2) {
    auto segs2 = segments_of(c2);
    Rational best(0);
    for (const auto& s1 : segments_of(c1)) {
        std::optional<PLF> m;
        for (const auto& s2 : segs2) {
            PLF g = seg_pair_profile(s1, s2);
            m = m ? pl_min(*m, g) : g;
        }
        for (const auto& [t, v] : m->pts)
            if (v > best) best = v;
    }
    return best;
}

} // namespace detail

/// Exact Hausdorff distance between two chains under the sup norm.
/// Fast path: the candidate value attained at a vertex of either chain,
/// certified by an exact neighborhood-coverage check; if certification
/// fails, falls back to the exact segment-pair envelope.
inline Rational hausdorff_distance(const Chain& c1, const Chain& c2) {
    if (c1.dimension() != c2.dimension())
        throw DimensionMismatch("hausdorff_distance: dimensions differ");
    Rational lb(0);
    for (const auto& v : c1.vertices()) lb = std::max(lb, detail::linf_point_chain(v, c2));
    for (const auto& w : c2.vertices()) lb = std::max(lb, detail::linf_point_chain(w, c1));
    bool cov1 = detail::within_neighborhood(c1, c2, lb);
    bool cov2 = detail::within_neighborhood(c2, c1, lb);
    if (cov1 && cov2) return lb;
    Rational h = lb;
    if (!cov1) h = std::max(h, detail::directed_hausdorff_exact(c1, c2));
    if (!cov2) h = std::max(h, detail::directed_hausdorff_exact(c2, c1));
    return h;
}

/// Tolerance mode: certified enclosure [lo, hi] with hi - lo <= tol,
/// from sampling at spacing tol along both chains. Useful in high
/// dimension where the exact envelope gets expensive.
inline std::pair<Rational, Rational> hausdorff_bounds(const Chain& c1, const Chain& c2,
                                                      const Rational& tol) {
    if (c1.dimension() != c2.dimension())
        throw DimensionMismatch("hausdorff_bounds: dimensions differ");
    if (tol <= 0) throw OutOfRange("hausdorff_bounds: tolerance must be positive");
    Rational lo(0), gap(0);
    auto one_direction = [&](const Chain& from, const Chain& to) {
        for (const auto& s : detail::segments_of(from)) {
            Rational len(0);
            for (const auto& d : s.dir) len = std::max(len, d);
            // ceil(len / tol) pieces; adjacent samples then differ by <= tol
            Rational ratio = len / tol;
            Integer pieces = numerator(ratio) / denominator(ratio) + 1;
            long long m = pieces.convert_to<long long>();
            Rational step = Rational(1) / Rational(m);
            for (long long k = 0; k <= m; ++k) {
                Chain::Point p;
                for (std::size_t i = 0; i < s.base.size(); ++i)
                    p.push_back(s.base[i] + s.dir[i] * Rational(k) * step);
                lo = std::max(lo, detail::linf_point_chain(p, to));
            }
            gap = std::max(gap, Rational(len * step));
        }
    };
    one_direction(c1, c2);
    one_direction(c2, c1);
    return {lo, lo + gap};
}

} // namespace mchain
