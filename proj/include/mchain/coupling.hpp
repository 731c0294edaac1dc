#pragma once

#include <vector>

#include "mchain/hausdorff.hpp"

namespace mchain {

struct Coupling {
    std::vector<MonotoneMap> fs;
    std::vector<MonotoneMap> gs;
    Rational distance; // Hausdorff distance, attained: max_i sup|fs_i - gs_i|
};

namespace detail {

/// Left-continuous generalized inverse: min { t : g(t) >= v }, with v <= 0
/// mapping to 0.
inline Rational generalized_inverse(const MonotoneMap& g, const Rational& v) {
    if (v <= 0) return Rational(0);
    const auto& bps = g.breakpoints();
    for (std::size_t k = 1; k < bps.size(); ++k) {
        if (bps[k].second < v) continue;
        const auto& [t0, v0] = bps[k - 1];
        const auto& [t1, v1] = bps[k];
        // v0 < v <= v1, so this segment rises
        return t0 + (t1 - t0) * (v - v0) / (v1 - v0);
    }
    throw OutOfRange("generalized_inverse: value above 1");
}

} // namespace detail

/// Realizes two chains at distance H = hausdorff_distance(c1, c2) by map
/// tuples attaining H in the sup metric: reparametrizations (fs, gs) with
/// im(fs) = c1, im(gs) = c2 and max_i sup|fs_i - gs_i| = H.
///
/// Construction: with F, G the average parametrizations, couple parameter
/// t of c1 to the smallest parameter y(t) = max_i min{y : G_i(y) >= F_i(t) - H}
/// of c2 that keeps every coordinate within H; y is nondecreasing and
/// piecewise linear, its completed graph (with vertical fills at jumps and
/// at the endpoints) is a 2-chain C, and composing F, G with the average
/// parametrization of C gives the coupled tuples.
inline Coupling optimal_coupling(const Chain& c1, const Chain& c2) {
    if (c1.dimension() != c2.dimension())
        throw DimensionMismatch("optimal_coupling: dimensions differ");
    const Rational H = hausdorff_distance(c1, c2);
    auto F = chain_to_tuple(c1);
    auto G = chain_to_tuple(c2);
    const int n = c1.dimension();
    if (H == 0) return {F, G, H}; // equal chains, equal parametrizations

    auto lo_i = [&](int i, const Rational& t) {
        return detail::generalized_inverse(G[i], F[i](t) - H);
    };

    // Event grid: parameters where some lo_i can change slope. These are
    // breakpoints of F_i plus preimages under F_i of w + H for breakpoint
    // values w of G_i (where the inverse switches segment).
    std::vector<Rational> events{Rational(0), Rational(1)};
    for (int i = 0; i < n; ++i) {
        for (const auto& bp : F[i].breakpoints()) events.push_back(bp.first);
        for (const auto& bp : G[i].breakpoints()) {
            Rational v = bp.second + H;
            if (v > 1) continue;
            auto [plo, phi] = preimage_interval(F[i], v);
            events.push_back(plo);
            events.push_back(phi);
        }
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());

    std::vector<Chain::Point> verts;
    verts.push_back({Rational(0), Rational(0)});
    for (std::size_t e = 0; e + 1 < events.size(); ++e) {
        const Rational a = events[e], b = events[e + 1];
        // each lo_i is linear on (a, b); recover its line from two interior samples
        const Rational t1 = a + (b - a) / 3, t2 = a + 2 * (b - a) / 3;
        struct Line {
            Rational p, q; // value p + q t
        };
        std::vector<Line> lines;
        for (int i = 0; i < n; ++i) {
            Rational y1 = lo_i(i, t1), y2 = lo_i(i, t2);
            Rational q = (y2 - y1) / (t2 - t1);
            lines.push_back({y1 - q * t1, q});
        }
        std::vector<Rational> cuts{a, b};
        for (std::size_t i = 0; i < lines.size(); ++i)
            for (std::size_t j = i + 1; j < lines.size(); ++j) {
                if (lines[i].q == lines[j].q) continue;
                Rational tc = (lines[j].p - lines[i].p) / (lines[i].q - lines[j].q);
                if (tc > a && tc < b) cuts.push_back(tc);
            }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (const auto& t : cuts) {
            Rational y(0);
            for (const auto& ln : lines) y = std::max(y, Rational(ln.p + ln.q * t));
            // jumps of y appear as vertical pairs with equal parameter
            if (verts.back() != Chain::Point{t, y}) verts.push_back({t, y});
        }
    }
    verts.push_back({Rational(1), Rational(1)});
    auto C = Chain::from_vertices(2, std::move(verts));

    auto hs = chain_to_tuple(C);
    Coupling result;
    result.distance = H;
    for (int i = 0; i < n; ++i) {
        result.fs.push_back(compose(F[i], hs[0]));
        result.gs.push_back(compose(G[i], hs[1]));
    }
    // internal consistency: images unchanged and the distance is attained
    Rational att(0);
    for (int i = 0; i < n; ++i) att = std::max(att, sup_distance(result.fs[i], result.gs[i]));
    if (att != H || image_chain(result.fs) != c1 || image_chain(result.gs) != c2)
        throw Error("optimal_coupling: constructed coupling fails verification");
    return result;
}

} // namespace mchain
