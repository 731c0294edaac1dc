#pragma once

#include <vector>

#include "mchain/chain.hpp"

namespace mchain {

/// An ordered sequence of k-tuples of monotone maps.
struct Sequence {
    int arity = 1;
    std::vector<std::vector<MonotoneMap>> elements;
};

/// Order-indiscernibility. Types of finite subsequences are determined by
/// the types of single tuples and of increasing pairs, so checking those
/// two levels exactly decides full indiscernibility.
inline bool is_indiscernible(const Sequence& s) {
    if (s.elements.size() < 2) throw TooShort("is_indiscernible: need at least 2 elements");
    for (const auto& e : s.elements)
        if (static_cast<int>(e.size()) != s.arity)
            throw ArityMismatch("is_indiscernible: tuple arity differs from sequence arity");
    const Chain one_type = image_chain(s.elements[0]);
    for (std::size_t i = 1; i < s.elements.size(); ++i)
        if (!type_eq(image_chain(s.elements[i]), one_type)) return false;
    auto pair_chain = [&](std::size_t i, std::size_t j) {
        auto joint = s.elements[i];
        joint.insert(joint.end(), s.elements[j].begin(), s.elements[j].end());
        return image_chain(joint);
    };
    const Chain pair_type = pair_chain(0, 1);
    for (std::size_t i = 0; i < s.elements.size(); ++i)
        for (std::size_t j = i + 1; j < s.elements.size(); ++j) {
            if (i == 0 && j == 1) continue;
            if (!type_eq(pair_chain(i, j), pair_type)) return false;
        }
    return true;
}

namespace detail {

/// Closed intervals (possibly degenerate) where the 2-chain meets the
/// diagonal, as intervals of the common coordinate value, merged.
inline std::vector<std::pair<Rational, Rational>> diagonal_trace(const Chain& p) {
    std::vector<std::pair<Rational, Rational>> ivs;
    const auto& vs = p.vertices();
    for (std::size_t k = 0; k + 1 < vs.size(); ++k) {
        Rational x0 = vs[k][0], y0 = vs[k][1];
        Rational dx = vs[k + 1][0] - x0, dy = vs[k + 1][1] - y0;
        if (dx == dy) {
            if (x0 == y0) ivs.emplace_back(x0, x0 + dx);
        } else {
            Rational lam = (y0 - x0) / (dx - dy);
            if (lam >= 0 && lam <= 1) {
                Rational c = x0 + lam * dx;
                ivs.emplace_back(c, c);
            }
        }
    }
    std::sort(ivs.begin(), ivs.end());
    std::vector<std::pair<Rational, Rational>> merged;
    for (const auto& iv : ivs) {
        if (!merged.empty() && iv.first <= merged.back().second)
            merged.back().second = std::max(merged.back().second, iv.second);
        else
            merged.push_back(iv);
    }
    return merged;
}

} // namespace detail

/// Exact check of the pair-type criterion: every point (a,b) of p has
/// (a,a) in p or (b,b) in p. Per segment this is a covering of the
/// parameter interval by preimages of the diagonal trace.
inline bool diagonal_condition(const Chain& p) {
    if (p.dimension() != 2) throw DimensionMismatch("diagonal_condition: chain must have dimension 2");
    const auto diag = detail::diagonal_trace(p);
    const auto& vs = p.vertices();
    for (std::size_t k = 0; k + 1 < vs.size(); ++k) {
        std::vector<std::pair<Rational, Rational>> lam_ivs;
        for (int coord = 0; coord < 2; ++coord) {
            Rational c0 = vs[k][coord];
            Rational d = vs[k + 1][coord] - c0;
            for (const auto& [lo, hi] : diag) {
                if (d == 0) {
                    if (c0 >= lo && c0 <= hi) lam_ivs.emplace_back(Rational(0), Rational(1));
                } else {
                    Rational a = std::max(Rational(0), Rational((lo - c0) / d));
                    Rational b = std::min(Rational(1), Rational((hi - c0) / d));
                    if (a <= b) lam_ivs.emplace_back(a, b);
                }
            }
        }
        std::sort(lam_ivs.begin(), lam_ivs.end());
        Rational covered(0);
        for (const auto& [lo, hi] : lam_ivs) {
            if (lo > covered) return false;
            if (hi > covered) covered = hi;
        }
        if (covered < 1) return false;
    }
    return true;
}

/// The staircase construction: n maps whose every increasing pair has
/// type p. Decomposes [0,1] by the sign of f - g for the average
/// parametrization (f, g) of p; maps are the identity where f = g, and on
/// each off-diagonal component (a,b) the i-th map hugs a, rises linearly
/// across one of n equal subintervals, then hugs b. Where f > g the i-th
/// map rises on the i-th subinterval; where f < g, on the (n+1-i)-th.
inline Sequence build_indiscernible(const Chain& p, int n) {
    if (p.dimension() != 2) throw DimensionMismatch("build_indiscernible: chain must have dimension 2");
    if (n <= 0) throw OutOfRange("build_indiscernible: n must be positive");
    if (!diagonal_condition(p))
        throw DiagonalConditionFailed("build_indiscernible: chain is not a pair type of an indiscernible sequence");
    auto fg = chain_to_tuple(p);
    const MonotoneMap &f = fg[0], &g = fg[1];
    auto h = [&](const Rational& t) { return Rational(f(t) - g(t)); };

    // refine the merged grid so the sign of f - g is constant on each cell
    std::vector<Rational> grid = detail::merged_grid({&f, &g});
    std::vector<Rational> nodes;
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        nodes.push_back(grid[k]);
        Rational h0 = h(grid[k]), h1 = h(grid[k + 1]);
        if ((h0 > 0 && h1 < 0) || (h0 < 0 && h1 > 0))
            nodes.push_back(grid[k] + (grid[k + 1] - grid[k]) * h0 / (h0 - h1));
    }
    nodes.push_back(grid.back());

    // maximal components (a, b) of {f > g} and {f < g}
    struct Component {
        Rational a, b;
        int sign;
    };
    std::vector<Component> comps;
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        Rational mid = nodes[k] + (nodes[k + 1] - nodes[k]) / 2;
        Rational hm = h(mid);
        int sign = hm > 0 ? 1 : (hm < 0 ? -1 : 0);
        if (sign == 0) continue;
        if (!comps.empty() && comps.back().sign == sign && comps.back().b == nodes[k] &&
            h(nodes[k]) != 0)
            comps.back().b = nodes[k + 1];
        else
            comps.push_back({nodes[k], nodes[k + 1], sign});
    }

    Sequence seq;
    seq.arity = 1;
    for (int i = 1; i <= n; ++i) {
        std::vector<MonotoneMap::Breakpoint> bps;
        bps.emplace_back(Rational(0), Rational(0));
        for (const auto& c : comps) {
            int rise = c.sign > 0 ? i : n + 1 - i; // which subinterval rises
            Rational w = (c.b - c.a) / n;
            auto push = [&](const Rational& t, const Rational& v) {
                if (t > bps.back().first) bps.emplace_back(t, v);
            };
            push(c.a, c.a);
            if (rise > 1) push(c.a + (rise - 1) * w, c.a);
            push(c.a + rise * w, c.b);
            if (rise < n) push(c.b, c.b);
        }
        if (bps.back().first < 1) bps.emplace_back(Rational(1), Rational(1));
        seq.elements.push_back({MonotoneMap::make(std::move(bps))});
    }
    return seq;
}

/// The base-change step of the distality argument on a five-element
/// configuration: with (f1,f2,f3,f5) and (f1,f3,f4,f5) indiscernible,
/// does tp(f2,f4) equal tp(f1,f3)? Distality of the structure predicts
/// true on every valid instance.
inline bool base_change_check(const std::vector<std::vector<MonotoneMap>>& tuples) {
    if (tuples.size() != 5) throw PreconditionFailed("base_change_check: exactly five tuples required");
    const int k = static_cast<int>(tuples[0].size());
    for (const auto& t : tuples)
        if (static_cast<int>(t.size()) != k)
            throw ArityMismatch("base_change_check: tuples have unequal arity");
    auto subsequence = [&](std::initializer_list<int> idx) {
        Sequence s;
        s.arity = k;
        for (int i : idx) s.elements.push_back(tuples[i]);
        return s;
    };
    if (!is_indiscernible(subsequence({0, 1, 2, 4})) || !is_indiscernible(subsequence({0, 2, 3, 4})))
        throw PreconditionFailed("base_change_check: required subsequences are not indiscernible");
    auto joint = [&](int i, int j) {
        auto v = tuples[i];
        v.insert(v.end(), tuples[j].begin(), tuples[j].end());
        return image_chain(v);
    };
    return type_eq(joint(1, 3), joint(0, 2));
}

} // namespace mchain
