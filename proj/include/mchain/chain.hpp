#pragma once

#include <map>
#include <utility>
#include <vector>

#include "mchain/monotone_map.hpp"

namespace mchain {

/// A monotone polyline from the all-zeros point to the all-ones point of
/// [0,1]^n: the image of an n-type. Canonical form: vertices strictly
/// increasing in the product order, no three consecutive collinear.
class Chain {
public:
    using Point = std::vector<Rational>;

    static Chain from_vertices(int dim, std::vector<Point> verts) {
        if (dim <= 0) throw InvalidChain("chain dimension must be positive");
        if (verts.empty()) throw InvalidChain("chain needs at least one vertex");
        for (const auto& v : verts)
            if (static_cast<int>(v.size()) != dim)
                throw DimensionMismatch("chain vertex has wrong dimension");
        for (std::size_t k = 1; k < verts.size(); ++k)
            for (int i = 0; i < dim; ++i)
                if (verts[k][i] < verts[k - 1][i])
                    throw InvalidChain("chain vertices not nondecreasing in the product order");
        const Point zeros(dim, Rational(0)), ones(dim, Rational(1));
        if (verts.front() != zeros || verts.back() != ones)
            throw InvalidChain("chain must run from the all-zeros to the all-ones point");
        Chain c;
        c.dim_ = dim;
        c.verts_ = canonical_vertices(std::move(verts));
        return c;
    }

    int dimension() const { return dim_; }
    const std::vector<Point>& vertices() const { return verts_; }

    bool operator==(const Chain& other) const = default;

    /// Exact point-on-polyline membership.
    bool contains(const Point& p) const {
        if (static_cast<int>(p.size()) != dim_)
            throw DimensionMismatch("contains: point has wrong dimension");
        for (std::size_t k = 0; k + 1 < verts_.size(); ++k)
            if (on_segment(verts_[k], verts_[k + 1], p)) return true;
        return p == verts_.back();
    }

    /// Coordinate average of a point; strictly increasing along the chain.
    Rational average_of(const Point& p) const {
        Rational s(0);
        for (const auto& x : p) s += x;
        return s / Rational(dim_);
    }

    static bool on_segment(const Point& a, const Point& b, const Point& p) {
        // p = a + lambda (b - a) for some lambda in [0,1]
        Rational lambda(-1);
        bool have = false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            Rational d = b[i] - a[i];
            if (d == 0) {
                if (p[i] != a[i]) return false;
            } else if (!have) {
                lambda = (p[i] - a[i]) / d;
                have = true;
            } else if ((p[i] - a[i]) != lambda * d) {
                return false;
            }
        }
        if (!have) return p == a;
        return lambda >= 0 && lambda <= 1;
    }

private:
    static std::vector<Point> canonical_vertices(std::vector<Point> verts) {
        std::vector<Point> out;
        out.reserve(verts.size());
        for (auto& p : verts) {
            if (!out.empty() && p == out.back()) continue;
            while (out.size() >= 2 && collinear(out[out.size() - 2], out.back(), p))
                out.pop_back();
            out.push_back(std::move(p));
        }
        return out;
    }

    static bool collinear(const Point& a, const Point& b, const Point& c) {
        // direction b-a parallel to c-b, same orientation (both nondecreasing)
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = i + 1; j < a.size(); ++j)
                if ((b[i] - a[i]) * (c[j] - b[j]) != (c[i] - b[i]) * (b[j] - a[j]))
                    return false;
        return true;
    }

    int dim_ = 0;
    std::vector<Point> verts_;
};

/// Re-canonicalizes; idempotent on canonical chains.
inline Chain canonicalize(const Chain& c) { return Chain::from_vertices(c.dimension(), c.vertices()); }

/// The image polyline of t -> (f_1(t),...,f_n(t)): the type of the tuple.
inline Chain image_chain(const std::vector<MonotoneMap>& fs) {
    if (fs.empty()) throw EmptyInput("image_chain: empty tuple");
    std::vector<const MonotoneMap*> ptrs;
    for (const auto& f : fs) ptrs.push_back(&f);
    std::vector<Chain::Point> verts;
    for (const auto& t : detail::merged_grid(ptrs)) {
        Chain::Point p;
        p.reserve(fs.size());
        for (const auto& f : fs) p.push_back(f(t));
        verts.push_back(std::move(p));
    }
    return Chain::from_vertices(static_cast<int>(fs.size()), std::move(verts));
}

/// Equality of types: equality of canonical image chains as point sets.
inline bool type_eq(const Chain& c1, const Chain& c2) {
    if (c1.dimension() != c2.dimension())
        throw DimensionMismatch("type_eq: dimensions differ");
    return c1.vertices() == c2.vertices();
}

/// Realizes a chain as a tuple of maps with image exactly the chain,
/// parametrized so the coordinate average of the moving point is the
/// identity: (1/n) sum_i f_i = id.
inline std::vector<MonotoneMap> chain_to_tuple(const Chain& c) {
    const int n = c.dimension();
    std::vector<std::vector<MonotoneMap::Breakpoint>> bps(n);
    for (const auto& v : c.vertices()) {
        Rational s = c.average_of(v);
        for (int i = 0; i < n; ++i) bps[i].emplace_back(s, v[i]);
    }
    std::vector<MonotoneMap> fs;
    fs.reserve(n);
    for (int i = 0; i < n; ++i) fs.push_back(MonotoneMap::make(std::move(bps[i])));
    return fs;
}

/// phi_alpha(f,g): the first coordinate of the unique point (a,b) on
/// im(f,g) with a+b = alpha. Picks the leftmost parameter realizing it.
inline Rational phi_alpha(const MonotoneMap& f, const MonotoneMap& g, const Rational& alpha) {
    if (alpha < 0 || alpha > 1) throw OutOfRange("phi_alpha: alpha outside [0,1]");
    if (alpha == 0) return Rational(0);
    // leftmost parameter with f(t)+g(t) = alpha; the sum is nondecreasing
    // from 0 to 2 and linear between merged breakpoints
    const auto grid = detail::merged_grid({&f, &g});
    Rational prev_t(0), prev_s(0);
    for (const auto& t : grid) {
        Rational s = f(t) + g(t);
        if (s >= alpha) {
            Rational tstar = prev_t + (t - prev_t) * (alpha - prev_s) / (s - prev_s);
            return f(tstar);
        }
        prev_t = t;
        prev_s = s;
    }
    throw Error("phi_alpha: sum never reaches alpha"); // unreachable for valid maps
}

/// Membership test for the joint image from pairwise data (2-Helly).
inline bool helly_member(const std::vector<Rational>& point,
                         const std::map<std::pair<int, int>, Chain>& pairwise) {
    const int n = static_cast<int>(point.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto it = pairwise.find({i, j});
            if (it == pairwise.end())
                throw MissingPair("helly_member: missing pair (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
            if (it->second.dimension() != 2)
                throw DimensionMismatch("helly_member: pairwise chain must have dimension 2");
            if (!it->second.contains({point[i], point[j]})) return false;
        }
    return true;
}

/// Reconstructs the joint (2n)-type of a pair of n-tuples from the two
/// component types and the 2-type of their averages.
inline Chain pair_type_compose(const Chain& type_f, const Chain& type_g, const Chain& type_averages) {
    if (type_f.dimension() != type_g.dimension())
        throw DimensionMismatch("pair_type_compose: component types must have equal dimension");
    if (type_averages.dimension() != 2)
        throw DimensionMismatch("pair_type_compose: average type must have dimension 2");
    // Projections of the average type must be the full unit interval, i.e.
    // the chain touches every level in each coordinate; for a valid chain
    // from 0 to 1 this holds, so only malformed inputs can fail here.
    for (int coord = 0; coord < 2; ++coord) {
        const auto& vs = type_averages.vertices();
        if (vs.front()[coord] != 0 || vs.back()[coord] != 1)
            throw InconsistentAverages("pair_type_compose: average type does not span [0,1]");
    }
    auto fs = chain_to_tuple(type_f);   // average-parametrized: avg fs = id
    auto gs = chain_to_tuple(type_g);
    auto hs = chain_to_tuple(type_averages);
    std::vector<MonotoneMap> joint;
    joint.reserve(2 * fs.size());
    for (const auto& f : fs) joint.push_back(compose(f, hs[0]));
    for (const auto& g : gs) joint.push_back(compose(g, hs[1]));
    return image_chain(joint);
}

} // namespace mchain
