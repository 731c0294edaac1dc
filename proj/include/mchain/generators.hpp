#pragma once

#include <cstdint>
#include <vector>

#include "mchain/chain.hpp"
#include "mchain/monotone_map.hpp"

namespace mchain {

/// Small deterministic generator (splitmix64). Distributions are defined
/// here rather than via <random> so that identical seeds give identical
/// streams on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Independent stream for one trial of a seeded experiment.
    static Rng for_trial(std::uint64_t seed, std::uint64_t trial) {
        return Rng(mix(seed) ^ mix(mix(trial) + 0x6A09E667F3BCC909ull));
    }

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform draw from {0, ..., n-1}; n >= 1.
    std::uint64_t uniform(std::uint64_t n) { return next() % n; }

    bool coin() { return next() & 1; }

private:
    std::uint64_t state_;
};

/// Random element of M_[0,1]: up to k interior breakpoints on the grid 1/q,
/// parameters distinct, values sorted nondecreasing.
inline MonotoneMap random_monotone_map(Rng& rng, int max_interior, long long q) {
    int k = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(max_interior) + 1));
    std::vector<long long> ts;
    for (int i = 0; i < k; ++i) ts.push_back(1 + static_cast<long long>(rng.uniform(q - 1)));
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::vector<long long> vs;
    for (std::size_t i = 0; i < ts.size(); ++i) vs.push_back(static_cast<long long>(rng.uniform(q + 1)));
    std::sort(vs.begin(), vs.end());
    std::vector<MonotoneMap::Breakpoint> bps;
    bps.emplace_back(rat(0), rat(0));
    for (std::size_t i = 0; i < ts.size(); ++i) bps.emplace_back(rat(ts[i], q), rat(vs[i], q));
    bps.emplace_back(rat(1), rat(1));
    return MonotoneMap::make(std::move(bps));
}

inline std::vector<MonotoneMap> random_tuple(Rng& rng, int n, int max_interior, long long q) {
    std::vector<MonotoneMap> fs;
    fs.reserve(n);
    for (int i = 0; i < n; ++i) fs.push_back(random_monotone_map(rng, max_interior, q));
    return fs;
}

inline Chain random_chain(Rng& rng, int dim, int max_interior, long long q) {
    return image_chain(random_tuple(rng, dim, max_interior, q));
}

/// Random canonical 2-chain built from diagonal runs and L-shaped
/// excursions; such chains always satisfy the diagonal condition.
inline Chain random_staircase_chain(Rng& rng, long long q) {
    int cuts = 1 + static_cast<int>(rng.uniform(4));
    std::vector<long long> cs{0, q};
    for (int i = 0; i < cuts; ++i) cs.push_back(1 + static_cast<long long>(rng.uniform(q - 1)));
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    std::vector<Chain::Point> verts;
    verts.push_back({rat(0), rat(0)});
    for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
        Rational a = rat(cs[i], q), b = rat(cs[i + 1], q);
        switch (rng.uniform(3)) {
            case 0: break; // diagonal run; segment (a,a)->(b,b)
            case 1: verts.push_back({b, a}); break; // lower L
            case 2: verts.push_back({a, b}); break; // upper L
        }
        verts.push_back({b, b});
    }
    return Chain::from_vertices(2, std::move(verts));
}

/// Random bounded ultrametric space on n points: recursive partition with
/// strictly shrinking dyadic diameters.
inline std::vector<std::vector<Rational>> random_hierarchical_distances(Rng& rng, int n) {
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
    struct Frame {
        std::vector<int> idx;
        long long diam_log2; // distance between subgroups is 1/2^diam_log2
    };
    std::vector<Frame> stack;
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    stack.push_back({all, static_cast<long long>(rng.uniform(2))});
    while (!stack.empty()) {
        Frame fr = std::move(stack.back());
        stack.pop_back();
        if (fr.idx.size() < 2) continue;
        // split into 2..4 nonempty groups
        int groups = 2 + static_cast<int>(rng.uniform(3));
        std::vector<std::vector<int>> parts(groups);
        for (std::size_t i = 0; i < fr.idx.size(); ++i)
            parts[i < static_cast<std::size_t>(groups) ? i : rng.uniform(groups)].push_back(fr.idx[i]);
        Rational cross = Rational(1) / Rational(Integer(1) << fr.diam_log2);
        for (std::size_t gi = 0; gi < parts.size(); ++gi)
            for (std::size_t gj = gi + 1; gj < parts.size(); ++gj)
                for (int a : parts[gi])
                    for (int b : parts[gj]) d[a][b] = d[b][a] = cross;
        for (auto& part : parts)
            if (part.size() >= 2)
                stack.push_back({std::move(part), fr.diam_log2 + 1 + static_cast<long long>(rng.uniform(2))});
    }
    return d;
}

} // namespace mchain
