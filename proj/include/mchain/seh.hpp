#pragma once

#include <functional>
#include <numeric>
#include <vector>

#include "mchain/rational.hpp"

namespace mchain {

/// A finite bounded ultrametric space given by its exact distance matrix.
/// Entries are rescaled into [0,1] at construction. The trusted factory
/// defers the triangle check: operations that rely on it verify their own
/// certificates exhaustively and surface NotUltrametric lazily.
class UltrametricSpace {
public:
    static UltrametricSpace trusted(std::vector<std::vector<Rational>> dist) {
        return shape_checked(std::move(dist));
    }

    static UltrametricSpace validated(std::vector<std::vector<Rational>> dist) {
        auto s = shape_checked(std::move(dist));
        const int n = s.size();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    if (s.d(i, k) > std::max(s.d(i, j), s.d(j, k)))
                        throw NotUltrametric("distance matrix violates the ultrametric inequality");
        return s;
    }

    int size() const { return static_cast<int>(dist_.size()); }
    const Rational& d(int i, int j) const { return dist_[i][j]; }
    const std::vector<std::vector<Rational>>& dist() const { return dist_; }

private:
    static UltrametricSpace shape_checked(std::vector<std::vector<Rational>> dist) {
        const std::size_t n = dist.size();
        if (n == 0) throw EmptyInput("ultrametric space needs at least one point");
        Rational diam(0);
        for (std::size_t i = 0; i < n; ++i) {
            if (dist[i].size() != n) throw DimensionMismatch("distance matrix is not square");
            if (dist[i][i] != 0) throw NotUltrametric("distance matrix has nonzero diagonal");
            for (std::size_t j = 0; j < n; ++j) {
                if (dist[i][j] < 0) throw NotUltrametric("negative distance");
                if (dist[i][j] != dist[j][i]) throw NotUltrametric("distance matrix not symmetric");
                diam = std::max(diam, dist[i][j]);
            }
        }
        if (diam > 1)
            for (auto& row : dist)
                for (auto& e : row) e /= diam;
        UltrametricSpace s;
        s.dist_ = std::move(dist);
        return s;
    }

    std::vector<std::vector<Rational>> dist_;
};

/// Finite-instance surrogate for a definable predicate: exact values in
/// [0,1] on index tuples.
struct PredicateTable {
    int arity = 2;
    std::function<Rational(const std::vector<int>&)> eval;
};

struct HomogeneityClaim {
    enum class Kind { threshold, epsilon };
    Kind kind = Kind::epsilon;
    Rational value;  // r for threshold claims, eps for epsilon claims
    bool le = true;  // threshold side: true means "<= r" everywhere, false "> r"
};

/// Subsets B_i of ambient sets A_i together with a verified homogeneity
/// claim over B_1 x ... x B_n and the witnessed fractions |B_i|/|A_i|.
struct HomogeneityCertificate {
    std::vector<std::vector<int>> subsets;
    HomogeneityClaim claim;
    std::vector<Rational> fractions;

    /// Exhaustive exact check of the claim over the full product.
    bool verify(const PredicateTable& table) const {
        if (static_cast<int>(subsets.size()) != table.arity) return false;
        for (const auto& s : subsets)
            if (s.empty()) return false;
        std::vector<std::size_t> odo(subsets.size(), 0);
        std::vector<int> tuple(subsets.size());
        bool have = false;
        Rational vmin, vmax;
        while (true) {
            for (std::size_t i = 0; i < odo.size(); ++i) tuple[i] = subsets[i][odo[i]];
            Rational v = table.eval(tuple);
            if (claim.kind == HomogeneityClaim::Kind::threshold) {
                if (claim.le ? v > claim.value : v <= claim.value) return false;
            } else {
                if (!have) {
                    vmin = vmax = v;
                    have = true;
                } else {
                    vmin = std::min(vmin, v);
                    vmax = std::max(vmax, v);
                }
            }
            std::size_t i = 0;
            while (i < odo.size() && ++odo[i] == subsets[i].size()) odo[i++] = 0;
            if (i == odo.size()) break;
        }
        if (claim.kind == HomogeneityClaim::Kind::epsilon && vmax - vmin > claim.value) return false;
        return true;
    }
};

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace detail

/// Distance table of a space, usable for certificate verification.
inline PredicateTable distance_table(const UltrametricSpace& space) {
    return {2, [&space](const std::vector<int>& t) { return space.d(t[0], t[1]); }};
}

/// The strong Erdos-Hajnal step for ultrametric spaces with constant 1/3:
/// returns A_0 in A and B_0 in B, both of fraction at least 1/3, with all
/// cross distances <= r or all > r. Classes of the relation d <= r (an
/// equivalence relation exactly when d is ultrametric) either contain a
/// class large on both sides, or a mass argument over the class fractions
/// yields a far pair. The certificate is re-verified exhaustively; any
/// failure is diagnosed as a non-ultrametric input.
inline HomogeneityCertificate ultrametric_partition(const UltrametricSpace& space,
                                                    std::vector<int> A, std::vector<int> B,
                                                    const Rational& r) {
    if (A.empty() || B.empty()) throw EmptyInput("ultrametric_partition: empty index set");
    auto normalize = [&](std::vector<int>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        for (int x : v)
            if (x < 0 || x >= space.size()) throw OutOfRange("ultrametric_partition: index out of range");
    };
    normalize(A);
    normalize(B);

    detail::UnionFind uf(space.size());
    std::vector<int> pts = A;
    pts.insert(pts.end(), B.begin(), B.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (space.d(pts[i], pts[j]) <= r) uf.unite(pts[i], pts[j]);

    struct Cls {
        std::vector<int> inA, inB;
        Rational fracA, fracB;
    };
    std::vector<int> roots;
    std::vector<Cls> classes;
    auto class_of = [&](int root) -> Cls& {
        for (std::size_t k = 0; k < roots.size(); ++k)
            if (roots[k] == root) return classes[k];
        roots.push_back(root);
        classes.emplace_back();
        return classes.back();
    };
    for (int a : A) class_of(uf.find(a)).inA.push_back(a);
    for (int b : B) class_of(uf.find(b)).inB.push_back(b);
    const Rational third = rat(1, 3);
    for (auto& c : classes) {
        c.fracA = Rational(static_cast<long>(c.inA.size())) / static_cast<long>(A.size());
        c.fracB = Rational(static_cast<long>(c.inB.size())) / static_cast<long>(B.size());
    }

    HomogeneityCertificate cert;
    bool done = false;
    for (const auto& c : classes)
        if (c.fracA >= third && c.fracB >= third) {
            cert.subsets = {c.inA, c.inB};
            cert.claim = {HomogeneityClaim::Kind::threshold, r, true};
            done = true;
            break;
        }
    if (!done) {
        // mass argument: work on the side whose favored classes carry >= 1/2
        auto far_pair = [&](bool on_A) {
            std::vector<std::size_t> S;
            Rational massS(0);
            for (std::size_t k = 0; k < classes.size(); ++k) {
                Rational mine = on_A ? classes[k].fracA : classes[k].fracB;
                Rational other = on_A ? classes[k].fracB : classes[k].fracA;
                bool favored = on_A ? mine >= other : mine > other;
                if (favored) {
                    S.push_back(k);
                    massS += mine;
                }
            }
            if (massS < rat(1, 2)) return false;
            auto mass = [&](std::size_t k) { return on_A ? classes[k].fracA : classes[k].fracB; };
            std::stable_sort(S.begin(), S.end(),
                             [&](std::size_t a, std::size_t b) { return mass(a) > mass(b); });
            std::vector<std::size_t> Sp;
            Rational acc(0);
            for (std::size_t k : S) {
                if (acc >= third) break;
                Sp.push_back(k);
                acc += mass(k);
            }
            // enforce minimality under inclusion, dropping from the smallest up
            for (std::size_t i = Sp.size(); i-- > 0;)
                if (acc - mass(Sp[i]) >= third) {
                    acc -= mass(Sp[i]);
                    Sp.erase(Sp.begin() + static_cast<std::ptrdiff_t>(i));
                }
            std::vector<bool> chosen(classes.size(), false);
            for (std::size_t k : Sp) chosen[k] = true;
            std::vector<int> mine_pts, other_pts;
            for (std::size_t k = 0; k < classes.size(); ++k) {
                const auto& src = on_A ? classes[k].inA : classes[k].inB;
                const auto& dst = on_A ? classes[k].inB : classes[k].inA;
                if (chosen[k])
                    mine_pts.insert(mine_pts.end(), src.begin(), src.end());
                else
                    other_pts.insert(other_pts.end(), dst.begin(), dst.end());
            }
            std::sort(mine_pts.begin(), mine_pts.end());
            std::sort(other_pts.begin(), other_pts.end());
            if (on_A)
                cert.subsets = {mine_pts, other_pts};
            else
                cert.subsets = {other_pts, mine_pts};
            cert.claim = {HomogeneityClaim::Kind::threshold, r, false};
            return true;
        };
        done = far_pair(true) || far_pair(false);
        if (!done) throw NotUltrametric("ultrametric_partition: mass argument failed");
    }

    cert.fractions = {Rational(static_cast<long>(cert.subsets[0].size())) / static_cast<long>(A.size()),
                      Rational(static_cast<long>(cert.subsets[1].size())) / static_cast<long>(B.size())};
    if (cert.fractions[0] < third || cert.fractions[1] < third ||
        !cert.verify(distance_table(space)))
        throw NotUltrametric("ultrametric_partition: certificate failed verification");
    return cert;
}

/// A threshold-homogeneity finder: given a threshold r and current index
/// sets, returns a verified certificate with all values <= r or all > r
/// on the product of its subsets.
using ThresholdCutter =
    std::function<HomogeneityCertificate(const Rational& r, const std::vector<std::vector<int>>& sets)>;

/// Binary search from threshold homogeneity to eps-homogeneity: halve the
/// value range ceil(log2(1/eps)) times, keeping the cutter's side each
/// round. Fractions multiply, giving at least delta per round.
inline HomogeneityCertificate refine_to_eps(const ThresholdCutter& cutter, const Rational& delta,
                                            const PredicateTable& table, const Rational& eps,
                                            std::vector<std::vector<int>> sets) {
    if (eps <= 0) throw OutOfRange("refine_to_eps: eps must be positive");
    for (auto& s : sets) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s.empty()) throw EmptyInput("refine_to_eps: empty index set");
    }
    const std::vector<std::vector<int>> original = sets;
    Rational lo(0), hi(1);
    while (hi - lo > eps) {
        Rational mid = lo + (hi - lo) / 2;
        auto cut = cutter(mid, sets);
        if (cut.subsets.size() != sets.size()) throw CutterContractViolation("wrong arity from cutter");
        for (auto& sub : cut.subsets) std::sort(sub.begin(), sub.end());
        for (std::size_t i = 0; i < sets.size(); ++i) {
            const auto& sub = cut.subsets[i];
            if (sub.empty() ||
                Rational(static_cast<long>(sub.size())) <
                    delta * static_cast<long>(sets[i].size()) ||
                !std::includes(sets[i].begin(), sets[i].end(), sub.begin(), sub.end()))
                throw CutterContractViolation("cutter returned a too-small or foreign subset");
        }
        if (cut.claim.kind != HomogeneityClaim::Kind::threshold || cut.claim.value != mid ||
            !cut.verify(table))
            throw CutterContractViolation("cutter claim does not hold");
        sets = cut.subsets;
        (cut.claim.le ? hi : lo) = mid;
    }
    HomogeneityCertificate cert;
    cert.subsets = sets;
    cert.claim = {HomogeneityClaim::Kind::epsilon, eps, true};
    for (std::size_t i = 0; i < sets.size(); ++i)
        cert.fractions.push_back(Rational(static_cast<long>(sets[i].size())) /
                                 static_cast<long>(original[i].size()));
    if (!cert.verify(table))
        throw CutterContractViolation("refined sets are not eps-homogeneous");
    return cert;
}

/// An eps-homogeneity finder for one predicate over shrinking index sets.
using EpsFinder =
    std::function<HomogeneityCertificate(const Rational& eps, const std::vector<std::vector<int>>& sets)>;

/// Closure under continuous combinations u(phi_1, ..., phi_k): shrink the
/// sets through each finder at tolerance modulus(eps); once every phi_j
/// varies by at most modulus(eps) on the final product, u varies by at
/// most eps. Fractions multiply across the stages.
inline HomogeneityCertificate combine_continuous(
    const std::vector<EpsFinder>& finders, const std::function<Rational(const Rational&)>& modulus,
    const PredicateTable& table_u, const Rational& eps, std::vector<std::vector<int>> sets) {
    if (finders.empty()) throw EmptyInput("combine_continuous: no finders");
    for (auto& s : sets) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s.empty()) throw EmptyInput("combine_continuous: empty index set");
    }
    const std::vector<std::vector<int>> original = sets;
    const Rational delta_prime = modulus(eps);
    if (delta_prime <= 0) throw OutOfRange("combine_continuous: modulus must be positive");
    for (const auto& finder : finders) {
        auto cert = finder(delta_prime, sets);
        if (cert.subsets.size() != sets.size())
            throw FinderContractViolation("wrong arity from finder");
        for (std::size_t i = 0; i < sets.size(); ++i) {
            auto sub = cert.subsets[i];
            std::sort(sub.begin(), sub.end());
            if (sub.empty() || !std::includes(sets[i].begin(), sets[i].end(), sub.begin(), sub.end()))
                throw FinderContractViolation("finder returned an empty or foreign subset");
            sets[i] = std::move(sub);
        }
    }
    HomogeneityCertificate cert;
    cert.subsets = sets;
    cert.claim = {HomogeneityClaim::Kind::epsilon, eps, true};
    for (std::size_t i = 0; i < sets.size(); ++i)
        cert.fractions.push_back(Rational(static_cast<long>(sets[i].size())) /
                                 static_cast<long>(original[i].size()));
    if (!cert.verify(table_u))
        throw FinderContractViolation("combined sets are not eps-homogeneous for the combination");
    return cert;
}

/// Closure under uniform limits: pick the first approximant whose sup
/// error is at most eps/3, find (eps/3)-homogeneous sets for it, and
/// re-verify the certificate against the limit predicate at slack eps.
inline HomogeneityCertificate uniform_limit_finder(
    const std::function<HomogeneityCertificate(std::size_t, const Rational&,
                                               const std::vector<std::vector<int>>&)>& approx_finder,
    const std::vector<Rational>& error_schedule, const PredicateTable& limit_table,
    const Rational& eps, const std::vector<std::vector<int>>& sets) {
    if (eps <= 0) throw OutOfRange("uniform_limit_finder: eps must be positive");
    const Rational third = eps / 3;
    std::size_t N = error_schedule.size();
    for (std::size_t k = 0; k < error_schedule.size(); ++k)
        if (error_schedule[k] <= third) {
            N = k;
            break;
        }
    if (N == error_schedule.size())
        throw NoSuchN("uniform_limit_finder: no approximant within eps/3");
    auto cert = approx_finder(N, third, sets);
    cert.claim = {HomogeneityClaim::Kind::epsilon, eps, true};
    if (!cert.verify(limit_table))
        throw FinderContractViolation("certificate does not transfer to the limit predicate");
    return cert;
}

} // namespace mchain
