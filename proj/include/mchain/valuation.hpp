#pragma once

#include <vector>

#include "mchain/seh.hpp"

namespace mchain {

namespace detail {

inline bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

inline long long padic_valuation(Integer x, long long p) {
    long long v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

} // namespace detail

/// Instance generator: distinct integers under d(x,y) = p^{-v_p(x-y)}.
/// The result is validated exactly against the ultrametric inequality.
inline UltrametricSpace padic_space(const std::vector<Integer>& points, long long p) {
    if (!detail::is_prime(p)) throw NotPrime("padic_space: modulus is not prime");
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (points[i] == points[j]) throw DuplicatePoints("padic_space: points must be distinct");
    std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            long long v = detail::padic_valuation(abs(points[i] - points[j]), p);
            Rational d(1);
            for (long long k = 0; k < v; ++k) d /= p;
            dist[i][j] = dist[j][i] = d;
        }
    return UltrametricSpace::validated(std::move(dist));
}

/// A value p^exponent kept symbolic, since fractional exponents leave the
/// rationals. Comparisons for a fixed base reduce to exponent comparisons.
struct PPower {
    Rational base;
    Rational exponent;
    bool operator==(const PPower&) const = default;
};

/// The unique extension of the p-adic absolute value to K = Q(alpha) with
/// alpha a root of the given monic irreducible polynomial: for
/// x = sum coords_i alpha^i, |x| = |N(x)|_p^{1/d} where N(x) is the
/// determinant of the multiplication-by-x matrix in the power basis.
inline PPower extension_valuation(const std::vector<Integer>& min_poly,
                                  const std::vector<Rational>& coords, long long p) {
    if (!detail::is_prime(p)) throw NotPrime("extension_valuation: modulus is not prime");
    const std::size_t d = coords.size();
    if (d == 0 || min_poly.size() != d + 1 || min_poly.back() != 1)
        throw DimensionMismatch("extension_valuation: need a monic polynomial of degree = #coords");
    bool zero = true;
    for (const auto& c : coords)
        if (c != 0) zero = false;
    if (zero) throw ZeroElement("extension_valuation: the zero element has no valuation");

    // columns of M: x * alpha^j in the power basis, reducing with
    // alpha^d = -sum_{k<d} m_k alpha^k
    std::vector<std::vector<Rational>> M(d, std::vector<Rational>(d, Rational(0)));
    std::vector<Rational> col(coords.begin(), coords.end());
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) M[i][j] = col[i];
        // multiply by alpha
        Rational top = col[d - 1];
        for (std::size_t i = d - 1; i > 0; --i) col[i] = col[i - 1];
        col[0] = 0;
        for (std::size_t k = 0; k < d; ++k) col[k] -= top * Rational(min_poly[k]);
    }

    // exact determinant by fraction-free forward elimination
    Rational det(1);
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t pivot = c;
        while (pivot < d && M[pivot][c] == 0) ++pivot;
        if (pivot == d) {
            det = 0;
            break;
        }
        if (pivot != c) {
            std::swap(M[pivot], M[c]);
            det = -det;
        }
        det *= M[c][c];
        for (std::size_t rr = c + 1; rr < d; ++rr) {
            Rational f = M[rr][c] / M[c][c];
            for (std::size_t cc = c; cc < d; ++cc) M[rr][cc] -= f * M[c][cc];
        }
    }
    if (det == 0) throw ZeroElement("extension_valuation: norm vanished (element not invertible)");

    long long v =
        detail::padic_valuation(abs(numerator(det)), p) - detail::padic_valuation(denominator(det), p);
    return {Rational(p), Rational(-v) / Rational(static_cast<long long>(d))};
}

} // namespace mchain
