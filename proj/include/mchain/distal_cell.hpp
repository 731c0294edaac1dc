#pragma once

#include <optional>
#include <vector>

#include "mchain/chain.hpp"

namespace mchain {

/// One conjunct level of a cell formula. Absent witnesses mean the
/// trivial contribution 1.
struct CellLevel {
    int i = 0;
    std::optional<MonotoneMap> minus;
    std::optional<MonotoneMap> plus;
};

/// The data of one cell of the 2/n-distal decomposition for phi_alpha:
/// psi(x) = min over levels of bump values at phi_alpha(x, witness).
struct CellCertificate {
    Rational alpha;
    int n = 0;
    std::vector<CellLevel> levels; // i = 1 .. n-1
};

/// Builds the cell of the anchor with respect to B: at each level i the
/// minus witness is the b with phi_alpha(anchor, b) < i/n whose preimage
/// of alpha - i/n reaches furthest right (ties to the earliest b in B);
/// the plus witness symmetrically reaches furthest left among the b with
/// phi_alpha(anchor, b) > i/n. Levels with alpha - i/n below the value
/// range are vacuous and stay trivial.
inline CellCertificate build_cell(const Rational& alpha, int n, const MonotoneMap& anchor,
                                  const std::vector<MonotoneMap>& B) {
    if (B.size() < 2) throw BTooSmall("build_cell: need at least two elements in B");
    if (alpha < 0 || alpha > 1) throw OutOfRange("build_cell: alpha outside [0,1]");
    if (n <= 0) throw OutOfRange("build_cell: n must be positive");
    CellCertificate cert{alpha, n, {}};
    for (int i = 1; i < n; ++i) {
        CellLevel level;
        level.i = i;
        Rational thresh = rat(i, n);
        Rational v = alpha - thresh;
        if (v >= 0) {
            std::optional<Rational> best_hi, best_lo;
            for (const auto& b : B) {
                Rational phi = phi_alpha(anchor, b, alpha);
                auto [lo, hi] = preimage_interval(b, v);
                if (phi < thresh && (!best_hi || hi > *best_hi)) {
                    best_hi = hi;
                    level.minus = b;
                }
                if (phi > thresh && (!best_lo || lo < *best_lo)) {
                    best_lo = lo;
                    level.plus = b;
                }
            }
        }
        cert.levels.push_back(std::move(level));
    }
    return cert;
}

/// psi(x): minimum over levels of the bump contributions
/// max(0, i/n - phi_alpha(x, b_minus)) and max(0, phi_alpha(x, b_plus) - i/n);
/// trivial entries contribute 1.
inline Rational eval_cell(const CellCertificate& cert, const MonotoneMap& x) {
    Rational value(1);
    for (const auto& level : cert.levels) {
        Rational thresh = rat(level.i, cert.n);
        if (level.minus) {
            Rational c = std::max(Rational(0), Rational(thresh - phi_alpha(x, *level.minus, cert.alpha)));
            value = std::min(value, c);
        }
        if (level.plus) {
            Rational c = std::max(Rational(0), Rational(phi_alpha(x, *level.plus, cert.alpha) - thresh));
            value = std::min(value, c);
        }
    }
    return value;
}

struct CellReport {
    bool anchor_positive = false;
    bool homogeneous = true;
    std::optional<std::size_t> violating_probe;
    std::optional<std::size_t> violating_b;
    bool pass() const { return anchor_positive && homogeneous; }
};

/// Checks the distal cell contract on a probe set: the anchor's own cell
/// value is positive, and every probe landing in the cell agrees with the
/// anchor about every phi_alpha(., b) up to 2/n. Probes outside the cell
/// are unconstrained. The first violation in probe-then-b order is
/// reported; violations are data, not errors.
inline CellReport verify_cell(const CellCertificate& cert, const MonotoneMap& anchor,
                              const std::vector<MonotoneMap>& B,
                              const std::vector<MonotoneMap>& probes) {
    CellReport report;
    report.anchor_positive = eval_cell(cert, anchor) > 0;
    const Rational tol = rat(2, cert.n);
    std::vector<Rational> anchor_phi;
    for (const auto& b : B) anchor_phi.push_back(phi_alpha(anchor, b, cert.alpha));
    for (std::size_t p = 0; p < probes.size() && report.homogeneous; ++p) {
        if (eval_cell(cert, probes[p]) <= 0) continue;
        for (std::size_t k = 0; k < B.size(); ++k) {
            if (abs(anchor_phi[k] - phi_alpha(probes[p], B[k], cert.alpha)) <= tol) continue;
            report.homogeneous = false;
            report.violating_probe = p;
            report.violating_b = k;
            break;
        }
    }
    return report;
}

/// Deterministic probe set tied to the instance: the anchor and the
/// elements of B themselves, their pairwise averages, compositions with
/// the anchor, and convex sweeps from the anchor toward each b (these
/// cross the cell boundary, exercising the support edges of the bumps).
inline std::vector<MonotoneMap> critical_probes(const MonotoneMap& anchor,
                                                const std::vector<MonotoneMap>& B) {
    std::vector<MonotoneMap> probes{anchor};
    for (const auto& b : B) probes.push_back(b);
    for (const auto& b : B) {
        probes.push_back(average({anchor, b}));
        probes.push_back(compose(anchor, b));
        probes.push_back(compose(b, anchor));
        for (long long num = 1; num <= 3; ++num) {
            Rational lam = rat(num, 4);
            std::vector<MonotoneMap::Breakpoint> bps;
            for (const auto& t : detail::merged_grid({&anchor, &b}))
                bps.emplace_back(t, (1 - lam) * anchor(t) + lam * b(t));
            probes.push_back(MonotoneMap::make(std::move(bps)));
        }
    }
    for (std::size_t i = 0; i < B.size(); ++i)
        for (std::size_t j = i + 1; j < B.size(); ++j) probes.push_back(average({B[i], B[j]}));
    return probes;
}

} // namespace mchain
