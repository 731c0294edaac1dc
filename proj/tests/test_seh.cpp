#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mchain/generators.hpp"
#include "mchain/seh.hpp"
#include "mchain/valuation.hpp"

using namespace mchain;

namespace {

std::vector<int> iota_set(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

UltrametricSpace two_adic_four() {
    return padic_space({Integer(0), Integer(1), Integer(2), Integer(3)}, 2);
}

UltrametricSpace uniform_space(int n) {
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(1)));
    for (int i = 0; i < n; ++i) d[i][i] = 0;
    return UltrametricSpace::validated(std::move(d));
}

ThresholdCutter partition_cutter(const UltrametricSpace& space) {
    return [&space](const Rational& r, const std::vector<std::vector<int>>& sets) {
        return ultrametric_partition(space, sets[0], sets[1], r);
    };
}

} // namespace

TEST_CASE("ultrametric_partition on the 2-adic four-point space") {
    auto space = two_adic_four();
    CHECK(space.d(0, 2) == rat(1, 2));
    CHECK(space.d(1, 3) == rat(1, 2));
    CHECK(space.d(0, 1) == rat(1));
    auto cert = ultrametric_partition(space, iota_set(4), iota_set(4), rat(1, 2));
    CHECK(cert.subsets[0] == std::vector<int>{0, 2});
    CHECK(cert.subsets[1] == std::vector<int>{0, 2});
    CHECK(cert.claim.kind == HomogeneityClaim::Kind::threshold);
    CHECK(cert.claim.le);
    CHECK(cert.fractions == std::vector<Rational>{rat(1, 2), rat(1, 2)});
}

TEST_CASE("ultrametric_partition trivial and uniform cases") {
    auto space = two_adic_four();
    auto all = ultrametric_partition(space, iota_set(4), iota_set(4), rat(1));
    CHECK(all.subsets[0] == iota_set(4));
    CHECK(all.subsets[1] == iota_set(4));
    CHECK(all.claim.le);

    auto uni = uniform_space(4);
    auto far = ultrametric_partition(uni, iota_set(4), iota_set(4), rat(0));
    CHECK_FALSE(far.claim.le);
    CHECK(far.fractions[0] >= rat(1, 3));
    CHECK(far.fractions[1] >= rat(1, 3));
    for (int a : far.subsets[0])
        for (int b : far.subsets[1]) CHECK(uni.d(a, b) > 0);

    CHECK_THROWS_AS(ultrametric_partition(space, {}, iota_set(4), rat(1, 2)), EmptyInput);
}

TEST_CASE("partition invariants on random instances") {
    Rng rng(0x5E41);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 5 + static_cast<int>(rng.uniform(196));
        auto space = UltrametricSpace::trusted(random_hierarchical_distances(rng, n));
        std::vector<int> A, B;
        for (int i = 0; i < n; ++i) {
            if (rng.coin()) A.push_back(i);
            if (rng.coin()) B.push_back(i);
        }
        if (A.empty()) A.push_back(static_cast<int>(rng.uniform(n)));
        if (B.empty()) B.push_back(static_cast<int>(rng.uniform(n)));
        long long num = static_cast<long long>(rng.uniform(9));
        Rational r = rat(num, 8);
        auto cert = ultrametric_partition(space, A, B, r);
        CHECK(cert.fractions[0] >= rat(1, 3));
        CHECK(cert.fractions[1] >= rat(1, 3));
        CHECK(cert.verify(distance_table(space)));
    }
}

TEST_CASE("brute-force oracle confirms the 1/3 constant on small instances") {
    Rng rng(0x0AC1);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 3 + static_cast<int>(rng.uniform(5));
        auto space = UltrametricSpace::trusted(random_hierarchical_distances(rng, n));
        auto A = iota_set(n);
        Rational r = rat(static_cast<long long>(rng.uniform(5)), 4);
        auto cert = ultrametric_partition(space, A, A, r);

        // exhaustive search over all nonempty subset pairs
        bool exists = false;
        for (unsigned ma = 1; ma < (1u << n) && !exists; ++ma)
            for (unsigned mb = 1; mb < (1u << n) && !exists; ++mb) {
                int ca = __builtin_popcount(ma), cb = __builtin_popcount(mb);
                if (3 * ca < n || 3 * cb < n) continue;
                bool all_le = true, all_gt = true;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) {
                        if (!(ma >> a & 1) || !(mb >> b & 1)) continue;
                        if (space.d(a, b) <= r) all_gt = false;
                        else all_le = false;
                    }
                if (all_le || all_gt) exists = true;
            }
        CHECK(exists);
        CHECK(cert.verify(distance_table(space)));
    }
}

TEST_CASE("non-ultrametric input is diagnosed") {
    std::vector<std::vector<Rational>> bad{{rat(0), rat(1, 4), rat(1)},
                                           {rat(1, 4), rat(0), rat(1, 4)},
                                           {rat(1), rat(1, 4), rat(0)}};
    CHECK_THROWS_AS(UltrametricSpace::validated(bad), NotUltrametric);
    auto space = UltrametricSpace::trusted(bad); // shape passes, triples unchecked
    CHECK_THROWS_AS(ultrametric_partition(space, {0, 1, 2}, {0, 1, 2}, rat(1, 4)), NotUltrametric);
}

TEST_CASE("refine_to_eps") {
    auto space = two_adic_four();
    auto table = distance_table(space);
    auto cutter = partition_cutter(space);
    std::vector<std::vector<int>> sets{iota_set(4), iota_set(4)};

    auto vac = refine_to_eps(cutter, rat(1, 3), table, rat(1), sets);
    CHECK(vac.subsets == sets);
    CHECK(vac.fractions == std::vector<Rational>{rat(1), rat(1)});

    auto half = refine_to_eps(cutter, rat(1, 3), table, rat(1, 2), sets);
    CHECK(half.fractions[0] >= rat(1, 3));
    CHECK(half.fractions[1] >= rat(1, 3));
    CHECK(half.verify(table));

    auto quarter = refine_to_eps(cutter, rat(1, 3), table, rat(1, 4), sets);
    CHECK(quarter.fractions[0] >= rat(1, 9));
    CHECK(quarter.fractions[1] >= rat(1, 9));
    CHECK(quarter.verify(table));

    ThresholdCutter lying = [&](const Rational& r, const std::vector<std::vector<int>>& cur) {
        HomogeneityCertificate c;
        c.subsets = cur;
        c.claim = {HomogeneityClaim::Kind::threshold, r, true}; // claims <= r without shrinking
        return c;
    };
    CHECK_THROWS_AS(refine_to_eps(lying, rat(1, 3), table, rat(1, 2), sets),
                    CutterContractViolation);
}

TEST_CASE("combine_continuous") {
    auto s1 = two_adic_four();
    auto s2 = padic_space({Integer(0), Integer(3), Integer(6), Integer(10)}, 3);
    auto t1 = distance_table(s1);
    auto t2 = distance_table(s2);
    std::vector<std::vector<int>> sets{iota_set(4), iota_set(4)};
    auto id_modulus = [](const Rational& e) { return e; };

    EpsFinder f1 = [&](const Rational& e, const std::vector<std::vector<int>>& cur) {
        return refine_to_eps(partition_cutter(s1), rat(1, 3), t1, e, cur);
    };
    EpsFinder f2 = [&](const Rational& e, const std::vector<std::vector<int>>& cur) {
        return refine_to_eps(partition_cutter(s2), rat(1, 3), t2, e, cur);
    };

    // k = 1, u = identity: combining is the finder itself
    auto single = combine_continuous({f1}, id_modulus, t1, rat(1, 2), sets);
    auto direct = f1(rat(1, 2), sets);
    CHECK(single.subsets == direct.subsets);

    PredicateTable max_table{2, [&](const std::vector<int>& t) {
                                 return std::max(s1.d(t[0], t[1]), s2.d(t[0], t[1]));
                             }};
    auto mx = combine_continuous({f1, f2}, id_modulus, max_table, rat(1, 2), sets);
    CHECK(mx.fractions[0] >= rat(1, 9));
    CHECK(mx.fractions[1] >= rat(1, 9));
    CHECK(mx.verify(max_table));

    PredicateTable avg_table{2, [&](const std::vector<int>& t) {
                                 return Rational((s1.d(t[0], t[1]) + s2.d(t[0], t[1])) / 2);
                             }};
    auto av = combine_continuous({f1, f2}, id_modulus, avg_table, rat(1, 2), sets);
    CHECK(av.verify(avg_table));

    EpsFinder broken = [&](const Rational&, const std::vector<std::vector<int>>&) {
        HomogeneityCertificate c;
        c.subsets = {{0}, {7}}; // 7 is not in the ambient sets
        c.claim = {HomogeneityClaim::Kind::epsilon, rat(1), true};
        return c;
    };
    CHECK_THROWS_AS(combine_continuous({broken}, id_modulus, t1, rat(1, 2), sets),
                    FinderContractViolation);
}

TEST_CASE("uniform_limit_finder") {
    auto space = two_adic_four();
    auto table = distance_table(space);
    std::vector<std::vector<int>> sets{iota_set(4), iota_set(4)};

    auto approx = [&](std::size_t N, const Rational& e, const std::vector<std::vector<int>>& cur) {
        // phi_N = min(1, d + 1/(N+1)); its eps-finder reuses the partition
        PredicateTable tN{2, [&, N](const std::vector<int>& t) {
                              return std::min(Rational(1),
                                              Rational(space.d(t[0], t[1]) +
                                                       Rational(1, static_cast<long long>(N + 1))));
                          }};
        ThresholdCutter cut = [&, N](const Rational& r, const std::vector<std::vector<int>>& s) {
            // thresholding phi_N at r is thresholding d at a shifted level
            auto c = ultrametric_partition(
                space, s[0], s[1], std::max(Rational(0), Rational(r - Rational(1, static_cast<long long>(N + 1)))));
            c.claim.value = r;
            return c;
        };
        return refine_to_eps(cut, rat(1, 3), tN, e, cur);
    };

    std::vector<Rational> schedule;
    for (long long k = 1; k <= 12; ++k) schedule.push_back(rat(1, k));
    auto cert = uniform_limit_finder(approx, schedule, table, rat(1, 2), sets);
    CHECK(cert.verify(table));
    CHECK(cert.claim.value == rat(1, 2));

    std::vector<Rational> never{rat(1), rat(1, 2), rat(1, 3)};
    CHECK_THROWS_AS(uniform_limit_finder(approx, never, table, rat(1, 2), sets), NoSuchN);
}
