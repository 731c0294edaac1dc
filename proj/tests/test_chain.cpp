#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mchain/chain.hpp"
#include "mchain/generators.hpp"

using namespace mchain;

namespace {

MonotoneMap doubling() { // min(2t, 1)
    return make_map({{rat(0), rat(0)}, {rat(1, 2), rat(1)}, {rat(1), rat(1)}});
}

MonotoneMap late_doubling() { // max(0, 2t-1)
    return make_map({{rat(0), rat(0)}, {rat(1, 2), rat(0)}, {rat(1), rat(1)}});
}

Chain diagonal2() { return Chain::from_vertices(2, {{rat(0), rat(0)}, {rat(1), rat(1)}}); }

Chain lower_L() {
    return Chain::from_vertices(2, {{rat(0), rat(0)}, {rat(1), rat(0)}, {rat(1), rat(1)}});
}

} // namespace

TEST_CASE("image_chain examples") {
    CHECK(image_chain({MonotoneMap::identity(), MonotoneMap::identity()}) == diagonal2());
    CHECK(image_chain({doubling(), late_doubling()}) == lower_L());
    auto one = image_chain({MonotoneMap::identity()});
    CHECK(one.dimension() == 1);
    CHECK(one.vertices().size() == 2);
    CHECK_THROWS_AS(image_chain({}), EmptyInput);
}

TEST_CASE("canonicalize merges redundant vertices") {
    auto d = Chain::from_vertices(2, {{rat(0), rat(0)}, {rat(1, 2), rat(1, 2)}, {rat(1), rat(1)}});
    CHECK(d == diagonal2());
    CHECK(d.vertices().size() == 2);
    auto l = Chain::from_vertices(
        2, {{rat(0), rat(0)}, {rat(1, 2), rat(0)}, {rat(1), rat(0)}, {rat(1), rat(1)}});
    CHECK(l == lower_L());
    CHECK(l.vertices().size() == 3);
    CHECK(canonicalize(l) == l);
}

TEST_CASE("chain validation") {
    CHECK_THROWS_AS(Chain::from_vertices(2, {{rat(0), rat(0)}, {rat(1, 2), rat(1, 4)}}), InvalidChain);
    CHECK_THROWS_AS(Chain::from_vertices(
                        2, {{rat(0), rat(0)}, {rat(1, 2), rat(3, 4)}, {rat(3, 4), rat(1, 2)}, {rat(1), rat(1)}}),
                    InvalidChain);
}

TEST_CASE("type_eq") {
    CHECK(type_eq(diagonal2(), diagonal2()));
    CHECK_FALSE(type_eq(diagonal2(), lower_L()));
    Rng rng(7);
    auto f = random_monotone_map(rng, 3, 8);
    auto g = random_monotone_map(rng, 3, 8);
    CHECK(type_eq(image_chain({f, g}), canonicalize(image_chain({f, g}))));
    CHECK_THROWS_AS(type_eq(diagonal2(), image_chain({MonotoneMap::identity()})), DimensionMismatch);
}

TEST_CASE("phi_alpha examples") {
    for (long long k = 0; k <= 8; ++k) {
        Rational a = rat(k, 8);
        CHECK(phi_alpha(MonotoneMap::identity(), MonotoneMap::identity(), a) == a / 2);
    }
    CHECK(phi_alpha(doubling(), late_doubling(), rat(1)) == rat(1));
    CHECK(phi_alpha(late_doubling(), doubling(), rat(1)) == rat(0));
    CHECK(phi_alpha(doubling(), late_doubling(), rat(1, 2)) == rat(1, 2));
    CHECK_THROWS_AS(phi_alpha(doubling(), late_doubling(), rat(3, 2)), OutOfRange);
    CHECK_THROWS_AS(phi_alpha(doubling(), late_doubling(), rat(-1, 2)), OutOfRange);
}

TEST_CASE("phi_alpha axiom schema on random pairs") {
    Rng rng(0x51EC);
    for (int trial = 0; trial < 200; ++trial) {
        auto f = random_monotone_map(rng, 4, 12);
        auto g = random_monotone_map(rng, 4, 12);
        Rational a = rat(static_cast<long long>(rng.uniform(13)), 12);
        Rational b = rat(static_cast<long long>(rng.uniform(13)), 12);
        if (a > b) std::swap(a, b);
        CHECK(phi_alpha(f, g, a) + phi_alpha(g, f, a) == a);
        CHECK(phi_alpha(f, g, a) <= phi_alpha(f, g, b));
    }
}

TEST_CASE("phi_alpha is 1-Lipschitz in each argument") {
    Rng rng(0x11F5);
    for (int trial = 0; trial < 100; ++trial) {
        auto f = random_monotone_map(rng, 4, 10);
        auto g = random_monotone_map(rng, 4, 10);
        auto f2 = random_monotone_map(rng, 4, 10);
        auto g2 = random_monotone_map(rng, 4, 10);
        Rational a = rat(static_cast<long long>(rng.uniform(11)), 10);
        Rational lhs = abs(phi_alpha(f, g, a) - phi_alpha(f2, g2, a));
        Rational rhs = std::max(sup_distance(f, f2), sup_distance(g, g2));
        CHECK(lhs <= rhs);
    }
}

TEST_CASE("chain_to_tuple examples and round trip") {
    auto d = chain_to_tuple(diagonal2());
    CHECK(d.size() == 2);
    CHECK(d[0] == MonotoneMap::identity());
    CHECK(d[1] == MonotoneMap::identity());
    auto l = chain_to_tuple(lower_L());
    CHECK(l[0] == doubling());
    CHECK(l[1] == late_doubling());
    Rng rng(0xABCD);
    for (int trial = 0; trial < 100; ++trial) {
        auto c = random_chain(rng, 1 + static_cast<int>(rng.uniform(3)), 4, 10);
        CHECK(image_chain(chain_to_tuple(c)) == c);
        // average parametrization: the mean of the realization is the identity
        CHECK(average(chain_to_tuple(c)) == MonotoneMap::identity());
    }
}

TEST_CASE("helly_member examples") {
    std::map<std::pair<int, int>, Chain> pw;
    pw[{0, 1}] = diagonal2();
    pw[{0, 2}] = diagonal2();
    pw[{1, 2}] = diagonal2();
    CHECK(helly_member({rat(1, 2), rat(1, 2), rat(1, 2)}, pw));
    std::map<std::pair<int, int>, Chain> pw2;
    pw2[{0, 1}] = lower_L();
    CHECK_FALSE(helly_member({rat(1, 2), rat(1, 2)}, pw2));
    std::map<std::pair<int, int>, Chain> missing;
    missing[{0, 1}] = diagonal2();
    CHECK_THROWS_AS(helly_member({rat(0), rat(0), rat(0)}, missing), MissingPair);
}

TEST_CASE("helly_member agrees with direct joint membership") {
    Rng rng(0x4E11);
    for (int trial = 0; trial < 50; ++trial) {
        auto fs = random_tuple(rng, 3, 3, 8);
        auto joint = image_chain(fs);
        std::map<std::pair<int, int>, Chain> pw;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) pw[{i, j}] = image_chain({fs[i], fs[j]});
        // every joint vertex passes, and grid probes agree both ways
        for (const auto& v : joint.vertices()) CHECK(helly_member(v, pw));
        for (int probe = 0; probe < 20; ++probe) {
            std::vector<Rational> p;
            for (int i = 0; i < 3; ++i) p.push_back(rat(static_cast<long long>(rng.uniform(9)), 8));
            CHECK(helly_member(p, pw) == joint.contains(p));
        }
    }
}

TEST_CASE("pair_type_compose examples") {
    auto diag_n = image_chain({MonotoneMap::identity(), MonotoneMap::identity()});
    auto diag4 = pair_type_compose(diag_n, diag_n, diagonal2());
    CHECK(diag4 == image_chain({MonotoneMap::identity(), MonotoneMap::identity(), MonotoneMap::identity(),
                                MonotoneMap::identity()}));
    auto ll = lower_L();
    auto composed = pair_type_compose(ll, ll, diagonal2());
    CHECK(composed == image_chain({doubling(), late_doubling(), doubling(), late_doubling()}));
}

TEST_CASE("pair_type_compose round trip on random tuples") {
    Rng rng(0xC0DE);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + static_cast<int>(rng.uniform(2));
        auto fs = random_tuple(rng, n, 3, 8);
        auto gs = random_tuple(rng, n, 3, 8);
        auto avg_pair = image_chain({average(fs), average(gs)});
        auto joint = fs;
        joint.insert(joint.end(), gs.begin(), gs.end());
        CHECK(pair_type_compose(image_chain(fs), image_chain(gs), avg_pair) == image_chain(joint));
    }
}

TEST_CASE("pair types determine joint types") {
    Rng rng(0x2211);
    for (int trial = 0; trial < 30; ++trial) {
        auto fs = random_tuple(rng, 3, 3, 6);
        auto gs = random_tuple(rng, 3, 3, 6);
        bool pairs_equal = true;
        for (int i = 0; i < 3 && pairs_equal; ++i)
            for (int j = i + 1; j < 3 && pairs_equal; ++j)
                pairs_equal = type_eq(image_chain({fs[i], fs[j]}), image_chain({gs[i], gs[j]}));
        if (pairs_equal) CHECK(type_eq(image_chain(fs), image_chain(gs)));
        // same tuple reparametrized always yields equal pairs and equal joint
        auto r = random_monotone_map(rng, 3, 6);
        std::vector<MonotoneMap> hs;
        for (const auto& f : fs) hs.push_back(compose(f, r));
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                CHECK(type_eq(image_chain({fs[i], fs[j]}), image_chain({hs[i], hs[j]})));
        CHECK(type_eq(image_chain(fs), image_chain(hs)));
    }
}

TEST_CASE("convexity of realizations over a common base") {
    Rng rng(0xC04F);
    int interesting = 0;
    for (int trial = 0; trial < 60; ++trial) {
        // base map with plateaus: coarse value grid
        auto a = random_monotone_map(rng, 5, 4);
        auto f = random_monotone_map(rng, 4, 12);
        // perturb f inside plateau intervals of a, preserving im(f, a)
        std::vector<MonotoneMap::Breakpoint> gb;
        const auto& abp = a.breakpoints();
        gb.emplace_back(rat(0), rat(0));
        for (std::size_t s = 0; s + 1 < abp.size(); ++s) {
            const auto& [t0, v0] = abp[s];
            const auto& [t1, v1] = abp[s + 1];
            if (v0 == v1 && f(t0) < f(t1)) {
                // plateau of a: reroute f through a random interior point
                Rational tm = t0 + (t1 - t0) / 2;
                Rational vm = f(t0) + (f(t1) - f(t0)) * rat(1 + static_cast<long long>(rng.uniform(3)), 4);
                if (tm > gb.back().first) gb.emplace_back(tm, vm);
                ++interesting;
            } else {
                for (const auto& bp : f.breakpoints())
                    if (bp.first > t0 && bp.first <= t1 && bp.first > gb.back().first)
                        gb.push_back(bp);
            }
            if (t1 > gb.back().first) gb.emplace_back(t1, f(t1));
        }
        if (gb.back().first != 1) gb.emplace_back(rat(1), rat(1));
        auto g = MonotoneMap::make(gb);
        REQUIRE(type_eq(image_chain({f, a}), image_chain({g, a})));
        for (long long num : {1, 2, 3}) {
            Rational lam = rat(num, 4);
            // (1-lam) f + lam g via the average of a weighted multiset
            std::vector<MonotoneMap::Breakpoint> mix;
            std::vector<const MonotoneMap*> ptrs{&f, &g};
            for (const auto& t : detail::merged_grid(ptrs))
                mix.emplace_back(t, (1 - lam) * f(t) + lam * g(t));
            auto fg = MonotoneMap::make(mix);
            CHECK(type_eq(image_chain({fg, a}), image_chain({f, a})));
        }
    }
    CHECK(interesting > 0); // the generator must actually exercise plateaus
}
