#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mchain/generators.hpp"
#include "mchain/json_io.hpp"

using namespace mchain;

TEST_CASE("rational wire format is strict") {
    CHECK(rational_from_json(Json("1/2")) == rat(1, 2));
    CHECK(rational_from_json(Json("-3/4")) == rat(-3, 4));
    CHECK(json_of(rat(2, 4)) == Json("1/2"));
    CHECK_THROWS_AS(rational_from_json(Json("3")), ParseError);     // no slash
    CHECK_THROWS_AS(rational_from_json(Json("2/4")), ParseError);   // not lowest terms
    CHECK_THROWS_AS(rational_from_json(Json("1/-2")), ParseError);  // negative denominator
    CHECK_THROWS_AS(rational_from_json(Json("01/2")), ParseError);  // leading zero
    CHECK_THROWS_AS(rational_from_json(Json(" 1/2")), ParseError);
    CHECK_THROWS_AS(rational_from_json(Json(5)), ParseError);
}

TEST_CASE("monotone map round trip") {
    Rng rng(0x10AD);
    for (int trial = 0; trial < 50; ++trial) {
        auto f = random_monotone_map(rng, 5, 16);
        CHECK(monotone_map_from_json(json_of(f)) == f);
    }
    auto j = json_of(MonotoneMap::identity());
    CHECK(j.dump() == R"({"breakpoints":[["0/1","0/1"],["1/1","1/1"]]})");
    CHECK_THROWS_AS(monotone_map_from_json(Json::object()), ParseError);
}

TEST_CASE("chain round trip") {
    Rng rng(0xC4A1);
    for (int trial = 0; trial < 50; ++trial) {
        auto c = random_chain(rng, 1 + static_cast<int>(rng.uniform(3)), 4, 12);
        CHECK(chain_from_json(json_of(c)) == c);
    }
    CHECK_THROWS_AS(chain_from_json(Json{{"dim", 2}}), ParseError);
}

TEST_CASE("sequence round trip") {
    Rng rng(0x5EC1);
    Sequence s;
    s.arity = 2;
    for (int i = 0; i < 3; ++i) s.elements.push_back(random_tuple(rng, 2, 3, 8));
    auto s2 = sequence_from_json(json_of(s));
    CHECK(s2.arity == s.arity);
    CHECK(s2.elements == s.elements);
    Json bad = json_of(s);
    bad["elements"][0] = Json::array({json_of(MonotoneMap::identity())}); // wrong arity
    CHECK_THROWS_AS(sequence_from_json(bad), ArityMismatch);
}

TEST_CASE("cell certificate round trip") {
    Rng rng(0xCE11);
    auto anchor = random_monotone_map(rng, 4, 10);
    auto B = random_tuple(rng, 5, 4, 10);
    auto cert = build_cell(rat(1, 2), 8, anchor, B);
    auto cert2 = cell_certificate_from_json(json_of(cert));
    CHECK(cert2.alpha == cert.alpha);
    CHECK(cert2.n == cert.n);
    REQUIRE(cert2.levels.size() == cert.levels.size());
    for (std::size_t i = 0; i < cert.levels.size(); ++i) {
        CHECK(cert2.levels[i].i == cert.levels[i].i);
        CHECK(cert2.levels[i].minus == cert.levels[i].minus);
        CHECK(cert2.levels[i].plus == cert.levels[i].plus);
    }
}

TEST_CASE("ultrametric space and homogeneity certificate round trip") {
    Rng rng(0x077A);
    auto space = UltrametricSpace::trusted(random_hierarchical_distances(rng, 12));
    auto space2 = ultrametric_space_from_json(json_of(space));
    CHECK(space2.dist() == space.dist());

    std::vector<int> all(12);
    for (int i = 0; i < 12; ++i) all[i] = i;
    auto cert = ultrametric_partition(space, all, all, rat(1, 2));
    auto j = json_of(cert);
    CHECK(j["claim"]["kind"] == "threshold");
    auto cert2 = homogeneity_certificate_from_json(j);
    CHECK(cert2.subsets == cert.subsets);
    CHECK(cert2.fractions == cert.fractions);
    CHECK(cert2.claim.kind == cert.claim.kind);
    CHECK(cert2.claim.value == cert.claim.value);
    CHECK(cert2.claim.le == cert.claim.le);
    CHECK(cert2.verify(distance_table(space)));

    Json badspace{{"n", 3}, {"dist", Json::array()}};
    CHECK_THROWS_AS(ultrametric_space_from_json(badspace), ParseError);
}
