#pragma once

#include <nlohmann/json.hpp>

#include "mchain/distal_cell.hpp"
#include "mchain/indiscernible.hpp"
#include "mchain/seh.hpp"

namespace mchain {

using Json = nlohmann::ordered_json;

inline Json json_of(const Rational& r) { return to_fraction(r); }

inline Rational rational_from_json(const Json& j) {
    if (!j.is_string()) throw ParseError("rational must be a \"p/q\" string");
    return parse_fraction(j.get<std::string>());
}

inline Json json_of(const MonotoneMap& f) {
    Json bps = Json::array();
    for (const auto& [t, v] : f.breakpoints()) bps.push_back(Json::array({json_of(t), json_of(v)}));
    return Json{{"breakpoints", bps}};
}

inline MonotoneMap monotone_map_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("breakpoints") || !j["breakpoints"].is_array())
        throw ParseError("monotone map must be {\"breakpoints\": [[t, v], ...]}");
    std::vector<MonotoneMap::Breakpoint> bps;
    for (const auto& bp : j["breakpoints"]) {
        if (!bp.is_array() || bp.size() != 2) throw ParseError("breakpoint must be a [t, v] pair");
        bps.emplace_back(rational_from_json(bp[0]), rational_from_json(bp[1]));
    }
    return MonotoneMap::make(std::move(bps));
}

inline Json json_of(const Chain& c) {
    Json verts = Json::array();
    for (const auto& v : c.vertices()) {
        Json pt = Json::array();
        for (const auto& x : v) pt.push_back(json_of(x));
        verts.push_back(std::move(pt));
    }
    return Json{{"dim", c.dimension()}, {"vertices", verts}};
}

inline Chain chain_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("vertices") ||
        !j["dim"].is_number_integer() || !j["vertices"].is_array())
        throw ParseError("chain must be {\"dim\": n, \"vertices\": [[...], ...]}");
    std::vector<Chain::Point> verts;
    for (const auto& pt : j["vertices"]) {
        if (!pt.is_array()) throw ParseError("chain vertex must be an array of rationals");
        Chain::Point p;
        for (const auto& x : pt) p.push_back(rational_from_json(x));
        verts.push_back(std::move(p));
    }
    return Chain::from_vertices(j["dim"].get<int>(), std::move(verts));
}

inline Json json_of(const Sequence& s) {
    Json elems = Json::array();
    for (const auto& e : s.elements) {
        Json tup = Json::array();
        for (const auto& f : e) tup.push_back(json_of(f));
        elems.push_back(std::move(tup));
    }
    return Json{{"arity", s.arity}, {"elements", elems}};
}

inline Sequence sequence_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("arity") || !j.contains("elements") ||
        !j["arity"].is_number_integer() || !j["elements"].is_array())
        throw ParseError("sequence must be {\"arity\": k, \"elements\": [[map, ...], ...]}");
    Sequence s;
    s.arity = j["arity"].get<int>();
    if (s.arity <= 0) throw ParseError("sequence arity must be positive");
    for (const auto& tup : j["elements"]) {
        if (!tup.is_array()) throw ParseError("sequence element must be an array of maps");
        std::vector<MonotoneMap> e;
        for (const auto& f : tup) e.push_back(monotone_map_from_json(f));
        if (static_cast<int>(e.size()) != s.arity)
            throw ArityMismatch("sequence element arity differs from declared arity");
        s.elements.push_back(std::move(e));
    }
    return s;
}

inline Json json_of(const CellCertificate& cert) {
    Json levels = Json::array();
    for (const auto& level : cert.levels) {
        Json entry{{"i", level.i},
                   {"minus", level.minus ? json_of(*level.minus) : Json(nullptr)},
                   {"plus", level.plus ? json_of(*level.plus) : Json(nullptr)}};
        levels.push_back(std::move(entry));
    }
    return Json{{"alpha", json_of(cert.alpha)}, {"n", cert.n}, {"levels", levels}};
}

inline CellCertificate cell_certificate_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("alpha") || !j.contains("n") || !j.contains("levels") ||
        !j["n"].is_number_integer() || !j["levels"].is_array())
        throw ParseError("cell certificate must be {\"alpha\", \"n\", \"levels\"}");
    CellCertificate cert;
    cert.alpha = rational_from_json(j["alpha"]);
    cert.n = j["n"].get<int>();
    for (const auto& entry : j["levels"]) {
        if (!entry.is_object() || !entry.contains("i") || !entry.contains("minus") ||
            !entry.contains("plus"))
            throw ParseError("cell level must be {\"i\", \"minus\", \"plus\"}");
        CellLevel level;
        level.i = entry["i"].get<int>();
        if (!entry["minus"].is_null()) level.minus = monotone_map_from_json(entry["minus"]);
        if (!entry["plus"].is_null()) level.plus = monotone_map_from_json(entry["plus"]);
        cert.levels.push_back(std::move(level));
    }
    return cert;
}

inline Json json_of(const UltrametricSpace& s) {
    Json dist = Json::array();
    for (const auto& row : s.dist()) {
        Json r = Json::array();
        for (const auto& e : row) r.push_back(json_of(e));
        dist.push_back(std::move(r));
    }
    return Json{{"n", s.size()}, {"dist", dist}};
}

inline UltrametricSpace ultrametric_space_from_json(const Json& j, bool validate = true) {
    if (!j.is_object() || !j.contains("n") || !j.contains("dist") || !j["n"].is_number_integer() ||
        !j["dist"].is_array())
        throw ParseError("ultrametric space must be {\"n\": k, \"dist\": [[...], ...]}");
    std::vector<std::vector<Rational>> dist;
    for (const auto& row : j["dist"]) {
        if (!row.is_array()) throw ParseError("distance row must be an array");
        std::vector<Rational> r;
        for (const auto& e : row) r.push_back(rational_from_json(e));
        dist.push_back(std::move(r));
    }
    if (static_cast<int>(dist.size()) != j["n"].get<int>())
        throw ParseError("declared size disagrees with the distance matrix");
    return validate ? UltrametricSpace::validated(std::move(dist))
                    : UltrametricSpace::trusted(std::move(dist));
}

inline Json json_of(const HomogeneityCertificate& cert) {
    Json subsets = Json::array();
    for (const auto& s : cert.subsets) subsets.push_back(s);
    Json claim;
    if (cert.claim.kind == HomogeneityClaim::Kind::threshold)
        claim = Json{{"kind", "threshold"},
                     {"r", json_of(cert.claim.value)},
                     {"side", cert.claim.le ? "le" : "gt"}};
    else
        claim = Json{{"kind", "epsilon"}, {"eps", json_of(cert.claim.value)}};
    Json fractions = Json::array();
    for (const auto& f : cert.fractions) fractions.push_back(json_of(f));
    return Json{{"subsets", subsets}, {"claim", claim}, {"fractions", fractions}};
}

inline HomogeneityCertificate homogeneity_certificate_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("subsets") || !j.contains("claim") || !j.contains("fractions"))
        throw ParseError("certificate must be {\"subsets\", \"claim\", \"fractions\"}");
    HomogeneityCertificate cert;
    for (const auto& s : j["subsets"]) cert.subsets.push_back(s.get<std::vector<int>>());
    const auto& claim = j["claim"];
    if (!claim.is_object() || !claim.contains("kind")) throw ParseError("malformed claim");
    std::string kind = claim["kind"].get<std::string>();
    if (kind == "threshold") {
        std::string side = claim["side"].get<std::string>();
        if (side != "le" && side != "gt") throw ParseError("threshold side must be le or gt");
        cert.claim = {HomogeneityClaim::Kind::threshold, rational_from_json(claim["r"]), side == "le"};
    } else if (kind == "epsilon") {
        cert.claim = {HomogeneityClaim::Kind::epsilon, rational_from_json(claim["eps"]), true};
    } else {
        throw ParseError("claim kind must be threshold or epsilon");
    }
    for (const auto& f : j["fractions"]) cert.fractions.push_back(rational_from_json(f));
    return cert;
}

} // namespace mchain
