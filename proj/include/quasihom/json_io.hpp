#pragma once

#include "quasihom/approx.hpp"
#include "quasihom/certify.hpp"
#include "quasihom/generators.hpp"
#include "quasihom/group.hpp"
#include "quasihom/interval_map.hpp"
#include "quasihom/modmap.hpp"
#include "quasihom/rat.hpp"
#include "quasihom/sparse_vec.hpp"
#include "quasihom/windowed_map.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace quasihom::io {

using Json = nlohmann::ordered_json;

// Rationals travel as "num/den" strings so no JSON number ever rounds them.

inline Json to_json(const Rat& r) { return r.str(); }

inline Rat rat_from_json(const Json& j) {
    if (!j.is_string())
        throw std::invalid_argument("expected a rational as a \"num/den\" string");
    return Rat::parse(j.get<std::string>());
}

// ---------------------------------------------------------------------------
// Maps.
// ---------------------------------------------------------------------------

inline Json to_json(const SparseVec& v) {
    Json entries = Json::object();
    for (const auto& [i, value] : v.entries())
        entries[std::to_string(i)] = value.str();
    return entries;
}

inline SparseVec sparse_vec_from_json(std::int64_t dim, const Json& j) {
    if (!j.is_object())
        throw std::invalid_argument("expected an object of coordinate -> rational");
    std::vector<std::pair<std::int64_t, Rat>> entries;
    for (const auto& [key, value] : j.items())
        entries.emplace_back(std::stoll(key), rat_from_json(value));
    return SparseVec(dim, std::move(entries));
}

inline Json to_json(const WindowedMap& f) {
    Json j;
    j["type"] = "windowed_map";
    j["lo"] = f.lo();
    j["hi"] = f.hi();
    j["dim"] = f.dim();
    Json values = Json::object();
    for (std::int64_t x = f.lo(); x <= f.hi(); ++x)
        values[std::to_string(x)] = to_json(f.at(x));
    j["values"] = std::move(values);
    return j;
}

inline WindowedMap windowed_map_from_json(const Json& j) {
    const std::int64_t lo = j.at("lo").get<std::int64_t>();
    const std::int64_t hi = j.at("hi").get<std::int64_t>();
    const std::int64_t dim = j.at("dim").get<std::int64_t>();
    const Json& values = j.at("values");
    return WindowedMap::build(lo, hi, dim, [&](std::int64_t x) {
        const auto key = std::to_string(x);
        if (!values.contains(key))
            throw std::invalid_argument("windowed_map: missing value at x = " + key);
        return sparse_vec_from_json(dim, values.at(key));
    });
}

inline Json to_json(const ScalarIntervalMap& f) {
    Json j;
    j["type"] = "interval_map";
    j["a"] = f.a();
    Json values = Json::object();
    for (std::int64_t x = 1; x <= 2 * f.a(); ++x)
        values[std::to_string(x)] = f.at(x).str();
    j["values"] = std::move(values);
    return j;
}

inline ScalarIntervalMap interval_map_from_json(const Json& j) {
    const std::int64_t a = j.at("a").get<std::int64_t>();
    const Json& values = j.at("values");
    return ScalarIntervalMap::build(a, [&](std::int64_t x) {
        const auto key = std::to_string(x);
        if (!values.contains(key))
            throw std::invalid_argument("interval_map: missing value at x = " + key);
        return rat_from_json(values.at(key));
    });
}

inline Json to_json(const FiniteGroupMap& g) {
    Json j;
    j["type"] = "group_map";
    j["moduli"] = g.group().moduli();
    Json values = Json::object();
    for (std::uint64_t b = 0; b < g.order(); ++b)
        values[g.group().element_name(b)] = g.at(b).str();
    j["values"] = std::move(values);
    return j;
}

inline FiniteGroupMap group_map_from_json(const Json& j) {
    const auto moduli = j.at("moduli").get<std::vector<std::int64_t>>();
    FiniteGroup group(moduli);
    const Json& values = j.at("values");
    return FiniteGroupMap::build(group, [&](std::uint64_t b) {
        const auto key = group.element_name(b);
        if (!values.contains(key))
            throw std::invalid_argument("group_map: missing value at element " + key);
        return rat_from_json(values.at(key));
    });
}

inline Json to_json(const ModWindowedMap& f) {
    Json j;
    j["type"] = "mod_windowed_map";
    j["p"] = f.p();
    j["lo"] = f.lo();
    j["hi"] = f.hi();
    j["dim"] = f.dim();
    Json values = Json::object();
    for (std::int64_t x = f.lo(); x <= f.hi(); ++x)
        values[std::to_string(x)] = f.at(x);
    j["values"] = std::move(values);
    return j;
}

inline ModWindowedMap mod_windowed_map_from_json(const Json& j) {
    const std::int64_t p = j.at("p").get<std::int64_t>();
    const std::int64_t lo = j.at("lo").get<std::int64_t>();
    const std::int64_t hi = j.at("hi").get<std::int64_t>();
    const std::int64_t dim = j.at("dim").get<std::int64_t>();
    const Json& values = j.at("values");
    return ModWindowedMap::build(p, lo, hi, dim, [&](std::int64_t x) {
        const auto key = std::to_string(x);
        if (!values.contains(key))
            throw std::invalid_argument("mod_windowed_map: missing value at x = " + key);
        return values.at(key).get<std::vector<std::int64_t>>();
    });
}

using AnyMap = std::variant<WindowedMap, ScalarIntervalMap, FiniteGroupMap, ModWindowedMap>;

inline AnyMap map_from_json(const Json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "windowed_map")
        return windowed_map_from_json(j);
    if (type == "interval_map")
        return interval_map_from_json(j);
    if (type == "group_map")
        return group_map_from_json(j);
    if (type == "mod_windowed_map")
        return mod_windowed_map_from_json(j);
    throw std::invalid_argument("unknown map type '" + type + "'");
}

// ---------------------------------------------------------------------------
// Generator specs.
// ---------------------------------------------------------------------------

inline Json to_json(const generators::GeneratorSpec& spec) {
    Json j;
    j["kind"] = generators::kind_name(spec.kind);
    switch (spec.kind) {
        case generators::Kind::kCenteredOdd:
        case generators::Kind::kCenteredEven:
            j["k"] = spec.k;
            break;
        case generators::Kind::kExample16: {
            j["n"] = spec.n;
            j["lo"] = spec.lo;
            j["hi"] = spec.hi;
            Json alpha = Json::object();
            for (const auto& [x, v] : spec.alpha)
                alpha[std::to_string(x)] = v.str();
            j["alpha"] = std::move(alpha);
            j["alpha_default"] = spec.alpha_default.str();
            break;
        }
        case generators::Kind::kFloorSlopes: {
            j["n"] = spec.n;
            j["c"] = spec.c;
            j["lo"] = spec.lo;
            j["hi"] = spec.hi;
            Json exact = Json::array(), floors = Json::array();
            for (const auto& r : spec.exact_slopes)
                exact.push_back(r.str());
            for (const auto& r : spec.floor_slopes)
                floors.push_back(r.str());
            j["exact_slopes"] = std::move(exact);
            j["floor_slopes"] = std::move(floors);
            break;
        }
        case generators::Kind::kBoundedSupport: {
            j["n"] = spec.n;
            j["c"] = spec.c;
            j["lo"] = spec.lo;
            j["hi"] = spec.hi;
            j["seed"] = spec.seed;
            Json slopes = Json::array();
            for (const auto& r : spec.exact_slopes)
                slopes.push_back(r.str());
            j["exact_slopes"] = std::move(slopes);
            j["support"] = spec.support;
            break;
        }
        case generators::Kind::kMixed:
            j["n"] = spec.n;
            j["c"] = spec.c;
            j["lo"] = spec.lo;
            j["hi"] = spec.hi;
            j["seed"] = spec.seed;
            break;
    }
    return j;
}

inline generators::GeneratorSpec generator_spec_from_json(const Json& j) {
    generators::GeneratorSpec spec;
    spec.kind = generators::kind_from_name(j.at("kind").get<std::string>());
    if (j.contains("k"))
        spec.k = j.at("k").get<std::int64_t>();
    if (j.contains("n"))
        spec.n = j.at("n").get<std::int64_t>();
    if (j.contains("c"))
        spec.c = j.at("c").get<std::int64_t>();
    if (j.contains("lo"))
        spec.lo = j.at("lo").get<std::int64_t>();
    if (j.contains("hi"))
        spec.hi = j.at("hi").get<std::int64_t>();
    if (j.contains("seed"))
        spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("exact_slopes"))
        for (const auto& r : j.at("exact_slopes"))
            spec.exact_slopes.push_back(rat_from_json(r));
    if (j.contains("floor_slopes"))
        for (const auto& r : j.at("floor_slopes"))
            spec.floor_slopes.push_back(rat_from_json(r));
    if (j.contains("support"))
        spec.support = j.at("support").get<std::vector<std::int64_t>>();
    if (j.contains("alpha"))
        for (const auto& [key, value] : j.at("alpha").items())
            spec.alpha[std::stoll(key)] = rat_from_json(value);
    if (j.contains("alpha_default"))
        spec.alpha_default = rat_from_json(j.at("alpha_default"));
    return spec;
}

// ---------------------------------------------------------------------------
// Results.
// ---------------------------------------------------------------------------

inline Json to_json(const certify::Certificate& cert) {
    Json j;
    j["claim_id"] = cert.claim_id;
    j["holds"] = cert.holds;
    j["vacuous"] = cert.vacuous;
    j["lhs"] = cert.lhs.str();
    j["rhs"] = cert.rhs.str();
    Json params = Json::object();
    for (const auto& [name, value] : cert.params)
        params[name] = value.str();
    j["params"] = std::move(params);
    Json witnesses = Json::array();
    for (const auto& [a, b] : cert.witnesses)
        witnesses.push_back(Json::array({a, b}));
    j["witnesses"] = std::move(witnesses);
    j["witnesses_truncated"] = cert.witnesses_truncated;
    return j;
}

inline Json to_json(const approx::ApproxResult& result) {
    Json j;
    j["method"] = approx::method_name(result.method);
    j["optimal"] = result.optimal;
    j["quality"] = result.quality;
    j["dim"] = result.slope.dim();
    j["slope"] = to_json(result.slope);
    return j;
}

inline Json to_json(const DefectReport& report) {
    Json j;
    j["max_defect"] = report.max_defect;
    j["pairs_scanned"] = report.pairs_scanned;
    j["witness_count"] = report.witness_count;
    Json witnesses = Json::array();
    for (const auto& [x, y] : report.witnesses)
        witnesses.push_back(Json::array({x, y}));
    j["witnesses"] = std::move(witnesses);
    return j;
}

}  // namespace quasihom::io
