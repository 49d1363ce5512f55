#pragma once

#include <json.hpp>

#include "dunkl/group.hpp"

namespace dunkl {

// Deterministic JSON shapes for the core types. Numerators/denominators are
// serialized as decimal strings so arbitrary-precision values survive the
// round trip.
using Json = nlohmann::ordered_json;

inline Json rat_to_json(const Rat& r) {
    Json out = Json::array();
    out.push_back(boost::multiprecision::numerator(r).str());
    out.push_back(boost::multiprecision::denominator(r).str());
    return out;
}

inline Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_array() && j.size() == 2) {
        Int num(j[0].get<std::string>());
        Int den(j[1].get<std::string>());
        if (den == 0) throw division_by_zero();
        return Rat(num, den);
    }
    throw parse_error("bad rational value in JSON");
}

// {"N": conductor, "c": [[j, num, den], ...]} with only nonzero
// coefficients, ascending power index.
inline Json cyc_to_json(const Cyc& a) {
    Json out;
    out["N"] = a.context()->conductor();
    Json coeffs = Json::array();
    const auto& c = a.coeffs();
    for (size_t j = 0; j < c.size(); ++j) {
        if (c[j] == 0) continue;
        Json entry = Json::array();
        entry.push_back(j);
        entry.push_back(boost::multiprecision::numerator(c[j]).str());
        entry.push_back(boost::multiprecision::denominator(c[j]).str());
        coeffs.push_back(std::move(entry));
    }
    out["c"] = std::move(coeffs);
    return out;
}

inline Cyc cyc_from_json(const CycCtxPtr& ctx, const Json& j) {
    if (!j.is_object() || !j.contains("N") || !j.contains("c"))
        throw parse_error("bad cyclotomic value in JSON");
    if (j["N"].get<int>() != ctx->conductor()) throw conductor_mismatch();
    Cyc out = Cyc::zero(ctx);
    int prev = -1;
    for (const auto& entry : j["c"]) {
        if (!entry.is_array() || entry.size() != 3)
            throw parse_error("bad cyclotomic coefficient entry");
        int power = entry[0].get<int>();
        if (power <= prev || power >= ctx->degree())
            throw parse_error("cyclotomic coefficients must be ascending and reduced");
        prev = power;
        Int num(entry[1].get<std::string>());
        Int den(entry[2].get<std::string>());
        if (den <= 0 || num == 0 || boost::multiprecision::gcd(num, den) != 1)
            throw parse_error("cyclotomic coefficient is not in canonical form");
        out += Cyc::from_rat(ctx, Rat(num, den)) * Cyc::zeta(ctx, power);
    }
    return out;
}

inline Json mat_to_json(const Mat& m) {
    Json out = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& c : row) r.push_back(cyc_to_json(c));
        out.push_back(std::move(r));
    }
    return out;
}

inline Mat mat_from_json(const CycCtxPtr& ctx, const Json& j) {
    Mat out;
    for (const auto& row : j) {
        Vec r;
        for (const auto& c : row) r.push_back(cyc_from_json(ctx, c));
        out.push_back(std::move(r));
    }
    return out;
}

inline Json poly_to_json(const MPoly& f) {
    Json terms = Json::array();
    for (const auto& [e, c] : f.terms()) {
        Json t;
        t["e"] = e;
        t["c"] = cyc_to_json(c);
        terms.push_back(std::move(t));
    }
    Json out;
    out["nvars"] = f.nvars();
    out["terms"] = std::move(terms);
    return out;
}

// Group file: {"family": ..., "params": {...}} for the built-in families,
// or {"family": "explicit", "conductor": N, "generators": [matrix...]}.
inline Json group_to_json(const ReflectionGroup& g) {
    Json out;
    out["family"] = g.family();
    out["conductor"] = g.context()->conductor();
    out["dim"] = g.dim();
    out["order"] = g.order();
    Json gens = Json::array();
    for (int w : g.generator_indices())
        gens.push_back(mat_to_json(g.elements()[static_cast<size_t>(w)].matrix));
    out["generators"] = std::move(gens);
    return out;
}

inline ReflectionGroup group_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("family")) throw parse_error("group file lacks a family");
    std::string family = j["family"].get<std::string>();
    auto param = [&](const std::string& name) -> int {
        if (!j.contains("params") || !j["params"].contains(name))
            throw parse_error("group file lacks parameter " + name);
        return j["params"][name].get<int>();
    };
    if (family == "cyclic") return make_cyclic(param("n"));
    if (family == "symmetric") return make_symmetric(param("n"));
    if (family == "dihedral") return make_dihedral(param("m"));
    if (family == "G") return make_gmpn(param("m"), param("p"), param("n"));
    if (family == "explicit") {
        if (!j.contains("conductor") || !j.contains("generators"))
            throw parse_error("explicit group file needs conductor and generators");
        auto ctx = make_cyc_context(j["conductor"].get<int>());
        std::vector<Mat> gens;
        for (const auto& m : j["generators"]) gens.push_back(mat_from_json(ctx, m));
        return ReflectionGroup(ctx, gens);
    }
    throw parse_error("unknown group family: " + family);
}

// Multiplicity file: {"orbits": [[k_{C,0}, ...], ...]}; k_{C,0} = 0 is
// enforced on read.
inline Json multiplicity_to_json(const Multiplicity& k) {
    Json orbits = Json::array();
    for (const auto& row : k.per_orbit()) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(v.str());
        orbits.push_back(std::move(r));
    }
    Json out;
    out["orbits"] = std::move(orbits);
    return out;
}

inline Multiplicity multiplicity_from_json(const ReflectionGroup& g, const Json& j) {
    if (!j.is_object() || !j.contains("orbits")) throw parse_error("multiplicity file lacks orbits");
    std::vector<std::vector<Rat>> per;
    for (const auto& row : j["orbits"]) {
        std::vector<Rat> r;
        for (const auto& v : row) r.push_back(rat_from_json(v));
        if (r.empty() || r[0] != 0) throw parse_error("multiplicity row must start with k_{C,0} = 0");
        per.push_back(std::move(r));
    }
    return Multiplicity(g, std::move(per));
}

}  // namespace dunkl
