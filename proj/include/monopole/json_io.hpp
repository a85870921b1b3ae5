#pragma once

#include "monopole/engine.hpp"
#include "monopole/enumerate.hpp"
#include "monopole/errors.hpp"
#include "monopole/quiver.hpp"
#include "monopole/theory.hpp"
#include "monopole/weights.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace monopole::io {

using json = nlohmann::json;

/* Canonical text form: sorted keys (nlohmann's default object order),
   two-space indent, ASCII only, trailing newline.  Regression diffs and the
   cache key both rely on this. */
inline std::string canonical_dump(const json& j) { return j.dump(2, ' ', true) + "\n"; }

inline const json& field(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
    return *it;
}

inline std::int64_t as_int(const json& j, const char* what) {
    if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

inline IntVec int_vector(const json& j, const char* what) {
    if (!j.is_array()) throw InputError(std::string(what) + " must be an array of integers");
    IntVec v;
    v.reserve(j.size());
    for (const auto& x : j) v.push_back(as_int(x, what));
    return v;
}

inline void check_schema(const json& j, const char* name) {
    const auto it = j.find("schema");
    if (it == j.end()) return;  // optional marker
    if (!it->is_string() || it->get<std::string>() != name) {
        throw InputError(std::string("expected schema '") + name + "'");
    }
}

inline json quiver_to_json(const Quiver& q) {
    json arrows = json::array();
    for (const auto& [t, h] : q.arrows) arrows.push_back(json::array({t, h}));
    return json{{"vertices", q.vertices}, {"arrows", arrows}};
}

inline Quiver quiver_from_json(const json& j) {
    Quiver q;
    const json& vs = field(j, "vertices");
    if (!vs.is_array()) throw InputError("vertices must be an array of names");
    for (const auto& v : vs) {
        if (!v.is_string()) throw InputError("vertex names must be strings");
        q.vertices.push_back(v.get<std::string>());
    }
    const json& as = field(j, "arrows");
    if (!as.is_array()) throw InputError("arrows must be an array of [tail, head] pairs");
    for (const auto& a : as) {
        if (!a.is_array() || a.size() != 2) throw InputError("each arrow is a [tail, head] pair");
        q.arrows.emplace_back(static_cast<int>(as_int(a[0], "arrow tail")),
                              static_cast<int>(as_int(a[1], "arrow head")));
    }
    q.validate();
    return q;
}

inline json cartan_to_json(const CartanMatrix& c) {
    return json{{"entries", c.entries}, {"symmetrizer", c.symmetrizer}, {"labels", c.labels}};
}

inline json weight_to_json(const WeightVector& w) {
    return json{{"basis", w.basis == Basis::fundamental ? "fundamental" : "coroot"},
                {"coords", w.coords}};
}

inline WeightVector weight_from_json(const json& j) {
    const json& b = field(j, "basis");
    if (!b.is_string()) throw InputError("weight basis must be a string");
    const std::string basis = b.get<std::string>();
    if (basis != "fundamental" && basis != "coroot") {
        throw InputError("weight basis must be 'fundamental' or 'coroot'");
    }
    WeightVector w;
    w.basis = basis == "fundamental" ? Basis::fundamental : Basis::coroot;
    w.coords = int_vector(field(j, "coords"), "weight coords");
    return w;
}

inline json affine_weight_to_json(const AffineWeight& w) {
    return json{{"level", w.level}, {"finite", weight_to_json(w.finite)}, {"energy", w.energy}};
}

inline AffineWeight affine_weight_from_json(const json& j) {
    AffineWeight w;
    w.level = as_int(field(j, "level"), "level");
    w.finite = weight_from_json(field(j, "finite"));
    w.energy = as_int(field(j, "energy"), "energy");
    return w;
}

inline json theory_to_json(const FramedTheory& T) {
    json j = quiver_to_json(T.quiver);
    j["dimV"] = T.dim_v;
    j["dimW"] = T.dim_w;
    if (T.splitting) j["splitting"] = *T.splitting;
    return j;
}

inline FramedTheory theory_from_json(const json& j) {
    FramedTheory T;
    T.quiver = quiver_from_json(j);
    T.dim_v = int_vector(field(j, "dimV"), "dimV");
    T.dim_w = int_vector(field(j, "dimW"), "dimW");
    if (const auto it = j.find("splitting"); it != j.end()) {
        IntMat rows;
        if (!it->is_array()) throw InputError("splitting must be an array of rows");
        for (const auto& row : *it) rows.push_back(int_vector(row, "splitting row"));
        T.splitting = std::move(rows);
    }
    T.validate();
    return T;
}

inline json slice_to_json(const SliceLabel& s) {
    json j = quiver_to_json(s.quiver);
    j["kind"] = s.kind == SliceKind::finite ? "finite" : "affine";
    if (s.kind == SliceKind::finite) {
        j["lambda"] = weight_to_json(*s.lambda);
        j["mu"] = weight_to_json(*s.mu);
    } else {
        j["lambda"] = affine_weight_to_json(*s.lambda_aff);
        j["mu"] = affine_weight_to_json(*s.mu_aff);
        if (s.extending) j["extending"] = *s.extending;
    }
    return j;
}

inline SliceLabel slice_from_json(const json& j) {
    SliceLabel s;
    const json& kind = field(j, "kind");
    if (!kind.is_string()) throw InputError("slice kind must be a string");
    const std::string k = kind.get<std::string>();
    s.quiver = quiver_from_json(j);
    if (k == "finite") {
        s.kind = SliceKind::finite;
        s.lambda = weight_from_json(field(j, "lambda"));
        s.mu = weight_from_json(field(j, "mu"));
    } else if (k == "affine") {
        s.kind = SliceKind::affine;
        s.lambda_aff = affine_weight_from_json(field(j, "lambda"));
        s.mu_aff = affine_weight_from_json(field(j, "mu"));
        if (const auto it = j.find("extending"); it != j.end()) {
            s.extending = as_int(*it, "extending");
        }
    } else {
        throw InputError("slice kind must be 'finite' or 'affine'");
    }
    return s;
}

inline std::string rational_to_string(const Rat& r) {
    std::string s = boost::multiprecision::numerator(r).str();
    if (boost::multiprecision::denominator(r) != 1) {
        s += "/" + boost::multiprecision::denominator(r).str();
    }
    return s;
}

inline json report_to_json(const GoodnessReport& rep) {
    json j;
    switch (rep.verdict) {
        case GoodnessReport::Verdict::Proper: j["verdict"] = "Proper"; break;
        case GoodnessReport::Verdict::Divergent: j["verdict"] = "Divergent"; break;
        case GoodnessReport::Verdict::Inconclusive: j["verdict"] = "Inconclusive"; break;
    }
    j["cones_checked"] = rep.cones_checked;
    j["domain"] = rep.domain == DomainKind::dominant ? "dominant" : "partitions";
    j["proxy"] = rep.proxy;
    if (rep.witness) {
        json w = json::array();
        for (const auto& x : *rep.witness) w.push_back(x.str());
        j["witness"] = std::move(w);
    }
    if (rep.slope) j["slope"] = rational_to_string(*rep.slope);
    return j;
}

inline json leaf_interval_to_json(const LeafIntervalResult& r, SliceKind kind) {
    json weights = json::array();
    if (kind == SliceKind::finite) {
        for (const auto& w : r.finite_weights) weights.push_back(weight_to_json(w));
    } else {
        for (const auto& w : r.affine_weights) weights.push_back(affine_weight_to_json(w));
    }
    return json{{"kind", kind == SliceKind::finite ? "finite" : "affine"},
                {"weights", std::move(weights)},
                {"truncated", r.truncated}};
}

}  // namespace monopole::io
