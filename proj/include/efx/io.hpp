// Copyright 2026 The efxgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON encodings. Rationals travel as strings ("7", "21/2") so nothing is
// ever rounded; saved instances are always in lowest terms.

#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "efx/errors.hpp"
#include "efx/fairness.hpp"
#include "efx/instance.hpp"
#include "efx/oracle.hpp"
#include "efx/pipeline.hpp"
#include "efx/structure.hpp"

namespace efx {

using Json = nlohmann::ordered_json;

namespace detail {

inline Rational rational_field(const Json& edge, const char* key, std::size_t index) {
    if (!edge.contains(key)) throw InputError(std::string("missing '") + key + "' at edge " + std::to_string(index));
    const Json& field = edge.at(key);
    try {
        if (field.is_string()) return Rational::parse(field.get<std::string>());
        if (field.is_number_integer()) return Rational(field.get<long>());
    } catch (const std::exception& ex) {
        throw InputError(std::string("bad value for '") + key + "' at edge " + std::to_string(index) + ": " +
                         ex.what());
    }
    throw InputError(std::string("'") + key + "' must be a rational string at edge " + std::to_string(index));
}

inline std::size_t index_field(const Json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || !obj.at(key).is_number_integer() || obj.at(key).get<long long>() < 0) {
        throw InputError(std::string("'") + key + "' must be a non-negative integer " + where);
    }
    return obj.at(key).get<std::size_t>();
}

inline Json parse_json(std::istream& in) {
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& ex) {
        throw InputError(std::string("malformed JSON: ") + ex.what());
    }
}

inline std::ifstream open_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return in;
}

}  // namespace detail

inline Instance instance_from_json(const Json& doc) {
    if (!doc.is_object()) throw InputError("instance JSON must be an object");
    const std::size_t n = detail::index_field(doc, "n", "in instance");
    if (!doc.contains("edges") || !doc.at("edges").is_array()) throw InputError("instance needs an 'edges' array");
    std::vector<EdgeItem> edges;
    std::size_t k = 0;
    for (const auto& e : doc.at("edges")) {
        const std::string where = "at edge " + std::to_string(k);
        if (!e.is_object()) throw InputError("edge must be an object " + where);
        edges.push_back(EdgeItem{detail::index_field(e, "u", where), detail::index_field(e, "v", where),
                                 detail::rational_field(e, "wu", k), detail::rational_field(e, "wv", k)});
        ++k;
    }
    return Instance(n, std::move(edges));
}

inline Json to_json(const Instance& inst) {
    Json edges = Json::array();
    for (const auto& e : inst.edges()) {
        edges.push_back(Json{{"u", e.u}, {"v", e.v}, {"wu", e.wu.str()}, {"wv", e.wv.str()}});
    }
    return Json{{"n", inst.agents()}, {"edges", std::move(edges)}};
}

inline Instance load_instance(std::istream& in) { return instance_from_json(detail::parse_json(in)); }

inline Instance load_instance(const std::string& path) {
    auto in = detail::open_file(path);
    return load_instance(in);
}

inline std::string save_instance(const Instance& inst) { return to_json(inst).dump(2); }

/// Reads {"bundles": [[...], ...]}; must list exactly inst.agents() bundles.
inline Allocation allocation_from_json(const Instance& inst, const Json& doc) {
    if (!doc.is_object() || !doc.contains("bundles") || !doc.at("bundles").is_array()) {
        throw InputError("allocation JSON needs a 'bundles' array");
    }
    const Json& list = doc.at("bundles");
    if (list.size() != inst.agents()) {
        throw InputError("allocation lists " + std::to_string(list.size()) + " bundles for " +
                         std::to_string(inst.agents()) + " agents");
    }
    std::vector<Bundle> bundles;
    for (const auto& b : list) {
        if (!b.is_array()) throw InputError("each bundle must be an array of edge ids");
        Bundle bundle;
        for (const auto& id : b) {
            if (!id.is_number_integer() || id.get<long long>() < 0) throw InputError("edge ids must be non-negative");
            bundle.push_back(id.get<EdgeId>());
        }
        std::sort(bundle.begin(), bundle.end());
        bundles.push_back(std::move(bundle));
    }
    return Allocation::from_bundles(inst.items(), bundles);
}

inline Allocation load_allocation(const Instance& inst, std::istream& in) {
    return allocation_from_json(inst, detail::parse_json(in));
}

inline Allocation load_allocation(const Instance& inst, const std::string& path) {
    auto in = detail::open_file(path);
    return load_allocation(inst, in);
}

inline Json bundles_json(const Allocation& x) {
    Json out = Json::array();
    for (const auto& b : x.bundles()) out.push_back(b);
    return out;
}

inline Json to_json(const Witness& w) {
    Json out{{"envier", w.envier}, {"envied", w.envied}};
    out["removed_edge"] = w.removed_edge ? Json(*w.removed_edge) : Json(nullptr);
    out["lhs"] = w.lhs.str();
    out["rhs"] = w.rhs.str();
    return out;
}

inline Json to_json(const Verdict& v) {
    Json witnesses = Json::array();
    for (const auto& w : v.witnesses) witnesses.push_back(to_json(w));
    return Json{{"pass", v.pass}, {"witnesses", std::move(witnesses)}};
}

inline Json to_json(const StructureReport& r) {
    Json out;
    out["q"] = r.q;
    out["diameter"] = r.diameter;
    out["longest_path"] = r.longest_path ? Json(*r.longest_path) : Json(nullptr);
    out["center"] = r.center == kNoAgent ? Json(nullptr) : Json(r.center);
    out["connected"] = r.connected;
    out["components"] = r.components;
    if (r.bipartition) {
        out["bipartition"] = Json{{"S", r.bipartition->s_side()}, {"T", r.bipartition->t_side()}};
    } else {
        out["bipartition"] = nullptr;
    }
    out["family"] = std::string(to_string(r.family));
    return out;
}

inline Json to_json(const PropertyFlags& f) {
    return Json{{"P1", f.p1}, {"P2", f.p2}, {"P3", f.p3}, {"P4", f.p4}, {"P5", f.p5}};
}

inline Json to_json(const PipelineTrace& trace) {
    Json snapshots = Json::array();
    for (const auto& s : trace.snapshots) {
        snapshots.push_back(Json{{"stage", s.stage},
                                 {"bundles", bundles_json(s.allocation)},
                                 {"properties", to_json(s.flags)},
                                 {"envied", s.envied}});
    }
    Json events = Json::array();
    for (const auto& e : trace.events) {
        Json ev{{"stage", e.stage}, {"action", e.action}, {"agent", e.agent}};
        ev["other"] = e.other ? Json(*e.other) : Json(nullptr);
        ev["edges"] = e.edges;
        events.push_back(std::move(ev));
    }
    return Json{{"snapshots", std::move(snapshots)}, {"events", std::move(events)},
                {"envied_counts", trace.envied_counts}};
}

inline Json to_json(const OracleResult& r) {
    Json out{{"exists", r.exists}};
    out["witness"] = r.witness ? Json{{"bundles", bundles_json(*r.witness)}} : Json(nullptr);
    if (r.count) out["count"] = *r.count;
    return out;
}

}  // namespace efx
