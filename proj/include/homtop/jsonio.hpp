#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "homtop/dichotomy.hpp"
#include "homtop/graph.hpp"
#include "homtop/identity.hpp"
#include "homtop/mhom.hpp"
#include "homtop/polysearch.hpp"
#include "homtop/poset.hpp"
#include "homtop/topology.hpp"
#include "homtop/version.hpp"

// Outputs stay byte-stable across runs: integers and strings only, no
// floating point, no wall-clock data.
namespace homtop {

using ordered_json = nlohmann::ordered_json;

inline ordered_json json_of(const BipartiteCertificate& b) {
    ordered_json j;
    j["bipartite"] = b.bipartite;
    if (b.bipartite) {
        j["part0"] = b.part0;
        j["part1"] = b.part1;
    } else {
        j["odd_closed_walk"] = b.odd_closed_walk;
    }
    return j;
}

inline ordered_json json_of(const ClassificationResult& c) {
    ordered_json j;
    if (!c.id.empty()) j["id"] = c.id;
    j["verdict"] = to_string(c.verdict);
    j["rationale"] = c.rationale;
    if (c.loop_vertex)
        j["loop_vertex"] = *c.loop_vertex;
    else
        j["loop_vertex"] = nullptr;
    j["bipartite"] = json_of(c.bipartite);
    return j;
}

inline ordered_json json_of(const HomologyGroup& g) {
    ordered_json j;
    j["dimension"] = g.dimension;
    j["betti"] = g.betti;
    ordered_json tors = ordered_json::array();
    for (const auto& t : g.torsion) tors.push_back(t.str());
    j["torsion"] = tors;
    return j;
}

inline ordered_json json_of(const std::vector<HomologyGroup>& groups) {
    ordered_json arr = ordered_json::array();
    for (const auto& g : groups) arr.push_back(json_of(g));
    return arr;
}

inline ordered_json json_of(const ComponentVerdict& v) {
    ordered_json j;
    j["elements"] = v.elements;
    j["verdict"] = to_string(v.verdict);
    j["dismantle_steps"] = v.dismantle_steps;
    j["residual_size"] = v.residual_size;
    if (v.witness_dimension)
        j["witness_dimension"] = *v.witness_dimension;
    else
        j["witness_dimension"] = nullptr;
    if (!v.residual_homology.empty()) j["residual_homology"] = json_of(v.residual_homology);
    if (!v.reason.empty()) j["reason"] = v.reason;
    return j;
}

inline ordered_json json_of(const std::vector<ComponentVerdict>& vs) {
    ordered_json arr = ordered_json::array();
    for (const auto& v : vs) arr.push_back(json_of(v));
    return arr;
}

inline ordered_json json_of(const SearchOutcome& o, bool include_table) {
    ordered_json j;
    j["status"] = to_string(o.status);
    j["class_count"] = o.class_count;
    j["nodes"] = o.stats.nodes;
    j["propagations"] = o.stats.propagations;
    j["seed"] = o.seed;
    if (o.table) {
        j["arity"] = o.table->arity;
        if (include_table) j["table"] = o.table->table;
    }
    return j;
}

inline ordered_json json_of(const Multihom& m) {
    ordered_json arr = ordered_json::array();
    for (std::uint64_t s : m.sets) {
        ordered_json set = ordered_json::array();
        while (s) {
            set.push_back(std::countr_zero(s));
            s &= s - 1;
        }
        arr.push_back(set);
    }
    return arr;
}

inline ordered_json json_of(const ImplicationCheck& c) {
    ordered_json j;
    j["id"] = c.id;
    j["statement"] = c.statement;
    j["status"] = c.status;
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

inline ordered_json json_of(const CrossValidationReport& r) {
    ordered_json j;
    j["classification"] = json_of(r.classification);
    if (r.core) {
        j["core_size"] = r.core->core.n();
        j["core_vertices"] = r.core->core_vertices;
    }
    if (r.core_classification) j["core_classification"] = json_of(*r.core_classification);
    if (r.search) j["search"] = json_of(*r.search, false);
    if (r.mhom_element_count) j["mhom_elements"] = *r.mhom_element_count;
    if (r.flip_fixed) j["flip_fixed"] = *r.flip_fixed;
    if (!r.components.empty()) j["components"] = json_of(r.components);
    if (!r.stage_errors.empty()) j["stage_errors"] = r.stage_errors;
    ordered_json checks = ordered_json::array();
    for (const auto& c : r.checks) checks.push_back(json_of(c));
    j["checks"] = checks;
    j["consistent"] = r.consistent;
    j["all_checked"] = r.all_checked;
    return j;
}

inline ordered_json json_of(const SubTaylorReport& r) {
    ordered_json j;
    j["mode"] = r.exhaustive ? "exhaustive" : "sampled";
    j["tuples_checked"] = r.tuples_checked;
    j["pairs_checked"] = r.pairs_checked;
    j["diagonals_checked"] = r.diagonals_checked;
    j["seed"] = r.seed;
    ordered_json v = ordered_json::array();
    for (const auto& viol : r.violations) {
        ordered_json one;
        switch (viol.kind) {
            case SubTaylorViolation::Kind::Closure: one["kind"] = "closure"; break;
            case SubTaylorViolation::Kind::Diagonal: one["kind"] = "diagonal"; break;
            default: one["kind"] = "pattern"; break;
        }
        if (viol.coordinate > 0) one["coordinate"] = viol.coordinate;
        one["elements"] = viol.elements;
        v.push_back(one);
    }
    j["violations"] = v;
    return j;
}

inline ordered_json json_config(const std::string& command, std::uint64_t seed,
                                ordered_json extra = ordered_json::object()) {
    ordered_json j;
    j["tool"] = "homtop";
    j["version"] = version_string;
    j["command"] = command;
    j["seed"] = seed;
    for (auto& [k, v] : extra.items()) j[k] = v;
    return j;
}

}
