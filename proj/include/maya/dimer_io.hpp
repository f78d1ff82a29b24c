#pragma once

#include <json.hpp>

#include "maya/dimer.hpp"

namespace maya::dimer {

inline const char* edge_type_name(EdgeType t) {
    switch (t) {
        case EdgeType::no_stone: return "no_stone";
        case EdgeType::stone_stays: return "stone_stays";
        case EdgeType::jump: return "jump";
    }
    return "?";
}

// adjacency schema: vertex lists with (k, level) coordinates plus a typed
// edge list referencing vertex ids
inline nlohmann::json graph_to_json(const CylinderGraph& g) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["L"] = g.L;
    j["N"] = g.N;
    j["M_minus"] = g.M_minus;
    j["M_plus"] = g.M_plus;
    j["boundary_in"] = g.boundary_in.to_bitstring();
    j["boundary_out"] = g.boundary_out.to_bitstring();
    auto vertices = [](const std::vector<std::pair<int, int>>& kj) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [k, level] : kj) arr.push_back({{"k", k}, {"level", level}});
        return arr;
    };
    j["whites"] = vertices(g.white_kj);
    j["blacks"] = vertices(g.black_kj);
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges)
        edges.push_back({{"white", e.white}, {"black", e.black},
                         {"type", edge_type_name(e.type)}});
    j["edges"] = edges;
    return j;
}

inline nlohmann::json matchings_to_json(const CylinderGraph& g, const MatchingList& ml) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["count_by_jumps"] = ml.count_by_jumps;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& m : ml.matchings) {
        nlohmann::json edges = nlohmann::json::array();
        for (int ei : m.edge_of_white) {
            const auto& e = g.edges[static_cast<size_t>(ei)];
            edges.push_back({{"white", e.white}, {"black", e.black},
                             {"type", edge_type_name(e.type)}});
        }
        arr.push_back({{"jumps", m.jumps}, {"edges", edges}});
    }
    j["matchings"] = arr;
    return j;
}

}  // namespace maya::dimer
