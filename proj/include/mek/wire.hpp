#pragma once

// JSON views of engine values shared by the CLI trace output and the HTTP
// service.

#include <string>

#include "json.hpp"
#include "mek/engine.hpp"
#include "mek/persistence.hpp"

namespace mek {

inline nlohmann::json to_json(const TraceEvent& e) {
    nlohmann::json path = nlohmann::json::array();
    for (const ForkStep& s : e.path) path.push_back({s.command, s.branch});
    nlohmann::json j = {
        {"rule", e.rule},
        {"command", e.command},
        {"kind", e.kind.name()},
        {"outcome", outcome_name(e.outcome)},
        {"path", std::move(path)},
        {"depth", e.call_depth},
        {"focus", {{"x", e.focus.position.x}, {"y", e.focus.position.y}, {"rotation", e.focus.rotation.steps()}}},
        {"origin", {e.origin.x, e.origin.y}},
    };
    if (e.outcome == Outcome::called) j["called_rule"] = e.called_rule;
    return j;
}

template <int W, int H>
nlohmann::json grid_to_json(const Grid<W, H>& g) {
    nlohmann::json rows = nlohmann::json::array();
    for (int y = 0; y < H; ++y) {
        nlohmann::json row = nlohmann::json::array();
        for (int x = 0; x < W; ++x) row.push_back(g.at(x, y).index());
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Board as its text document plus row arrays for direct rendering.
inline nlohmann::json board_to_json(const BoardState& b) {
    return {
        {"document", encode_board(b)},
        {"playground", grid_to_json(b.playground)},
        {"memory", grid_to_json(b.memory)},
    };
}

inline nlohmann::json trace_to_json(const std::vector<TraceEvent>& trace) {
    nlohmann::json out = nlohmann::json::array();
    for (const TraceEvent& e : trace) out.push_back(to_json(e));
    return out;
}

}  // namespace mek
