#pragma once

#include <random>
#include <string>

#include "mek/mek.hpp"

namespace mek::testing {

inline Color random_color(std::mt19937& rng, int lo = 1, int hi = 9) {
    return Color{std::uniform_int_distribution<int>(lo, hi)(rng)};
}

inline BoardState random_board(std::mt19937& rng) {
    BoardState b;
    for (Color& c : b.playground.tiles()) c = random_color(rng);
    for (Color& c : b.memory.tiles()) c = random_color(rng);
    return b;
}

/// Board with only neutral and dark blue playground tiles.
inline BoardState random_binary_board(std::mt19937& rng, double alive = 0.35) {
    BoardState b;
    std::bernoulli_distribution coin(alive);
    for (Color& c : b.playground.tiles()) c = coin(rng) ? kDarkBlue : kNeutral;
    return b;
}

inline Vec2 random_position(std::mt19937& rng) {
    std::uniform_int_distribution<int> d(0, 9);
    return {d(rng), d(rng)};
}

inline Command random_command(std::mt19937& rng, double empty_bias = 0.0) {
    const auto& kinds = all_kinds();
    if (std::bernoulli_distribution(empty_bias)(rng)) return Command{};
    const CommandKind kind = kinds[std::uniform_int_distribution<std::size_t>(0, kinds.size() - 1)(rng)];
    const auto colors = allowed_colors(kind).colors();
    std::uniform_int_distribution<std::size_t> pick(0, colors.size() - 1);
    Command c{kind, {}};
    bool marker_used = false;
    for (Color& t : c.tiles.tiles()) {
        Color col = colors[pick(rng)];
        if (kind.family() == Family::call && col == kMarker) {
            if (marker_used) col = kNeutral;
            marker_used = true;
        }
        t = col;
    }
    return c;
}

inline Mechanic random_mechanic(std::mt19937& rng, double empty_bias = 0.5) {
    Mechanic m;
    m.name = "random-" + std::to_string(rng() % 100000);
    for (Rule& r : m.rules) {
        for (Command& c : r) c = random_command(rng, empty_bias);
    }
    const auto brush_colors = ColorSet::range(1, 8).colors();
    for (Color& t : m.brush.tiles()) t = brush_colors[rng() % brush_colors.size()];
    return m;
}

inline Mechanic single_rule(Rule rule, std::string name = "test") {
    Mechanic m;
    m.name = std::move(name);
    m.rules[0] = std::move(rule);
    return m;
}

inline Rule rule_of(std::initializer_list<Command> commands) {
    Rule r{};
    int i = 0;
    for (const Command& c : commands) r[static_cast<std::size_t>(i++)] = c;
    return r;
}

}  // namespace mek::testing
