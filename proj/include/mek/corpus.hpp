#pragma once

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mek/command.hpp"
#include "mek/oracles.hpp"

namespace mek::corpus {

using ClickOracle = std::function<BoardState(const BoardState&, Vec2)>;
using SweepOracle = std::function<Playground(const Playground&)>;

struct ReferenceMechanic {
    std::string name;
    Mechanic mechanic;
    ClickOracle click_oracle;
    SweepOracle sweep_oracle;

    int rule_count() const { return mek::rule_count(mechanic); }
    int command_count() const { return mek::command_count(mechanic); }
    bool has_oracle() const { return click_oracle || sweep_oracle; }
};

inline constexpr std::array<std::string_view, 6> kNames = {
    "toggle", "sliding-move", "sokoban-push", "game-of-life", "nim-subtraction", "noughts-and-crosses",
};

namespace detail {

using namespace mek::offsets;

inline const CommandKind kWrite{Family::write};
inline const CommandKind kWriteInstant{Family::write, Variation::instant};
inline const CommandKind kWriteToMemory{Family::write, Variation::to_memory};
inline const CommandKind kWriteToMemoryInstant{Family::write, Variation::to_memory_instant};
inline const CommandKind kWriteFromMemory{Family::write, Variation::from_memory};
inline const CommandKind kCheck{Family::check};
inline const CommandKind kCheckNot{Family::check, Variation::negated};
inline const CommandKind kCheckMemory{Family::check, Variation::memory};
inline const CommandKind kCheckMemoryNot{Family::check, Variation::memory_not};
inline const CommandKind kCheckWithMemory{Family::check, Variation::with_memory};
inline const CommandKind kShift{Family::shift};
inline const CommandKind kRotate{Family::rotate};
inline const CommandKind kCycle{Family::cycle};
inline const CommandKind kCycleMemoryInstant{Family::cycle, Variation::memory_instant};

inline Mechanic named(std::string name, std::initializer_list<std::initializer_list<Command>> rules) {
    Mechanic m;
    m.name = std::move(name);
    int r = 0;
    for (const auto& rule : rules) {
        int c = 0;
        for (const Command& cmd : rule) m.rules[r][c++] = cmd;
        ++r;
    }
    m.brush.at(1, 1) = kDarkBlue;
    return m;
}

}  // namespace detail

/// Clicking a light blue tile turns it dark blue and vice versa. Writes are
/// deferred, so the second rule still sees the original color.
inline Mechanic toggle() {
    using namespace detail;
    return named("toggle", {
        {make_command(kCheck, {{center, kLightBlue}}), make_command(kWrite, {{center, kDarkBlue}})},
        {make_command(kCheck, {{center, kDarkBlue}}), make_command(kWrite, {{center, kLightBlue}})},
    });
}

/// Sliding move: a dark blue neighbour of the clicked tile slides onto it,
/// leaving light blue behind. The rotated frame visits all four neighbours
/// through its east tile.
inline Mechanic sliding_move() {
    using namespace detail;
    return named("sliding-move", {{
        make_command(kRotate, {{n, kMarker}, {e, kMarker}, {s, kMarker}, {w, kMarker}}),
        make_command(kCheck, {{e, kDarkBlue}}),
        make_command(kWrite, {{e, kLightBlue}, {center, kDarkBlue}}),
    }});
}

/// Sokoban push. Memory cells 7 and 8 are loaded with the box color and the
/// neutral color (8 cycled by 2 wraps to 1) so that the neutral color can be
/// compared against and written.
inline Mechanic sokoban_push() {
    using namespace detail;
    return named("sokoban-push", {{
        make_command(kWriteToMemoryInstant, {{s, kBlack}, {sw, kDarkBlue}}),
        make_command(kCycleMemoryInstant, {{s, kLightBlue}}),
        make_command(kRotate, {{n, kMarker}, {e, kMarker}, {s, kMarker}, {w, kMarker}}),
        make_command(kShift, {{n, kMarker}}),
        make_command(kCheck, {{center, kDarkBlue}}),
        make_command(kCheckWithMemory, {{n, Color{oracle::kSokobanEmptyCell}}}),
        make_command(kWriteFromMemory,
                     {{center, Color{oracle::kSokobanEmptyCell}}, {n, Color{oracle::kSokobanBoxCell}}}),
    }});
}

/// Game of Life, driven by sweep. Memory center counts live neighbours: it is
/// reset to 8 and cycled by 2 per live neighbour, so 2 neighbours give 3 and
/// 3 neighbours give 5. Memory N is loaded with the neutral color for deaths.
inline Mechanic game_of_life() {
    using namespace detail;
    return named("game-of-life", {
        {
            make_command(kWriteToMemoryInstant, {{center, kBlack}, {n, kBlack}}),
            make_command(kCycleMemoryInstant, {{n, kLightBlue}}),
        },
        {
            make_command(kShift, {{nw, kMarker}, {n, kMarker}, {ne, kMarker}, {e, kMarker},
                                  {se, kMarker}, {s, kMarker}, {sw, kMarker}, {w, kMarker}}),
            make_command(kCheck, {{center, kDarkBlue}}),
            make_command(kCycleMemoryInstant, {{center, kLightBlue}}),
        },
        {
            make_command(kCheckMemory, {{center, kYellow}}),
            make_command(kWrite, {{center, kDarkBlue}}),
        },
        {
            make_command(kCheck, {{center, kDarkBlue}}),
            make_command(kCheckMemoryNot, {{center, kDarkBlue}}),
            make_command(kCheckMemoryNot, {{center, kYellow}}),
            make_command(kWriteFromMemory, {{center, Color{positional_index(n)}}}),
        },
    });
}

/// Subtraction game on a row of dark blue tokens: clicking the last token
/// takes one, clicking the second-to-last takes two. Taken tokens are cycled
/// by 7, which wraps dark blue to neutral.
inline Mechanic nim_subtraction() {
    using namespace detail;
    return named("nim-subtraction", {
        {
            make_command(kCheck, {{center, kDarkBlue}}),
            make_command(kCheckNot, {{e, kDarkBlue}}),
            make_command(kCycle, {{center, kPurple}}),
        },
        {
            make_command(kCheck, {{center, kDarkBlue}, {e, kDarkBlue}}),
            make_command(kShift, {{e, kMarker}}),
            make_command(kCheckNot, {{e, kDarkBlue}}),
            make_command(kCycle, {{center, kPurple}, {w, kPurple}}),
        },
    });
}

/// Noughts and crosses placement with alternating turns. Memory center holds
/// the color of the player to move (red crosses, dark blue noughts); an
/// uninitialised memory lets red move first. Occupied tiles reject clicks.
inline Mechanic noughts_and_crosses() {
    using namespace detail;
    const Command not_red = make_command(kCheckNot, {{center, kRed}});
    const Command not_blue = make_command(kCheckNot, {{center, kDarkBlue}});
    const Command place_current = make_command(kWriteFromMemory, {{center, Color{positional_index(center)}}});
    return named("noughts-and-crosses", {
        {not_red, not_blue, make_command(kCheckMemory, {{center, kRed}}), place_current,
         make_command(kWriteToMemory, {{center, kDarkBlue}})},
        {not_red, not_blue, make_command(kCheckMemory, {{center, kDarkBlue}}), place_current,
         make_command(kWriteToMemory, {{center, kRed}})},
        {not_red, not_blue, make_command(kCheckMemoryNot, {{center, kRed}}),
         make_command(kCheckMemoryNot, {{center, kDarkBlue}}), make_command(kWrite, {{center, kRed}}),
         make_command(kWriteToMemory, {{center, kDarkBlue}})},
    });
}

/// Packaged reference mechanic by name; the first four carry oracles.
inline ReferenceMechanic load_reference(std::string_view name) {
    if (name == "toggle") return {"toggle", toggle(), oracle::toggle, {}};
    if (name == "sliding-move") return {"sliding-move", sliding_move(), oracle::sliding_move, {}};
    if (name == "sokoban-push") return {"sokoban-push", sokoban_push(), oracle::sokoban_push, {}};
    if (name == "game-of-life") return {"game-of-life", game_of_life(), {}, oracle::game_of_life};
    if (name == "nim-subtraction") return {"nim-subtraction", nim_subtraction(), {}, {}};
    if (name == "noughts-and-crosses") return {"noughts-and-crosses", noughts_and_crosses(), {}, {}};
    throw std::invalid_argument("unknown reference mechanic: " + std::string(name));
}

}  // namespace mek::corpus
