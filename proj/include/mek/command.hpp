#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mek/color.hpp"
#include "mek/geometry.hpp"
#include "mek/grid.hpp"

namespace mek {

enum class Family { empty, write, check, shift, rotate, cycle, call };

enum class Variation {
    plain,
    // WRITE
    to_memory,
    from_memory,
    from_playground,
    instant,
    to_memory_instant,
    // CHECK
    negated,
    memory,
    memory_not,
    with_memory,
    with_memory_not,
    // CYCLE (also uses instant and memory)
    memory_instant,
};

constexpr std::string_view family_name(Family f) noexcept {
    switch (f) {
        case Family::empty: return "EMPTY";
        case Family::write: return "WRITE";
        case Family::check: return "CHECK";
        case Family::shift: return "SHIFT";
        case Family::rotate: return "ROTATE";
        case Family::cycle: return "CYCLE";
        case Family::call: return "CALL";
    }
    return "?";
}

constexpr std::string_view variation_name(Variation v) noexcept {
    switch (v) {
        case Variation::plain: return "PLAIN";
        case Variation::to_memory: return "TO_MEMORY";
        case Variation::from_memory: return "FROM_MEMORY";
        case Variation::from_playground: return "FROM_PLAYGROUND";
        case Variation::instant: return "INSTANT";
        case Variation::to_memory_instant: return "TO_MEMORY_INSTANT";
        case Variation::negated: return "NOT";
        case Variation::memory: return "MEMORY";
        case Variation::memory_not: return "MEMORY_NOT";
        case Variation::with_memory: return "WITH_MEMORY";
        case Variation::with_memory_not: return "WITH_MEMORY_NOT";
        case Variation::memory_instant: return "MEMORY_INSTANT";
    }
    return "?";
}

inline constexpr std::array kAllFamilies = {
    Family::empty, Family::write, Family::check, Family::shift, Family::rotate, Family::cycle, Family::call,
};

inline constexpr std::array kAllVariations = {
    Variation::plain,           Variation::to_memory,  Variation::from_memory, Variation::from_playground,
    Variation::instant,         Variation::to_memory_instant, Variation::negated, Variation::memory,
    Variation::memory_not,      Variation::with_memory, Variation::with_memory_not, Variation::memory_instant,
};

constexpr bool variation_valid_for(Family f, Variation v) noexcept {
    switch (f) {
        case Family::write:
            return v == Variation::plain || v == Variation::to_memory || v == Variation::from_memory ||
                   v == Variation::from_playground || v == Variation::instant || v == Variation::to_memory_instant;
        case Family::check:
            return v == Variation::plain || v == Variation::negated || v == Variation::memory ||
                   v == Variation::memory_not || v == Variation::with_memory || v == Variation::with_memory_not;
        case Family::cycle:
            return v == Variation::plain || v == Variation::instant || v == Variation::memory ||
                   v == Variation::memory_instant;
        case Family::empty:
        case Family::shift:
        case Family::rotate:
        case Family::call:
            return v == Variation::plain;
    }
    return false;
}

/// Command family plus a variation tag valid for that family.
class CommandKind {
public:
    constexpr CommandKind() noexcept = default;
    constexpr CommandKind(Family family, Variation variation = Variation::plain)
        : family_(family), variation_(variation) {
        if (!variation_valid_for(family, variation)) {
            throw std::invalid_argument(std::string("variation ") + std::string(variation_name(variation)) +
                                        " is not valid for " + std::string(family_name(family)));
        }
    }

    constexpr Family family() const noexcept { return family_; }
    constexpr Variation variation() const noexcept { return variation_; }

    std::string name() const {
        std::string out(family_name(family_));
        if (variation_ != Variation::plain) {
            out += '/';
            out += variation_name(variation_);
        }
        return out;
    }

    friend constexpr bool operator==(CommandKind, CommandKind) noexcept = default;

private:
    Family family_ = Family::empty;
    Variation variation_ = Variation::plain;
};

/// Every kind in editor cycling order: EMPTY, then each family's variations.
inline const std::vector<CommandKind>& all_kinds() {
    static const std::vector<CommandKind> kinds = [] {
        std::vector<CommandKind> out;
        for (Family f : kAllFamilies) {
            for (Variation v : kAllVariations) {
                if (variation_valid_for(f, v)) out.emplace_back(f, v);
            }
        }
        return out;
    }();
    return kinds;
}

/// Tile colors a command of the given kind may hold.
constexpr ColorSet allowed_colors(CommandKind kind) {
    switch (kind.family()) {
        case Family::write:
        case Family::cycle: return ColorSet::range(1, 8);
        case Family::check:
        case Family::rotate: return ColorSet::all();
        case Family::shift:
        case Family::call: return ColorSet{1, 9};
        case Family::empty: return ColorSet{1};
    }
    return ColorSet{1};
}

/// A typed 3x3 color grid: the atomic executable unit.
struct Command {
    CommandKind kind;
    CommandGrid tiles;

    Color at(LocalOffset o) const noexcept { return tile_at(tiles, o); }
    Color& at(LocalOffset o) noexcept { return tile_at(tiles, o); }

    bool is_empty() const noexcept { return kind.family() == Family::empty; }

    friend bool operator==(const Command&, const Command&) noexcept = default;
};

/// Builds a command from a sparse list of (offset, color) tiles; unlisted
/// tiles are neutral.
inline Command make_command(CommandKind kind, std::initializer_list<std::pair<LocalOffset, Color>> tiles = {}) {
    Command c{kind, {}};
    for (const auto& [offset, color] : tiles) c.at(offset) = color;
    return c;
}

/// Marker tiles of a command, listed in ring order (center last if present).
inline std::vector<LocalOffset> marker_offsets(const Command& c) {
    std::vector<LocalOffset> out;
    for (LocalOffset o : kRing) {
        if (c.at(o) == kMarker) out.push_back(o);
    }
    if (c.at(offsets::center) == kMarker) out.push_back(offsets::center);
    return out;
}

inline constexpr int kRuleLength = 9;
inline constexpr int kRuleCount = 9;

using Rule = std::array<Command, kRuleLength>;

/// The serializable design artifact: nine rules of nine commands plus the
/// brush used in BRUSH mode. The brush is always a plain WRITE.
struct Mechanic {
    std::string name;
    std::array<Rule, kRuleCount> rules{};
    CommandGrid brush;

    /// 1-based rule access.
    const Rule& rule(int index) const { return rules.at(static_cast<std::size_t>(index - 1)); }
    Rule& rule(int index) { return rules.at(static_cast<std::size_t>(index - 1)); }

    Command brush_command() const { return Command{CommandKind{Family::write}, brush}; }

    friend bool operator==(const Mechanic&, const Mechanic&) = default;
};

/// Number of rules holding at least one non-EMPTY command.
inline int rule_count(const Mechanic& m) {
    int n = 0;
    for (const Rule& r : m.rules) {
        for (const Command& c : r) {
            if (!c.is_empty()) {
                ++n;
                break;
            }
        }
    }
    return n;
}

inline int command_count(const Mechanic& m) {
    int n = 0;
    for (const Rule& r : m.rules) {
        for (const Command& c : r) n += c.is_empty() ? 0 : 1;
    }
    return n;
}

/// Location of a validation failure. rule == 0 designates the brush.
struct Violation {
    int rule = 0;
    int command = 0;
    std::optional<LocalOffset> tile;
    std::string message;

    std::string describe() const {
        std::string out = rule == 0 ? std::string("brush") : "rule " + std::to_string(rule) + " command " + std::to_string(command);
        if (tile) out += " tile " + std::to_string(positional_index(*tile));
        return out + ": " + message;
    }
};

inline void validate_command(const Command& c, int rule, int command, std::vector<Violation>& out) {
    const ColorSet allowed = allowed_colors(c.kind);
    int markers = 0;
    for (int i = 1; i <= 9; ++i) {
        const LocalOffset o = offset_at(i);
        const Color color = c.at(o);
        if (!allowed.contains(color)) {
            out.push_back({rule, command, o,
                           "color " + std::to_string(color.index()) + " (" + std::string(color_name(color)) +
                               ") is not allowed in a " + c.kind.name() + " command"});
        }
        if (color == kMarker) ++markers;
    }
    if (c.kind.family() == Family::call && markers > 1) {
        out.push_back({rule, command, std::nullopt, "CALL command has " + std::to_string(markers) +
                                                        " marker tiles; at most one is allowed"});
    }
}

/// Every invariant violation in the mechanic, in rule/command/tile order.
inline std::vector<Violation> validate_mechanic(const Mechanic& m) {
    std::vector<Violation> out;
    validate_command(m.brush_command(), 0, 0, out);
    for (int r = 1; r <= kRuleCount; ++r) {
        for (int c = 1; c <= kRuleLength; ++c) validate_command(m.rule(r)[c - 1], r, c, out);
    }
    return out;
}

}  // namespace mek
