#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mek {

/// One of the nine indexed tile colors. Index 1 is the neutral "empty"
/// color and index 9 the marker used by SHIFT, ROTATE and CALL.
class Color {
public:
    static constexpr int kCount = 9;

    constexpr Color() noexcept = default;

    explicit constexpr Color(int index) : index_(static_cast<std::uint8_t>(index)) {
        if (index < 1 || index > kCount) {
            throw std::invalid_argument("color index out of range 1..9: " + std::to_string(index));
        }
    }

    static constexpr std::optional<Color> from_index(int index) noexcept {
        if (index < 1 || index > kCount) return std::nullopt;
        Color c;
        c.index_ = static_cast<std::uint8_t>(index);
        return c;
    }

    constexpr int index() const noexcept { return index_; }

    friend constexpr bool operator==(Color, Color) noexcept = default;
    friend constexpr auto operator<=>(Color, Color) noexcept = default;

private:
    std::uint8_t index_ = 1;
};

inline constexpr Color kNeutral{1};
inline constexpr Color kLightBlue{2};
inline constexpr Color kDarkBlue{3};
inline constexpr Color kRed{4};
inline constexpr Color kYellow{5};
inline constexpr Color kOrange{6};
inline constexpr Color kPurple{7};
inline constexpr Color kBlack{8};
inline constexpr Color kMarker{9};

inline constexpr std::array<std::string_view, Color::kCount> kPaletteNames = {
    "light_green", "light_blue", "dark_blue", "red", "yellow",
    "orange",      "purple",     "black",     "dark_green",
};

inline constexpr std::string_view color_name(Color c) noexcept { return kPaletteNames[c.index() - 1]; }

/// Result of reading a board coordinate: a color, or nullopt when the
/// coordinate lies outside the grid. OffBoard compares unequal to every color.
using TileRead = std::optional<Color>;
inline constexpr std::nullopt_t kOffBoard = std::nullopt;

/// Ordered subset of the palette, iterated by ascending index.
class ColorSet {
public:
    constexpr ColorSet() noexcept = default;
    constexpr ColorSet(std::initializer_list<int> indexes) {
        for (int i : indexes) insert(Color{i});
    }

    static constexpr ColorSet range(int first, int last) {
        ColorSet s;
        for (int i = first; i <= last; ++i) s.insert(Color{i});
        return s;
    }
    static constexpr ColorSet all() { return range(1, Color::kCount); }

    constexpr void insert(Color c) noexcept { mask_ |= bit(c); }
    constexpr bool contains(Color c) const noexcept { return (mask_ & bit(c)) != 0; }
    constexpr int size() const noexcept { return std::popcount(mask_); }
    constexpr bool empty() const noexcept { return mask_ == 0; }

    std::vector<Color> colors() const {
        std::vector<Color> out;
        for (int i = 1; i <= Color::kCount; ++i) {
            if (mask_ & (1u << i)) out.emplace_back(i);
        }
        return out;
    }

    friend constexpr bool operator==(ColorSet, ColorSet) noexcept = default;

private:
    static constexpr std::uint16_t bit(Color c) noexcept { return static_cast<std::uint16_t>(1u << c.index()); }
    std::uint16_t mask_ = 0;
};

enum class CycleAction { next, prev, reset };

/// Command-tile click cycling. NEXT/PREV walk the available set with
/// wraparound, skipping colors outside it; RESET returns the neutral color.
inline Color cycle_color(ColorSet available, Color current, CycleAction action) {
    if (!available.contains(current)) {
        throw std::invalid_argument("color " + std::to_string(current.index()) + " is not in the available set");
    }
    if (action == CycleAction::reset) return kNeutral;
    const int step = action == CycleAction::next ? 1 : Color::kCount - 1;
    int i = current.index();
    do {
        i = (i - 1 + step) % Color::kCount + 1;
    } while (!available.contains(Color{i}));
    return Color{i};
}

/// Board-tile cycling used by CYCLE commands: advance `amount` steps over the
/// full palette with wraparound.
constexpr Color cycle_by(Color c, int amount) noexcept {
    const int shifted = ((c.index() - 1 + amount) % Color::kCount + Color::kCount) % Color::kCount;
    return *Color::from_index(shifted + 1);
}

}  // namespace mek
