#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "mek/color.hpp"
#include "mek/geometry.hpp"

namespace mek {

/// Fixed-size row-major grid of colors, filled with the neutral color by default.
template <int W, int H>
class Grid {
    static_assert(W >= 1 && H >= 1);

public:
    static constexpr int kWidth = W;
    static constexpr int kHeight = H;
    static constexpr int kSize = W * H;

    constexpr Grid() noexcept { tiles_.fill(kNeutral); }
    explicit constexpr Grid(Color fill) noexcept { tiles_.fill(fill); }

    static constexpr bool in_bounds(Vec2 p) noexcept { return p.x >= 0 && p.x < W && p.y >= 0 && p.y < H; }

    constexpr Color at(int x, int y) const noexcept { return tiles_[index(x, y)]; }
    constexpr Color& at(int x, int y) noexcept { return tiles_[index(x, y)]; }
    constexpr Color at(Vec2 p) const noexcept { return at(p.x, p.y); }
    constexpr Color& at(Vec2 p) noexcept { return at(p.x, p.y); }

    constexpr TileRead read(Vec2 p) const noexcept {
        if (!in_bounds(p)) return kOffBoard;
        return at(p);
    }

    std::span<const Color, kSize> tiles() const noexcept { return tiles_; }
    std::span<Color, kSize> tiles() noexcept { return tiles_; }

    friend constexpr bool operator==(const Grid&, const Grid&) noexcept = default;

private:
    static constexpr std::size_t index(int x, int y) noexcept { return static_cast<std::size_t>(y * W + x); }

    std::array<Color, kSize> tiles_{};
};

using Playground = Grid<10, 10>;
using MemoryGrid = Grid<3, 3>;
using CommandGrid = Grid<3, 3>;

/// Tile of a 3x3 grid addressed by its local offset.
template <int W, int H>
    requires(W == 3 && H == 3)
constexpr Color tile_at(const Grid<W, H>& g, LocalOffset o) noexcept {
    return g.at(o.dx() + 1, o.dy() + 1);
}

template <int W, int H>
    requires(W == 3 && H == 3)
constexpr Color& tile_at(Grid<W, H>& g, LocalOffset o) noexcept {
    return g.at(o.dx() + 1, o.dy() + 1);
}

/// Entire mutable game state.
struct BoardState {
    Playground playground;
    MemoryGrid memory;

    friend constexpr bool operator==(const BoardState&, const BoardState&) noexcept = default;
};

}  // namespace mek
