#pragma once

// Board-transition functions for the reference mechanics, written directly
// against the grids with plain index arithmetic. They share no code with the
// interpreter so that they can serve as independent checks on it.

#include "mek/grid.hpp"

namespace mek::oracle {

inline constexpr int kAlive = 3;
inline constexpr int kN = 10;

namespace detail {

inline bool inside(int x, int y) { return x >= 0 && x < kN && y >= 0 && y < kN; }

inline int get(const Playground& g, int x, int y) { return g.tiles()[static_cast<std::size_t>(y * kN + x)].index(); }

inline void put(Playground& g, int x, int y, int c) { g.tiles()[static_cast<std::size_t>(y * kN + x)] = Color{c}; }

// N, E, S, W
inline constexpr int kDx[4] = {0, 1, 0, -1};
inline constexpr int kDy[4] = {-1, 0, 1, 0};

}  // namespace detail

/// Light blue (2) and dark blue (3) swap on the clicked tile; other colors
/// are left alone.
inline BoardState toggle(const BoardState& in, Vec2 click) {
    BoardState out = in;
    const int c = detail::get(in.playground, click.x, click.y);
    if (c == 2) detail::put(out.playground, click.x, click.y, 3);
    if (c == 3) detail::put(out.playground, click.x, click.y, 2);
    return out;
}

/// Sliding move: for every cardinal neighbour holding dark blue (3), the
/// neighbour becomes light blue (2) and the clicked tile dark blue. Reads see
/// the pre-click board; later directions overwrite earlier ones.
inline BoardState sliding_move(const BoardState& in, Vec2 click) {
    BoardState out = in;
    for (int d = 0; d < 4; ++d) {
        // Directions visited E, S, W, N (rotations 0, 2, 4, 6 of east).
        const int k = (d + 1) % 4;
        const int nx = click.x + detail::kDx[k];
        const int ny = click.y + detail::kDy[k];
        if (!detail::inside(nx, ny)) continue;
        if (detail::get(in.playground, nx, ny) != 3) continue;
        detail::put(out.playground, nx, ny, 2);
        detail::put(out.playground, click.x, click.y, 3);
    }
    return out;
}

/// Memory cells the Sokoban mechanic uses as constants: cell 7 holds the box
/// color and cell 8 the neutral color after every click.
inline constexpr int kSokobanBoxCell = 7;
inline constexpr int kSokobanEmptyCell = 8;

/// Sokoban push: a dark blue (3) box cardinally adjacent to the clicked tile
/// moves one tile further away iff the tile beyond it is neutral and on the
/// board. The vacated tile becomes neutral.
inline BoardState sokoban_push(const BoardState& in, Vec2 click) {
    BoardState out = in;
    out.memory.tiles()[kSokobanBoxCell - 1] = Color{3};
    out.memory.tiles()[kSokobanEmptyCell - 1] = Color{1};
    for (int d = 0; d < 4; ++d) {
        const int bx = click.x + detail::kDx[d];
        const int by = click.y + detail::kDy[d];
        const int tx = bx + detail::kDx[d];
        const int ty = by + detail::kDy[d];
        if (!detail::inside(bx, by) || !detail::inside(tx, ty)) continue;
        if (detail::get(in.playground, bx, by) != 3 || detail::get(in.playground, tx, ty) != 1) continue;
        detail::put(out.playground, bx, by, 1);
        detail::put(out.playground, tx, ty, 3);
    }
    return out;
}

/// One synchronous B3/S23 step. Dark blue (3) is alive, every other color
/// dead. Births become 3, deaths become neutral (1), other cells keep their
/// color. Cells outside the grid are dead.
inline Playground game_of_life(const Playground& in) {
    Playground out = in;
    for (int y = 0; y < kN; ++y) {
        for (int x = 0; x < kN; ++x) {
            int live = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if ((dx || dy) && detail::inside(x + dx, y + dy) && detail::get(in, x + dx, y + dy) == kAlive) ++live;
                }
            }
            const bool alive = detail::get(in, x, y) == kAlive;
            if (alive && live != 2 && live != 3) detail::put(out, x, y, 1);
            if (!alive && live == 3) detail::put(out, x, y, kAlive);
        }
    }
    return out;
}

}  // namespace mek::oracle
