#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace mek {

/// Board coordinate: x grows rightward, y downward, origin top-left. May lie
/// outside any grid.
struct Vec2 {
    int x = 0;
    int y = 0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
    friend constexpr bool operator==(Vec2, Vec2) noexcept = default;
};

/// One of the nine cells of a 3x3 neighbourhood, relative to its center.
class LocalOffset {
public:
    constexpr LocalOffset() noexcept = default;
    constexpr LocalOffset(int dx, int dy) : dx_(dx), dy_(dy) {
        if (dx < -1 || dx > 1 || dy < -1 || dy > 1) {
            throw std::invalid_argument("local offset out of 3x3 range");
        }
    }

    constexpr int dx() const noexcept { return dx_; }
    constexpr int dy() const noexcept { return dy_; }
    constexpr bool is_center() const noexcept { return dx_ == 0 && dy_ == 0; }
    constexpr Vec2 vec() const noexcept { return {dx_, dy_}; }

    friend constexpr bool operator==(LocalOffset, LocalOffset) noexcept = default;

private:
    int dx_ = 0;
    int dy_ = 0;
};

namespace offsets {
inline constexpr LocalOffset nw{-1, -1};
inline constexpr LocalOffset n{0, -1};
inline constexpr LocalOffset ne{1, -1};
inline constexpr LocalOffset w{-1, 0};
inline constexpr LocalOffset center{0, 0};
inline constexpr LocalOffset e{1, 0};
inline constexpr LocalOffset sw{-1, 1};
inline constexpr LocalOffset s{0, 1};
inline constexpr LocalOffset se{1, 1};
}  // namespace offsets

/// The eight non-center offsets in clockwise order starting at NW.
inline constexpr std::array<LocalOffset, 8> kRing = {
    offsets::nw, offsets::n, offsets::ne, offsets::e, offsets::se, offsets::s, offsets::sw, offsets::w,
};

/// Position of a non-center offset in kRing.
constexpr int ring_index(LocalOffset o) {
    for (int i = 0; i < 8; ++i) {
        if (kRing[i] == o) return i;
    }
    throw std::invalid_argument("center offset has no ring index");
}

/// Row-major 1..9 enumeration of the 3x3 neighbourhood; 5 is the center.
constexpr int positional_index(LocalOffset o) noexcept { return (o.dy() + 1) * 3 + (o.dx() + 1) + 1; }

constexpr LocalOffset offset_at(int index) {
    if (index < 1 || index > 9) throw std::invalid_argument("positional index out of range 1..9");
    return LocalOffset{(index - 1) % 3 - 1, (index - 1) / 3 - 1};
}

/// Clockwise rotation in 45 degree steps along the 8-cell ring.
class Rotation {
public:
    constexpr Rotation() noexcept = default;
    explicit constexpr Rotation(int steps) noexcept : steps_(((steps % 8) + 8) % 8) {}

    constexpr int steps() const noexcept { return steps_; }

    friend constexpr Rotation operator+(Rotation a, Rotation b) noexcept { return Rotation{a.steps_ + b.steps_}; }
    friend constexpr bool operator==(Rotation, Rotation) noexcept = default;

private:
    int steps_ = 0;
};

constexpr LocalOffset rotate_offset(LocalOffset o, Rotation r) {
    if (o.is_center()) return o;
    return kRing[(ring_index(o) + r.steps()) % 8];
}

/// Rotation amount a marker tile encodes for ROTATE: clockwise ring distance
/// from N (N=0, NE=1, E=2, ..., NW=7).
constexpr Rotation rotation_of_marker(LocalOffset o) { return Rotation{ring_index(o) - ring_index(offsets::n)}; }

/// The positioned, rotated 3x3 lens through which commands address the
/// playground.
struct Focus {
    Vec2 position;
    Rotation rotation;

    friend constexpr bool operator==(const Focus&, const Focus&) noexcept = default;
};

constexpr Vec2 resolve(const Focus& focus, LocalOffset local) {
    return focus.position + rotate_offset(local, focus.rotation).vec();
}

}  // namespace mek
