#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

namespace mek {
namespace {

using namespace offsets;

TEST(Color, RejectsOutOfRangeIndexes) {
    EXPECT_THROW(Color{0}, std::invalid_argument);
    EXPECT_THROW(Color{10}, std::invalid_argument);
    EXPECT_FALSE(Color::from_index(0));
    EXPECT_EQ(Color::from_index(9), kMarker);
    EXPECT_EQ(Color{}.index(), 1);
}

TEST(Color, DistinguishedColors) {
    EXPECT_EQ(kNeutral.index(), 1);
    EXPECT_EQ(kLightBlue.index(), 2);
    EXPECT_EQ(kMarker.index(), 9);
    EXPECT_EQ(color_name(kNeutral), "light_green");
    EXPECT_EQ(color_name(kMarker), "dark_green");
}

TEST(Color, OffBoardNeverEqualsAColor) {
    const TileRead off = kOffBoard;
    for (int i = 1; i <= 9; ++i) EXPECT_NE(off, TileRead{Color{i}});
}

TEST(PositionalIndex, Examples) {
    EXPECT_EQ(positional_index(center), 5);
    EXPECT_EQ(positional_index(nw), 1);
    EXPECT_EQ(positional_index(e), 6);
    EXPECT_EQ(positional_index(n), 2);
    EXPECT_EQ(positional_index(se), 9);
}

TEST(PositionalIndex, RoundTripsAllNine) {
    for (int i = 1; i <= 9; ++i) EXPECT_EQ(positional_index(offset_at(i)), i);
    EXPECT_THROW(offset_at(0), std::invalid_argument);
    EXPECT_THROW(offset_at(10), std::invalid_argument);
}

TEST(RotateOffset, Examples) {
    EXPECT_EQ(rotate_offset(n, Rotation{2}), e);
    EXPECT_EQ(rotate_offset(center, Rotation{7}), center);
    EXPECT_EQ(rotate_offset(ne, Rotation{1}), e);
    EXPECT_EQ(rotate_offset(w, Rotation{1}), nw);
}

TEST(RotateOffset, IdentityAndInverse) {
    for (int i = 1; i <= 9; ++i) {
        const LocalOffset o = offset_at(i);
        EXPECT_EQ(rotate_offset(o, Rotation{0}), o);
        for (int k = 0; k < 8; ++k) {
            EXPECT_EQ(rotate_offset(rotate_offset(o, Rotation{k}), Rotation{8 - k}), o) << i << " k=" << k;
        }
    }
}

TEST(RotateOffset, GroupAction) {
    for (int i = 1; i <= 9; ++i) {
        for (int a = 0; a < 8; ++a) {
            for (int b = 0; b < 8; ++b) {
                const LocalOffset o = offset_at(i);
                EXPECT_EQ(rotate_offset(rotate_offset(o, Rotation{a}), Rotation{b}),
                          rotate_offset(o, Rotation{a} + Rotation{b}));
            }
        }
    }
}

TEST(RotateOffset, TwoStepsIsAQuarterTurn) {
    // 90 degrees clockwise in screen coordinates maps (dx, dy) to (-dy, dx).
    for (int i = 1; i <= 9; ++i) {
        const LocalOffset o = offset_at(i);
        EXPECT_EQ(rotate_offset(o, Rotation{2}), LocalOffset(-o.dy(), o.dx()));
    }
}

TEST(RotationMarker, RingDistanceFromNorth) {
    EXPECT_EQ(rotation_of_marker(n).steps(), 0);
    EXPECT_EQ(rotation_of_marker(ne).steps(), 1);
    EXPECT_EQ(rotation_of_marker(e).steps(), 2);
    EXPECT_EQ(rotation_of_marker(s).steps(), 4);
    EXPECT_EQ(rotation_of_marker(nw).steps(), 7);
}

TEST(AllowedColors, PerFamily) {
    EXPECT_EQ(allowed_colors(CommandKind{Family::write}), ColorSet({1, 2, 3, 4, 5, 6, 7, 8}));
    EXPECT_EQ(allowed_colors(CommandKind{Family::write, Variation::from_playground}), ColorSet::range(1, 8));
    EXPECT_EQ(allowed_colors(CommandKind{Family::check}), ColorSet::all());
    EXPECT_EQ(allowed_colors(CommandKind{Family::call}), ColorSet({1, 9}));
    EXPECT_EQ(allowed_colors(CommandKind{Family::shift}), ColorSet({1, 9}));
    EXPECT_EQ(allowed_colors(CommandKind{Family::rotate}), ColorSet::all());
    EXPECT_EQ(allowed_colors(CommandKind{Family::cycle, Variation::memory_instant}), ColorSet::range(1, 8));
    EXPECT_EQ(allowed_colors(CommandKind{}), ColorSet({1}));
}

TEST(AllowedColors, AlwaysContainsNeutral) {
    for (const CommandKind& k : all_kinds()) EXPECT_TRUE(allowed_colors(k).contains(kNeutral)) << k.name();
}

TEST(CommandKind, RejectsForeignVariation) {
    EXPECT_THROW(CommandKind(Family::shift, Variation::instant), std::invalid_argument);
    EXPECT_THROW(CommandKind(Family::write, Variation::negated), std::invalid_argument);
    EXPECT_NO_THROW(CommandKind(Family::cycle, Variation::memory_instant));
    // EMPTY + 6 WRITE + 6 CHECK + SHIFT + ROTATE + 4 CYCLE + CALL
    EXPECT_EQ(all_kinds().size(), 20u);
}

TEST(CycleColor, Examples) {
    EXPECT_EQ(cycle_color(ColorSet::range(1, 8), Color{8}, CycleAction::next), Color{1});
    EXPECT_EQ(cycle_color(ColorSet::all(), Color{2}, CycleAction::prev), Color{1});
    EXPECT_EQ(cycle_color(ColorSet{1, 9}, Color{1}, CycleAction::next), Color{9});
    EXPECT_EQ(cycle_color(ColorSet::all(), Color{5}, CycleAction::reset), Color{1});
    EXPECT_EQ(cycle_color(ColorSet::all(), Color{1}, CycleAction::prev), Color{9});
}

TEST(CycleColor, RejectsColorOutsideSet) {
    EXPECT_THROW(cycle_color(ColorSet{1, 9}, Color{5}, CycleAction::next), std::invalid_argument);
}

TEST(CycleColor, NextPrevInverseAndFullCycleIdentity) {
    for (const CommandKind& k : all_kinds()) {
        const ColorSet set = allowed_colors(k);
        for (Color c : set.colors()) {
            EXPECT_EQ(cycle_color(set, cycle_color(set, c, CycleAction::next), CycleAction::prev), c);
            Color walk = c;
            for (int i = 0; i < set.size(); ++i) walk = cycle_color(set, walk, CycleAction::next);
            EXPECT_EQ(walk, c) << k.name();
        }
    }
}

TEST(CycleColor, WriteTileLeftClickSequence) {
    // A WRITE tile visits 2..8 and returns to neutral on the eighth click.
    const ColorSet set = allowed_colors(CommandKind{Family::write});
    Color c = kNeutral;
    for (int expected = 2; expected <= 8; ++expected) {
        c = cycle_color(set, c, CycleAction::next);
        EXPECT_EQ(c.index(), expected);
    }
    EXPECT_EQ(cycle_color(set, c, CycleAction::next), kNeutral);
}

TEST(CycleBy, WrapsOverFullPalette) {
    EXPECT_EQ(cycle_by(Color{3}, 2), Color{5});
    EXPECT_EQ(cycle_by(Color{9}, 2), Color{2});
    EXPECT_EQ(cycle_by(Color{8}, 2), Color{1});
    EXPECT_EQ(cycle_by(Color{3}, 7), Color{1});
    for (int i = 1; i <= 9; ++i) EXPECT_EQ(cycle_by(Color{i}, 9), Color{i});
}

TEST(ValidateMechanic, AllEmptyIsValid) { EXPECT_TRUE(validate_mechanic(Mechanic{}).empty()); }

TEST(ValidateMechanic, CallWithTwoMarkers) {
    Mechanic m;
    m.rule(3)[4] = make_command(CommandKind{Family::call}, {{n, kMarker}, {s, kMarker}});
    const auto v = validate_mechanic(m);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].rule, 3);
    EXPECT_EQ(v[0].command, 5);
    EXPECT_FALSE(v[0].tile);
}

TEST(ValidateMechanic, WriteWithMarker) {
    Mechanic m;
    m.rule(1)[0] = Command{CommandKind{Family::write}, {}};
    m.rule(1)[0].at(ne) = kMarker;
    const auto v = validate_mechanic(m);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0].rule, 1);
    EXPECT_EQ(v[0].command, 1);
    ASSERT_TRUE(v[0].tile);
    EXPECT_EQ(positional_index(*v[0].tile), 3);
    EXPECT_NE(v[0].describe().find("rule 1 command 1 tile 3"), std::string::npos);
}

TEST(ValidateMechanic, ShiftWithColorAndBrushWithMarker) {
    Mechanic m;
    m.rule(9)[8] = Command{CommandKind{Family::shift}, {}};
    m.rule(9)[8].at(center) = kRed;
    m.brush.at(0, 0) = kMarker;
    const auto v = validate_mechanic(m);
    ASSERT_EQ(v.size(), 2u);
    EXPECT_EQ(v[0].rule, 0);
    EXPECT_EQ(v[1].rule, 9);
    EXPECT_EQ(v[1].command, 9);
}

TEST(ValidateMechanic, ValidImpliesAllowedColors) {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        Mechanic m = testing::random_mechanic(rng, 0.2);
        // Inject arbitrary colors into a few tiles, then check the implication.
        for (int k = 0; k < 3; ++k) {
            m.rules[rng() % 9][rng() % 9].tiles.tiles()[rng() % 9] = testing::random_color(rng);
        }
        if (!validate_mechanic(m).empty()) continue;
        for (const Rule& r : m.rules) {
            for (const Command& c : r) {
                for (Color t : c.tiles.tiles()) EXPECT_TRUE(allowed_colors(c.kind).contains(t));
            }
        }
    }
}

TEST(ValidateMechanic, GeneratorProducesValidMechanics) {
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) EXPECT_TRUE(validate_mechanic(testing::random_mechanic(rng)).empty());
}

TEST(Counts, RulesAndCommands) {
    Mechanic m;
    EXPECT_EQ(rule_count(m), 0);
    m.rule(2)[3] = make_command(CommandKind{Family::check});
    m.rule(7)[0] = make_command(CommandKind{Family::write});
    m.rule(7)[8] = make_command(CommandKind{Family::write});
    EXPECT_EQ(rule_count(m), 2);
    EXPECT_EQ(command_count(m), 3);
}

}  // namespace
}  // namespace mek
