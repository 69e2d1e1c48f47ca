#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include <unistd.h>

#include "test_util.hpp"

namespace mek {
namespace {

namespace fs = std::filesystem;
using script::Status;

class ScriptRun : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("mek-script-" + std::to_string(::getpid()) + "-" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    void write_board(const std::string& name, const BoardState& b) { write_file((dir_ / name).string(), encode_board(b)); }

    script::Report run(const Mechanic& m, const BoardState& b, std::string_view text, std::ostream* trace = nullptr) {
        return script::run(m, b, script::parse(text), dir_, trace);
    }

    fs::path dir_;
};

BoardState filled(Color c) {
    BoardState b;
    for (Color& t : b.playground.tiles()) t = c;
    return b;
}

// ---------------------------------------------------------------- parse

TEST(ScriptParse, Directives) {
    const auto lines = script::parse("# header\nCLICK 4 5\n\n  MODE brush   # trailing\nSWEEP 3\nASSERT_BOARD a.mekboard\nDUMP out/b.mekboard");
    ASSERT_EQ(lines.size(), 5u);
    EXPECT_EQ(lines[0].number, 2);
    EXPECT_EQ(std::get<script::Click>(lines[0].directive).pos, (Vec2{4, 5}));
    EXPECT_EQ(std::get<script::SetMode>(lines[1].directive).mode, Mode::brush);
    EXPECT_EQ(std::get<script::Sweep>(lines[2].directive).count, 3);
    EXPECT_EQ(std::get<script::AssertBoard>(lines[3].directive).path, "a.mekboard");
    EXPECT_EQ(std::get<script::Dump>(lines[4].directive).path, "out/b.mekboard");
    EXPECT_EQ(lines[4].number, 7);
}

TEST(ScriptParse, Rejections) {
    const std::pair<const char*, int> cases[] = {
        {"CLICK 10 0", 1}, {"CLICK -1 0", 1},     {"CLICK 1", 1},         {"CLICK a b", 1},
        {"\nSWEEP 0", 2},  {"SWEEP x", 1},        {"MODE turbo", 1},      {"JUMP 1", 1},
        {"DUMP", 1},       {"CLICK 1 2 3", 1},    {"click 1 2", 1},       {"\n\nCLICK 1.5 2", 3},
    };
    for (const auto& [text, line] : cases) {
        try {
            script::parse(text);
            ADD_FAILURE() << text;
        } catch (const script::ScriptError& e) {
            EXPECT_EQ(e.line(), line) << text;
        }
    }
}

// ---------------------------------------------------------------- run

TEST_F(ScriptRun, ToggleAssertPasses) {
    BoardState expected = filled(kLightBlue);
    expected.playground.at(4, 4) = kDarkBlue;
    write_board("expected.mekboard", expected);
    const auto r = run(corpus::toggle(), filled(kLightBlue), "CLICK 4 4\nASSERT_BOARD expected.mekboard\n");
    EXPECT_EQ(r.status, Status::ok) << r.message;
    EXPECT_EQ(r.board, expected);
}

TEST_F(ScriptRun, AssertFailureNamesFirstDifference) {
    write_board("expected.mekboard", filled(kLightBlue));
    const auto r =
        run(corpus::toggle(), filled(kLightBlue), "CLICK 7 2\nCLICK 3 5\nASSERT_BOARD expected.mekboard\nCLICK 0 0\n");
    EXPECT_EQ(r.status, Status::assertion_failure);
    EXPECT_EQ(r.failed_line, 3);
    EXPECT_NE(r.message.find("playground (7,2): expected 2, found 3"), std::string::npos) << r.message;
    EXPECT_EQ(r.board.playground.at(0, 0), kLightBlue) << "fails fast";
}

TEST_F(ScriptRun, GameOfLifeBlinkerPeriodTwo) {
    BoardState b;
    b.playground.at(4, 3) = kDarkBlue;
    b.playground.at(4, 4) = kDarkBlue;
    b.playground.at(4, 5) = kDarkBlue;
    // The sweep leaves constants in memory; assert the playground only.
    const auto r = run(corpus::game_of_life(), b, "SWEEP 2\nDUMP after.mekboard\n");
    ASSERT_EQ(r.status, Status::ok) << r.message;
    EXPECT_EQ(r.board.playground, b.playground);
    EXPECT_EQ(decode_board(read_file((dir_ / "after.mekboard").string())), r.board);
}

TEST_F(ScriptRun, SelfRecursiveCallIsEngineError) {
    Mechanic m;
    m.rule(1)[0] = make_command(CommandKind{Family::call}, {{offsets::nw, kMarker}});
    const auto r = run(m, BoardState{}, "CLICK 1 1\n");
    EXPECT_EQ(r.status, Status::engine_error);
    EXPECT_EQ(r.failed_line, 1);
    EXPECT_EQ(r.board, BoardState{});
}

TEST_F(ScriptRun, MissingOrBadExpectedBoardIsDecodeFailure) {
    EXPECT_EQ(run(corpus::toggle(), BoardState{}, "ASSERT_BOARD nope.mekboard").status, Status::decode_failure);
    write_file((dir_ / "bad.mekboard").string(), "12\n");
    EXPECT_EQ(run(corpus::toggle(), BoardState{}, "ASSERT_BOARD bad.mekboard").status, Status::decode_failure);
}

TEST_F(ScriptRun, ModeSwitchUsesBrush) {
    Mechanic m = corpus::toggle();
    const auto r = run(m, filled(kLightBlue), "MODE brush\nCLICK 2 2\nMODE normal\nCLICK 3 3\n");
    EXPECT_EQ(r.board.playground.at(2, 2), kDarkBlue) << "toggle brush paints dark blue";
    EXPECT_EQ(r.board.playground.at(3, 3), kDarkBlue);
    EXPECT_EQ(r.board.playground.at(2, 3), kLightBlue);
}

TEST_F(ScriptRun, TraceLinesCarryScriptLine) {
    std::ostringstream trace;
    const auto r = run(corpus::toggle(), filled(kLightBlue), "# comment\nCLICK 4 4\n", &trace);
    ASSERT_EQ(r.status, Status::ok);
    std::istringstream in(trace.str());
    int count = 0;
    for (std::string line; std::getline(in, line);) {
        const auto j = nlohmann::json::parse(line);
        EXPECT_EQ(j["line"], 2);
        ++count;
    }
    // Rule 1: CHECK passes, WRITE scheduled. Rule 2: CHECK fails.
    EXPECT_EQ(count, 3);
}

TEST_F(ScriptRun, MatchesDirectEngineCallsAndIsReplayable) {
    std::mt19937 rng(44);
    for (int i = 0; i < 20; ++i) {
        const Mechanic m = testing::random_mechanic(rng, 0.6);
        const BoardState start = testing::random_board(rng);
        std::string text;
        BoardState direct = start;
        bool failed = false;
        for (int k = 0; k < 10; ++k) {
            const Vec2 p = testing::random_position(rng);
            text += "CLICK " + std::to_string(p.x) + " " + std::to_string(p.y) + "\n";
            if (failed) continue;
            const auto res = execute_click(direct, m, p, Mode::normal);
            if (res.error) {
                failed = true;
            } else {
                direct = res.board;
            }
        }
        const auto a = run(m, start, text);
        const auto b = run(m, start, text);
        EXPECT_EQ(a.board, direct);
        EXPECT_EQ(a.status == Status::engine_error, failed);
        EXPECT_EQ(a.board, b.board);
        EXPECT_EQ(a.message, b.message);
    }
}

}  // namespace
}  // namespace mek
