#pragma once

#include <charconv>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mek/engine.hpp"
#include "mek/persistence.hpp"
#include "mek/wire.hpp"

namespace mek::script {

struct Click {
    Vec2 pos;
};
struct SetMode {
    Mode mode;
};
struct Sweep {
    int count = 1;
};
struct AssertBoard {
    std::string path;
};
struct Dump {
    std::string path;
};

using Directive = std::variant<Click, SetMode, Sweep, AssertBoard, Dump>;

struct Line {
    int number = 0;
    Directive directive;
};

class ScriptError : public std::runtime_error {
public:
    ScriptError(int line, const std::string& what)
        : std::runtime_error("script line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

namespace detail {

inline std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

inline std::optional<int> parse_int(const std::string& s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace detail

/// One directive per line; '#' starts a comment.
///   CLICK x y | MODE normal|brush | SWEEP n | ASSERT_BOARD path | DUMP path
inline std::vector<Line> parse(std::string_view text) {
    std::vector<Line> out;
    int number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(start, nl - start);
        start = nl + 1;
        ++number;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto words = detail::split_words(line);
        if (words.empty()) continue;
        const std::string& op = words[0];
        const auto arity = [&](std::size_t n) {
            if (words.size() != n + 1) {
                throw ScriptError(number, op + " expects " + std::to_string(n) + " argument(s)");
            }
        };
        if (op == "CLICK") {
            arity(2);
            const auto x = detail::parse_int(words[1]);
            const auto y = detail::parse_int(words[2]);
            if (!x || !y || !Playground::in_bounds({*x, *y})) {
                throw ScriptError(number, "CLICK coordinates must be integers in 0..9");
            }
            out.push_back({number, Click{{*x, *y}}});
        } else if (op == "MODE") {
            arity(1);
            if (words[1] == "normal") {
                out.push_back({number, SetMode{Mode::normal}});
            } else if (words[1] == "brush") {
                out.push_back({number, SetMode{Mode::brush}});
            } else {
                throw ScriptError(number, "MODE must be normal or brush");
            }
        } else if (op == "SWEEP") {
            arity(1);
            const auto n = detail::parse_int(words[1]);
            if (!n || *n < 1) throw ScriptError(number, "SWEEP count must be a positive integer");
            out.push_back({number, Sweep{*n}});
        } else if (op == "ASSERT_BOARD") {
            arity(1);
            out.push_back({number, AssertBoard{words[1]}});
        } else if (op == "DUMP") {
            arity(1);
            out.push_back({number, Dump{words[1]}});
        } else {
            throw ScriptError(number, "unknown directive " + op);
        }
        if (nl == text.size()) break;
    }
    return out;
}

enum class Status { ok = 0, decode_failure = 1, assertion_failure = 2, engine_error = 3 };

struct Report {
    Status status = Status::ok;
    std::string message;
    BoardState board;
    int failed_line = 0;
};

inline std::optional<std::pair<std::string, Vec2>> first_difference(const BoardState& expected, const BoardState& actual) {
    for (int y = 0; y < Playground::kHeight; ++y) {
        for (int x = 0; x < Playground::kWidth; ++x) {
            if (expected.playground.at(x, y) != actual.playground.at(x, y)) return std::pair{"playground", Vec2{x, y}};
        }
    }
    for (int y = 0; y < MemoryGrid::kHeight; ++y) {
        for (int x = 0; x < MemoryGrid::kWidth; ++x) {
            if (expected.memory.at(x, y) != actual.memory.at(x, y)) return std::pair{"memory", Vec2{x, y}};
        }
    }
    return std::nullopt;
}

/// Executes directives against one evolving board. Relative ASSERT_BOARD and
/// DUMP paths resolve against `base_dir`. Trace events are written to
/// `trace_out` as JSON lines when given.
inline Report run(const Mechanic& mechanic, BoardState board, const std::vector<Line>& lines,
                  const std::filesystem::path& base_dir, std::ostream* trace_out = nullptr) {
    Report report;
    Mode mode = Mode::normal;
    ExecutionOptions options;
    options.record_trace = trace_out != nullptr;
    const auto resolve_path = [&](const std::string& p) {
        const std::filesystem::path path(p);
        return (path.is_absolute() ? path : base_dir / path).string();
    };
    const auto emit_trace = [&](int line, const ExecutionResult& r) {
        if (!trace_out) return;
        for (const TraceEvent& e : r.trace) {
            auto j = to_json(e);
            j["line"] = line;
            *trace_out << j.dump() << '\n';
        }
    };
    const auto fail_engine = [&](int line, EngineError e) {
        report.status = Status::engine_error;
        report.failed_line = line;
        report.message = "line " + std::to_string(line) + ": engine error " + std::string(error_name(e));
    };

    for (const Line& line : lines) {
        if (const auto* click = std::get_if<Click>(&line.directive)) {
            const ExecutionResult r = execute_click(board, mechanic, click->pos, mode, options);
            emit_trace(line.number, r);
            if (r.error) {
                fail_engine(line.number, *r.error);
                break;
            }
            board = r.board;
        } else if (const auto* m = std::get_if<SetMode>(&line.directive)) {
            mode = m->mode;
        } else if (const auto* s = std::get_if<Sweep>(&line.directive)) {
            bool failed = false;
            for (int i = 0; i < s->count && !failed; ++i) {
                const ExecutionResult r = sweep(board, mechanic, options);
                emit_trace(line.number, r);
                if (r.error) {
                    fail_engine(line.number, *r.error);
                    failed = true;
                } else {
                    board = r.board;
                }
            }
            if (failed) break;
        } else if (const auto* a = std::get_if<AssertBoard>(&line.directive)) {
            BoardState expected;
            try {
                expected = decode_board(read_file(resolve_path(a->path)));
            } catch (const std::exception& e) {
                report.status = Status::decode_failure;
                report.failed_line = line.number;
                report.message = "line " + std::to_string(line.number) + ": " + e.what();
                break;
            }
            if (const auto diff = first_difference(expected, board)) {
                const auto& [grid, p] = *diff;
                const Color want = grid == "playground" ? expected.playground.at(p) : expected.memory.at(p);
                const Color got = grid == "playground" ? board.playground.at(p) : board.memory.at(p);
                report.status = Status::assertion_failure;
                report.failed_line = line.number;
                report.message = "line " + std::to_string(line.number) + ": ASSERT_BOARD failed at " + grid + " (" +
                                 std::to_string(p.x) + "," + std::to_string(p.y) + "): expected " +
                                 std::to_string(want.index()) + ", found " + std::to_string(got.index());
                break;
            }
        } else if (const auto* d = std::get_if<Dump>(&line.directive)) {
            write_file(resolve_path(d->path), encode_board(board));
        }
    }
    report.board = board;
    return report;
}

}  // namespace mek::script
