#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <variant>
#include <vector>

#include "mek/color.hpp"
#include "mek/command.hpp"
#include "mek/geometry.hpp"
#include "mek/grid.hpp"

namespace mek {

enum class Mode { normal, brush };

constexpr std::string_view mode_name(Mode m) noexcept { return m == Mode::normal ? "normal" : "brush"; }

enum class EngineError { budget_exceeded, call_depth_exceeded };

constexpr std::string_view error_name(EngineError e) noexcept {
    return e == EngineError::budget_exceeded ? "BUDGET_EXCEEDED" : "CALL_DEPTH_EXCEEDED";
}

struct Limits {
    int max_call_depth = 16;
    std::int64_t max_steps = 100'000;
};

struct ExecutionOptions {
    Limits limits;
    bool record_trace = true;
};

enum class Target { playground, memory };

struct SetColor {
    Color color;
    friend bool operator==(const SetColor&, const SetColor&) = default;
};

struct CycleBy {
    int amount = 0;
    friend bool operator==(const CycleBy&, const CycleBy&) = default;
};

/// Effect queued during execution and applied at flush, in scheduling order.
/// Playground positions may be off-board; those are dropped at flush.
struct DeferredAction {
    Target target = Target::playground;
    Vec2 position;
    std::variant<SetColor, CycleBy> effect;

    friend bool operator==(const DeferredAction&, const DeferredAction&) = default;
};

enum class Outcome { applied, scheduled, terminated_branch, skipped, called };

constexpr std::string_view outcome_name(Outcome o) noexcept {
    switch (o) {
        case Outcome::applied: return "APPLIED";
        case Outcome::scheduled: return "SCHEDULED";
        case Outcome::terminated_branch: return "TERMINATED_BRANCH";
        case Outcome::skipped: return "SKIPPED";
        case Outcome::called: return "CALLED";
    }
    return "?";
}

/// One fork taken on the way to a command: the 1-based index of the SHIFT or
/// ROTATE command that forked and the 0-based branch taken.
struct ForkStep {
    int command = 0;
    int branch = 0;
    friend auto operator<=>(const ForkStep&, const ForkStep&) = default;
};

/// Record of one executed command. rule == 0 marks the brush.
struct TraceEvent {
    int rule = 0;
    int command = 0;
    std::vector<ForkStep> path;
    CommandKind kind;
    Outcome outcome = Outcome::applied;
    int called_rule = 0;
    int call_depth = 0;
    Focus focus;
    Vec2 origin;

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct ExecutionResult {
    BoardState board;
    std::vector<TraceEvent> trace;
    std::optional<EngineError> error;
    std::int64_t steps = 0;

    friend bool operator==(const ExecutionResult&, const ExecutionResult&) = default;
};

using ClickResult = ExecutionResult;

class EngineFailure : public std::runtime_error {
public:
    explicit EngineFailure(EngineError e) : std::runtime_error(std::string(error_name(e))), error_(e) {}
    EngineError error() const noexcept { return error_; }

private:
    EngineError error_;
};

inline void apply_action(BoardState& board, const DeferredAction& a) {
    Color* tile = nullptr;
    if (a.target == Target::playground) {
        if (!Playground::in_bounds(a.position)) return;
        tile = &board.playground.at(a.position);
    } else {
        if (!MemoryGrid::in_bounds(a.position)) return;
        tile = &board.memory.at(a.position);
    }
    if (const auto* set = std::get_if<SetColor>(&a.effect)) {
        *tile = set->color;
    } else {
        *tile = cycle_by(*tile, std::get<CycleBy>(a.effect).amount);
    }
}

/// Memory is addressed by identity: local offset p is memory cell p.
constexpr Vec2 memory_position(LocalOffset p) noexcept { return {p.dx() + 1, p.dy() + 1}; }

/// Transient interpreter state for one click or sweep. Owns a working copy of
/// the board; the mechanic must outlive it. Not thread-safe.
class Interpreter {
public:
    enum class Flow { proceed, terminate };

    Interpreter(const BoardState& board, const Mechanic& mechanic, ExecutionOptions options = {})
        : board_(board), mechanic_(&mechanic), options_(options) {}

    const BoardState& board() const noexcept { return board_; }
    BoardState& board() noexcept { return board_; }
    const Focus& focus() const noexcept { return focus_; }
    void set_focus(Focus f) noexcept { focus_ = f; }
    const std::vector<DeferredAction>& queue() const noexcept { return queue_; }
    const std::vector<TraceEvent>& trace() const noexcept { return trace_; }
    std::vector<TraceEvent>& trace() noexcept { return trace_; }
    std::int64_t steps_used() const noexcept { return steps_; }
    int call_depth() const noexcept { return depth_; }

    TileRead read_playground(LocalOffset local) const noexcept { return board_.playground.read(resolve(focus_, local)); }

    void exec_write(const Command& cmd) {
        const Variation v = cmd.kind.variation();
        for (int i = 1; i <= 9; ++i) {
            const LocalOffset p = offset_at(i);
            const Color c = cmd.at(p);
            if (c == kNeutral) continue;
            switch (v) {
                case Variation::plain: emit({Target::playground, resolve(focus_, p), SetColor{c}}, false); break;
                case Variation::instant: emit({Target::playground, resolve(focus_, p), SetColor{c}}, true); break;
                case Variation::to_memory: emit({Target::memory, memory_position(p), SetColor{c}}, false); break;
                case Variation::to_memory_instant:
                    emit({Target::memory, memory_position(p), SetColor{c}}, true);
                    break;
                case Variation::from_memory: {
                    const Color src = board_.memory.at(memory_position(offset_at(c.index())));
                    emit({Target::playground, resolve(focus_, p), SetColor{src}}, false);
                    break;
                }
                case Variation::from_playground: {
                    const TileRead src = read_playground(offset_at(c.index()));
                    if (src) emit({Target::memory, memory_position(p), SetColor{*src}}, false);
                    break;
                }
                default: break;
            }
        }
    }

    Flow exec_check(const Command& cmd) const {
        const Variation v = cmd.kind.variation();
        int compared = 0;
        bool all_match = true;
        for (int i = 1; i <= 9; ++i) {
            const LocalOffset p = offset_at(i);
            const Color c = cmd.at(p);
            if (c == kNeutral) continue;
            TileRead target;
            TileRead source = c;
            switch (v) {
                case Variation::plain:
                case Variation::negated: target = read_playground(p); break;
                case Variation::memory:
                case Variation::memory_not: target = board_.memory.at(memory_position(p)); break;
                case Variation::with_memory:
                case Variation::with_memory_not:
                    target = read_playground(p);
                    source = board_.memory.at(memory_position(offset_at(c.index())));
                    break;
                default: break;
            }
            ++compared;
            if (target != source) all_match = false;
        }
        const bool negated = v == Variation::negated || v == Variation::memory_not || v == Variation::with_memory_not;
        if (negated) return compared > 0 && all_match ? Flow::terminate : Flow::proceed;
        return all_match ? Flow::proceed : Flow::terminate;
    }

    void exec_cycle(const Command& cmd) {
        const Variation v = cmd.kind.variation();
        const bool to_memory = v == Variation::memory || v == Variation::memory_instant;
        const bool instant = v == Variation::instant || v == Variation::memory_instant;
        for (int i = 1; i <= 9; ++i) {
            const LocalOffset p = offset_at(i);
            const Color c = cmd.at(p);
            if (c == kNeutral) continue;
            const Vec2 pos = to_memory ? memory_position(p) : resolve(focus_, p);
            emit({to_memory ? Target::memory : Target::playground, pos, CycleBy{c.index()}}, instant);
        }
    }

    /// Runs the rule named by the CALL marker with the current focus. A
    /// terminated branch inside the callee does not affect the caller.
    void exec_call(const Command& cmd) {
        const int target = call_target(cmd);
        if (target == 0) return;
        if (depth_ + 1 > options_.limits.max_call_depth) throw EngineFailure(EngineError::call_depth_exceeded);
        const Focus saved = focus_;
        const int saved_rule = rule_;
        ++depth_;
        execute_rule(target);
        --depth_;
        rule_ = saved_rule;
        focus_ = saved;
    }

    /// Executes rule[index] (a SHIFT) and the remainder of the rule once per
    /// marked direction, restoring the focus between directions.
    void exec_shift(const Rule& rule, int index) {
        const Command& cmd = rule[static_cast<std::size_t>(index)];
        std::vector<LocalOffset> dirs;
        if (cmd.at(offsets::center) != kMarker) {
            for (LocalOffset o : kRing) {
                if (cmd.at(o) == kMarker) dirs.push_back(o);
            }
        }
        record(index, cmd.kind, Outcome::applied);
        if (dirs.empty()) {
            run_suffix(rule, index + 1);
            return;
        }
        for (int b = 0; b < static_cast<int>(dirs.size()); ++b) {
            const Focus saved = focus_;
            focus_.position = focus_.position + rotate_offset(dirs[b], focus_.rotation).vec();
            fork_into(rule, index, b);
            focus_ = saved;
        }
    }

    /// Executes rule[index] (a ROTATE) and the remainder of the rule once per
    /// marked rotation amount, in ascending order.
    void exec_rotate(const Rule& rule, int index) {
        const Command& cmd = rule[static_cast<std::size_t>(index)];
        std::vector<Rotation> amounts;
        if (cmd.at(offsets::center) != kMarker) {
            // Ring order starting at N is ascending rotation amount.
            for (int k = 0; k < 8; ++k) {
                const LocalOffset o = kRing[(ring_index(offsets::n) + k) % 8];
                if (cmd.at(o) == kMarker) amounts.push_back(rotation_of_marker(o));
            }
        }
        record(index, cmd.kind, Outcome::applied);
        if (amounts.empty()) {
            run_suffix(rule, index + 1);
            return;
        }
        for (int b = 0; b < static_cast<int>(amounts.size()); ++b) {
            const Focus saved = focus_;
            focus_.rotation = focus_.rotation + amounts[b];
            fork_into(rule, index, b);
            focus_ = saved;
        }
    }

    /// Executes a rule (1..9) from its first command with the current focus.
    void execute_rule(int rule_index) {
        rule_ = rule_index;
        run_suffix(mechanic_->rule(rule_index), 0);
    }

    /// All nine rules for a click at `pos`, each starting from a fresh focus.
    void run_rule_phase(Vec2 pos) {
        origin_ = pos;
        for (int r = 1; r <= kRuleCount; ++r) {
            focus_ = Focus{pos, Rotation{0}};
            execute_rule(r);
        }
    }

    void run_brush(Vec2 pos) {
        origin_ = pos;
        focus_ = Focus{pos, Rotation{0}};
        rule_ = 0;
        charge();
        const Command brush{CommandKind{Family::write, Variation::instant}, mechanic_->brush};
        exec_write(brush);
        record(0, CommandKind{Family::write}, Outcome::applied);
    }

    void flush() {
        for (const DeferredAction& a : queue_) apply_action(board_, a);
        queue_.clear();
    }

private:
    static int call_target(const Command& cmd) {
        for (int i = 1; i <= 9; ++i) {
            if (cmd.at(offset_at(i)) == kMarker) return i;
        }
        return 0;
    }

    void emit(DeferredAction a, bool instant) {
        if (instant) {
            apply_action(board_, a);
        } else {
            queue_.push_back(a);
        }
    }

    void charge() {
        if (steps_ >= options_.limits.max_steps) throw EngineFailure(EngineError::budget_exceeded);
        ++steps_;
    }

    void fork_into(const Rule& rule, int index, int branch) {
        path_.push_back({index + 1, branch});
        run_suffix(rule, index + 1);
        path_.pop_back();
    }

    void record(int index, CommandKind kind, Outcome outcome, int called = 0) {
        if (!options_.record_trace) return;
        trace_.push_back(TraceEvent{rule_, index + 1, path_, kind, outcome, called, depth_, focus_, origin_});
    }

    static bool is_instant(Variation v) noexcept {
        return v == Variation::instant || v == Variation::to_memory_instant || v == Variation::memory_instant;
    }

    void run_suffix(const Rule& rule, int start) {
        for (int i = start; i < kRuleLength; ++i) {
            const Command& cmd = rule[static_cast<std::size_t>(i)];
            if (cmd.is_empty()) continue;
            charge();
            switch (cmd.kind.family()) {
                case Family::write:
                    exec_write(cmd);
                    record(i, cmd.kind, is_instant(cmd.kind.variation()) ? Outcome::applied : Outcome::scheduled);
                    break;
                case Family::cycle:
                    exec_cycle(cmd);
                    record(i, cmd.kind, is_instant(cmd.kind.variation()) ? Outcome::applied : Outcome::scheduled);
                    break;
                case Family::check:
                    if (exec_check(cmd) == Flow::terminate) {
                        record(i, cmd.kind, Outcome::terminated_branch);
                        return;
                    }
                    record(i, cmd.kind, Outcome::applied);
                    break;
                case Family::call: {
                    const int target = call_target(cmd);
                    record(i, cmd.kind, target == 0 ? Outcome::skipped : Outcome::called, target);
                    exec_call(cmd);
                    break;
                }
                case Family::shift: exec_shift(rule, i); return;
                case Family::rotate: exec_rotate(rule, i); return;
                case Family::empty: break;
            }
        }
    }

    BoardState board_;
    const Mechanic* mechanic_;
    ExecutionOptions options_;
    Focus focus_;
    Vec2 origin_;
    int rule_ = 0;
    int depth_ = 0;
    std::int64_t steps_ = 0;
    std::vector<ForkStep> path_;
    std::vector<DeferredAction> queue_;
    std::vector<TraceEvent> trace_;
};

namespace detail {

template <typename Body>
ExecutionResult run_guarded(const BoardState& board, const Mechanic& mechanic, const ExecutionOptions& options,
                            Body&& body) {
    Interpreter interp(board, mechanic, options);
    ExecutionResult result;
    try {
        body(interp);
        interp.flush();
        result.board = interp.board();
    } catch (const EngineFailure& failure) {
        result.board = board;
        result.error = failure.error();
    }
    result.trace = std::move(interp.trace());
    result.steps = interp.steps_used();
    return result;
}

}  // namespace detail

/// One playground click. NORMAL runs every rule then flushes the deferred
/// queue; BRUSH writes the brush instantly. On error the input board is
/// returned unchanged.
inline ClickResult execute_click(const BoardState& board, const Mechanic& mechanic, Vec2 pos, Mode mode,
                                 const ExecutionOptions& options = {}) {
    if (!Playground::in_bounds(pos)) throw std::out_of_range("click position outside the playground");
    return detail::run_guarded(board, mechanic, options, [&](Interpreter& interp) {
        if (mode == Mode::brush) {
            interp.run_brush(pos);
        } else {
            interp.run_rule_phase(pos);
        }
    });
}

/// Whole-board synchronous update: the rule phase for every playground tile
/// in row-major order against one shared deferred queue, flushed once.
/// INSTANT effects still apply immediately and memory carries across tiles.
inline ExecutionResult sweep(const BoardState& board, const Mechanic& mechanic, const ExecutionOptions& options = {}) {
    return detail::run_guarded(board, mechanic, options, [&](Interpreter& interp) {
        for (int y = 0; y < Playground::kHeight; ++y) {
            for (int x = 0; x < Playground::kWidth; ++x) interp.run_rule_phase({x, y});
        }
    });
}

}  // namespace mek
