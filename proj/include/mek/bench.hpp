#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

#include "mek/engine.hpp"

namespace mek {

struct BenchReport {
    std::int64_t operations = 0;
    double seconds = 0.0;
    std::optional<EngineError> error;

    double rate() const { return seconds > 0.0 ? static_cast<double>(operations) / seconds : 0.0; }
};

/// Times `clicks` NORMAL clicks against an evolving board, visiting the
/// playground tiles in row-major order. Traces are recorded as in
/// interactive use.
inline BenchReport bench_clicks(const Mechanic& mechanic, BoardState board, std::int64_t clicks) {
    BenchReport report;
    const auto start = std::chrono::steady_clock::now();
    for (std::int64_t i = 0; i < clicks; ++i) {
        const int tile = static_cast<int>(i % Playground::kSize);
        const ExecutionResult r =
            execute_click(board, mechanic, {tile % Playground::kWidth, tile / Playground::kWidth}, Mode::normal);
        if (r.error) {
            report.error = r.error;
            break;
        }
        board = r.board;
        ++report.operations;
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

inline BenchReport bench_sweeps(const Mechanic& mechanic, BoardState board, std::int64_t sweeps) {
    BenchReport report;
    ExecutionOptions options;
    options.record_trace = false;
    const auto start = std::chrono::steady_clock::now();
    for (std::int64_t i = 0; i < sweeps; ++i) {
        const ExecutionResult r = sweep(board, mechanic, options);
        if (r.error) {
            report.error = r.error;
            break;
        }
        board = r.board;
        ++report.operations;
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace mek
