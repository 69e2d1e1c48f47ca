// Headless driver: validate mechanics, run click scripts, benchmark.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "mek/mek.hpp"

namespace {

constexpr int kExitDecode = 1;
constexpr int kExitAssert = 2;
constexpr int kExitEngine = 3;

mek::Mechanic load_mechanic(const std::string& path) { return mek::decode_mechanic(mek::read_file(path)); }

int report_decode_failure(const std::string& path, const std::exception& e) {
    std::cerr << path << ": " << e.what() << '\n';
    if (const auto* d = dynamic_cast<const mek::DecodeError*>(&e)) {
        for (const auto& v : d->violations()) std::cerr << "  " << v.describe() << '\n';
    }
    return kExitDecode;
}

struct RunArgs {
    std::string mechanic;
    std::string board;
    std::string script;
    std::string out;
    std::string trace;
};

int cmd_run(const RunArgs& args) {
    mek::Mechanic mechanic;
    mek::BoardState board;
    std::vector<mek::script::Line> lines;
    try {
        mechanic = load_mechanic(args.mechanic);
    } catch (const std::exception& e) {
        return report_decode_failure(args.mechanic, e);
    }
    try {
        if (!args.board.empty()) board = mek::decode_board(mek::read_file(args.board));
    } catch (const std::exception& e) {
        return report_decode_failure(args.board, e);
    }
    try {
        lines = mek::script::parse(mek::read_file(args.script));
    } catch (const std::exception& e) {
        return report_decode_failure(args.script, e);
    }

    std::ofstream trace_file;
    std::ostream* trace = nullptr;
    if (args.trace == "-") {
        trace = &std::cout;
    } else if (!args.trace.empty()) {
        trace_file.open(args.trace);
        if (!trace_file) {
            std::cerr << "cannot write " << args.trace << '\n';
            return kExitDecode;
        }
        trace = &trace_file;
    }

    const auto base = std::filesystem::path(args.script).parent_path();
    const mek::script::Report report = mek::script::run(mechanic, board, lines, base, trace);
    if (!args.out.empty()) mek::write_file(args.out, mek::encode_board(report.board));

    switch (report.status) {
        case mek::script::Status::ok: return 0;
        case mek::script::Status::decode_failure: std::cerr << report.message << '\n'; return kExitDecode;
        case mek::script::Status::assertion_failure: std::cerr << report.message << '\n'; return kExitAssert;
        case mek::script::Status::engine_error: std::cerr << report.message << '\n'; return kExitEngine;
    }
    return 0;
}

int cmd_validate(const std::string& path) {
    try {
        const mek::Mechanic m = load_mechanic(path);
        std::cout << path << ": ok (" << mek::rule_count(m) << " rules, " << mek::command_count(m) << " commands)\n";
        return 0;
    } catch (const std::exception& e) {
        return report_decode_failure(path, e);
    }
}

struct BenchArgs {
    std::string mechanic;
    std::string board;
    long long clicks = 10'000;
    long long sweeps = 0;
    double min_rate = 0.0;
};

int cmd_bench(const BenchArgs& args) {
    mek::Mechanic mechanic;
    mek::BoardState board;
    try {
        mechanic = load_mechanic(args.mechanic);
        if (!args.board.empty()) board = mek::decode_board(mek::read_file(args.board));
    } catch (const std::exception& e) {
        return report_decode_failure(args.mechanic, e);
    }
    const bool sweeping = args.sweeps > 0;
    const mek::BenchReport r =
        sweeping ? mek::bench_sweeps(mechanic, board, args.sweeps) : mek::bench_clicks(mechanic, board, args.clicks);
    const char* unit = sweeping ? "sweeps" : "clicks";
    std::printf("%s: %lld %s in %.6f s (%.0f %s/s)\n", mechanic.name.c_str(), static_cast<long long>(r.operations),
                unit, r.seconds, r.rate(), unit);
    if (r.error) {
        std::cerr << "engine error " << mek::error_name(*r.error) << " after " << r.operations << ' ' << unit << '\n';
        return kExitEngine;
    }
    if (args.min_rate > 0.0 && r.rate() < args.min_rate) {
        std::cerr << "rate below required minimum " << args.min_rate << '\n';
        return kExitAssert;
    }
    return 0;
}

int cmd_corpus_export(const std::string& dir) {
    std::filesystem::create_directories(dir);
    for (const auto name : mek::corpus::kNames) {
        const auto ref = mek::corpus::load_reference(name);
        const auto path = std::filesystem::path(dir) / (std::string(name) + ".mek");
        mek::write_file(path.string(), mek::encode_mechanic(ref.mechanic));
        std::cout << path.string() << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MekLang interpreter"};
    app.require_subcommand(1);

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Execute a click script against a mechanic and board");
    run_cmd->add_option("--mechanic", run.mechanic, "Mechanic document (.mek)")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--board", run.board, "Initial board (.mekboard); defaults to all neutral")
        ->check(CLI::ExistingFile);
    run_cmd->add_option("--script", run.script, "Click script")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--out", run.out, "Write the final board here");
    run_cmd->add_option("--trace", run.trace, "Write trace events as JSON lines ('-' for stdout)");

    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "Decode and validate a mechanic document");
    validate_cmd->add_option("--mechanic,mechanic", validate_path, "Mechanic document (.mek)")->required();

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Measure click or sweep throughput");
    bench_cmd->add_option("--mechanic", bench.mechanic, "Mechanic document (.mek)")->required()->check(CLI::ExistingFile);
    bench_cmd->add_option("--board", bench.board, "Initial board (.mekboard)")->check(CLI::ExistingFile);
    auto* clicks_opt = bench_cmd->add_option("--clicks", bench.clicks, "Number of NORMAL clicks")
                           ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--sweeps", bench.sweeps, "Number of whole-board sweeps instead of clicks")
        ->check(CLI::PositiveNumber)
        ->excludes(clicks_opt);
    bench_cmd->add_option("--min-rate", bench.min_rate, "Fail with exit 2 when the rate is lower");

    std::string export_dir;
    auto* corpus_cmd = app.add_subcommand("corpus", "Reference mechanics");
    corpus_cmd->require_subcommand(1);
    auto* list_cmd = corpus_cmd->add_subcommand("list", "List reference mechanics with their sizes");
    auto* export_cmd = corpus_cmd->add_subcommand("export", "Write every reference mechanic as a .mek file");
    export_cmd->add_option("--dir", export_dir, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) return cmd_run(run);
        if (*validate_cmd) return cmd_validate(validate_path);
        if (*bench_cmd) return cmd_bench(bench);
        if (*list_cmd) {
            for (const auto name : mek::corpus::kNames) {
                const auto ref = mek::corpus::load_reference(name);
                std::cout << name << '\t' << ref.rule_count() << " rules\t" << ref.command_count() << " commands"
                          << (ref.has_oracle() ? "\toracle" : "") << '\n';
            }
            return 0;
        }
        if (*export_cmd) return cmd_corpus_export(export_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDecode;
    }
    return 0;
}
