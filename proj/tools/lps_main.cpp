#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lps/bench.hpp"
#include "lps/errors.hpp"
#include "lps/generator.hpp"
#include "lps/mps.hpp"
#include "lps/solver.hpp"

namespace {

using namespace lps;

int status_exit_code(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return 0;
        case SolveStatus::infeasible: return 2;
        case SolveStatus::unbounded: return 3;
        default: return 4;
    }
}

MemoryBudget parse_budget(const std::string& text) {
    if (text == "unlimited") return MemoryBudget::unlimited();
    return MemoryBudget::of_bytes(std::stoull(text));
}

KernelMode parse_kernel(const std::string& text) {
    if (text == "cached") return KernelMode::cached;
    if (text == "naive") return KernelMode::naive;
    throw CLI::ValidationError("--kernel", "expected cached or naive");
}

std::vector<BenchMode> parse_modes(const std::string& spec) {
    std::vector<BenchMode> modes;
    std::stringstream ss(spec);
    std::string entry;
    while (std::getline(ss, entry, ',')) {
        if (entry.empty()) continue;
        BenchMode mode;
        mode.label = entry;
        const auto colon = entry.find(':');
        mode.budget = parse_budget(entry.substr(0, colon));
        if (colon != std::string::npos) mode.kernel = parse_kernel(entry.substr(colon + 1));
        modes.push_back(std::move(mode));
    }
    if (modes.empty()) modes.push_back({"unlimited:cached", MemoryBudget::unlimited(),
                                        KernelMode::cached});
    return modes;
}

SparsityClass parse_class(const std::string& text) {
    if (text == "D" || text == "d") return SparsityClass::dense;
    if (text == "S20" || text == "s20") return SparsityClass::s20;
    if (text == "S60" || text == "s60") return SparsityClass::s60;
    throw CLI::ValidationError("--class", "expected D, S20 or S60");
}

std::vector<SuiteInstance> collect_dir(const std::string& dir) {
    std::vector<SuiteInstance> out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const auto ext = entry.path().extension().string();
        if (ext == ".mps" || ext == ".MPS")
            out.push_back({entry.path().stem().string(), entry.path().string(), {}});
    }
    std::sort(out.begin(), out.end(),
              [](const SuiteInstance& a, const SuiteInstance& b) { return a.label < b.label; });
    return out;
}

// Suite file lines: an MPS path, or gen:ROWS:COLS:CLASS:SEED. '#' comments.
std::vector<SuiteInstance> read_suite_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open suite file '" + path + "'");
    std::vector<SuiteInstance> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("gen:", 0) == 0) {
            std::stringstream ss(line.substr(4));
            std::string rows, cols, cls, seed;
            std::getline(ss, rows, ':');
            std::getline(ss, cols, ':');
            std::getline(ss, cls, ':');
            std::getline(ss, seed, ':');
            GenSpec spec{std::stoi(rows), std::stoi(cols), parse_class(cls),
                         std::stoull(seed.empty() ? "0" : seed)};
            out.push_back({std::to_string(spec.rows) + "_" + std::to_string(spec.cols) +
                               "_" + class_name(spec.sparsity),
                           "", spec});
        } else {
            out.push_back({std::filesystem::path(line).stem().string(), line, {}});
        }
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
}

int cmd_solve(const std::string& file, const SolverConfig& cfg, const std::string& csv_out) {
    GeneralLP general = to_general_lp(parse_mps_file(file));
    auto [lp, map] = canonicalize(general);
    const SolveReport report = two_phase_solve(lp, cfg);

    double objective = report.objective;
    if (report.status == SolveStatus::optimal ||
        report.status == SolveStatus::iteration_limit)
        objective = recover_solution(map, report.x, report.objective).second;

    const long iterations = report.iterations_phase1 + report.iterations_phase2;
    std::printf("instance:    %s\n", general.name.c_str());
    std::printf("status:      %s\n", status_name(report.status).c_str());
    std::printf("objective:   %.9g\n", objective);
    std::printf("iterations:  %ld (phase 1: %ld, phase 2: %ld)\n", iterations,
                report.iterations_phase1, report.iterations_phase2);
    std::printf("time:        %.6f s   tpi: %.3e s\n", report.total_seconds,
                report.tpi_seconds);
    std::printf("case:        %s\n", case_name(report.case_used).c_str());
    std::printf("device:      %llu reads, %llu writes\n",
                (unsigned long long)report.memory.device_reads,
                (unsigned long long)report.memory.device_writes);
    std::printf("transfers:   %llu B h2d, %llu B d2h\n",
                (unsigned long long)report.memory.h2d_bytes,
                (unsigned long long)report.memory.d2h_bytes);

    if (!csv_out.empty()) {
        BenchRow row;
        row.instance = general.name;
        row.status = status_name(report.status);
        row.objective = objective;
        row.iterations_p1 = report.iterations_phase1;
        row.iterations_p2 = report.iterations_phase2;
        row.total_seconds = report.total_seconds;
        row.tpi_seconds = report.tpi_seconds;
        row.case_used = case_name(report.case_used);
        row.device_reads = report.memory.device_reads;
        row.device_writes = report.memory.device_writes;
        row.h2d_bytes = report.memory.h2d_bytes;
        row.d2h_bytes = report.memory.d2h_bytes;
        write_file(csv_out, write_csv({row}));
    }
    return status_exit_code(report.status);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lps - revised simplex LP solver over a simulated two-tier memory"};
    app.require_subcommand(1);

    std::string file, budget = "unlimited", kernel = "cached", anticycle = "tabu";
    std::string csv_out;
    SolverConfig cfg;
    long max_iter = 0;
    int workers = 1;

    auto add_solver_flags = [&](CLI::App* cmd) {
        cmd->add_option("--budget", budget, "device byte budget or 'unlimited'");
        cmd->add_option("--kernel", kernel, "update kernel: cached|naive");
        cmd->add_option("--anticycle", anticycle, "anti-cycling rule: tabu|none");
        cmd->add_option("--tol-opt", cfg.opt_tol, "optimality tolerance");
        cmd->add_option("--tol-pivot", cfg.pivot_tol, "pivot tolerance");
        cmd->add_option("--max-iter", max_iter, "iteration limit (0 = 50*(m+n))");
        cmd->add_option("--workers", workers, "tile worker count");
    };

    CLI::App* solve = app.add_subcommand("solve", "solve one MPS file");
    solve->add_option("file", file, "MPS input")->required();
    add_solver_flags(solve);
    solve->add_option("--csv", csv_out, "write a one-row CSV report");

    CLI::App* generate_cmd = app.add_subcommand("generate", "write a random instance as MPS");
    int gen_rows = 0, gen_cols = 0;
    std::string gen_class = "D", gen_out;
    std::uint64_t gen_seed = 0;
    generate_cmd->add_option("--rows", gen_rows, "constraint count")->required();
    generate_cmd->add_option("--cols", gen_cols, "variable count")->required();
    generate_cmd->add_option("--class", gen_class, "sparsity class: D|S20|S60");
    generate_cmd->add_option("--seed", gen_seed, "RNG seed");
    generate_cmd->add_option("-o,--output", gen_out, "output path")->required();

    CLI::App* bench = app.add_subcommand("bench", "run a benchmark suite");
    std::string bench_dir, suite_file, modes_spec = "unlimited:cached", bench_csv;
    bool reference = false;
    int runs = 3;
    bench->add_option("--dir", bench_dir, "directory of .mps files");
    bench->add_option("--suite", suite_file, "suite list file");
    bench->add_option("--modes", modes_spec, "comma list of BUDGET[:KERNEL] modes");
    bench->add_option("--csv", bench_csv, "output CSV path");
    bench->add_flag("--reference", reference,
                    "also time a single-worker naive-kernel reference run");
    bench->add_option("--runs", runs, "solves per timing; the median is reported");
    add_solver_flags(bench);

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.max_iter = max_iter;
        cfg.workers = workers;
        cfg.memory_budget = parse_budget(budget);
        cfg.kernel = parse_kernel(kernel);
        if (anticycle == "none") cfg.anticycle = Anticycle::none;
        else if (anticycle != "tabu")
            throw Error("--anticycle: expected tabu or none");

        if (solve->parsed()) return cmd_solve(file, cfg, csv_out);

        if (generate_cmd->parsed()) {
            GenSpec spec{gen_rows, gen_cols, parse_class(gen_class), gen_seed};
            write_file(gen_out, write_mps(to_mps_document(generate(spec))));
            std::printf("wrote %s (%d x %d, class %s, seed %llu)\n", gen_out.c_str(),
                        gen_rows, gen_cols, class_name(spec.sparsity).c_str(),
                        (unsigned long long)gen_seed);
            return 0;
        }

        // bench
        std::vector<SuiteInstance> instances;
        if (!bench_dir.empty()) instances = collect_dir(bench_dir);
        else if (!suite_file.empty()) instances = read_suite_file(suite_file);
        else throw Error("bench: provide --dir or --suite");

        SuiteOptions opts;
        opts.reference = reference;
        opts.runs = runs;
        const std::vector<BenchRow> rows =
            run_suite(instances, cfg, parse_modes(modes_spec), opts);
        const std::string csv = write_csv(rows);
        if (!bench_csv.empty()) write_file(bench_csv, csv);
        std::fputs(csv.c_str(), stdout);
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
