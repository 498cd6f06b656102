#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lps/generator.hpp"
#include "lps/solver.hpp"

namespace lps {

/// Speedup factor: reference time over parallel time.
/// Throws NonPositiveTime when t_par <= 0.
double speedup(double t_ref, double t_par);

/// Time per iteration. Throws ZeroIterations when iterations < 1.
double tpi(double total_seconds, long iterations);

std::string status_name(SolveStatus s);
std::string case_name(TileCase c);

/// One benchmark result line; mirrors the CSV schema exactly.
struct BenchRow {
    std::string instance;
    std::string status;  // Optimal, Infeasible, Unbounded, IterationLimit, ParseError
    double objective = 0.0;
    long iterations_p1 = 0;
    long iterations_p2 = 0;
    double total_seconds = 0.0;
    double tpi_seconds = 0.0;
    std::string case_used;  // InCore or Tiled; empty for ParseError rows
    std::uint64_t device_reads = 0;
    std::uint64_t device_writes = 0;
    std::uint64_t h2d_bytes = 0;
    std::uint64_t d2h_bytes = 0;
    std::optional<double> reference_seconds;  // present iff a reference run was made
    std::optional<double> speedup;            // present iff reference_seconds is
};

inline constexpr const char* kCsvHeader =
    "instance,status,objective,iterations_p1,iterations_p2,total_seconds,"
    "tpi_seconds,case,device_reads,device_writes,h2d_bytes,d2h_bytes,"
    "reference_seconds,speedup";

/// Reals are formatted with 6 significant digits; reading a written CSV back
/// reproduces the rows field-for-field.
std::string write_csv(const std::vector<BenchRow>& rows);
std::vector<BenchRow> read_csv(const std::string& text);

/// One file-backed or generated suite entry.
struct SuiteInstance {
    std::string label;
    std::string path;             // MPS file, or empty when generated
    std::optional<GenSpec> gen;   // set when generated
};

/// One budget/kernel combination to benchmark.
struct BenchMode {
    std::string label;
    MemoryBudget budget = MemoryBudget::unlimited();
    KernelMode kernel = KernelMode::cached;
};

struct SuiteOptions {
    bool reference = false;  // also time a single-worker naive-kernel run
    int runs = 1;            // per timing, the median over `runs` solves
};

/// Solves every (instance, mode) pair sequentially and returns one row per
/// pair. Wall time covers two_phase_solve only. Per-instance failures are
/// recorded as ParseError rows and never abort the suite.
std::vector<BenchRow> run_suite(const std::vector<SuiteInstance>& instances,
                                const SolverConfig& cfg,
                                const std::vector<BenchMode>& modes,
                                const SuiteOptions& opts = {});

}  // namespace lps
