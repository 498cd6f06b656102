#include "lps/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "lps/errors.hpp"
#include "lps/mps.hpp"

namespace lps {

double speedup(double t_ref, double t_par) {
    if (t_par <= 0.0)
        throw NonPositiveTime("speedup: t_par must be positive, got " +
                              std::to_string(t_par));
    return t_ref / t_par;
}

double tpi(double total_seconds, long iterations) {
    if (iterations < 1)
        throw ZeroIterations("tpi: iteration count must be at least 1");
    return total_seconds / double(iterations);
}

std::string status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "Optimal";
        case SolveStatus::unbounded: return "Unbounded";
        case SolveStatus::infeasible: return "Infeasible";
        default: return "IterationLimit";
    }
}

std::string case_name(TileCase c) {
    return c == TileCase::in_core ? "InCore" : "Tiled";
}

namespace {

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::string write_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << kCsvHeader << "\n";
    for (const BenchRow& r : rows) {
        out << r.instance << ',' << r.status << ',' << fmt6(r.objective) << ','
            << r.iterations_p1 << ',' << r.iterations_p2 << ','
            << fmt6(r.total_seconds) << ',' << fmt6(r.tpi_seconds) << ','
            << r.case_used << ',' << r.device_reads << ',' << r.device_writes << ','
            << r.h2d_bytes << ',' << r.d2h_bytes << ','
            << (r.reference_seconds ? fmt6(*r.reference_seconds) : "") << ','
            << (r.speedup ? fmt6(*r.speedup) : "") << "\n";
    }
    return out.str();
}

std::vector<BenchRow> read_csv(const std::string& text) {
    std::vector<BenchRow> rows;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) return rows;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw Error("unexpected CSV header: " + line);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f = split_csv_line(line);
        if (f.size() != 14) throw Error("bad CSV row: " + line);
        BenchRow r;
        r.instance = f[0];
        r.status = f[1];
        r.objective = std::strtod(f[2].c_str(), nullptr);
        r.iterations_p1 = std::strtol(f[3].c_str(), nullptr, 10);
        r.iterations_p2 = std::strtol(f[4].c_str(), nullptr, 10);
        r.total_seconds = std::strtod(f[5].c_str(), nullptr);
        r.tpi_seconds = std::strtod(f[6].c_str(), nullptr);
        r.case_used = f[7];
        r.device_reads = std::strtoull(f[8].c_str(), nullptr, 10);
        r.device_writes = std::strtoull(f[9].c_str(), nullptr, 10);
        r.h2d_bytes = std::strtoull(f[10].c_str(), nullptr, 10);
        r.d2h_bytes = std::strtoull(f[11].c_str(), nullptr, 10);
        if (!f[12].empty()) r.reference_seconds = std::strtod(f[12].c_str(), nullptr);
        if (!f[13].empty()) r.speedup = std::strtod(f[13].c_str(), nullptr);
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace {

struct SolvedInstance {
    bool ok = false;
    StandardFormLP lp;
    CanonicalMap map;
};

SolvedInstance load_instance(const SuiteInstance& inst) {
    SolvedInstance out;
    try {
        GeneralLP general = inst.gen ? generate(*inst.gen)
                                     : to_general_lp(parse_mps_file(inst.path));
        auto [lp, map] = canonicalize(general);
        out.lp = std::move(lp);
        out.map = std::move(map);
        out.ok = true;
    } catch (const std::exception&) {
        out.ok = false;
    }
    return out;
}

// Median total solve time over `runs` solves; the last report (identical in
// everything but timing) carries the rest of the fields.
SolveReport timed_solve(const StandardFormLP& lp, const SolverConfig& cfg, int runs) {
    std::vector<double> times;
    SolveReport report;
    for (int i = 0; i < std::max(1, runs); ++i) {
        report = two_phase_solve(lp, cfg);
        times.push_back(report.total_seconds);
    }
    std::sort(times.begin(), times.end());
    const std::size_t n = times.size();
    report.total_seconds =
        n % 2 == 1 ? times[n / 2] : 0.5 * (times[n / 2 - 1] + times[n / 2]);
    report.tpi_seconds = report.total_seconds /
                         std::max<long>(1, report.iterations_phase1 + report.iterations_phase2);
    return report;
}

}  // namespace

std::vector<BenchRow> run_suite(const std::vector<SuiteInstance>& instances,
                                const SolverConfig& cfg,
                                const std::vector<BenchMode>& modes,
                                const SuiteOptions& opts) {
    std::vector<BenchRow> rows;
    for (const SuiteInstance& inst : instances) {
        SolvedInstance loaded = load_instance(inst);
        if (!loaded.ok) {
            for (std::size_t k = 0; k < modes.size(); ++k) {
                BenchRow row;
                row.instance = inst.label;
                row.status = "ParseError";
                row.objective = std::numeric_limits<double>::quiet_NaN();
                rows.push_back(std::move(row));
            }
            continue;
        }

        std::optional<double> ref_seconds;
        if (opts.reference) {
            SolverConfig ref_cfg = cfg;
            ref_cfg.workers = 1;
            ref_cfg.kernel = KernelMode::naive;
            ref_cfg.memory_budget = MemoryBudget::unlimited();
            ref_cfg.observer = nullptr;
            ref_seconds = timed_solve(loaded.lp, ref_cfg, opts.runs).total_seconds;
        }

        for (const BenchMode& mode : modes) {
            SolverConfig run_cfg = cfg;
            run_cfg.memory_budget = mode.budget;
            run_cfg.kernel = mode.kernel;
            const SolveReport report = timed_solve(loaded.lp, run_cfg, opts.runs);

            BenchRow row;
            row.instance = inst.label + (mode.label.empty() ? "" : ":" + mode.label);
            row.status = status_name(report.status);
            row.objective = report.objective;
            if (report.status == SolveStatus::optimal ||
                report.status == SolveStatus::iteration_limit) {
                row.objective =
                    recover_solution(loaded.map, report.x, report.objective).second;
            }
            row.iterations_p1 = report.iterations_phase1;
            row.iterations_p2 = report.iterations_phase2;
            row.total_seconds = report.total_seconds;
            row.tpi_seconds = report.tpi_seconds;
            row.case_used = case_name(report.case_used);
            row.device_reads = report.memory.device_reads;
            row.device_writes = report.memory.device_writes;
            row.h2d_bytes = report.memory.h2d_bytes;
            row.d2h_bytes = report.memory.d2h_bytes;
            if (ref_seconds && report.total_seconds > 0.0) {
                row.reference_seconds = *ref_seconds;
                row.speedup = speedup(*ref_seconds, report.total_seconds);
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace lps
