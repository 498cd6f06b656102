#pragma once

#include <functional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lps/lp_model.hpp"
#include "lps/tiled_engine.hpp"

namespace lps {

enum class SolveStatus { optimal, unbounded, infeasible, iteration_limit };

enum class Anticycle { tabu, none };

/// Snapshot handed to SolverConfig::observer after every pivot. `row(i)`
/// returns the i-th tableau row (row 0 is the multiplier/objective row) of
/// `row_width` doubles, resolved through the memory backend.
struct IterationView {
    int phase = 0;
    long iteration = 0;  // cumulative over both phases
    double objective = 0.0;
    std::span<const int> basic;
    int num_rows = 0;
    int row_width = 0;
    std::function<const double*(int)> row;
    const MemoryCounters* counters = nullptr;
};

using IterationObserver = std::function<void(const IterationView&)>;

struct SolverConfig {
    double opt_tol = 1e-7;
    double pivot_tol = 1e-9;
    double feas_tol = 1e-7;
    double ratio_tie_tol = 1e-9;  // relative
    long max_iter = 0;            // 0 = 50 * (m + n_total)
    Anticycle anticycle = Anticycle::tabu;
    MemoryBudget memory_budget = MemoryBudget::unlimited();
    KernelMode kernel = KernelMode::cached;
    int workers = 1;
    IterationObserver observer;  // optional
};

struct SolveReport {
    SolveStatus status = SolveStatus::iteration_limit;
    double objective = 0.0;
    std::vector<double> x;  // standard-form point (artificials excluded)
    long iterations_phase1 = 0;
    long iterations_phase2 = 0;
    double total_seconds = 0.0;
    double tpi_seconds = 0.0;
    MemoryCounters memory;
    TileCase case_used = TileCase::in_core;
};

struct Basis {
    std::vector<int> basic;     // basic[i] = column index of the i-th basic variable
    std::vector<char> in_basis; // per column
};

/// Anti-cycling state: leaving partners banned per entering column while the
/// objective stalls; cleared on strict improvement.
struct TabuState {
    std::unordered_map<int, std::unordered_set<int>> banned;
    double last_objective = 0.0;
};

/// Revised simplex on the Figure-1 tableau, which lives in the memory
/// backend as one (m+1) x (m+2) block:
///
///     row 0:      [ W (m multipliers) | C_B b_bar | z_k - c_k ]
///     row i (>0): [ B^-1 row i-1      | b_bar_i   | y_ik      ]
///
/// The individual algorithm steps are public so tests can drive them; most
/// callers use solve() or the two_phase_solve() wrapper.
class SimplexSolver {
public:
    SimplexSolver(const StandardFormLP& lp, const SolverConfig& cfg);

    /// Two-phase driver: phase 1 minimizes the sum of artificial variables
    /// appended for rows not covered by a +1 slack, phase 2 the true costs.
    SolveReport solve();

    struct Pricing {
        bool optimal = false;
        int entering = -1;
        double reduced_cost = 0.0;
    };
    /// Dantzig rule: max of W.a_j - c_j over non-basic, non-artificial
    /// columns; ties to the lowest index. Optimal when the max <= opt_tol.
    Pricing price();

    /// Y_k = B^-1 a_k into the tableau's pivot-column slot; the reduced cost
    /// goes to the top row's slot.
    void compute_direction(int entering, double reduced_cost);

    struct Ratio {
        bool unbounded = false;
        double theta = 0.0;
        std::vector<int> candidates;  // ascending rows achieving the min ratio
    };
    Ratio ratio_test() const;

    /// Resolves a ratio-test tie. A unique candidate is returned untouched.
    /// Under the tabu rule, candidates whose basic variable is banned for
    /// `entering` are dropped (unless that would drop all of them), the
    /// survivors are scored by one-step lookahead of the objective
    /// improvement, and the winner's basic variable is banned for
    /// `entering`.
    int select_leaving(const std::vector<int>& candidates, int entering);

    /// Branchless pivot: divides the pivot row by y_rk, runs the partitioned
    /// elimination through the backend, and updates the basis.
    /// Throws PivotTooSmall when |y_rk| <= pivot_tol.
    void pivot_update(int leaving_row, int entering);

    // Figure-1 tableau accessors.
    int m() const { return m_; }
    double objective_value() const { return engine_.row(0)[m_]; }
    double multiplier(int j) const { return engine_.row(0)[j]; }
    double rhs_bar(int i) const { return engine_.row(i + 1)[m_]; }
    double inverse_at(int i, int j) const { return engine_.row(i + 1)[j]; }
    double entering_value(int i) const { return engine_.row(i + 1)[m_ + 1]; }
    double entering_reduced_cost() const { return engine_.row(0)[m_ + 1]; }

    const Basis& basis() const { return basis_; }
    const TabuState& tabu() const { return tabu_; }
    int phase() const { return phase_; }
    TiledEngine& engine() { return engine_; }
    const TiledEngine& engine() const { return engine_; }

private:
    struct LoopOutcome {
        SolveStatus status;
        long iterations;
    };
    LoopOutcome run_phase(long iteration_budget);
    void drive_out_artificials();
    void rebuild_top_row();
    double lookahead_score(int leaving_row, int entering) const;
    void note_iteration();

    const double* column(int j) const { return cols_.data() + std::size_t(j) * m_; }
    bool is_artificial(int j) const { return j >= artificial_start_; }

    int m_;
    int n_work_ = 0;            // structural + slack + artificial
    int artificial_start_ = 0;  // first artificial column
    SolverConfig cfg_;
    long max_iter_ = 0;

    std::vector<double> cols_;    // column-major constraint matrix
    std::vector<double> c_true_;  // phase-2 costs (artificials at 0)
    std::vector<double> c_phase1_;
    const std::vector<double>* cost_ = nullptr;  // active phase costs

    TiledEngine engine_;
    Basis basis_;
    TabuState tabu_;
    std::vector<char> frozen_;  // redundant rows left out of the ratio test

    int phase_ = 1;
    long total_iterations_ = 0;
    long phase_iterations_[2] = {0, 0};
};

/// Canonical entry point: solves a standard-form LP and reports the
/// standard-form optimum, per-phase iteration counts, timings and memory
/// counters. Wall time covers the solve only.
SolveReport two_phase_solve(const StandardFormLP& lp, const SolverConfig& cfg = {});

}  // namespace lps
