#include "lps/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <thread>

#include "lps/errors.hpp"

namespace lps {

namespace {

double dot(const double* a, const double* b, int n) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

}  // namespace

SimplexSolver::SimplexSolver(const StandardFormLP& lp, const SolverConfig& cfg)
    : m_(lp.m),
      artificial_start_(lp.n_total),
      cfg_(cfg),
      engine_(lp.m + 1, lp.m + 2, cfg.memory_budget, cfg.kernel, cfg.workers) {
    // Identity start basis: +1 slacks where available, artificials elsewhere.
    basis_.basic.assign(m_, -1);
    for (int j = 0; j < lp.n_total; ++j) {
        if (lp.col_kind[j] != ColKind::slack) continue;
        for (int i = 0; i < m_; ++i) {
            if (lp.at(i, j) == 1.0 && basis_.basic[i] < 0) {
                basis_.basic[i] = j;
                break;
            }
        }
    }
    int n_artificial = 0;
    for (int i = 0; i < m_; ++i)
        if (basis_.basic[i] < 0) ++n_artificial;

    n_work_ = lp.n_total + n_artificial;
    cols_.assign(std::size_t(n_work_) * m_, 0.0);
    for (int j = 0; j < lp.n_total; ++j)
        for (int i = 0; i < m_; ++i) cols_[std::size_t(j) * m_ + i] = lp.at(i, j);

    c_true_.assign(n_work_, 0.0);
    c_phase1_.assign(n_work_, 0.0);
    for (int j = 0; j < lp.n_total; ++j) c_true_[j] = lp.c[j];

    int next = artificial_start_;
    for (int i = 0; i < m_; ++i) {
        if (basis_.basic[i] >= 0) continue;
        cols_[std::size_t(next) * m_ + i] = 1.0;
        c_phase1_[next] = 1.0;
        basis_.basic[i] = next++;
    }
    basis_.in_basis.assign(n_work_, 0);
    for (int i = 0; i < m_; ++i) basis_.in_basis[basis_.basic[i]] = 1;

    frozen_.assign(m_, 0);
    max_iter_ = cfg_.max_iter > 0 ? cfg_.max_iter : 50L * (m_ + n_work_);

    // Initial Figure-1 tableau: B = I, b_bar = b.
    for (int i = 0; i < m_; ++i) {
        double* row = engine_.row_mut(i + 1);
        std::memset(row, 0, sizeof(double) * (m_ + 2));
        row[i] = 1.0;
        row[m_] = lp.b[i];
    }
    phase_ = n_artificial > 0 ? 1 : 2;
    cost_ = phase_ == 1 ? &c_phase1_ : &c_true_;
    rebuild_top_row();
    tabu_.last_objective = objective_value();
}

SimplexSolver::Pricing SimplexSolver::price() {
    const double* w = engine_.row(0);
    const int limit = artificial_start_;

    auto scan = [&](int first, int last, Pricing& best, long& scanned) {
        for (int j = first; j < last; ++j) {
            if (basis_.in_basis[j]) continue;
            ++scanned;
            const double z = dot(w, column(j), m_) - (*cost_)[j];
            if (best.entering < 0 || z > best.reduced_cost) {
                best.entering = j;
                best.reduced_cost = z;
            }
        }
    };

    Pricing best;
    long scanned = 0;
    if (cfg_.workers <= 1 || limit < 256) {
        scan(0, limit, best, scanned);
    } else {
        // Parallel across columns; each column's reduction stays sequential,
        // and chunk results merge in index order, so the entering choice is
        // independent of the worker count.
        const int nw = std::min(cfg_.workers, std::max(1, limit / 64));
        std::vector<Pricing> part(nw);
        std::vector<long> counts(nw, 0);
        std::vector<std::thread> threads;
        const int chunk = (limit + nw - 1) / nw;
        for (int t = 0; t < nw; ++t)
            threads.emplace_back([&, t] {
                scan(t * chunk, std::min((t + 1) * chunk, limit), part[t], counts[t]);
            });
        for (auto& th : threads) th.join();
        for (int t = 0; t < nw; ++t) {
            scanned += counts[t];
            if (part[t].entering < 0) continue;
            if (best.entering < 0 || part[t].reduced_cost > best.reduced_cost) {
                best.entering = part[t].entering;
                best.reduced_cost = part[t].reduced_cost;
            }
        }
    }
    engine_.charge_column_stream(std::uint64_t(scanned) * m_ * 8);

    if (best.entering < 0 || best.reduced_cost <= cfg_.opt_tol) {
        best.optimal = true;
        return best;
    }
    return best;
}

void SimplexSolver::compute_direction(int entering, double reduced_cost) {
    const double* a = column(entering);
    for (int i = 0; i < m_; ++i)
        engine_.row_mut(i + 1)[m_ + 1] = dot(engine_.row(i + 1), a, m_);
    engine_.row_mut(0)[m_ + 1] = reduced_cost;
}

SimplexSolver::Ratio SimplexSolver::ratio_test() const {
    Ratio out;
    double theta = std::numeric_limits<double>::infinity();
    bool any = false;
    for (int i = 0; i < m_; ++i) {
        if (frozen_[i]) continue;
        const double y = entering_value(i);
        if (y <= cfg_.pivot_tol) continue;
        any = true;
        theta = std::min(theta, rhs_bar(i) / y);
    }
    if (!any) {
        out.unbounded = true;
        return out;
    }
    out.theta = theta;
    const double window = theta + cfg_.ratio_tie_tol * std::max(1.0, std::fabs(theta));
    for (int i = 0; i < m_; ++i) {
        if (frozen_[i]) continue;
        const double y = entering_value(i);
        if (y <= cfg_.pivot_tol) continue;
        if (rhs_bar(i) / y <= window) out.candidates.push_back(i);
    }
    return out;
}

double SimplexSolver::lookahead_score(int leaving_row, int entering) const {
    const int width = m_ + 2;
    const int rows = m_ + 1;
    std::vector<double> t(std::size_t(rows) * width);
    for (int i = 0; i < rows; ++i)
        std::memcpy(t.data() + std::size_t(i) * width, engine_.row(i),
                    sizeof(double) * width);
    auto row = [&](int i) { return t.data() + std::size_t(i) * width; };

    const int pr = leaving_row + 1;
    const double piv = row(pr)[width - 1];
    if (std::fabs(piv) <= cfg_.pivot_tol) return 0.0;
    for (int j = 0; j < width; ++j) row(pr)[j] /= piv;
    for (int i = 0; i < rows; ++i) {
        if (i == pr) continue;
        const double y = row(i)[width - 1];
        if (y == 0.0) continue;
        const double* src = row(pr);
        double* dst = row(i);
        for (int j = 0; j < width; ++j) dst[j] -= y * src[j];
    }

    std::vector<char> in_basis = basis_.in_basis;
    in_basis[basis_.basic[leaving_row]] = 0;
    in_basis[entering] = 1;

    const double* w = row(0);
    int best_j = -1;
    double best_z = 0.0;
    for (int j = 0; j < artificial_start_; ++j) {
        if (in_basis[j]) continue;
        const double z = dot(w, column(j), m_) - (*cost_)[j];
        if (best_j < 0 || z > best_z) {
            best_j = j;
            best_z = z;
        }
    }
    if (best_j < 0 || best_z <= cfg_.opt_tol) return 0.0;

    double theta = std::numeric_limits<double>::infinity();
    const double* a = column(best_j);
    for (int i = 0; i < m_; ++i) {
        if (frozen_[i]) continue;
        const double y = dot(row(i + 1), a, m_);
        if (y <= cfg_.pivot_tol) continue;
        theta = std::min(theta, row(i + 1)[m_] / y);
    }
    if (std::isinf(theta)) return std::numeric_limits<double>::infinity();
    return best_z * theta;
}

int SimplexSolver::select_leaving(const std::vector<int>& candidates, int entering) {
    if (candidates.size() == 1) return candidates.front();
    if (cfg_.anticycle == Anticycle::none) return candidates.front();

    auto& banned = tabu_.banned[entering];
    std::vector<int> survivors;
    for (int r : candidates)
        if (!banned.count(basis_.basic[r])) survivors.push_back(r);
    if (survivors.empty()) survivors = candidates;  // aspiration override

    int chosen = survivors.front();
    if (survivors.size() > 1) {
        double best = -1.0;
        for (int r : survivors) {
            const double score = lookahead_score(r, entering);
            if (score > best) {
                best = score;
                chosen = r;
            }
        }
    }
    banned.insert(basis_.basic[chosen]);
    return chosen;
}

void SimplexSolver::pivot_update(int leaving_row, int entering) {
    const double y_rk = entering_value(leaving_row);
    if (std::fabs(y_rk) <= cfg_.pivot_tol)
        throw PivotTooSmall("pivot element " + std::to_string(y_rk) + " in row " +
                            std::to_string(leaving_row));

    double* pr = engine_.row_mut(leaving_row + 1);
    for (int j = 0; j < m_ + 2; ++j) pr[j] /= y_rk;

    engine_.tiled_pivot_update(leaving_row + 1);

    basis_.in_basis[basis_.basic[leaving_row]] = 0;
    basis_.basic[leaving_row] = entering;
    basis_.in_basis[entering] = 1;
}

void SimplexSolver::note_iteration() {
    ++total_iterations_;
    ++phase_iterations_[phase_ - 1];

    const double obj = objective_value();
    if (tabu_.last_objective - obj > cfg_.opt_tol) tabu_.banned.clear();
    tabu_.last_objective = obj;

    if (cfg_.observer) {
        IterationView view;
        view.phase = phase_;
        view.iteration = total_iterations_;
        view.objective = obj;
        view.basic = std::span<const int>(basis_.basic);
        view.num_rows = m_ + 1;
        view.row_width = m_ + 2;
        view.row = [this](int i) { return engine_.row(i); };
        view.counters = &engine_.counters();
        cfg_.observer(view);
    }
}

SimplexSolver::LoopOutcome SimplexSolver::run_phase(long iteration_budget) {
    long done = 0;
    while (true) {
        if (total_iterations_ >= iteration_budget)
            return {SolveStatus::iteration_limit, done};
        Pricing p = price();
        if (p.optimal) return {SolveStatus::optimal, done};
        compute_direction(p.entering, p.reduced_cost);
        Ratio rt = ratio_test();
        if (rt.unbounded) return {SolveStatus::unbounded, done};
        const int r = select_leaving(rt.candidates, p.entering);
        pivot_update(r, p.entering);
        note_iteration();
        ++done;
    }
}

void SimplexSolver::drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
        if (!is_artificial(basis_.basic[i])) continue;
        int found = -1;
        for (int j = 0; j < artificial_start_; ++j) {
            if (basis_.in_basis[j]) continue;
            if (std::fabs(dot(engine_.row(i + 1), column(j), m_)) > cfg_.pivot_tol) {
                found = j;
                break;
            }
        }
        if (found < 0) {
            // No non-artificial column can replace it: the row is redundant.
            frozen_[i] = 1;
            continue;
        }
        const double red = dot(engine_.row(0), column(found), m_) - (*cost_)[found];
        compute_direction(found, red);
        pivot_update(i, found);
        note_iteration();
    }
}

void SimplexSolver::rebuild_top_row() {
    double* top = engine_.row_mut(0);
    for (int j = 0; j < m_; ++j) {
        double acc = 0.0;
        for (int i = 0; i < m_; ++i) acc += (*cost_)[basis_.basic[i]] * inverse_at(i, j);
        top[j] = acc;
    }
    double obj = 0.0;
    for (int i = 0; i < m_; ++i) obj += (*cost_)[basis_.basic[i]] * rhs_bar(i);
    top[m_] = obj;
    top[m_ + 1] = 0.0;
}

SolveReport SimplexSolver::solve() {
    const auto t0 = std::chrono::steady_clock::now();
    engine_.begin_solve(std::uint64_t(m_) * artificial_start_ * 8);

    SolveStatus status = SolveStatus::optimal;
    bool finished = false;

    if (phase_ == 1) {
        const LoopOutcome out = run_phase(max_iter_);
        if (out.status == SolveStatus::iteration_limit) {
            status = SolveStatus::iteration_limit;
            finished = true;
        } else if (out.status == SolveStatus::unbounded ||
                   objective_value() > cfg_.feas_tol) {
            // A bounded-below phase-1 objective that cannot reach zero.
            status = SolveStatus::infeasible;
            finished = true;
        } else {
            drive_out_artificials();
        }
    }

    if (!finished) {
        phase_ = 2;
        cost_ = &c_true_;
        rebuild_top_row();
        tabu_.banned.clear();
        tabu_.last_objective = objective_value();
        status = run_phase(max_iter_).status;
    }

    engine_.end_solve();
    const auto t1 = std::chrono::steady_clock::now();

    SolveReport report;
    report.status = status;
    switch (status) {
        case SolveStatus::optimal:
        case SolveStatus::iteration_limit:
            report.objective = objective_value();
            break;
        case SolveStatus::unbounded:
            report.objective = -std::numeric_limits<double>::infinity();
            break;
        case SolveStatus::infeasible:
            report.objective = std::numeric_limits<double>::quiet_NaN();
            break;
    }
    report.x.assign(artificial_start_, 0.0);
    if (status == SolveStatus::optimal || status == SolveStatus::iteration_limit) {
        for (int i = 0; i < m_; ++i)
            if (!is_artificial(basis_.basic[i])) report.x[basis_.basic[i]] = rhs_bar(i);
    }
    report.iterations_phase1 = phase_iterations_[0];
    report.iterations_phase2 = phase_iterations_[1];
    report.total_seconds = std::chrono::duration<double>(t1 - t0).count();
    report.tpi_seconds =
        report.total_seconds / std::max<long>(1, total_iterations_);
    report.memory = engine_.counters();
    report.case_used = engine_.mode_case();
    return report;
}

SolveReport two_phase_solve(const StandardFormLP& lp, const SolverConfig& cfg) {
    SimplexSolver solver(lp, cfg);
    return solver.solve();
}

}  // namespace lps
