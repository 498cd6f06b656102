#include "lps/lp_model.hpp"

#include <cmath>
#include <cstdlib>

#include "lps/errors.hpp"

namespace lps {

void GeneralLP::resize(int rows, int cols) {
    num_rows = rows;
    num_cols = cols;
    row_kind.assign(rows, RowKind::le);
    coeffs.assign(std::size_t(rows) * cols, 0.0);
    objective.assign(cols, 0.0);
    rhs.assign(rows, 0.0);
    range.assign(rows, std::nullopt);
    lower.assign(cols, 0.0);
    upper.assign(cols, kInfinity);
}

namespace {

// Working representation of one standard-form row before slack insertion.
struct PendingRow {
    RowKind kind;  // eq, le or ge
    std::vector<double> coef;  // over structural columns (originals + split negatives)
    double rhs;
};

// Two-sided bounds [lo, hi] implied by an MPS RANGES entry; see the Netlib
// distribution notes. `rhs` is the row's right-hand side, `r` the range value.
std::pair<double, double> range_interval(RowKind kind, double rhs, double r) {
    switch (kind) {
        case RowKind::le: return {rhs - std::fabs(r), rhs};
        case RowKind::ge: return {rhs, rhs + std::fabs(r)};
        default:          return r >= 0 ? std::pair{rhs, rhs + r} : std::pair{rhs + r, rhs};
    }
}

}  // namespace

std::pair<StandardFormLP, CanonicalMap> canonicalize(const GeneralLP& p) {
    if (p.num_rows == 0 || p.num_cols == 0)
        throw EmptyProblem("canonicalize: problem has no rows or no columns");

    const int n0 = p.num_cols;
    CanonicalMap map;
    map.orig_cols = n0;
    map.objective_sign = p.sense == Sense::maximize ? -1.0 : 1.0;
    map.shift.assign(n0, 0.0);

    // Column plan: finite lower bounds become shifts, free (-inf) lower
    // bounds become split pairs. Upper bounds are collected as extra rows.
    int structural = n0;
    std::vector<int> neg_col(n0, -1);
    for (int j = 0; j < n0; ++j) {
        if (p.lower[j] > p.upper[j])
            throw InconsistentBounds("column " + std::to_string(j) + ": lower " +
                                     std::to_string(p.lower[j]) + " > upper " +
                                     std::to_string(p.upper[j]));
        if (p.lower[j] == -kInfinity) {
            neg_col[j] = structural++;
            map.split_pairs.push_back({j, neg_col[j]});
        } else {
            map.shift[j] = p.lower[j];
        }
    }

    const double sign = map.objective_sign;
    std::vector<double> c_min(structural, 0.0);
    for (int j = 0; j < n0; ++j) {
        c_min[j] = sign * p.objective[j];
        if (neg_col[j] >= 0) c_min[neg_col[j]] = -c_min[j];
    }

    std::vector<PendingRow> rows;
    rows.reserve(std::size_t(p.num_rows) + n0);

    auto push_constraint = [&](RowKind kind, const double* a, double rhs_val) {
        PendingRow row{kind, std::vector<double>(structural, 0.0), rhs_val};
        for (int j = 0; j < n0; ++j) {
            row.coef[j] = a[j];
            if (neg_col[j] >= 0) row.coef[neg_col[j]] = -a[j];
        }
        rows.push_back(std::move(row));
    };

    for (int i = 0; i < p.num_rows; ++i) {
        if (p.row_kind[i] == RowKind::free_row) continue;
        const double* a = p.coeffs.data() + std::size_t(i) * n0;
        double shifted_rhs = p.rhs[i];
        for (int j = 0; j < n0; ++j) shifted_rhs -= a[j] * map.shift[j];

        if (p.range[i].has_value()) {
            auto [lo, hi] = range_interval(p.row_kind[i], shifted_rhs, *p.range[i]);
            if (lo == hi) {
                push_constraint(RowKind::eq, a, lo);
            } else {
                push_constraint(RowKind::le, a, hi);
                push_constraint(RowKind::ge, a, lo);
            }
        } else {
            push_constraint(p.row_kind[i], a, shifted_rhs);
        }
    }

    // Upper bounds as explicit rows over the (possibly split) column.
    for (int j = 0; j < n0; ++j) {
        if (p.upper[j] == kInfinity) continue;
        PendingRow row{RowKind::le, std::vector<double>(structural, 0.0), 0.0};
        row.coef[j] = 1.0;
        if (neg_col[j] >= 0) row.coef[neg_col[j]] = -1.0;
        row.rhs = p.upper[j] - map.shift[j];
        rows.push_back(std::move(row));
    }

    // Fix signs so that b >= 0, flipping the relation of negated rows.
    map.negated_row.assign(rows.size(), false);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        PendingRow& row = rows[i];
        if (row.rhs < 0.0) {
            row.rhs = -row.rhs;
            for (double& v : row.coef) v = -v;
            if (row.kind == RowKind::le) row.kind = RowKind::ge;
            else if (row.kind == RowKind::ge) row.kind = RowKind::le;
            map.negated_row[i] = true;
        }
    }

    int n_slack = 0;
    for (const PendingRow& row : rows)
        if (row.kind != RowKind::eq) ++n_slack;

    StandardFormLP lp;
    lp.name = p.name;
    lp.m = int(rows.size());
    lp.n_total = structural + n_slack;
    lp.A.assign(std::size_t(lp.m) * lp.n_total, 0.0);
    lp.b.resize(lp.m);
    lp.c.assign(lp.n_total, 0.0);
    lp.col_kind.assign(lp.n_total, ColKind::structural);

    for (int j = 0; j < structural; ++j) lp.c[j] = c_min[j];
    int next_slack = structural;
    for (int i = 0; i < lp.m; ++i) {
        const PendingRow& row = rows[i];
        for (int j = 0; j < structural; ++j) lp.at(i, j) = row.coef[j];
        lp.b[i] = row.rhs;
        if (row.kind != RowKind::eq) {
            lp.at(i, next_slack) = row.kind == RowKind::le ? 1.0 : -1.0;
            lp.col_kind[next_slack] = ColKind::slack;
            ++next_slack;
        }
    }

    map.std_cols = lp.n_total;
    double shift_cost = 0.0;
    for (int j = 0; j < n0; ++j) shift_cost += c_min[j] * map.shift[j];
    map.objective_constant = sign * shift_cost + p.objective_constant;

    return {std::move(lp), std::move(map)};
}

std::pair<std::vector<double>, double> recover_solution(const CanonicalMap& map,
                                                        const std::vector<double>& x_std,
                                                        double z_std) {
    if (int(x_std.size()) != map.std_cols)
        throw LengthMismatch("recover_solution: expected " + std::to_string(map.std_cols) +
                             " values, got " + std::to_string(x_std.size()));

    std::vector<double> x(map.orig_cols);
    for (int j = 0; j < map.orig_cols; ++j) x[j] = x_std[j] + map.shift[j];
    for (const SplitPair& pair : map.split_pairs) x[pair.pos] -= x_std[pair.neg];

    return {std::move(x), map.objective_sign * z_std + map.objective_constant};
}

}  // namespace lps
