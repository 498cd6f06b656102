#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lps {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { minimize, maximize };

/// Constraint row relation. `free_row` is a non-binding row (MPS N row that
/// is not the objective); it contributes no constraint.
enum class RowKind { eq, le, ge, free_row };

enum class ColKind { structural, slack, artificial };

/// A linear program as read from a file or a generator: arbitrary senses,
/// row relations, ranges and variable bounds, dense row-major coefficients.
struct GeneralLP {
    std::string name;
    Sense sense = Sense::minimize;
    int num_rows = 0;  // constraint rows only; the objective lives in `objective`
    int num_cols = 0;
    std::vector<RowKind> row_kind;              // num_rows
    std::vector<double> coeffs;                 // row-major num_rows x num_cols
    std::vector<double> objective;              // num_cols
    std::vector<double> rhs;                    // num_rows
    std::vector<std::optional<double>> range;   // num_rows
    std::vector<double> lower;                  // num_cols, default 0
    std::vector<double> upper;                  // num_cols, default +inf
    double objective_constant = 0.0;

    double at(int i, int j) const { return coeffs[std::size_t(i) * num_cols + j]; }
    double& at(int i, int j) { return coeffs[std::size_t(i) * num_cols + j]; }

    /// Sizes every per-row/per-column vector for (rows, cols) with defaults.
    void resize(int rows, int cols);
};

/// The solver's input form: Min c.x subject to A x = b, b >= 0, x >= 0.
/// Columns are ordered structural (originals, then negative halves of split
/// free variables), then slack. Artificial columns are appended by the
/// solver and never appear here.
struct StandardFormLP {
    std::string name;
    int m = 0;
    int n_total = 0;
    std::vector<double> A;  // row-major m x n_total
    std::vector<double> c;  // n_total
    std::vector<double> b;  // m
    std::vector<ColKind> col_kind;  // n_total

    double at(int i, int j) const { return A[std::size_t(i) * n_total + j]; }
    double& at(int i, int j) { return A[std::size_t(i) * n_total + j]; }
};

/// One split free variable: x_orig = x_std[pos] - x_std[neg] + shift.
struct SplitPair {
    int pos;  // standard-form column holding the positive half (== original column)
    int neg;  // appended column holding the negative half
};

/// Bookkeeping needed to map a standard-form point back to the original
/// problem's variables and objective value.
struct CanonicalMap {
    int orig_cols = 0;
    int std_cols = 0;               // length recover_solution expects
    std::vector<double> shift;      // orig_cols; applied lower-bound shift
    std::vector<bool> negated_row;  // per standard-form row
    std::vector<SplitPair> split_pairs;
    double objective_sign = 1.0;    // -1 when the original sense was maximize
    double objective_constant = 0.0;
};

/// Converts a general LP to standard form:
///   * maximization flipped to minimization (objective_sign = -1),
///   * finite lower bounds shifted to zero,
///   * free variables split into nonnegative pairs,
///   * finite upper bounds compiled to explicit rows x_j <= u_j,
///   * RANGES expanded to a two-sided pair of rows,
///   * rows with negative rhs negated (relation flipped) before slack
///     insertion, so b >= 0 holds exactly.
///
/// Throws InconsistentBounds or EmptyProblem.
std::pair<StandardFormLP, CanonicalMap> canonicalize(const GeneralLP& p);

/// Undoes shifts, splits and the objective sign/constant.
/// Throws LengthMismatch when x_std has the wrong length.
std::pair<std::vector<double>, double> recover_solution(const CanonicalMap& map,
                                                        const std::vector<double>& x_std,
                                                        double z_std);

}  // namespace lps
