#include "lps/generator.hpp"

#include <random>

#include "lps/errors.hpp"

namespace lps {

namespace {

// Platform-independent draws: mt19937_64's output sequence is pinned by the
// standard, unlike the distributions in <random>.
double unit_open_closed(std::mt19937_64& rng) {  // (0, 1]
    return 1.0 - (rng() >> 11) * 0x1.0p-53;
}

double zero_probability(SparsityClass c) {
    switch (c) {
        case SparsityClass::s20: return 0.2;
        case SparsityClass::s60: return 0.6;
        default: return 0.0;
    }
}

}  // namespace

std::string class_name(SparsityClass c) {
    switch (c) {
        case SparsityClass::s20: return "S20";
        case SparsityClass::s60: return "S60";
        default: return "D";
    }
}

GeneralLP generate(const GenSpec& spec) {
    if (spec.rows <= 0 || spec.cols <= 0)
        throw DegenerateSpec("generate: rows and cols must be positive");

    const int m = spec.rows, n = spec.cols;
    const double p_zero = zero_probability(spec.sparsity);
    std::mt19937_64 rng(spec.seed);

    GeneralLP lp;
    lp.name = std::to_string(m) + "_" + std::to_string(n) + "_" +
              class_name(spec.sparsity) + "_s" + std::to_string(spec.seed);
    lp.resize(m, n);
    for (int i = 0; i < m; ++i) lp.row_kind[i] = RowKind::eq;

    for (int i = 0; i < m; ++i) {
        double* row = lp.coeffs.data() + std::size_t(i) * n;
        while (true) {
            bool nonzero = false;
            for (int j = 0; j < n; ++j) {
                row[j] = 0.01 + 0.99 * unit_open_closed(rng);
                if (p_zero > 0.0 && unit_open_closed(rng) <= p_zero) row[j] = 0.0;
                else nonzero = true;
            }
            if (nonzero) break;  // all-zero rows are regenerated
        }
    }
    for (int j = 0; j < n; ++j) lp.objective[j] = unit_open_closed(rng);

    // b := A.x_hat keeps x_hat feasible and b >= 0.
    std::vector<double> x_hat(n);
    for (int j = 0; j < n; ++j) x_hat[j] = unit_open_closed(rng);
    for (int i = 0; i < m; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += lp.at(i, j) * x_hat[j];
        lp.rhs[i] = acc;
    }
    return lp;
}

}  // namespace lps
