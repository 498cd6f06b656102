#include "bland_oracle.hpp"

#include <cmath>
#include <cstddef>

namespace lps::testing {

namespace {

constexpr double kEps = 1e-9;

struct Tableau {
    int m, n;  // n includes artificials, excludes the rhs column
    std::vector<double> t;  // (m + 1) rows by (n + 1) cols; last row = reduced costs
    std::vector<int> basic;

    double& at(int i, int j) { return t[std::size_t(i) * (n + 1) + j]; }
    double at(int i, int j) const { return t[std::size_t(i) * (n + 1) + j]; }
    int rhs() const { return n; }

    void pivot(int r, int k) {
        const double p = at(r, k);
        for (int j = 0; j <= n; ++j) at(r, j) /= p;
        for (int i = 0; i <= m; ++i) {
            if (i == r) continue;
            const double f = at(i, k);
            if (f == 0.0) continue;
            for (int j = 0; j <= n; ++j) at(i, j) -= f * at(r, j);
        }
        basic[r] = k;
    }
};

// Bland: entering = smallest index with negative reduced cost; leaving =
// smallest basic variable among the minimum-ratio rows.
OracleStatus iterate(Tableau& tab, int n_allowed, long& budget) {
    while (budget-- > 0) {
        int k = -1;
        for (int j = 0; j < n_allowed; ++j) {
            if (tab.at(tab.m, j) < -kEps) {
                k = j;
                break;
            }
        }
        if (k < 0) return OracleStatus::optimal;

        int leave = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < tab.m; ++i) {
            const double a = tab.at(i, k);
            if (a <= kEps) continue;
            const double ratio = tab.at(i, tab.rhs()) / a;
            if (leave < 0 || ratio < best_ratio - kEps ||
                (ratio < best_ratio + kEps && tab.basic[i] < tab.basic[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave < 0) return OracleStatus::unbounded;
        tab.pivot(leave, k);
    }
    return OracleStatus::stalled;
}

}  // namespace

OracleResult bland_solve(const StandardFormLP& lp, long max_iter) {
    const int m = lp.m, n = lp.n_total;
    Tableau tab;
    tab.m = m;
    tab.n = n + m;  // one artificial per row
    tab.t.assign(std::size_t(m + 1) * (tab.n + 1), 0.0);
    tab.basic.resize(m);

    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) tab.at(i, j) = lp.at(i, j);
        tab.at(i, n + i) = 1.0;
        tab.at(i, tab.rhs()) = lp.b[i];
        tab.basic[i] = n + i;
    }
    // Phase-1 reduced costs: minimize the artificial sum.
    for (int j = 0; j <= tab.n; ++j) {
        double acc = 0.0;
        for (int i = 0; i < m; ++i) acc += tab.at(i, j);
        tab.at(m, j) = (j < n ? 0.0 : 1.0) - acc;
    }
    for (int i = 0; i < m; ++i) tab.at(m, n + i) = 0.0;

    OracleResult out;
    long budget = max_iter;
    OracleStatus s = iterate(tab, n, budget);
    if (s == OracleStatus::stalled) return out;
    const double phase1 = -tab.at(m, tab.rhs());
    if (phase1 > 1e-7) {
        out.status = OracleStatus::infeasible;
        return out;
    }
    // Pivot lingering artificials out where a non-artificial column allows it.
    for (int i = 0; i < m; ++i) {
        if (tab.basic[i] < n) continue;
        for (int j = 0; j < n; ++j) {
            if (std::fabs(tab.at(i, j)) > kEps) {
                tab.pivot(i, j);
                break;
            }
        }
    }

    // Phase 2: rebuild the reduced-cost row from the true objective.
    for (int j = 0; j <= tab.n; ++j) {
        double acc = 0.0;
        for (int i = 0; i < m; ++i) {
            const int b = tab.basic[i];
            const double cb = b < n ? lp.c[b] : 0.0;
            acc += cb * tab.at(i, j);
        }
        tab.at(m, j) = (j < tab.rhs() && j < n ? lp.c[j] : 0.0) - acc;
    }

    s = iterate(tab, n, budget);
    if (s == OracleStatus::stalled) return out;
    out.status = s;
    if (s == OracleStatus::optimal) {
        out.x.assign(n, 0.0);
        for (int i = 0; i < m; ++i)
            if (tab.basic[i] < n) out.x[tab.basic[i]] = tab.at(i, tab.rhs());
        double z = 0.0;
        for (int j = 0; j < n; ++j) z += lp.c[j] * out.x[j];
        out.objective = z;
    }
    return out;
}

}  // namespace lps::testing
