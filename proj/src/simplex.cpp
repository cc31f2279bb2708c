#include "kolmo/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kolmo/errors.hpp"

namespace kolmo {

PhaseOneResult phase_one(const std::vector<std::vector<double>>& a, std::span<const double> b,
                         const SimplexOptions& opts) {
    const std::size_t m = b.size();
    if (a.size() != m) throw DimensionMismatch("constraint matrix and right-hand side disagree on row count");
    const std::size_t n = m ? a[0].size() : 0;
    for (const auto& row : a)
        if (row.size() != n) throw DimensionMismatch("ragged constraint matrix");

    // Tableau columns: n structural, m artificial, then the right-hand side.
    const std::size_t cols = n + m + 1;
    const std::size_t rhs = n + m;
    std::vector<std::vector<double>> t(m, std::vector<double>(cols, 0.0));
    std::vector<double> flip(m, 1.0);
    std::vector<std::size_t> basis(m);
    for (std::size_t r = 0; r < m; ++r) {
        flip[r] = b[r] < 0.0 ? -1.0 : 1.0;
        for (std::size_t c = 0; c < n; ++c) t[r][c] = flip[r] * a[r][c];
        t[r][n + r] = 1.0;
        t[r][rhs] = flip[r] * b[r];
        basis[r] = n + r;
    }

    // Reduced costs of "minimize the sum of artificials"; cost[rhs] holds
    // minus the objective value.
    std::vector<double> cost(cols, 0.0);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c) cost[c] -= t[r][c];
    for (std::size_t r = 0; r < m; ++r) cost[rhs] -= t[r][rhs];

    PhaseOneResult res;
    while (true) {
        std::size_t enter = cols;
        for (std::size_t c = 0; c < n + m; ++c)
            if (cost[c] < -opts.pivot_tol) {
                enter = c;
                break;
            }
        if (enter == cols) break;

        std::size_t leave = m;
        double best = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
            if (t[r][enter] <= opts.pivot_tol) continue;
            const double ratio = t[r][rhs] / t[r][enter];
            if (leave == m || ratio < best - opts.pivot_tol ||
                (std::abs(ratio - best) <= opts.pivot_tol && basis[r] < basis[leave])) {
                leave = r;
                best = ratio;
            }
        }
        // Phase one is bounded below by zero, so an unbounded ray cannot occur.
        if (leave == m) throw std::logic_error("phase one: unbounded entering column");
        if (++res.pivots > opts.max_pivots) throw std::runtime_error("phase one: pivot limit exceeded");

        const double piv = t[leave][enter];
        for (double& v : t[leave]) v /= piv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == leave) continue;
            const double f = t[r][enter];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < cols; ++c) t[r][c] -= f * t[leave][c];
        }
        const double f = cost[enter];
        for (std::size_t c = 0; c < cols; ++c) cost[c] -= f * t[leave][c];
        basis[leave] = enter;
    }

    res.infeasibility = -cost[rhs];
    res.feasible = res.infeasibility <= opts.feasibility_tol;
    res.x.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r)
        if (basis[r] < n) res.x[basis[r]] = std::max(0.0, t[r][rhs]);
    // y_k = c_k - d_k on the artificial columns (c_k = 1), then undo the row flips.
    res.farkas.resize(m);
    for (std::size_t r = 0; r < m; ++r) res.farkas[r] = flip[r] * (1.0 - cost[n + r]);
    return res;
}

}  // namespace kolmo
