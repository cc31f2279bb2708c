// simplex.hpp - dense phase-one simplex for feasibility of {A x = b, x >= 0}.
//
// Sized for the tiny systems of the jointness check (tens of rows and
// columns). Uses Bland's rule, so it terminates on degenerate and
// rank-deficient systems without anti-cycling heuristics.
#pragma once

#include <span>
#include <vector>

namespace kolmo {

struct PhaseOneResult {
    bool feasible = false;
    /// Basic feasible point when `feasible`, else the phase-one optimum.
    std::vector<double> x;
    /// Sum of the artificial variables at the phase-one optimum.
    double infeasibility = 0.0;
    /// Dual vector y of the phase-one problem. When infeasible it satisfies
    /// y^T A <= 0 (within tolerance) and y^T b > 0.
    std::vector<double> farkas;
    int pivots = 0;
};

struct SimplexOptions {
    double pivot_tol = 1e-9;
    /// Phase-one optimum at or below this counts as feasible.
    double feasibility_tol = 1e-9;
    int max_pivots = 10000;
};

/// `a` is row-major with rows.size() == b.size(); every row must have the
/// same length. Throws DimensionMismatch on ragged input.
PhaseOneResult phase_one(const std::vector<std::vector<double>>& a, std::span<const double> b,
                         const SimplexOptions& opts = {});

}  // namespace kolmo
