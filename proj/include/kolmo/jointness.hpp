// jointness.hpp - does a pairwise table extend to one joint distribution of
// the four +/-1 observables (a1, a2, b1, b2)?
//
// The ground truth is a 16-variable feasibility LP over the deterministic
// assignments; the eight CHSH sign variants are reported alongside as the
// diagnostic for infeasible tables.
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "kolmo/chsh.hpp"

namespace kolmo {

/// Tolerance for marginal agreement and witness round-trips.
inline constexpr double kJointTol = 1e-9;

/// One deterministic assignment of (a1, a2, b1, b2).
using Assignment = std::array<int, 4>;

/// Assignment number k in 0..15; +1 sorts before -1 and a1 is the most
/// significant coordinate.
Assignment assignment(std::size_t k);

class JointWitness {
public:
    using Weights = std::array<double, 16>;

    /// Checks nonnegativity and total mass within kJointTol.
    static JointWitness make(const Weights& w);
    static JointWitness uniform();

    const Weights& weights() const { return weights_; }

    /// Pairwise table of (a_i, b_j). Cells are summed exactly; the result is
    /// validated as a PairwiseTable.
    PairwiseTable marginalize() const;

private:
    explicit JointWitness(const Weights& w) : weights_(w) {}
    Weights weights_{};
};

struct ChshVariant {
    int minus_at = 3;  ///< position of the minus sign, order 11, 12, 21, 22
    int sign = +1;     ///< overall sign
};

struct FeasibilityResult {
    bool feasible = false;
    std::optional<JointWitness> witness;
    double max_chsh_variant = 0.0;
    std::optional<ChshVariant> violating_variant;
    double infeasibility = 0.0;
    std::vector<double> farkas;  ///< dual certificate rows: 16 marginal cells, then total mass
};

/// Single-observable marginals agree across the two blocks sharing them.
bool marginal_consistency(const PairwiseTable& table);

/// Eight values: for each minus position k, entries 2k and 2k+1 hold +S_k
/// and -S_k.
std::array<double, 8> chsh_variants(const PairwiseTable& table);

/// Throws InconsistentMarginals when marginal_consistency fails.
FeasibilityResult joint_exists(const PairwiseTable& table);

}  // namespace kolmo
