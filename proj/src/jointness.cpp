#include "kolmo/jointness.hpp"

#include <algorithm>
#include <cmath>

#include "kolmo/simplex.hpp"

namespace kolmo {

namespace {

constexpr int kSigns[2] = {+1, -1};

// Row layout of the LP: one equation per table cell, then total mass.
std::vector<std::vector<double>> marginal_matrix() {
    std::vector<std::vector<double>> a(17, std::vector<double>(16, 0.0));
    for (std::size_t k = 0; k < 16; ++k) {
        const Assignment x = assignment(k);
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) {
                const std::size_t row = PairwiseTable::cell_index(i, j, x[i - 1], x[2 + j - 1]);
                a[row][k] = 1.0;
            }
        a[16][k] = 1.0;
    }
    return a;
}

}  // namespace

Assignment assignment(std::size_t k) {
    if (k >= 16) throw DomainMismatch("assignment index out of range");
    Assignment x{};
    for (int bit = 0; bit < 4; ++bit) x[static_cast<std::size_t>(bit)] = ((k >> (3 - bit)) & 1u) ? -1 : +1;
    return x;
}

JointWitness JointWitness::make(const Weights& w) {
    double sum = 0.0;
    for (double v : w) {
        if (!(v >= 0.0)) throw NegativeWeight("joint weight " + std::to_string(v));
        sum += v;
    }
    if (!(std::abs(sum - 1.0) <= kJointTol)) throw NotNormalized("joint weights sum to " + std::to_string(sum));
    return JointWitness(w);
}

JointWitness JointWitness::uniform() {
    Weights w;
    w.fill(1.0 / 16.0);
    return JointWitness(w);
}

PairwiseTable JointWitness::marginalize() const {
    PairwiseTable::Cells cells{};
    for (std::size_t k = 0; k < 16; ++k) {
        const Assignment x = assignment(k);
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) cells[PairwiseTable::cell_index(i, j, x[i - 1], x[2 + j - 1])] += weights_[k];
    }
    return PairwiseTable::from_cells(cells);
}

bool marginal_consistency(const PairwiseTable& table) {
    for (int e : kSigns) {
        for (int i = 1; i <= 2; ++i) {
            // A_i appears in blocks (i,1) and (i,2).
            const double via1 = table.p(i, 1, e, +1) + table.p(i, 1, e, -1);
            const double via2 = table.p(i, 2, e, +1) + table.p(i, 2, e, -1);
            if (std::abs(via1 - via2) > kJointTol) return false;
        }
        for (int j = 1; j <= 2; ++j) {
            const double via1 = table.p(1, j, +1, e) + table.p(1, j, -1, e);
            const double via2 = table.p(2, j, +1, e) + table.p(2, j, -1, e);
            if (std::abs(via1 - via2) > kJointTol) return false;
        }
    }
    return true;
}

std::array<double, 8> chsh_variants(const PairwiseTable& table) {
    const Matrix2 c = table.correlations();
    std::array<double, 8> out{};
    for (int k = 0; k < 4; ++k) {
        const double s = s_combination(c, k);
        out[static_cast<std::size_t>(2 * k)] = s;
        out[static_cast<std::size_t>(2 * k + 1)] = -s;
    }
    return out;
}

FeasibilityResult joint_exists(const PairwiseTable& table) {
    if (!marginal_consistency(table))
        throw InconsistentMarginals("single-observable marginals differ between blocks");

    FeasibilityResult res;
    const auto variants = chsh_variants(table);
    const auto top = std::max_element(variants.begin(), variants.end());
    res.max_chsh_variant = *top;
    if (res.max_chsh_variant > 2.0 + kJointTol) {
        const auto k = static_cast<int>(top - variants.begin());
        res.violating_variant = ChshVariant{k / 2, (k % 2) ? -1 : +1};
    }

    std::vector<double> rhs(table.cells().begin(), table.cells().end());
    rhs.push_back(1.0);
    const PhaseOneResult lp = phase_one(marginal_matrix(), rhs);
    res.infeasibility = lp.infeasibility;
    res.farkas = lp.farkas;
    res.feasible = lp.feasible;
    if (lp.feasible) {
        JointWitness::Weights w{};
        std::copy(lp.x.begin(), lp.x.end(), w.begin());
        res.witness = JointWitness::make(w);
    }
    return res;
}

}  // namespace kolmo
