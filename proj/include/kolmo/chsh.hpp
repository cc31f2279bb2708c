// chsh.hpp - the 16-atom unifying space for a CHSH test with random
// setting selection.
//
// Atoms are 4-tuples (e1, e2, e1', e2') where exactly one of the left slots
// and one of the right slots is nonzero: the nonzero left slot says which
// left setting i was selected and holds its outcome, likewise on the right.
// Atom (e1,0,e1',0) carries weight P_L(1) P_R(1) p_11(e1,e1'), and so on for
// the other three blocks. A^(i) reads left slot i, B^(j) reads right slot j,
// both are zero elsewhere.
#pragma once

#include <array>
#include <optional>
#include <string>

#include "kolmo/prob_space.hpp"

namespace kolmo {

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Slack used when checking |S| and |S_C| against their bounds.
inline constexpr double kBoundTol = 1e-12;

/// Four joint distributions p_ij(e, e') over {-1,+1}^2, one per setting pair.
/// Cells are stored in (i, j, e, e') order with +1 before -1, the same order
/// as the rows of the table file.
class PairwiseTable {
public:
    using Cells = std::array<double, 16>;

    /// Validates: every cell >= 0, every block sums to 1 within
    /// kNormalizationTol. Zero cells are allowed.
    static PairwiseTable from_cells(const Cells& cells);

    /// Every cell 1/4.
    static PairwiseTable uniform();
    /// PR box: perfect correlation in blocks 11, 12, 21 and perfect
    /// anticorrelation in block 22.
    static PairwiseTable pr_box();

    static std::size_t cell_index(int i, int j, int eps, int epsp);

    double p(int i, int j, int eps, int epsp) const { return cells_[cell_index(i, j, eps, epsp)]; }
    const Cells& cells() const { return cells_; }

    /// C_ij = sum over e, e' of e e' p_ij(e, e').
    double correlation(int i, int j) const;
    Matrix2 correlations() const;

private:
    explicit PairwiseTable(const Cells& cells) : cells_(cells) {}
    Cells cells_{};
};

/// Independent selection of the left and right settings:
/// P(i, j) = P_L(i) P_R(j).
class SettingDistribution {
public:
    static SettingDistribution make(double pl1, double pr1);
    static SettingDistribution uniform() { return make(0.5, 0.5); }

    double left(int i) const { return i == 1 ? pl1_ : 1.0 - pl1_; }
    double right(int j) const { return j == 1 ? pr1_ : 1.0 - pr1_; }
    double joint(int i, int j) const { return left(i) * right(j); }
    bool nondegenerate() const { return pl1_ > 0.0 && pl1_ < 1.0 && pr1_ > 0.0 && pr1_ < 1.0; }

private:
    SettingDistribution(double pl1, double pr1) : pl1_(pl1), pr1_(pr1) {}
    double pl1_ = 0.5;
    double pr1_ = 0.5;
};

using AtomCoords = std::array<int, 4>;

/// Canonical label, e.g. "(+1,0,-1,0)".
std::string atom_label(const AtomCoords& coords);

/// Coordinates of the atom in block (i, j) with outcomes (eps, epsp).
AtomCoords block_atom(int i, int j, int eps, int epsp);

class ChshSpace {
public:
    const ProbabilitySpace& space() const { return space_; }
    const RandomVariable& A(int i) const { return a_[i - 1]; }
    const RandomVariable& B(int j) const { return b_[j - 1]; }
    const RandomVariable& eta_left() const { return eta_l_; }
    const RandomVariable& eta_right() const { return eta_r_; }
    const SettingDistribution& settings() const { return settings_; }
    const PairwiseTable& table() const { return table_; }

    /// Omega_ij = {eta_L = i, eta_R = j}.
    Event setting_event(int i, int j) const;

private:
    friend ChshSpace build_chsh_space(const PairwiseTable&, const SettingDistribution&);

    ChshSpace(ProbabilitySpace space, const PairwiseTable& table, const SettingDistribution& settings);

    ProbabilitySpace space_;
    std::array<RandomVariable, 2> a_;
    std::array<RandomVariable, 2> b_;
    RandomVariable eta_l_;
    RandomVariable eta_r_;
    SettingDistribution settings_;
    PairwiseTable table_;
};

struct ChshReport {
    SettingDistribution settings = SettingDistribution::uniform();
    Matrix2 unconditional{};        ///< <A^(i), B^(j)>
    Matrix2 table_correlations{};   ///< C_ij straight from the table
    std::optional<Matrix2> conditional;  ///< E(A^(i) B^(j) | Omega_ij); absent if some P(i,j) = 0
    double S = 0.0;
    std::optional<double> S_C;
    double bound_S_limit = 1.0;     ///< sum of P(i,j) over the four pairs
    bool bound_S = false;
    std::optional<bool> bound_SC;
    double identity_residual = 0.0; ///< max |C_ij P(i,j) - <A^(i), B^(j)>|
};

ChshSpace build_chsh_space(const PairwiseTable& table, const SettingDistribution& settings);

/// Sign-pattern combination m11 + m12 + m21 + m22 with the minus sign on
/// entry `minus_at` (0..3 in the order 11, 12, 21, 22). The default is the
/// usual CHSH placement.
double s_combination(const Matrix2& m, int minus_at = 3);

Matrix2 unconditional_correlations(const ChshSpace& cs);
double classical_S(const ChshSpace& cs);

/// Throws ZeroProbabilityCondition when some P(i, j) is zero.
Matrix2 conditional_correlations(const ChshSpace& cs);
double conditional_S(const ChshSpace& cs);

ChshReport verify_bounds(const ChshSpace& cs);

}  // namespace kolmo
