#include "kolmo/chsh.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace kolmo {

namespace {

constexpr int kSigns[2] = {+1, -1};

int sign_slot(int eps) { return eps == +1 ? 0 : 1; }

void require_setting(int k) {
    if (k != 1 && k != 2) throw DomainMismatch("setting index must be 1 or 2, got " + std::to_string(k));
}

void require_outcome(int eps) {
    if (eps != 1 && eps != -1) throw DomainMismatch("outcome must be +1 or -1, got " + std::to_string(eps));
}

}  // namespace

std::size_t PairwiseTable::cell_index(int i, int j, int eps, int epsp) {
    require_setting(i);
    require_setting(j);
    require_outcome(eps);
    require_outcome(epsp);
    return static_cast<std::size_t>(((i - 1) * 2 + (j - 1)) * 4 + sign_slot(eps) * 2 + sign_slot(epsp));
}

PairwiseTable PairwiseTable::from_cells(const Cells& cells) {
    for (int block = 0; block < 4; ++block) {
        double sum = 0.0;
        for (int k = 0; k < 4; ++k) {
            const double c = cells[block * 4 + k];
            if (!(c >= 0.0))
                throw NegativeWeight("table cell " + std::to_string(block * 4 + k) + " = " + std::to_string(c));
            sum += c;
        }
        if (!(std::abs(sum - 1.0) <= kNormalizationTol))
            throw NotNormalized("block (" + std::to_string(block / 2 + 1) + "," + std::to_string(block % 2 + 1) +
                                ") sums to " + std::to_string(sum));
    }
    return PairwiseTable(cells);
}

PairwiseTable PairwiseTable::uniform() {
    Cells c;
    c.fill(0.25);
    return PairwiseTable(c);
}

PairwiseTable PairwiseTable::pr_box() {
    Cells c{};
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int e : kSigns)
                for (int ep : kSigns) {
                    const int want = (i == 2 && j == 2) ? -1 : +1;
                    c[cell_index(i, j, e, ep)] = (e * ep == want) ? 0.5 : 0.0;
                }
    return PairwiseTable(c);
}

double PairwiseTable::correlation(int i, int j) const {
    double c = 0.0;
    for (int e : kSigns)
        for (int ep : kSigns) c += e * ep * p(i, j, e, ep);
    return c;
}

Matrix2 PairwiseTable::correlations() const {
    Matrix2 m{};
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) m[i - 1][j - 1] = correlation(i, j);
    return m;
}

SettingDistribution SettingDistribution::make(double pl1, double pr1) {
    for (double p : {pl1, pr1}) {
        if (!(p >= 0.0)) throw NegativeWeight("setting probability " + std::to_string(p));
        if (!(p <= 1.0)) throw NegativeWeight("complementary setting probability " + std::to_string(1.0 - p));
    }
    return SettingDistribution(pl1, pr1);
}

std::string atom_label(const AtomCoords& coords) {
    std::string s = "(";
    for (std::size_t k = 0; k < coords.size(); ++k) {
        if (k) s += ',';
        s += coords[k] > 0 ? "+1" : coords[k] < 0 ? "-1" : "0";
    }
    return s + ")";
}

AtomCoords block_atom(int i, int j, int eps, int epsp) {
    require_setting(i);
    require_setting(j);
    require_outcome(eps);
    require_outcome(epsp);
    AtomCoords c{0, 0, 0, 0};
    c[static_cast<std::size_t>(i - 1)] = eps;
    c[static_cast<std::size_t>(2 + j - 1)] = epsp;
    return c;
}

ChshSpace::ChshSpace(ProbabilitySpace space, const PairwiseTable& table, const SettingDistribution& settings)
    : space_(std::move(space)), settings_(settings), table_(table) {
    std::map<std::string, double> a1, a2, b1, b2, etal, etar;
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int e : kSigns)
                for (int ep : kSigns) {
                    const AtomCoords c = block_atom(i, j, e, ep);
                    const std::string label = atom_label(c);
                    // Left observables read only the left slots, right ones only the right slots.
                    a1[label] = c[0];
                    a2[label] = c[1];
                    b1[label] = c[2];
                    b2[label] = c[3];
                    etal[label] = c[0] != 0 ? 1.0 : 2.0;
                    etar[label] = c[2] != 0 ? 1.0 : 2.0;
                }
    a_ = {RandomVariable(std::move(a1)), RandomVariable(std::move(a2))};
    b_ = {RandomVariable(std::move(b1)), RandomVariable(std::move(b2))};
    eta_l_ = RandomVariable(std::move(etal));
    eta_r_ = RandomVariable(std::move(etar));
}

Event ChshSpace::setting_event(int i, int j) const {
    require_setting(i);
    require_setting(j);
    std::set<std::string> members;
    for (const auto& label : space_.atoms())
        if (eta_l_.at(label) == i && eta_r_.at(label) == j) members.insert(label);
    return Event(std::move(members));
}

ChshSpace build_chsh_space(const PairwiseTable& table, const SettingDistribution& settings) {
    std::vector<std::string> atoms;
    std::vector<double> weights;
    atoms.reserve(16);
    weights.reserve(16);
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int e : kSigns)
                for (int ep : kSigns) {
                    atoms.push_back(atom_label(block_atom(i, j, e, ep)));
                    weights.push_back(settings.joint(i, j) * table.p(i, j, e, ep));
                }
    return ChshSpace(make_space(std::move(atoms), std::move(weights)), table, settings);
}

double s_combination(const Matrix2& m, int minus_at) {
    if (minus_at < 0 || minus_at > 3) throw DomainMismatch("minus sign position must be in 0..3");
    const double v[4] = {m[0][0], m[0][1], m[1][0], m[1][1]};
    double s = 0.0;
    for (int k = 0; k < 4; ++k) s += (k == minus_at) ? -v[k] : v[k];
    return s;
}

Matrix2 unconditional_correlations(const ChshSpace& cs) {
    Matrix2 m{};
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) m[i - 1][j - 1] = correlation(cs.space(), cs.A(i), cs.B(j));
    return m;
}

double classical_S(const ChshSpace& cs) {
    return chsh_S(cs.space(), cs.A(1), cs.A(2), cs.B(1), cs.B(2));
}

Matrix2 conditional_correlations(const ChshSpace& cs) {
    Matrix2 m{};
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            m[i - 1][j - 1] = conditional_expectation(cs.space(), cs.A(i) * cs.B(j), cs.setting_event(i, j));
    return m;
}

double conditional_S(const ChshSpace& cs) { return s_combination(conditional_correlations(cs)); }

ChshReport verify_bounds(const ChshSpace& cs) {
    ChshReport r;
    r.settings = cs.settings();
    r.unconditional = unconditional_correlations(cs);
    r.table_correlations = cs.table().correlations();
    r.S = classical_S(cs);

    // |<A,B>| <= P(Omega_ij) for every pair, whatever the signs.
    r.bound_S_limit = 0.0;
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) r.bound_S_limit += cs.settings().joint(i, j);
    r.bound_S = std::abs(r.S) <= r.bound_S_limit + kBoundTol;

    bool all_positive = true;
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            all_positive = all_positive && cs.space().probability(cs.setting_event(i, j)) > 0.0;
    if (all_positive) {
        r.conditional = conditional_correlations(cs);
        r.S_C = s_combination(*r.conditional);
        r.bound_SC = std::abs(*r.S_C) <= 4.0 + kBoundTol;
    }

    double residual = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double pij = cs.settings().joint(i + 1, j + 1);
            residual = std::max(residual, std::abs(r.table_correlations[i][j] * pij - r.unconditional[i][j]));
            if (r.conditional)
                residual = std::max(residual, std::abs((*r.conditional)[i][j] * pij - r.unconditional[i][j]));
        }
    r.identity_residual = residual;
    return r;
}

}  // namespace kolmo
