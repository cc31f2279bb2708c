#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kolmo/chsh.hpp"
#include "kolmo/quantum.hpp"
#include "support/generators.hpp"

using namespace kolmo;
using kolmo::testing::Rng;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// Test-side oracle: sum of e e' p_ij(e, e') straight off the cells.
double table_corr(const PairwiseTable& t, int i, int j) {
    double c = 0.0;
    for (int e : {1, -1})
        for (int ep : {1, -1}) c += e * ep * t.p(i, j, e, ep);
    return c;
}

PairwiseTable perfectly_correlated() {
    PairwiseTable::Cells c{};
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
            c[PairwiseTable::cell_index(i, j, 1, 1)] = 0.5;
            c[PairwiseTable::cell_index(i, j, -1, -1)] = 0.5;
        }
    return PairwiseTable::from_cells(c);
}

PairwiseTable deterministic_11() {
    PairwiseTable::Cells c{};
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) c[PairwiseTable::cell_index(i, j, 1, 1)] = 1.0;
    return PairwiseTable::from_cells(c);
}

PairwiseTable singlet() { return epr_bohm_table(AngleQuad::tsirelson()); }

AtomCoords parse_label(const std::string& label) {
    AtomCoords c{};
    std::size_t pos = 1;
    for (int k = 0; k < 4; ++k) {
        const auto comma = label.find_first_of(",)", pos);
        c[k] = std::stoi(label.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return c;
}

}  // namespace

TEST_CASE("PairwiseTable validation") {
    PairwiseTable::Cells c = PairwiseTable::uniform().cells();
    c[0] = -0.25;
    c[1] = 0.75;
    CHECK_THROWS_AS(PairwiseTable::from_cells(c), NegativeWeight);
    c = PairwiseTable::uniform().cells();
    c[5] = 0.3;
    CHECK_THROWS_AS(PairwiseTable::from_cells(c), NotNormalized);
    CHECK_THROWS_AS(SettingDistribution::make(1.2, 0.5), NegativeWeight);
    CHECK_THROWS_AS(SettingDistribution::make(0.5, -0.1), NegativeWeight);
}

TEST_CASE("atom labels are canonical") {
    CHECK(atom_label({1, 0, -1, 0}) == "(+1,0,-1,0)");
    CHECK(atom_label(block_atom(2, 2, -1, 1)) == "(0,-1,0,+1)");
    const auto cs = build_chsh_space(PairwiseTable::uniform(), SettingDistribution::uniform());
    CHECK(cs.space().atoms().front() == "(+1,0,+1,0)");
    CHECK(cs.space().atoms().back() == "(0,-1,0,-1)");
}

TEST_CASE("build_chsh_space weights") {
    const auto u = build_chsh_space(PairwiseTable::uniform(), SettingDistribution::uniform());
    REQUIRE(u.space().size() == 16);
    for (double w : u.space().weights()) CHECK(w == 1.0 / 16.0);

    const auto s = build_chsh_space(singlet(), SettingDistribution::uniform());
    CHECK(std::abs(s.space().weight("(+1,0,+1,0)") - 0.106694173824159220) < 1e-15);

    const auto d = build_chsh_space(PairwiseTable::uniform(), SettingDistribution::make(1.0, 1.0));
    CHECK(d.space().probability(d.setting_event(1, 1)) == 1.0);
    CHECK(d.space().probability(d.setting_event(2, 2)) == 0.0);
}

TEST_CASE("unconditional correlations") {
    const auto uni = unconditional_correlations(build_chsh_space(PairwiseTable::uniform(), SettingDistribution::uniform()));
    for (const auto& row : uni)
        for (double v : row) CHECK(v == 0.0);

    const auto s = unconditional_correlations(build_chsh_space(singlet(), SettingDistribution::uniform()));
    CHECK(std::abs(s[0][0] - kSqrt2 / 8) < 1e-15);

    const auto pc = unconditional_correlations(build_chsh_space(perfectly_correlated(), SettingDistribution::uniform()));
    for (const auto& row : pc)
        for (double v : row) CHECK(v == 0.25);
}

TEST_CASE("classical S") {
    const auto u = SettingDistribution::uniform();
    CHECK(std::abs(classical_S(build_chsh_space(singlet(), u)) - kSqrt2 / 2) < 1e-15);
    CHECK(classical_S(build_chsh_space(PairwiseTable::uniform(), u)) == 0.0);
    CHECK(classical_S(build_chsh_space(PairwiseTable::pr_box(), u)) == 1.0);
}

TEST_CASE("conditional correlations") {
    const auto u = SettingDistribution::uniform();
    const auto s = conditional_correlations(build_chsh_space(singlet(), u));
    CHECK(std::abs(s[0][0] - kSqrt2 / 2) < 1e-15);
    CHECK(std::abs(s[1][1] + kSqrt2 / 2) < 1e-15);

    const auto z = conditional_correlations(build_chsh_space(PairwiseTable::uniform(), u));
    for (const auto& row : z)
        for (double v : row) CHECK(v == 0.0);

    CHECK(conditional_correlations(build_chsh_space(deterministic_11(), u))[0][0] == 1.0);

    const auto degenerate = build_chsh_space(singlet(), SettingDistribution::make(1.0, 0.5));
    CHECK_THROWS_AS(conditional_correlations(degenerate), ZeroProbabilityCondition);
    CHECK_THROWS_AS(conditional_S(degenerate), ZeroProbabilityCondition);
}

TEST_CASE("conditional S") {
    const auto u = SettingDistribution::uniform();
    CHECK(std::abs(conditional_S(build_chsh_space(singlet(), u)) - 2 * kSqrt2) < 1e-12);
    CHECK(conditional_S(build_chsh_space(PairwiseTable::pr_box(), u)) == 4.0);
    CHECK(conditional_S(build_chsh_space(PairwiseTable::uniform(), u)) == 0.0);
}

TEST_CASE("verify_bounds") {
    const auto u = SettingDistribution::uniform();
    const auto s = verify_bounds(build_chsh_space(singlet(), u));
    CHECK(s.bound_S);
    CHECK(*s.bound_SC);
    CHECK(s.identity_residual < 1e-12);

    const auto pr = verify_bounds(build_chsh_space(PairwiseTable::pr_box(), u));
    CHECK(pr.S == 1.0);
    CHECK(*pr.S_C == 4.0);
    CHECK(pr.bound_S);
    CHECK(*pr.bound_SC);

    const auto z = verify_bounds(build_chsh_space(PairwiseTable::uniform(), u));
    CHECK(z.S == 0.0);
    CHECK(*z.S_C == 0.0);
    CHECK(z.bound_S);

    // Degenerate selection: unconditional part only.
    const auto d = verify_bounds(build_chsh_space(singlet(), SettingDistribution::make(0.0, 0.3)));
    CHECK_FALSE(d.conditional.has_value());
    CHECK_FALSE(d.S_C.has_value());
    CHECK(d.bound_S);
    CHECK(d.identity_residual < 1e-12);
}

TEST_CASE("locality and support by enumeration of the 16 atoms") {
    Rng rng(77);
    const auto cs = build_chsh_space(kolmo::testing::random_table(rng), SettingDistribution::uniform());
    for (const auto& l1 : cs.space().atoms()) {
        const AtomCoords c1 = parse_label(l1);
        for (const auto& l2 : cs.space().atoms()) {
            const AtomCoords c2 = parse_label(l2);
            for (int k = 1; k <= 2; ++k) {
                if (c1[0] == c2[0] && c1[1] == c2[1]) CHECK(cs.A(k).at(l1) == cs.A(k).at(l2));
                if (c1[2] == c2[2] && c1[3] == c2[3]) CHECK(cs.B(k).at(l1) == cs.B(k).at(l2));
            }
        }
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j)
                if (cs.A(i).at(l1) * cs.B(j).at(l1) != 0.0) {
                    CHECK(cs.eta_left().at(l1) == i);
                    CHECK(cs.eta_right().at(l1) == j);
                }
    }
}

TEST_CASE("property: identity chain C_ij = E(AB | Omega_ij) = <A,B> / P(i,j)") {
    Rng rng(3003);
    for (int trial = 0; trial < 500; ++trial) {
        const auto table = kolmo::testing::random_table(rng);
        const auto settings = kolmo::testing::random_nondegenerate_settings(rng);
        const auto cs = build_chsh_space(table, settings);

        double total = 0.0;
        for (double w : cs.space().weights()) total += w;
        CHECK(std::abs(total - 1.0) <= 1e-12);

        const auto cond = conditional_correlations(cs);
        const auto uncond = unconditional_correlations(cs);
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) {
                const double pij = settings.joint(i, j);
                CHECK(std::abs(cs.space().probability(cs.setting_event(i, j)) - pij) <= 1e-12);
                const double expected = table_corr(table, i, j);
                CHECK(std::abs(cond[i - 1][j - 1] - expected) <= 1e-12);
                CHECK(std::abs(uncond[i - 1][j - 1] / pij - expected) <= 1e-12);
                CHECK(std::abs(uncond[i - 1][j - 1]) <= pij + 1e-12);
            }
    }
}

TEST_CASE("property: strong bound suite under uniform settings, all sign placements") {
    Rng rng(4004);
    const auto u = SettingDistribution::uniform();
    for (int trial = 0; trial < 500; ++trial) {
        const auto cs = build_chsh_space(kolmo::testing::random_table(rng), u);
        const auto uncond = unconditional_correlations(cs);
        const auto cond = conditional_correlations(cs);
        for (int k = 0; k < 4; ++k) {
            CHECK(std::abs(s_combination(uncond, k)) <= 1.0 + 1e-12);
            CHECK(std::abs(s_combination(cond, k)) <= 4.0 + 1e-12);
        }
        CHECK(std::abs(conditional_S(cs) - 4.0 * classical_S(cs)) <= 1e-12);
        const auto r = verify_bounds(cs);
        CHECK(r.bound_S);
        CHECK(*r.bound_SC);
    }
}
