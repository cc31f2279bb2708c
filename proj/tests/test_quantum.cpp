#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kolmo/quantum.hpp"
#include "support/generators.hpp"

using namespace kolmo;
using kolmo::testing::Rng;
using std::numbers::pi;

namespace {

// Rank from the spectrum: eigenvalues of a projector cluster at 0 and 1.
Eigen::Index spectral_rank(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    Eigen::Index r = 0;
    for (Eigen::Index k = 0; k < m.rows(); ++k) r += es.eigenvalues()(k) > 0.5 ? 1 : 0;
    return r;
}

// Closed-form singlet cell.
double closed_form(double theta, int eps, double thetap, int epsp) {
    const double half = (theta - thetap) / 2.0;
    return eps == epsp ? 0.5 * std::cos(half) * std::cos(half) : 0.5 * std::sin(half) * std::sin(half);
}

CVector basis(Eigen::Index n, Eigen::Index k) { return CVector::Unit(n, k); }

}  // namespace

TEST_CASE("StateVector and HermitianProjector invariants") {
    CHECK_THROWS_AS(StateVector::make(CVector::Zero(2)), NotNormalized);
    CHECK_THROWS_AS(StateVector::make(CVector()), DimensionMismatch);
    CMatrix m(2, 2);
    m << 1, 1, 0, 0;  // idempotent but not Hermitian
    CHECK_THROWS_AS(HermitianProjector::make(m), InvalidProjector);
    m << 0.5, 0, 0, 0.5;  // Hermitian but not idempotent
    CHECK_THROWS_AS(HermitianProjector::make(m), InvalidProjector);
    CHECK_THROWS_AS(HermitianProjector::make(CMatrix::Zero(2, 3)), InvalidProjector);
    CHECK(HermitianProjector::onto(basis(3, 1)).rank() == 1);
}

TEST_CASE("born_probability") {
    Rng rng(5);
    CVector psi = kolmo::testing::random_cvector(rng, 3);
    psi.normalize();
    CHECK(std::abs(born_probability(StateVector::make(psi), HermitianProjector::identity(3)) - 1.0) < 1e-15);

    const auto e1 = StateVector::make(basis(2, 0));
    CHECK(born_probability(e1, HermitianProjector::onto(basis(2, 1))) == 0.0);

    CVector plus(2);
    plus << 1 / std::numbers::sqrt2, 1 / std::numbers::sqrt2;
    CHECK(std::abs(born_probability(StateVector::make(plus), HermitianProjector::onto(basis(2, 0))) - 0.5) < 1e-15);

    CHECK_THROWS_AS(born_probability(e1, HermitianProjector::identity(3)), DimensionMismatch);
}

TEST_CASE("tensor") {
    const auto i4 = tensor(HermitianProjector::identity(2), HermitianProjector::identity(2));
    CHECK((i4.matrix() - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

    const auto z = tensor(HermitianProjector::onto(basis(2, 0)), HermitianProjector::zero(3));
    CHECK(z.dim() == 6);
    CHECK(z.matrix().cwiseAbs().maxCoeff() == 0.0);

    Rng rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = HermitianProjector::onto(kolmo::testing::random_cvector(rng, 2));
        const auto q = HermitianProjector::onto(kolmo::testing::random_cvector(rng, 3));
        const auto pq = tensor(p, q);
        CHECK(spectral_rank(pq.matrix()) == spectral_rank(p.matrix()) * spectral_rank(q.matrix()));
    }
    // Higher ranks: a rank-2 projector in dim 3 against a rank-1 in dim 2.
    const CMatrix u = kolmo::testing::random_unitary(rng, 3);
    const auto p2 = HermitianProjector::make(u.leftCols(2) * u.leftCols(2).adjoint());
    const auto q1 = HermitianProjector::onto(kolmo::testing::random_cvector(rng, 2));
    CHECK(spectral_rank(tensor(p2, q1).matrix()) == 2);
}

TEST_CASE("angle normalization") {
    CHECK(PolarizationSetting::radians(-pi / 4).theta() == doctest::Approx(7 * pi / 4));
    CHECK(PolarizationSetting::radians(2 * pi).theta() == doctest::Approx(0.0));
    CHECK(PolarizationSetting::degrees(90).theta() == doctest::Approx(pi / 2));
    CHECK_THROWS_AS(PolarizationSetting::radians(std::nan("")), RangeViolation);
    const double t = PolarizationSetting::radians(-1e-300).theta();
    CHECK(t >= 0.0);
    CHECK(t < 2 * pi);
}

TEST_CASE("epr_bohm_table examples") {
    const auto same = epr_bohm_table({PolarizationSetting::radians(0.3), PolarizationSetting::radians(0.3),
                                      PolarizationSetting::radians(0.3), PolarizationSetting::radians(0.3)});
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
            CHECK(same.p(i, j, 1, 1) == 0.5);
            CHECK(same.p(i, j, -1, -1) == 0.5);
            CHECK(same.p(i, j, 1, -1) == 0.0);
        }

    const auto ts = epr_bohm_table(AngleQuad::tsirelson());
    const Matrix2 c = ts.correlations();
    CHECK(std::abs(c[0][0] - std::numbers::sqrt2 / 2) < 1e-12);
    CHECK(std::abs(c[0][1] - std::numbers::sqrt2 / 2) < 1e-12);
    CHECK(std::abs(c[1][0] - std::numbers::sqrt2 / 2) < 1e-12);
    CHECK(std::abs(c[1][1] + std::numbers::sqrt2 / 2) < 1e-12);
    CHECK(std::abs(s_combination(c) - 2 * std::numbers::sqrt2) < 1e-12);

    const auto opposite = epr_bohm_table({PolarizationSetting::radians(pi), PolarizationSetting::radians(0),
                                          PolarizationSetting::radians(0), PolarizationSetting::radians(0)});
    CHECK(opposite.p(1, 1, 1, 1) < 1e-32);
    CHECK(opposite.p(1, 1, -1, -1) < 1e-32);
    CHECK(opposite.p(1, 1, 1, -1) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("singlet preset examples") {
    const auto& s = singlet_preset();
    CHECK(std::abs(s.probability(0, 1, 0, 1) - 0.5) < 1e-12);
    CHECK(std::abs(s.probability(0, 1, pi, 1)) < 1e-12);
    for (double th : {0.0, 0.7, 2.9})
        for (double thp : {0.0, -1.1, 4.0}) {
            double total = 0.0;
            for (int e : {1, -1})
                for (int ep : {1, -1}) total += s.probability(th, e, thp, ep);
            CHECK(std::abs(total - 1.0) < 1e-12);
        }
}

TEST_CASE("property: Born route matches the closed form") {
    Rng rng(7007);
    std::uniform_real_distribution<double> ang(-2 * pi, 2 * pi);
    const auto& s = singlet_preset();
    for (int trial = 0; trial < 100; ++trial) {
        const double th = ang(rng), thp = ang(rng);
        for (int e : {1, -1})
            for (int ep : {1, -1}) CHECK(std::abs(s.probability(th, e, thp, ep) - closed_form(th, e, thp, ep)) <= 1e-12);

        // Completeness of each factor's outcome projectors.
        const CMatrix left = s.left(th, 1).matrix() + s.left(th, -1).matrix();
        const CMatrix right = s.right(thp, 1).matrix() + s.right(thp, -1).matrix();
        CHECK((left - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((right - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("property: closed-form blocks are distributions with correlation cos(delta)") {
    Rng rng(8008);
    std::uniform_real_distribution<double> ang(-10.0, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        const AngleQuad q{PolarizationSetting::radians(ang(rng)), PolarizationSetting::radians(ang(rng)),
                          PolarizationSetting::radians(ang(rng)), PolarizationSetting::radians(ang(rng))};
        const auto t = epr_bohm_table(q);
        const auto born = singlet_preset().table(q);
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) {
                double sum = 0.0;
                for (int e : {1, -1})
                    for (int ep : {1, -1}) {
                        CHECK(t.p(i, j, e, ep) >= 0.0);
                        sum += t.p(i, j, e, ep);
                        CHECK(std::abs(t.p(i, j, e, ep) - born.p(i, j, e, ep)) <= 1e-12);
                    }
                CHECK(std::abs(sum - 1.0) <= 1e-15);
                CHECK(std::abs(t.correlation(i, j) - std::cos(q.left(i) - q.right(j))) <= 1e-12);
            }
    }
}
