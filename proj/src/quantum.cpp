#include "kolmo/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kolmo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Real spin eigenvector for outcome eps at analyzer angle theta.
CVector spin_vector(double theta, int eps) {
    CVector v(2);
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    if (eps == +1) {
        v << c, s;
    } else if (eps == -1) {
        v << -s, c;
    } else {
        throw DomainMismatch("outcome must be +1 or -1");
    }
    return v;
}

StateVector make_singlet() {
    CVector psi = CVector::Zero(4);
    psi(1) = 1.0 / std::numbers::sqrt2;   // |01>
    psi(2) = -1.0 / std::numbers::sqrt2;  // |10>
    return StateVector::make(std::move(psi));
}

}  // namespace

StateVector StateVector::make(CVector amplitudes) {
    if (amplitudes.size() == 0) throw DimensionMismatch("state vector of dimension 0");
    const double n = amplitudes.norm();
    if (!(std::abs(n - 1.0) <= kStateNormTol)) throw NotNormalized("state norm " + std::to_string(n));
    return StateVector(std::move(amplitudes));
}

HermitianProjector HermitianProjector::make(CMatrix m) {
    if (m.rows() == 0 || m.rows() != m.cols())
        throw InvalidProjector("matrix must be square and nonempty");
    if (!m.allFinite()) throw InvalidProjector("matrix has non-finite entries");
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kProjectorTol) throw InvalidProjector("not Hermitian (deviation " + std::to_string(herm) + ")");
    const double idem = (m * m - m).cwiseAbs().maxCoeff();
    if (idem > kProjectorTol) throw InvalidProjector("not idempotent (deviation " + std::to_string(idem) + ")");
    return HermitianProjector(std::move(m));
}

HermitianProjector HermitianProjector::identity(Eigen::Index dim) {
    if (dim <= 0) throw DimensionMismatch("projector dimension must be positive");
    return HermitianProjector(CMatrix::Identity(dim, dim));
}

HermitianProjector HermitianProjector::zero(Eigen::Index dim) {
    if (dim <= 0) throw DimensionMismatch("projector dimension must be positive");
    return HermitianProjector(CMatrix::Zero(dim, dim));
}

HermitianProjector HermitianProjector::onto(const CVector& v) {
    const double n = v.norm();
    if (!(n > 0.0)) throw InvalidProjector("cannot project onto the zero vector");
    const CVector u = v / n;
    return HermitianProjector(u * u.adjoint());
}

Eigen::Index HermitianProjector::rank() const {
    return static_cast<Eigen::Index>(std::llround(matrix_.trace().real()));
}

PolarizationSetting PolarizationSetting::radians(double theta) {
    if (!std::isfinite(theta)) throw RangeViolation("angle must be finite");
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return PolarizationSetting(t);
}

PolarizationSetting PolarizationSetting::degrees(double deg) {
    if (!std::isfinite(deg)) throw RangeViolation("angle must be finite");
    return radians(deg * std::numbers::pi / 180.0);
}

AngleQuad AngleQuad::tsirelson() {
    using std::numbers::pi;
    return {PolarizationSetting::radians(0.0), PolarizationSetting::radians(pi / 2),
            PolarizationSetting::radians(pi / 4), PolarizationSetting::radians(-pi / 4)};
}

double born_probability(const StateVector& psi, const HermitianProjector& p) {
    if (psi.dim() != p.dim())
        throw DimensionMismatch("state has dimension " + std::to_string(psi.dim()) + ", projector " +
                                std::to_string(p.dim()));
    const double prob = (p.matrix() * psi.amplitudes()).squaredNorm();
    return std::clamp(prob, 0.0, 1.0);
}

HermitianProjector tensor(const HermitianProjector& p, const HermitianProjector& q) {
    const auto& a = p.matrix();
    const auto& b = q.matrix();
    CMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            k.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return HermitianProjector::make(std::move(k));
}

PairwiseTable epr_bohm_table(const AngleQuad& angles) {
    PairwiseTable::Cells cells{};
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
            const double half = (angles.left(i) - angles.right(j)) / 2.0;
            const double same = 0.5 * std::cos(half) * std::cos(half);
            const double diff = 0.5 * std::sin(half) * std::sin(half);
            for (int e : {+1, -1})
                for (int ep : {+1, -1}) cells[PairwiseTable::cell_index(i, j, e, ep)] = (e == ep) ? same : diff;
        }
    return PairwiseTable::from_cells(cells);
}

SingletPreset::SingletPreset() : state_(make_singlet()) {}

HermitianProjector SingletPreset::left(double theta, int eps) const {
    return HermitianProjector::onto(spin_vector(theta, eps));
}

HermitianProjector SingletPreset::right(double theta, int eps) const {
    return HermitianProjector::onto(spin_vector(theta, -eps));
}

double SingletPreset::probability(double theta, int eps, double thetap, int epsp) const {
    return born_probability(state_, tensor(left(theta, eps), right(thetap, epsp)));
}

PairwiseTable SingletPreset::table(const AngleQuad& angles) const {
    PairwiseTable::Cells cells{};
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int e : {+1, -1})
                for (int ep : {+1, -1})
                    cells[PairwiseTable::cell_index(i, j, e, ep)] =
                        probability(angles.left(i), e, angles.right(j), ep);
    return PairwiseTable::from_cells(cells);
}

const SingletPreset& singlet_preset() {
    static const SingletPreset preset;
    return preset;
}

}  // namespace kolmo
