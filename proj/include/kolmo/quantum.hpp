// quantum.hpp - a small complex Hilbert-space engine: unit states,
// orthogonal projectors, Kronecker products, Born's rule and the singlet
// pairwise tables.
#pragma once

#include <Eigen/Dense>

#include "kolmo/chsh.hpp"

namespace kolmo {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Entrywise tolerance for Hermiticity and idempotence.
inline constexpr double kProjectorTol = 1e-10;
/// Tolerance on the norm of a state vector.
inline constexpr double kStateNormTol = 1e-12;

class StateVector {
public:
    /// Throws InvalidSubspace for an empty vector and NotNormalized when the
    /// Euclidean norm is off by more than kStateNormTol.
    static StateVector make(CVector amplitudes);

    const CVector& amplitudes() const { return amplitudes_; }
    Eigen::Index dim() const { return amplitudes_.size(); }

private:
    explicit StateVector(CVector a) : amplitudes_(std::move(a)) {}
    CVector amplitudes_;
};

class HermitianProjector {
public:
    /// Throws InvalidProjector unless the matrix is square, Hermitian and
    /// idempotent within kProjectorTol entrywise.
    static HermitianProjector make(CMatrix m);

    static HermitianProjector identity(Eigen::Index dim);
    static HermitianProjector zero(Eigen::Index dim);
    /// Rank-one projector onto span{v}; v need not be normalized.
    static HermitianProjector onto(const CVector& v);

    const CMatrix& matrix() const { return matrix_; }
    Eigen::Index dim() const { return matrix_.rows(); }
    /// Trace, rounded to the nearest integer.
    Eigen::Index rank() const;

private:
    explicit HermitianProjector(CMatrix m) : matrix_(std::move(m)) {}
    CMatrix matrix_;
};

/// An analyzer angle in radians, normalized to [0, 2*pi).
class PolarizationSetting {
public:
    static PolarizationSetting radians(double theta);
    static PolarizationSetting degrees(double deg);

    double theta() const { return theta_; }

private:
    explicit PolarizationSetting(double t) : theta_(t) {}
    double theta_ = 0.0;
};

/// The analyzer angles of one CHSH run: left (theta1, theta2), right
/// (theta1', theta2').
struct AngleQuad {
    PolarizationSetting theta1 = PolarizationSetting::radians(0.0);
    PolarizationSetting theta2 = PolarizationSetting::radians(0.0);
    PolarizationSetting theta1p = PolarizationSetting::radians(0.0);
    PolarizationSetting theta2p = PolarizationSetting::radians(0.0);

    double left(int i) const { return i == 1 ? theta1.theta() : theta2.theta(); }
    double right(int j) const { return j == 1 ? theta1p.theta() : theta2p.theta(); }

    /// (0, pi/2; pi/4, -pi/4): the singlet reaches S_C = 2 sqrt 2 here.
    static AngleQuad tsirelson();
};

/// ||P psi||^2, clamped to [0, 1].
double born_probability(const StateVector& psi, const HermitianProjector& p);

/// Kronecker product P (x) Q.
HermitianProjector tensor(const HermitianProjector& p, const HermitianProjector& q);

/// Closed-form singlet table: p_ij(e,e) = cos^2((theta_i - theta_j')/2) / 2,
/// p_ij(e,-e) = sin^2((theta_i - theta_j')/2) / 2.
PairwiseTable epr_bohm_table(const AngleQuad& angles);

/// Two-qubit singlet (|01> - |10>)/sqrt 2 with spin measurements in a real
/// plane on both sides. The right-hand outcome labels are swapped, which
/// turns the singlet's perfect anticorrelation at equal angles into the
/// perfect correlation of the closed-form table.
class SingletPreset {
public:
    SingletPreset();

    const StateVector& state() const { return state_; }

    /// Left factor: projector onto the outcome-eps eigenvector at angle theta.
    HermitianProjector left(double theta, int eps) const;
    /// Right factor, with outcomes relabelled.
    HermitianProjector right(double theta, int eps) const;

    /// Born probability of (eps, epsp) at angles (theta, thetap).
    double probability(double theta, int eps, double thetap, int epsp) const;

    /// The full pairwise table computed through Born's rule.
    PairwiseTable table(const AngleQuad& angles) const;

private:
    StateVector state_;
};

const SingletPreset& singlet_preset();

}  // namespace kolmo
