#include "kolmo/qlogic.hpp"

#include <algorithm>
#include <cmath>

namespace kolmo {

namespace {

void require_same_ambient(const Subspace& p, const Subspace& q) {
    if (p.ambient_dim() != q.ambient_dim())
        throw DimensionMismatch("subspaces live in dimensions " + std::to_string(p.ambient_dim()) + " and " +
                                std::to_string(q.ambient_dim()));
}

void require_ambient(Eigen::Index ambient, Eigen::Index max_dim) {
    if (ambient <= 0) throw InvalidSubspace("ambient dimension must be positive");
    if (ambient > max_dim)
        throw InvalidSubspace("ambient dimension " + std::to_string(ambient) + " exceeds the cap " +
                              std::to_string(max_dim));
}

// Eigenvectors of the Hermitian matrix `h` whose eigenvalue lies within
// kLatticeTol of `target`.
std::vector<CVector> eigenspace(const CMatrix& h, double target) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    std::vector<CVector> out;
    for (Eigen::Index k = 0; k < h.rows(); ++k)
        if (std::abs(es.eigenvalues()(k) - target) <= kLatticeTol) out.emplace_back(es.eigenvectors().col(k));
    return out;
}

}  // namespace

Subspace Subspace::make(std::vector<CVector> orthonormal_basis, Eigen::Index ambient_dim, Eigen::Index max_dim) {
    require_ambient(ambient_dim, max_dim);
    if (static_cast<Eigen::Index>(orthonormal_basis.size()) > ambient_dim)
        throw InvalidSubspace("more basis vectors than the ambient dimension");
    for (std::size_t a = 0; a < orthonormal_basis.size(); ++a) {
        if (orthonormal_basis[a].size() != ambient_dim)
            throw DimensionMismatch("basis vector of length " + std::to_string(orthonormal_basis[a].size()));
        for (std::size_t b = 0; b <= a; ++b) {
            const std::complex<double> ip = orthonormal_basis[b].dot(orthonormal_basis[a]);
            const double want = (a == b) ? 1.0 : 0.0;
            if (std::abs(ip - want) > kBasisTol) throw InvalidSubspace("basis is not orthonormal");
        }
    }
    return Subspace(std::move(orthonormal_basis), ambient_dim);
}

Subspace Subspace::span(const std::vector<CVector>& vectors, Eigen::Index ambient_dim, Eigen::Index max_dim) {
    require_ambient(ambient_dim, max_dim);
    std::vector<CVector> basis;
    for (const auto& v : vectors) {
        if (v.size() != ambient_dim) throw DimensionMismatch("vector of length " + std::to_string(v.size()));
        CVector r = v;
        // Two passes of modified Gram-Schmidt.
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& u : basis) r -= u.dot(r) * u;
        const double n = r.norm();
        if (n > kLatticeTol) basis.emplace_back(r / n);
    }
    return Subspace(std::move(basis), ambient_dim);
}

Subspace Subspace::zero(Eigen::Index ambient_dim, Eigen::Index max_dim) { return make({}, ambient_dim, max_dim); }

Subspace Subspace::whole(Eigen::Index ambient_dim, Eigen::Index max_dim) {
    require_ambient(ambient_dim, max_dim);
    std::vector<CVector> basis;
    for (Eigen::Index k = 0; k < ambient_dim; ++k) basis.emplace_back(CVector::Unit(ambient_dim, k));
    return Subspace(std::move(basis), ambient_dim);
}

HermitianProjector projector_of(const Subspace& sub) {
    CMatrix m = CMatrix::Zero(sub.ambient_dim(), sub.ambient_dim());
    for (const auto& v : sub.basis()) m += v * v.adjoint();
    return HermitianProjector::make(std::move(m));
}

Subspace meet(const Subspace& p, const Subspace& q) {
    require_same_ambient(p, q);
    const CMatrix sum = projector_of(p).matrix() + projector_of(q).matrix();
    return Subspace(eigenspace(sum, 2.0), p.ambient_dim());
}

Subspace join(const Subspace& p, const Subspace& q) {
    require_same_ambient(p, q);
    std::vector<CVector> all = p.basis();
    all.insert(all.end(), q.basis().begin(), q.basis().end());
    return Subspace::span(all, p.ambient_dim(), std::max(p.ambient_dim(), kDefaultMaxAmbientDim));
}

Subspace complement(const Subspace& p) {
    const Eigen::Index n = p.ambient_dim();
    const CMatrix rest = CMatrix::Identity(n, n) - projector_of(p).matrix();
    return Subspace(eigenspace(rest, 1.0), n);
}

bool leq(const Subspace& p, const Subspace& q) {
    require_same_ambient(p, q);
    const CMatrix pm = projector_of(p).matrix();
    return (projector_of(q).matrix() * pm - pm).cwiseAbs().maxCoeff() <= kLatticeTol;
}

bool commutes(const Subspace& p, const Subspace& q) {
    require_same_ambient(p, q);
    const CMatrix pm = projector_of(p).matrix();
    const CMatrix qm = projector_of(q).matrix();
    return (pm * qm - qm * pm).cwiseAbs().maxCoeff() <= kLatticeTol;
}

double projector_distance(const Subspace& p, const Subspace& q) {
    require_same_ambient(p, q);
    return (projector_of(p).matrix() - projector_of(q).matrix()).cwiseAbs().maxCoeff();
}

bool same_subspace(const Subspace& p, const Subspace& q) { return projector_distance(p, q) <= kLatticeTol; }

DistributivityWitness distributivity_witness(const Subspace& p, const Subspace& p1, const Subspace& p2) {
    require_same_ambient(p, p1);
    require_same_ambient(p, p2);
    Subspace lhs = meet(p, join(p1, p2));
    Subspace rhs = join(meet(p, p1), meet(p, p2));
    const bool violated = projector_distance(lhs, rhs) > kLatticeTol;
    return {std::move(lhs), std::move(rhs), violated};
}

}  // namespace kolmo
