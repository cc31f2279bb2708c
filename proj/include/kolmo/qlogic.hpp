// qlogic.hpp - the lattice of subspaces / orthogonal projectors of a finite
// dimensional complex Hilbert space.
//
// Every rank and equality decision in this module goes through kLatticeTol.
#pragma once

#include <vector>

#include "kolmo/quantum.hpp"

namespace kolmo {

inline constexpr double kLatticeTol = 1e-8;
/// Orthonormality tolerance for a caller-supplied basis.
inline constexpr double kBasisTol = 1e-10;
inline constexpr Eigen::Index kDefaultMaxAmbientDim = 16;

class Subspace {
public:
    /// Takes an already orthonormal basis (possibly empty). Throws
    /// InvalidSubspace if it is not orthonormal within kBasisTol, has more
    /// vectors than `ambient_dim`, or the ambient dimension exceeds `max_dim`.
    static Subspace make(std::vector<CVector> orthonormal_basis, Eigen::Index ambient_dim,
                         Eigen::Index max_dim = kDefaultMaxAmbientDim);

    /// span{vectors}, orthonormalized; vectors whose residual norm falls
    /// below kLatticeTol are dropped as dependent.
    static Subspace span(const std::vector<CVector>& vectors, Eigen::Index ambient_dim,
                         Eigen::Index max_dim = kDefaultMaxAmbientDim);

    static Subspace zero(Eigen::Index ambient_dim, Eigen::Index max_dim = kDefaultMaxAmbientDim);
    static Subspace whole(Eigen::Index ambient_dim, Eigen::Index max_dim = kDefaultMaxAmbientDim);

    const std::vector<CVector>& basis() const { return basis_; }
    Eigen::Index ambient_dim() const { return ambient_dim_; }
    Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()); }

private:
    friend Subspace meet(const Subspace&, const Subspace&);
    friend Subspace complement(const Subspace&);

    Subspace(std::vector<CVector> basis, Eigen::Index ambient) : basis_(std::move(basis)), ambient_dim_(ambient) {}

    std::vector<CVector> basis_;
    Eigen::Index ambient_dim_ = 0;
};

/// P = sum of v v^dagger over the basis.
HermitianProjector projector_of(const Subspace& sub);

/// Intersection of ranges: eigenspace of P + Q at eigenvalue 2.
Subspace meet(const Subspace& p, const Subspace& q);
/// Closed linear span of the union of ranges.
Subspace join(const Subspace& p, const Subspace& q);
/// Orthogonal complement.
Subspace complement(const Subspace& p);

/// P <= Q iff Q P = P.
bool leq(const Subspace& p, const Subspace& q);
bool commutes(const Subspace& p, const Subspace& q);

/// Largest entrywise |P - Q| between the two projectors.
double projector_distance(const Subspace& p, const Subspace& q);
bool same_subspace(const Subspace& p, const Subspace& q);

struct DistributivityWitness {
    Subspace lhs;  ///< P meet (P1 join P2)
    Subspace rhs;  ///< (P meet P1) join (P meet P2)
    bool violated = false;
};

DistributivityWitness distributivity_witness(const Subspace& p, const Subspace& p1, const Subspace& p2);

}  // namespace kolmo
