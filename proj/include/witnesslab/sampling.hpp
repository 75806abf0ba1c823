#pragma once

// Seeded random unitaries, isometries and states.

#include "witnesslab/canonical_forms.hpp"
#include "witnesslab/system_spec.hpp"
#include "witnesslab/tensor_core.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace witnesslab::sampling {

using Rng = std::mt19937_64;

/// SplitMix64 step; derives independent per-trial seeds from one user seed.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline CMatrix ginibre(Index rows, Index cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(i, j) = cplx(re, im);
        }
    return m;
}

/// rows x cols matrix with orthonormal columns, Haar distributed.
inline CMatrix haar_isometry(Index rows, Index cols, Rng& rng) {
    const CMatrix z = ginibre(rows, cols, rng);
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
    const CMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    for (Index k = 0; k < cols; ++k) {
        const cplx diag = r(k, k);
        if (std::abs(diag) > 0.0) q.col(k) *= diag / std::abs(diag);
    }
    return q;
}

inline CMatrix haar_unitary(Index n, Rng& rng) { return haar_isometry(n, n, rng); }

inline CVector random_unit_vector(Index n, Rng& rng) {
    CVector v = ginibre(n, 1, rng).col(0);
    return v / v.norm();
}

inline CMatrix random_hermitian(Index n, Rng& rng) {
    const CMatrix g = ginibre(n, n, rng);
    return 0.5 * (g + g.adjoint());
}

/// Haar-random normalized pure state of the system.
inline PureState random_pure_state(const SystemSpec& spec, Rng& rng) {
    return from_composite(spec, random_unit_vector(static_cast<Index>(spec.composite_dim()), rng));
}

/// Random nonentangled state: a product of single-party states, a single
/// Slater determinant, or both bosons in one random mode.
inline PureState random_nonentangled_state(const SystemSpec& spec, Rng& rng) {
    switch (spec.kind()) {
    case SystemKind::Distinguishable: {
        CVector v = CVector::Ones(1);
        for (int d : spec.dims()) v = tensor::kron(v, random_unit_vector(d, rng));
        return {spec, v};
    }
    case SystemKind::Boson2: {
        const CVector u = random_unit_vector(spec.n(), rng);
        return {spec, tensor::vec(u * u.transpose() / std::sqrt(2.0))};
    }
    case SystemKind::Fermion2: {
        const CMatrix uv = haar_isometry(spec.n(), 2, rng);
        const CMatrix w = 0.5 * (uv.col(0) * uv.col(1).transpose() - uv.col(1) * uv.col(0).transpose());
        return {spec, tensor::vec(w)};
    }
    }
    return random_pure_state(spec, rng);
}

/// Random local unitary: one unitary per party, or one shared single-particle
/// unitary for identical particles.
struct LocalUnitary {
    std::vector<CMatrix> factors;
};

inline LocalUnitary random_local_unitary(const SystemSpec& spec, Rng& rng) {
    LocalUnitary u;
    if (spec.identical()) {
        u.factors.push_back(haar_unitary(spec.n(), rng));
    } else {
        for (int d : spec.dims()) u.factors.push_back(haar_unitary(d, rng));
    }
    return u;
}

/// (U_1 (x) ... (x) U_n) psi, or m -> U m U^T for identical particles.
inline PureState apply_local_unitary(const LocalUnitary& u, const PureState& state) {
    if (state.spec.identical()) {
        const CMatrix m = coefficient_matrix(state);
        const CMatrix& g = u.factors.front();
        return {state.spec, tensor::vec(g * m * g.transpose())};
    }
    CMatrix full = CMatrix::Ones(1, 1);
    for (const auto& f : u.factors) full = tensor::kron(full, f);
    return {state.spec, full * state.amplitudes};
}

/// Random density matrix of the given rank on the composite space.
inline CMatrix random_density_matrix(Index dim, Index rank, Rng& rng) {
    const CMatrix g = ginibre(dim, rank, rng);
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

} // namespace witnesslab::sampling
