#pragma once

// Pure states of the supported systems and their Schmidt / Slater / Takagi
// canonical coefficients.

#include "witnesslab/errors.hpp"
#include "witnesslab/system_spec.hpp"
#include "witnesslab/tensor_core.hpp"

#include <cmath>
#include <string>

namespace witnesslab {

/// A pure state tagged with its system.
///
/// Distinguishable: amplitudes over the full product basis, slot 1 most
/// significant. Boson2 / Fermion2: the n x n coefficient matrix (row-major) of
/// sum_ij m_ij a_i^dagger a_j^dagger |0>, symmetric resp. antisymmetric, with
/// tr(m^dagger m) = 1/2 for a normalized state.
struct PureState {
    SystemSpec spec;
    CVector amplitudes;

    PureState(SystemSpec s, CVector a) : spec(std::move(s)), amplitudes(std::move(a)) {
        require(amplitudes.size() == spec.amplitude_count(), ErrorKind::DimensionMismatch,
                spec.to_string() + " expects " + std::to_string(spec.amplitude_count()) + " amplitudes, got " +
                    std::to_string(amplitudes.size()));
    }
};

enum class CanonicalKind { Schmidt, Slater, Takagi };

inline std::string to_string(CanonicalKind kind) {
    switch (kind) {
    case CanonicalKind::Schmidt: return "schmidt";
    case CanonicalKind::Slater: return "slater";
    case CanonicalKind::Takagi: return "takagi";
    }
    return "";
}

struct CanonicalCoeffs {
    CanonicalKind kind = CanonicalKind::Schmidt;
    RVector values; // descending
};

inline constexpr double kNonentangledTol = 1e-8;

/// Coefficient matrix: c (N x M) for two distinguishable parties, v or w for
/// identical particles.
inline CMatrix coefficient_matrix(const PureState& state) {
    if (state.spec.identical()) return tensor::unvec(state.amplitudes, state.spec.n());
    require(state.spec.dims().size() == 2, ErrorKind::UnsupportedSpec,
            "coefficient matrix needs two parties, got " + state.spec.to_string());
    const Index rows = state.spec.dims()[0], cols = state.spec.dims()[1];
    CMatrix c(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) c(i, j) = state.amplitudes(i * cols + j);
    return c;
}

inline Isometry identical_embedding(const SystemSpec& spec) {
    return spec.kind() == SystemKind::Boson2 ? tensor::sym_subspace_isometry(spec.n())
                                             : tensor::antisym_subspace_isometry(spec.n());
}

/// The state as a vector of the composite space the algebra acts on. For
/// identical particles the first-quantized vector sqrt(2) * vec(m) is
/// compressed onto the (anti)symmetric subspace basis.
inline CVector composite_vector(const PureState& state) {
    if (!state.spec.identical()) return state.amplitudes;
    const auto v = identical_embedding(state.spec);
    return std::sqrt(2.0) * (v.columns.adjoint() * state.amplitudes);
}

/// Inverse of composite_vector.
inline PureState from_composite(const SystemSpec& spec, const CVector& x) {
    require(x.size() == spec.composite_dim(), ErrorKind::DimensionMismatch,
            "composite vector of " + spec.to_string() + " has length " + std::to_string(spec.composite_dim()));
    if (!spec.identical()) return {spec, x};
    const auto v = identical_embedding(spec);
    return {spec, (v.columns * x) / std::sqrt(2.0)};
}

inline double state_norm(const PureState& state) { return composite_vector(state).norm(); }

inline CanonicalCoeffs schmidt(const PureState& state) {
    require(state.spec.kind() == SystemKind::Distinguishable && state.spec.dims().size() == 2,
            ErrorKind::UnsupportedSpec, "schmidt needs two distinguishable parties, got " + state.spec.to_string());
    return {CanonicalKind::Schmidt, tensor::singular_values(coefficient_matrix(state))};
}

inline CanonicalCoeffs slater(const PureState& state) {
    require(state.spec.kind() == SystemKind::Fermion2, ErrorKind::UnsupportedSpec,
            "slater needs a two-fermion state, got " + state.spec.to_string());
    return {CanonicalKind::Slater, tensor::antisym_block_diagonalize(coefficient_matrix(state)).coeffs};
}

inline CanonicalCoeffs takagi_coeffs(const PureState& state) {
    require(state.spec.kind() == SystemKind::Boson2, ErrorKind::UnsupportedSpec,
            "takagi_coeffs needs a two-boson state, got " + state.spec.to_string());
    return {CanonicalKind::Takagi, tensor::takagi(coefficient_matrix(state)).coeffs};
}

inline CanonicalCoeffs canonical(const PureState& state) {
    switch (state.spec.kind()) {
    case SystemKind::Distinguishable: return schmidt(state);
    case SystemKind::Boson2: return takagi_coeffs(state);
    case SystemKind::Fermion2: return slater(state);
    }
    throw Error(ErrorKind::UnsupportedSpec, state.spec.to_string());
}

/// Coefficients counted as nonzero: above tol * (largest + 1).
inline Index canonical_rank(const CanonicalCoeffs& c, double tol = kNonentangledTol) {
    if (c.values.size() == 0) return 0;
    const double threshold = tol * (c.values.maxCoeff() + 1.0);
    return static_cast<Index>((c.values.array() > threshold).count());
}

/// Product state, single Slater determinant, or doubly occupied single mode.
inline bool is_nonentangled(const PureState& state, double tol = kNonentangledTol) {
    return canonical_rank(canonical(state), tol) == 1;
}

} // namespace witnesslab
