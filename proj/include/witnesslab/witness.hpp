#pragma once

// Casimir and Lichtenstein operators, the nonlinear witness A, its Kraus
// decomposition under the Jamiolkowski map, and the closed-form projectors
// onto the entanglement-sensitive eigenspaces of two-particle systems.

#include "witnesslab/errors.hpp"
#include "witnesslab/lie_rep.hpp"
#include "witnesslab/tensor_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace witnesslab {

enum class WitnessKind { SpectralGap, Projector };

inline std::string to_string(WitnessKind kind) {
    return kind == WitnessKind::Projector ? "projector" : "gap";
}

inline WitnessKind parse_witness_kind(const std::string& text) {
    if (text == "projector") return WitnessKind::Projector;
    if (text == "gap") return WitnessKind::SpectralGap;
    throw Error(ErrorKind::BadInput, "witness kind must be 'projector' or 'gap', got '" + text + "'");
}

struct Eigenspace {
    double eigenvalue = 0.0;
    Index multiplicity = 0;
    Index symmetric_multiplicity = 0; // part inside the copy-swap symmetric sector
};

struct Witness {
    SystemSpec spec;
    WitnessKind kind = WitnessKind::Projector;
    Index dim = 0;                       // composite dimension d; a_matrix is d^2 x d^2
    CMatrix a_matrix;
    double l_max = 0.0;
    std::vector<Eigenspace> eigenspaces; // spectrum of L, ascending
    std::vector<CMatrix> kraus;          // symmetric T_mu only
    std::vector<CMatrix> kraus_all;      // every T_mu of a_matrix
};

/// C_2 = sum_{alpha>0} (X_a X_-a + X_-a X_a) + sum_i H_i^2, each simple summand
/// weighted by its Killing factor.
inline CMatrix casimir(const RepresentedAlgebra& ra) {
    const Index d = ra.dim();
    CMatrix c = CMatrix::Zero(d, d);
    for (const auto& f : ra.factors) {
        CMatrix part = CMatrix::Zero(d, d);
        for (std::size_t a = 0; a < f.pos_roots.size(); ++a)
            part += f.pos_roots[a] * f.neg_roots[a] + f.neg_roots[a] * f.pos_roots[a];
        for (const auto& h : f.cartan) part += h * h;
        c += f.killing_weight * part;
    }
    return c;
}

/// L = C_2 (x) I + I (x) C_2 + 2 sum_{alpha>0} (X_a (x) X_-a + X_-a (x) X_a) + 2 sum_i H_i (x) H_i
inline CMatrix lichtenstein(const RepresentedAlgebra& ra, std::int64_t cap = dimension_cap()) {
    const Index d = ra.dim();
    check_cap(d * d, cap, "lichtenstein(" + ra.spec.to_string() + ")");
    const CMatrix id = CMatrix::Identity(d, d);
    const CMatrix c2 = casimir(ra);
    CMatrix l = tensor::kron(c2, id) + tensor::kron(id, c2);
    for (const auto& f : ra.factors) {
        const double w = 2.0 * f.killing_weight;
        for (std::size_t a = 0; a < f.pos_roots.size(); ++a)
            l += w * (tensor::kron(f.pos_roots[a], f.neg_roots[a]) + tensor::kron(f.neg_roots[a], f.pos_roots[a]));
        for (const auto& h : f.cartan) l += w * tensor::kron(h, h);
    }
    return l;
}

struct SparseKet {
    std::array<int, 4> ket{};
    double coeff = 0.0;
};

/// L' = N (L - C_2 (x) I - I (x) C_2) applied to |ijkl> of (C^n)^{(x)4}, for
/// two identical particles before restriction to H v H or H ^ H. Indices are
/// zero-based.
inline std::vector<SparseKet> lichtenstein_prime_action(int n, int i, int j, int k, int l) {
    for (int x : {i, j, k, l})
        require(x >= 0 && x < n, ErrorKind::IndexOutOfRange,
                "index " + std::to_string(x) + " outside [0, " + std::to_string(n) + ")");
    const auto delta = [](int a, int b) { return a == b ? 1.0 : 0.0; };
    std::map<std::array<int, 4>, double> terms;
    terms[{k, j, i, l}] += 1.0 - delta(i, k);
    terms[{l, j, k, i}] += 1.0 - delta(i, l);
    terms[{i, k, j, l}] += 1.0 - delta(j, k);
    terms[{i, l, k, j}] += 1.0 - delta(j, l);
    terms[{i, j, k, l}] += -4.0 / n + delta(i, k) + delta(i, l) + delta(j, k) + delta(j, l);
    std::vector<SparseKet> out;
    for (const auto& [ket, coeff] : terms)
        if (coeff != 0.0) out.push_back({ket, coeff});
    return out;
}

/// Dense L' on the ambient four-fold product, built from `lichtenstein`.
inline CMatrix lichtenstein_prime_dense(int n) {
    const auto ra = represent_identical_ambient(n);
    const Index d = ra.dim();
    const CMatrix id = CMatrix::Identity(d, d);
    const CMatrix c2 = casimir(ra);
    return n * (lichtenstein(ra) - tensor::kron(c2, id) - tensor::kron(id, c2));
}

namespace detail {

struct SectorSpectrum {
    tensor::EigenDecomposition eig;
    CMatrix embed; // sector basis inside C^d (x) C^d
    bool symmetric = true;
};

inline bool symmetric_kraus(const CMatrix& t) {
    return tensor::max_abs(t - t.transpose()) <= 1e-9 * (1.0 + tensor::max_abs(t));
}

} // namespace detail

/// Builds the witness A of the requested kind.
///
/// L commutes with the exchange of the two copies, so it is diagonalized
/// separately on the copy-symmetric and copy-antisymmetric sectors. Every
/// eigenvector then reshapes into a Kraus operator that is exactly symmetric
/// or antisymmetric, also inside degenerate eigenspaces.
inline Witness build_witness(const RepresentedAlgebra& ra, WitnessKind kind = WitnessKind::Projector,
                             std::int64_t cap = dimension_cap()) {
    const Index d = ra.dim();
    const CMatrix l = lichtenstein(ra, cap);

    std::vector<detail::SectorSpectrum> sectors;
    {
        const CMatrix vs = tensor::sym_subspace_isometry(d).columns;
        sectors.push_back({tensor::eigh(vs.adjoint() * l * vs), vs, true});
    }
    if (d >= 2) {
        const CMatrix va = tensor::antisym_subspace_isometry(d).columns;
        sectors.push_back({tensor::eigh(va.adjoint() * l * va), va, false});
    }

    std::vector<double> all;
    for (const auto& s : sectors)
        for (Index k = 0; k < s.eig.values.size(); ++k) all.push_back(s.eig.values(k));
    std::sort(all.begin(), all.end());
    const RVector spectrum = Eigen::Map<const RVector>(all.data(), static_cast<Index>(all.size()));
    const double tol = tensor::group_tolerance(spectrum);
    const auto groups = tensor::group_eigenvalues(spectrum, tol);

    Witness w{ra.spec, kind, d, CMatrix::Zero(d * d, d * d), 0.0, {}, {}, {}};
    for (const auto& g : groups) {
        const double lo = spectrum(g.first), hi = spectrum(g.first + g.count - 1);
        Index sym = 0;
        const auto& s = sectors.front().eig.values;
        for (Index k = 0; k < s.size(); ++k)
            if (s(k) >= lo && s(k) <= hi) ++sym;
        w.eigenspaces.push_back({g.value, g.count, sym});
    }
    const auto& top = groups.back();
    const double top_floor = spectrum(top.first);
    w.l_max = spectrum(spectrum.size() - 1);
    if (groups.size() >= 2) {
        const double next = spectrum(top.first - 1);
        require(top_floor - next > 1e-6 * (1.0 + std::abs(w.l_max)), ErrorKind::DegenerateTop,
                "top eigenvalue of L is not separated from the next one");
    }

    const double cutoff = tensor::kZeroTol * w.l_max;
    const auto in_top = [&](double lambda) { return lambda >= top_floor - tol; };

    for (const auto& sector : sectors) {
        const auto& values = sector.eig.values;
        for (Index k = 0; k < values.size(); ++k) {
            if (in_top(values(k))) continue;
            double weight = 0.0;
            if (kind == WitnessKind::SpectralGap) {
                weight = w.l_max - values(k);
                if (weight <= cutoff) continue;
            } else {
                if (!sector.symmetric) continue;
                weight = 1.0;
            }
            const CVector vk = sector.embed * sector.eig.vectors.col(k);
            const CMatrix t = tensor::unvec(std::sqrt(weight) * vk, d);
            if (kind == WitnessKind::Projector) w.a_matrix += vk * vk.adjoint();
            w.kraus_all.push_back(t);
            if (detail::symmetric_kraus(t)) w.kraus.push_back(t);
        }
    }
    if (kind == WitnessKind::SpectralGap)
        w.a_matrix = w.l_max * CMatrix::Identity(d * d, d * d) - l;
    return w;
}

/// Lambda(rho) = tr_1((rho^T (x) I) a)
inline CMatrix jamiolkowski_apply(const CMatrix& a, const CMatrix& rho) {
    const Index d = rho.rows();
    require(rho.rows() == rho.cols(), ErrorKind::DimensionMismatch, "jamiolkowski_apply: rho is not square");
    require(a.rows() == d * d && a.cols() == d * d, ErrorKind::DimensionMismatch,
            "jamiolkowski_apply: operator side " + std::to_string(a.rows()) + " != d^2 = " + std::to_string(d * d));
    // [(rho^T (x) I) a]_{(i,k),(j,l)} = sum_m rho(m,i) a_{(m,k),(j,l)}; trace over i = j.
    CMatrix out = CMatrix::Zero(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index m = 0; m < d; ++m) {
            const cplx r = rho(m, i);
            if (r == cplx(0.0)) continue;
            out += r * a.block(m * d, i * d, d, d);
        }
    return out;
}

/// sum_mu T rho T^dagger
inline CMatrix kraus_apply(const std::vector<CMatrix>& kraus, const CMatrix& rho) {
    CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
    for (const auto& t : kraus) out += t * rho * t.adjoint();
    return out;
}

/// <psi2 (x) psi4| A |psi1 (x) psi3> rebuilt from Kraus operators as
/// sum_mu <psi2|T|psi4*> conj(<psi1|T|psi3*>). For symmetric T the second
/// factor equals <psi1*|T^dagger|psi3>.
inline cplx kraus_matrix_element(const std::vector<CMatrix>& kraus, const CVector& psi2, const CVector& psi4,
                                 const CVector& psi1, const CVector& psi3) {
    cplx sum = 0.0;
    for (const auto& t : kraus) {
        const cplx left = psi2.dot(t * psi4.conjugate());
        const cplx right = psi1.dot(t * psi3.conjugate());
        sum += left * std::conj(right);
    }
    return sum;
}

namespace detail {

/// Orthonormal basis of the span of the given columns (modified Gram-Schmidt
/// with one re-orthogonalization pass).
inline CMatrix gram_schmidt(const std::vector<CVector>& vectors, Index dim) {
    std::vector<CVector> basis;
    double scale = 0.0;
    for (const auto& v : vectors) scale = std::max(scale, v.norm());
    const double drop = 1e-9 * std::max(scale, 1.0);
    for (const auto& v : vectors) {
        CVector r = v;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) r -= b.dot(r) * b;
        const double norm = r.norm();
        if (norm > drop) basis.push_back(r / norm);
    }
    CMatrix out(dim, static_cast<Index>(basis.size()));
    for (Index k = 0; k < out.cols(); ++k) out.col(k) = basis[static_cast<std::size_t>(k)];
    return out;
}

inline CVector sym_pair(const CVector& a, const CVector& b) {
    return tensor::kron(a, b) + tensor::kron(b, a);
}

inline Index pair_column(int n, int i, int j) {
    // column of (i, j), i <= j, in the lexicographic pair ordering with the diagonal included
    return Index{i} * n - Index{i} * (i - 1) / 2 + (j - i);
}

inline Index strict_pair_column(int n, int i, int j) {
    // column of (i, j), i < j, in the lexicographic ordering without the diagonal
    return Index{i} * n - Index{i} * (i + 1) / 2 + (j - i - 1);
}

} // namespace detail

/// Projector onto the entanglement-sensitive eigenspace of L from explicit
/// spanning vectors, independent of any diagonalization:
///  - two distinguishable parties: |ijkl> + |klij> - |kjil> - |ilkj>;
///  - bosons: Psi^2_ijkl and Psi^3_ijkl built from psi_ij = |ij> + |ji>, psi_ii = 2|ii>;
///  - fermions: the totally antisymmetric combination of phi_ij (x) phi_kl with
///    phi_ij = |ij> - |ji>.
/// All index tuples range freely, repeated indices included. The result acts
/// on the compressed two-copy space, like Witness::a_matrix.
inline CMatrix projector_appendix(const SystemSpec& spec) {
    require(spec.bipartite(), ErrorKind::UnsupportedSpec,
            "projector_appendix supports two-party systems only, got " + spec.to_string());
    std::vector<CVector> span;
    Index two_copy = 0;

    if (spec.kind() == SystemKind::Distinguishable) {
        const int n1 = spec.dims()[0], n2 = spec.dims()[1];
        const Index d = Index{n1} * n2;
        two_copy = d * d;
        const auto idx = [&](int i, int j, int k, int l) { return ((Index{i} * n2 + j) * n1 + k) * n2 + l; };
        for (int i = 0; i < n1; ++i)
            for (int k = 0; k < n1; ++k)
                for (int j = 0; j < n2; ++j)
                    for (int l = 0; l < n2; ++l) {
                        CVector v = CVector::Zero(two_copy);
                        v(idx(i, j, k, l)) += 1.0;
                        v(idx(k, l, i, j)) += 1.0;
                        v(idx(k, j, i, l)) -= 1.0;
                        v(idx(i, l, k, j)) -= 1.0;
                        span.push_back(std::move(v));
                    }
    } else {
        const int n = spec.n();
        const auto d = static_cast<Index>(spec.composite_dim());
        two_copy = d * d;
        const bool boson = spec.kind() == SystemKind::Boson2;
        // Compressed coordinates of psi_ab (bosons) or phi_ab (fermions).
        const auto pair = [&](int a, int b) -> CVector {
            CVector c = CVector::Zero(d);
            if (boson) {
                if (a == b) c(detail::pair_column(n, a, a)) = 2.0;
                else c(detail::pair_column(n, std::min(a, b), std::max(a, b))) = std::sqrt(2.0);
            } else if (a != b) {
                c(detail::strict_pair_column(n, std::min(a, b), std::max(a, b))) = a < b ? std::sqrt(2.0) : -std::sqrt(2.0);
            }
            return c;
        };
        if (d == 0) return CMatrix(0, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        const CVector ij_kl = detail::sym_pair(pair(i, j), pair(k, l));
                        const CVector ik_jl = detail::sym_pair(pair(i, k), pair(j, l));
                        const CVector il_jk = detail::sym_pair(pair(i, l), pair(j, k));
                        if (boson) {
                            span.push_back(ij_kl - il_jk);
                            span.push_back(ij_kl - ik_jl);
                        } else {
                            span.push_back(ij_kl - ik_jl + il_jk);
                        }
                    }
    }
    const CMatrix q = detail::gram_schmidt(span, two_copy);
    return q * q.adjoint();
}

/// Closed-form eigenvalue of L with the dimension of its eigenspace.
struct ClosedFormLevel {
    std::string label;
    double value = 0.0;
    std::int64_t multiplicity = 0;
};

namespace detail {
inline std::int64_t choose(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}
} // namespace detail

/// Known spectrum of L for two equal-dimension parties, two bosons or two
/// fermions, highest level last. Levels whose eigenspace is empty for the
/// given n are reported with multiplicity 0.
inline std::vector<ClosedFormLevel> closed_form_spectrum(const SystemSpec& spec) {
    const double n = spec.n();
    const std::int64_t ni = spec.n();
    switch (spec.kind()) {
    case SystemKind::Distinguishable: {
        require(spec.dims().size() == 2 && spec.dims()[0] == spec.dims()[1], ErrorKind::UnsupportedSpec,
                "closed forms cover two parties of equal dimension only");
        return {{"S1", 2 - 2 / n - 4 / (n * n), (ni * (ni - 1) / 2) * (ni * (ni - 1) / 2)},
                {"A", 2 - 4 / (n * n), ni * ni * (ni * ni - 1) / 2},
                {"S2", 2 + 2 / n - 4 / (n * n), (ni * (ni + 1) / 2) * (ni * (ni + 1) / 2)}};
    }
    case SystemKind::Boson2: {
        const std::int64_t m = ni * (ni + 1) / 2;
        const std::int64_t plus = detail::choose(ni + 3, 4);
        return {{"minus", 2 - 8 / (n * n), m * (m + 1) / 2 - plus},
                {"middle", 2 - 8 / (n * n) + 2 / n, m * (m - 1) / 2},
                {"plus", 2 - 8 / (n * n) + 6 / n, plus}};
    }
    case SystemKind::Fermion2: {
        const std::int64_t m = ni * (ni - 1) / 2;
        const std::int64_t minus = detail::choose(ni, 4);
        return {{"minus", 2 - 8 / (n * n) - 6 / n, minus},
                {"middle", 2 - 8 / (n * n) - 2 / n, m * (m - 1) / 2},
                {"plus", 2 - 8 / (n * n), m * (m + 1) / 2 - minus}};
    }
    }
    return {};
}

/// Known Casimir constant of the composite representation.
inline double closed_form_casimir(const SystemSpec& spec) {
    const double n = spec.n();
    switch (spec.kind()) {
    case SystemKind::Distinguishable: {
        double c = 0.0;
        for (int d : spec.dims()) c += 0.5 * (1.0 - 1.0 / (double(d) * d));
        return c;
    }
    case SystemKind::Boson2: return 1 - 2 / (n * n) + 1 / n;
    case SystemKind::Fermion2: return 1 - 2 / (n * n) - 1 / n;
    }
    return 0.0;
}

} // namespace witnesslab
