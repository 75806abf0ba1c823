#pragma once

// su(N) basis and its representation on the composite Hilbert space of
// distinguishable parties or two identical particles.

#include "witnesslab/errors.hpp"
#include "witnesslab/system_spec.hpp"
#include "witnesslab/tensor_core.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

namespace witnesslab {

/// Largest number of entries any dense operator may have. The default admits
/// 4096 x 4096 matrices; WITNESSLAB_DIM_CAP overrides it.
inline std::int64_t dimension_cap() {
    constexpr std::int64_t kDefault = std::int64_t{4096} * 4096;
    if (const char* env = std::getenv("WITNESSLAB_DIM_CAP")) {
        char* end = nullptr;
        const long long value = std::strtoll(env, &end, 10);
        if (end != env && *end == '\0' && value > 0) return value;
    }
    return kDefault;
}

inline void check_cap(std::int64_t side, std::int64_t cap, const std::string& what) {
    require(side <= cap / std::max<std::int64_t>(side, 1), ErrorKind::DimensionCap,
            what + ": a " + std::to_string(side) + "x" + std::to_string(side) + " operator exceeds the cap of " +
                std::to_string(cap) + " entries");
}

/// Cartan generators H_l and root vectors X_ij of su(n).
struct SuBasis {
    int n = 0;
    std::vector<CMatrix> cartan;               // H_1 ... H_{n-1}
    std::vector<CMatrix> pos_roots;            // X_ij, i < j, lexicographic
    std::vector<CMatrix> neg_roots;            // X_ji matching pos_roots
    std::vector<std::pair<int, int>> roots;    // (i, j) of each positive root

    /// a_{lk}: diagonal entry k of H_l.
    [[nodiscard]] double a(int l, int k) const { return cartan[static_cast<std::size_t>(l)](k, k).real(); }

    /// alpha_ij(H_l) = a_{li} - a_{lj}
    [[nodiscard]] double root_value(std::size_t root, int l) const {
        const auto [i, j] = roots[root];
        return a(l, i) - a(l, j);
    }
};

inline SuBasis su_basis(int n) {
    require(n >= 2, ErrorKind::BadDimension, "su_basis needs n >= 2, got " + std::to_string(n));
    SuBasis basis;
    basis.n = n;
    for (int l = 1; l < n; ++l) {
        CMatrix h = CMatrix::Zero(n, n);
        const double scale = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        for (int k = 0; k < l; ++k) h(k, k) = scale;
        h(l, l) = -l * scale;
        basis.cartan.push_back(std::move(h));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            CMatrix x = CMatrix::Zero(n, n);
            x(i, j) = 1.0;
            basis.neg_roots.push_back(x.transpose());
            basis.pos_roots.push_back(std::move(x));
            basis.roots.emplace_back(i, j);
        }
    return basis;
}

/// Images of one simple su(n) summand on the composite space.
///
/// `killing_weight` = 1/(2n) rescales the quadratic Casimir and the
/// Lichtenstein operator to the Killing-form normalization, under which
/// C_2 = (1 - 1/n^2) on C^n (x) C^n for two parties.
struct RepresentedFactor {
    SuBasis basis;
    double killing_weight = 0.0;
    std::vector<CMatrix> cartan;
    std::vector<CMatrix> pos_roots;
    std::vector<CMatrix> neg_roots;
};

struct RepresentedAlgebra {
    SystemSpec spec;
    std::vector<RepresentedFactor> factors;
    Isometry embed; // composite space inside the full tensor product

    [[nodiscard]] Index dim() const { return embed.subspace_dim(); }

    [[nodiscard]] std::vector<CMatrix> rep_cartan() const { return gather(&RepresentedFactor::cartan); }
    [[nodiscard]] std::vector<CMatrix> rep_pos_roots() const { return gather(&RepresentedFactor::pos_roots); }
    [[nodiscard]] std::vector<CMatrix> rep_neg_roots() const { return gather(&RepresentedFactor::neg_roots); }

  private:
    [[nodiscard]] std::vector<CMatrix> gather(std::vector<CMatrix> RepresentedFactor::*member) const {
        std::vector<CMatrix> out;
        for (const auto& f : factors) out.insert(out.end(), (f.*member).begin(), (f.*member).end());
        return out;
    }
};

namespace detail {

/// I_{left} (x) a (x) I_{right}
inline CMatrix embed_slot(const CMatrix& a, Index left, Index right) {
    return tensor::kron(tensor::kron(CMatrix::Identity(left, left), a), CMatrix::Identity(right, right));
}

inline RepresentedFactor make_factor(const SuBasis& basis, auto&& image) {
    RepresentedFactor f{basis, 1.0 / (2.0 * basis.n), {}, {}, {}};
    for (const auto& h : basis.cartan) f.cartan.push_back(image(h));
    for (const auto& x : basis.pos_roots) f.pos_roots.push_back(image(x));
    for (const auto& x : basis.neg_roots) f.neg_roots.push_back(image(x));
    return f;
}

/// pi(A) = A (x) I + I (x) A on C^n (x) C^n, compressed by `embed`.
inline RepresentedAlgebra identical_pair(SystemSpec spec, const Isometry& embed) {
    const int n = spec.n();
    const CMatrix id = CMatrix::Identity(n, n);
    const auto image = [&](const CMatrix& a) -> CMatrix {
        const CMatrix full = tensor::kron(a, id) + tensor::kron(id, a);
        return embed.columns.adjoint() * full * embed.columns;
    };
    RepresentedAlgebra ra{std::move(spec), {}, embed};
    ra.factors.push_back(make_factor(su_basis(n), image));
    return ra;
}

} // namespace detail

/// Represents the local-transformation algebra of `spec` on its composite space.
inline RepresentedAlgebra represent(const SystemSpec& spec, std::int64_t cap = dimension_cap()) {
    check_cap(spec.composite_dim(), cap, "represent(" + spec.to_string() + ")");
    switch (spec.kind()) {
    case SystemKind::Distinguishable: {
        const auto& dims = spec.dims();
        const auto total = static_cast<Index>(spec.composite_dim());
        RepresentedAlgebra ra{spec, {}, Isometry::identity(total)};
        Index left = 1;
        for (int d : dims) {
            const Index right = total / (left * d);
            ra.factors.push_back(detail::make_factor(
                su_basis(d), [&](const CMatrix& a) { return detail::embed_slot(a, left, right); }));
            left *= d;
        }
        return ra;
    }
    case SystemKind::Boson2: return detail::identical_pair(spec, tensor::sym_subspace_isometry(spec.n()));
    case SystemKind::Fermion2: return detail::identical_pair(spec, tensor::antisym_subspace_isometry(spec.n()));
    }
    throw Error(ErrorKind::UnsupportedSpec, spec.to_string());
}

/// pi(A) = A (x) I + I (x) A on the whole of C^n (x) C^n, without compression.
/// Reducible; used to cross-check identical-particle identities on the
/// ambient four-fold product.
inline RepresentedAlgebra represent_identical_ambient(int n) {
    const auto spec = SystemSpec::boson(n);
    return detail::identical_pair(spec, Isometry::identity(Index{n} * n));
}

/// True iff v is a common eigenvector of every pi(H_k) and is annihilated by
/// every positive-root image.
inline bool verify_highest_weight(const RepresentedAlgebra& ra, const CVector& v, double tol = 1e-9) {
    require(v.size() == ra.dim(), ErrorKind::DimensionMismatch,
            "verify_highest_weight: vector has length " + std::to_string(v.size()) + ", composite dimension is " +
                std::to_string(ra.dim()));
    const double norm2 = v.squaredNorm();
    if (norm2 == 0.0) return false;
    for (const auto& f : ra.factors) {
        for (const auto& h : f.cartan) {
            const CVector hv = h * v;
            const cplx eigenvalue = v.dot(hv) / norm2;
            if ((hv - eigenvalue * v).norm() > tol) return false;
        }
        for (const auto& x : f.pos_roots)
            if ((x * v).norm() > tol) return false;
    }
    return true;
}

} // namespace witnesslab
