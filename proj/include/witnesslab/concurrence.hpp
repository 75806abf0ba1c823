#pragma once

// Generalized concurrence of pure states and lower / upper estimates of its
// convex roof for mixed states.

#include "witnesslab/canonical_forms.hpp"
#include "witnesslab/errors.hpp"
#include "witnesslab/sampling.hpp"
#include "witnesslab/tensor_core.hpp"
#include "witnesslab/witness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace witnesslab {

inline void require_same_spec(const SystemSpec& state, const SystemSpec& witness) {
    require(state == witness, ErrorKind::SpecMismatch,
            "state is " + state.to_string() + " but the witness was built for " + witness.to_string());
}

/// c_A(psi) = (sum_mu |<psi|T_mu|psi*>|^2)^{1/2} over the symmetric Kraus operators.
inline double concurrence_pure(const PureState& psi, const Witness& w) {
    require_same_spec(psi.spec, w.spec);
    const CVector x = composite_vector(psi);
    const CVector xc = x.conjugate();
    double sum = 0.0;
    for (const auto& t : w.kraus) sum += std::norm(x.dot(t * xc));
    return std::sqrt(sum);
}

/// c_A(psi) = <psi (x) psi|A|psi (x) psi>^{1/2}, straight from the two-copy operator.
inline double concurrence_expectation(const PureState& psi, const Witness& w) {
    require_same_spec(psi.spec, w.spec);
    const CVector x = composite_vector(psi);
    const CVector xx = tensor::kron(x, x);
    return std::sqrt(std::max(0.0, xx.dot(w.a_matrix * xx).real()));
}

struct MixedState {
    SystemSpec spec;
    CMatrix rho;

    MixedState(SystemSpec s, const CMatrix& r) : spec(std::move(s)) {
        const auto d = static_cast<Index>(spec.composite_dim());
        require(r.rows() == d && r.cols() == d, ErrorKind::DimensionMismatch,
                spec.to_string() + " density matrices are " + std::to_string(d) + "x" + std::to_string(d));
        require(tensor::max_abs(r - r.adjoint()) <= 1e-8 * std::max(1.0, tensor::max_abs(r)), ErrorKind::NonHermitian,
                "density matrix is not Hermitian");
        rho = 0.5 * (r + r.adjoint());
        require(std::abs(rho.trace().real() - 1.0) <= 1e-10, ErrorKind::BadInput, "density matrix must have trace 1");
        const auto eig = tensor::eigh(rho);
        require(eig.values(0) >= -1e-10, ErrorKind::BadInput, "density matrix has a negative eigenvalue");
    }
};

/// r x r matrices (tau_mu)_ij = <xi_i|T_mu|xi_j*> with xi_k = sqrt(r_k) eta_k.
struct TauSet {
    std::vector<CMatrix> taus;
    Index r = 0;
    CMatrix xi; // d x r, columns xi_k by descending eigenvalue of rho
};

inline constexpr double kRankTol = 1e-10;

inline TauSet tau_matrices(const MixedState& state, const Witness& w) {
    require_same_spec(state.spec, w.spec);
    const auto eig = tensor::eigh(state.rho);
    const Index d = state.rho.rows();
    std::vector<Index> keep;
    for (Index k = d - 1; k >= 0; --k)
        if (eig.values(k) > kRankTol) keep.push_back(k);
    TauSet ts;
    ts.r = static_cast<Index>(keep.size());
    ts.xi = CMatrix(d, ts.r);
    for (Index c = 0; c < ts.r; ++c) {
        const Index k = keep[static_cast<std::size_t>(c)];
        ts.xi.col(c) = std::sqrt(eig.values(k)) * eig.vectors.col(k);
    }
    const CMatrix xi_conj = ts.xi.conjugate();
    for (const auto& t : w.kraus) ts.taus.push_back(ts.xi.adjoint() * t * xi_conj);
    return ts;
}

enum class StrategyKind { SingleBest, RandomSearch, CoordinateAscent };

struct Strategy {
    StrategyKind kind = StrategyKind::SingleBest;
    int samples = 0; // RandomSearch only

    /// "single", "random:<k>" or "ascent"
    static Strategy parse(const std::string& text) {
        if (text == "single") return {StrategyKind::SingleBest, 0};
        if (text == "ascent") return {StrategyKind::CoordinateAscent, 0};
        if (text.rfind("random:", 0) == 0) {
            int k = 0;
            const char* first = text.data() + 7;
            const char* last = text.data() + text.size();
            const auto [ptr, ec] = std::from_chars(first, last, k);
            require(ec == std::errc() && ptr == last && k >= 0, ErrorKind::BadInput, "bad sample count in '" + text + "'");
            return {StrategyKind::RandomSearch, k};
        }
        throw Error(ErrorKind::BadInput, "strategy must be single, random:<k> or ascent, got '" + text + "'");
    }

    [[nodiscard]] std::string to_string() const {
        switch (kind) {
        case StrategyKind::SingleBest: return "single";
        case StrategyKind::RandomSearch: return "random:" + std::to_string(samples);
        case StrategyKind::CoordinateAscent: return "ascent";
        }
        return "";
    }
};

struct BoundReport {
    double bound = 0.0;
    RVector y;
    RVector singulars; // descending
    Strategy strategy;
};

namespace detail {

/// lambda_1 - sum_{j>1} lambda_j, before clamping at zero.
inline double uhlmann_margin(const RVector& singulars) {
    if (singulars.size() == 0) return 0.0;
    return 2.0 * singulars(0) - singulars.sum();
}

inline RVector combined_singulars(const TauSet& ts, const RVector& y) {
    CMatrix combined = CMatrix::Zero(ts.r, ts.r);
    for (std::size_t mu = 0; mu < ts.taus.size(); ++mu) combined += y(static_cast<Index>(mu)) * ts.taus[mu];
    return tensor::singular_values(combined);
}

} // namespace detail

/// max{0, lambda_1 - sum_{j>1} lambda_j} for the singular values of sum_mu y_mu tau_mu.
inline BoundReport uhlmann_bound(const TauSet& ts, const RVector& y) {
    require(y.size() == static_cast<Index>(ts.taus.size()), ErrorKind::BadWeights,
            "expected " + std::to_string(ts.taus.size()) + " weights, got " + std::to_string(y.size()));
    require(std::abs(y.squaredNorm() - 1.0) <= 1e-10, ErrorKind::BadWeights, "weights must satisfy sum y^2 = 1");
    const RVector s = detail::combined_singulars(ts, y);
    return {std::max(0.0, detail::uhlmann_margin(s)), y, s, {}};
}

/// Best Uhlmann bound over a strategy-dependent set of weight vectors.
inline BoundReport optimize_y(const TauSet& ts, const Strategy& strategy, std::uint64_t seed = 0) {
    const auto m = static_cast<Index>(ts.taus.size());
    if (m == 0) return {0.0, RVector(0), RVector(0), strategy};

    double best_margin = -std::numeric_limits<double>::infinity();
    RVector best_y;
    const auto consider = [&](const RVector& y) {
        const double margin = detail::uhlmann_margin(detail::combined_singulars(ts, y));
        if (margin > best_margin) {
            best_margin = margin;
            best_y = y;
        }
        return margin;
    };

    for (Index mu = 0; mu < m; ++mu) consider(RVector::Unit(m, mu));

    if (strategy.kind == StrategyKind::RandomSearch) {
        for (int s = 0; s < strategy.samples; ++s) {
            sampling::Rng rng(sampling::mix_seed(seed, static_cast<std::uint64_t>(s)));
            std::normal_distribution<double> normal(0.0, 1.0);
            RVector y(m);
            for (Index mu = 0; mu < m; ++mu) y(mu) = normal(rng);
            if (y.norm() == 0.0) continue;
            consider(y / y.norm());
        }
    } else if (strategy.kind == StrategyKind::CoordinateAscent && m >= 2) {
        // Givens rotations in every (mu, nu) plane keep the weights on the unit sphere.
        double step = 0.5;
        RVector y = best_y;
        double current = best_margin;
        while (step > 1e-8) {
            bool improved = false;
            for (Index a = 0; a < m; ++a)
                for (Index b = a + 1; b < m; ++b)
                    for (double angle : {step, -step}) {
                        RVector trial = y;
                        const double c = std::cos(angle), s = std::sin(angle);
                        trial(a) = c * y(a) - s * y(b);
                        trial(b) = s * y(a) + c * y(b);
                        const double margin = detail::uhlmann_margin(detail::combined_singulars(ts, trial));
                        if (margin > current + 1e-10) {
                            y = trial;
                            current = margin;
                            improved = true;
                        }
                    }
            if (!improved) step *= 0.5;
        }
        consider(y);
    }

    auto report = uhlmann_bound(ts, best_y / best_y.norm());
    report.strategy = strategy;
    return report;
}

namespace detail {

/// sum_k (sum_mu |(V* tau_mu V^dagger)_kk|^2)^{1/2}: the average concurrence of
/// the decomposition phi_k = sum_j V_kj xi_j.
inline double decomposition_cost(const std::vector<CMatrix>& taus, const CMatrix& v) {
    double total = 0.0;
    for (Index k = 0; k < v.rows(); ++k) {
        const Eigen::RowVectorXcd row = v.row(k).conjugate();
        double sum = 0.0;
        for (const auto& tau : taus) sum += std::norm((row * tau * row.transpose())(0, 0));
        total += std::sqrt(sum);
    }
    return total;
}

inline CMatrix unitary_exp(const CMatrix& hermitian, double step) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian);
    CVector phases(solver.eigenvalues().size());
    for (Index k = 0; k < phases.size(); ++k) phases(k) = std::polar(1.0, -step * solver.eigenvalues()(k));
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

/// Descent on the isometry manifold, V -> exp(-i s H) V, with H the
/// finite-difference gradient over a basis of K x K Hermitian matrices.
inline double refine_decomposition(const std::vector<CMatrix>& taus, CMatrix v) {
    const Index k = v.rows();
    std::vector<CMatrix> basis;
    for (Index a = 0; a < k; ++a) {
        CMatrix e = CMatrix::Zero(k, k);
        e(a, a) = 1.0;
        basis.push_back(e);
        for (Index b = a + 1; b < k; ++b) {
            CMatrix re = CMatrix::Zero(k, k);
            re(a, b) = re(b, a) = 1.0;
            basis.push_back(re);
            CMatrix im = CMatrix::Zero(k, k);
            im(a, b) = cplx(0.0, 1.0);
            im(b, a) = cplx(0.0, -1.0);
            basis.push_back(im);
        }
    }
    double cost = decomposition_cost(taus, v);
    double step = 0.1;
    constexpr double h = 1e-7;
    for (int iter = 0; iter < 400 && step > 1e-12 && cost > 0.0; ++iter) {
        CMatrix grad = CMatrix::Zero(k, k);
        for (const auto& e : basis) {
            const double forward = decomposition_cost(taus, unitary_exp(e, -h) * v);
            grad += ((forward - cost) / h) * e;
        }
        const double gnorm = grad.norm();
        if (gnorm < 1e-12) break;
        grad /= gnorm;
        bool moved = false;
        while (step > 1e-12) {
            const CMatrix candidate = unitary_exp(grad, step) * v;
            const double next = decomposition_cost(taus, candidate);
            if (next < cost) {
                v = candidate;
                cost = next;
                step *= 2.0;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    return cost;
}

} // namespace detail

inline constexpr int kRefinedSeeds = 4;

/// Upper estimate of the convex roof c_A(rho): the smallest average pure-state
/// concurrence over `trials` random K-element decompositions, after local
/// descent from the best few of them.
inline double convex_roof_upper(const MixedState& state, const Witness& w, int trials, Index k,
                                std::uint64_t seed = 0) {
    const TauSet ts = tau_matrices(state, w);
    require(k >= ts.r, ErrorKind::BadDecompositionSize,
            "decomposition size " + std::to_string(k) + " is below rank " + std::to_string(ts.r));
    require(trials >= 1, ErrorKind::BadDecompositionSize, "convex_roof_upper needs at least one trial");
    if (ts.taus.empty()) return 0.0;

    std::vector<std::pair<double, std::int64_t>> ranked;
    ranked.reserve(static_cast<std::size_t>(trials));
    const auto draw = [&](std::int64_t t) {
        sampling::Rng rng(sampling::mix_seed(seed, static_cast<std::uint64_t>(t)));
        return sampling::haar_isometry(k, ts.r, rng);
    };
    for (std::int64_t t = 0; t < trials; ++t) ranked.emplace_back(detail::decomposition_cost(ts.taus, draw(t)), t);
    std::sort(ranked.begin(), ranked.end());

    double best = ranked.front().first;
    const auto seeds = std::min<std::size_t>(kRefinedSeeds, ranked.size());
    for (std::size_t s = 0; s < seeds; ++s)
        best = std::min(best, detail::refine_decomposition(ts.taus, draw(ranked[s].second)));
    return best;
}

inline Index default_decomposition_size(const TauSet& ts) { return ts.r + 2; }

} // namespace witnesslab
