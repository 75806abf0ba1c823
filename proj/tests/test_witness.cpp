#include "oracles.hpp"
#include "witnesslab/canonical_forms.hpp"
#include "witnesslab/sampling.hpp"
#include "witnesslab/witness.hpp"

#include <catch_amalgamated.hpp>

#include <array>

using namespace witnesslab;

namespace {

oracle::Generators generators_for(const SystemSpec& spec) {
    switch (spec.kind()) {
    case SystemKind::Distinguishable: return oracle::distinguishable_generators(spec.dims());
    case SystemKind::Boson2: return oracle::identical_generators(spec.n(), true);
    case SystemKind::Fermion2: return oracle::identical_generators(spec.n(), false);
    }
    return {};
}

std::vector<SystemSpec> sample_specs() {
    return {SystemSpec::distinguishable({2, 2}), SystemSpec::distinguishable({3, 3}),
            SystemSpec::distinguishable({2, 3}), SystemSpec::distinguishable({2, 3, 2}),
            SystemSpec::boson(3), SystemSpec::fermion(4)};
}

} // namespace

TEST_CASE("casimir and lichtenstein agree with a Gell-Mann construction") {
    for (const auto& spec : sample_specs()) {
        INFO(spec.to_string());
        const auto ra = represent(spec);
        const auto g = generators_for(spec);
        CHECK(oracle::max_abs(casimir(ra) - oracle::casimir(g)) < 1e-12);
        CHECK(oracle::max_abs(lichtenstein(ra) - oracle::lichtenstein(g)) < 1e-12);
    }
}

TEST_CASE("casimir is the closed-form constant") {
    for (int n = 2; n <= 6; ++n) {
        for (const auto& spec : {SystemSpec::distinguishable({n, n}), SystemSpec::boson(n), SystemSpec::fermion(n)}) {
            const auto ra = represent(spec);
            const double c = closed_form_casimir(spec);
            CHECK(oracle::max_abs(casimir(ra) - c * CMatrix::Identity(ra.dim(), ra.dim())) < 1e-10);
        }
        CHECK(std::abs(closed_form_casimir(SystemSpec::distinguishable({n, n})) - (1.0 - 1.0 / (n * n))) < 1e-15);
        CHECK(std::abs(closed_form_casimir(SystemSpec::boson(n)) - (1.0 - 2.0 / (n * n) + 1.0 / n)) < 1e-15);
        CHECK(std::abs(closed_form_casimir(SystemSpec::fermion(n)) - (1.0 - 2.0 / (n * n) - 1.0 / n)) < 1e-15);
    }
}

TEST_CASE("casimir commutes with the represented algebra") {
    const auto ra = represent(SystemSpec::distinguishable({2, 3}));
    const CMatrix c = casimir(ra);
    for (const auto& x : ra.rep_pos_roots()) CHECK(oracle::max_abs(c * x - x * c) < 1e-12);
}

TEST_CASE("lichtenstein spectrum matches closed forms with multiplicities") {
    std::vector<SystemSpec> specs;
    for (int n = 2; n <= 4; ++n) specs.push_back(SystemSpec::distinguishable({n, n}));
    for (int n = 2; n <= 5; ++n) specs.push_back(SystemSpec::boson(n));
    for (int n = 2; n <= 5; ++n) specs.push_back(SystemSpec::fermion(n));
    for (const auto& spec : specs) {
        INFO(spec.to_string());
        const auto ra = represent(spec);
        const auto eig = tensor::eigh(lichtenstein(ra));
        const auto levels = oracle::distinct({eig.values.data(), eig.values.data() + eig.values.size()}, 1e-8);
        std::vector<ClosedFormLevel> expected;
        for (const auto& l : closed_form_spectrum(spec))
            if (l.multiplicity > 0) expected.push_back(l);
        REQUIRE(levels.size() == expected.size());
        for (std::size_t k = 0; k < levels.size(); ++k) {
            CHECK(std::abs(levels[k].first - expected[k].value) < 1e-9);
            CHECK(levels[k].second == expected[k].multiplicity);
        }
    }
}

TEST_CASE("closed-form multiplicities add up to the two-copy dimension") {
    for (int n = 2; n <= 8; ++n)
        for (const auto& spec : {SystemSpec::distinguishable({n, n}), SystemSpec::boson(n), SystemSpec::fermion(n)}) {
            std::int64_t total = 0;
            for (const auto& l : closed_form_spectrum(spec)) total += l.multiplicity;
            CHECK(total == spec.composite_dim() * spec.composite_dim());
        }
    const auto b = closed_form_spectrum(SystemSpec::boson(4));
    CHECK(b.back().multiplicity == oracle::binomial(7, 4));
    const auto f = closed_form_spectrum(SystemSpec::fermion(5));
    CHECK(f.front().multiplicity == oracle::binomial(5, 4));
    CHECK_THROWS_AS(closed_form_spectrum(SystemSpec::distinguishable({2, 3})), Error);
}

TEST_CASE("witness build reports the known spectra") {
    const auto w = build_witness(represent(SystemSpec::distinguishable({2, 2})));
    REQUIRE(w.eigenspaces.size() == 3);
    CHECK(std::abs(w.eigenspaces[0].eigenvalue) < 1e-12);
    CHECK(std::abs(w.eigenspaces[1].eigenvalue - 1.0) < 1e-12);
    CHECK(std::abs(w.eigenspaces[2].eigenvalue - 2.0) < 1e-12);
    CHECK(w.kraus.size() == 1);
    CHECK(w.l_max == Catch::Approx(2.0));

    const auto f = build_witness(represent(SystemSpec::fermion(4)));
    REQUIRE(f.eigenspaces.size() == 3);
    CHECK(std::abs(f.eigenspaces[2].eigenvalue - 1.5) < 1e-12);
    CHECK(std::abs(f.eigenspaces[1].eigenvalue - 1.0) < 1e-12);
    CHECK(std::abs(f.eigenspaces[0].eigenvalue) < 1e-12);

    const auto b = build_witness(represent(SystemSpec::boson(2)));
    REQUIRE(b.eigenspaces.size() == 3);
    CHECK(std::abs(b.eigenspaces[2].eigenvalue - 3.0) < 1e-12);
    CHECK(std::abs(b.eigenspaces[1].eigenvalue - 1.0) < 1e-12);
    CHECK(std::abs(b.eigenspaces[0].eigenvalue) < 1e-12);
}

TEST_CASE("witness operators are positive and annihilate the top eigenspace") {
    for (const auto& spec : sample_specs())
        for (auto kind : {WitnessKind::Projector, WitnessKind::SpectralGap}) {
            INFO(spec.to_string() << " " << to_string(kind));
            const auto ra = represent(spec);
            const auto w = build_witness(ra, kind);
            CHECK(tensor::is_hermitian(w.a_matrix, 1e-10));
            const auto eig = tensor::eigh(w.a_matrix);
            CHECK(eig.values(0) > -1e-10);
            for (const auto& t : w.kraus) CHECK(tensor::is_symmetric(t, 1e-9));
            for (const auto& t : w.kraus_all)
                CHECK((tensor::is_symmetric(t, 1e-9) || tensor::is_antisymmetric(t, 1e-9)));
            // every product of a highest-weight orbit state with itself is in the kernel
            sampling::Rng rng(17);
            for (int trial = 0; trial < 10; ++trial) {
                const CVector x = composite_vector(sampling::random_nonentangled_state(spec, rng));
                const CVector xx = tensor::kron(x, x);
                CHECK(std::abs(xx.dot(w.a_matrix * xx)) < 1e-10);
            }
        }
}

TEST_CASE("projector witness counts") {
    const auto w = build_witness(represent(SystemSpec::distinguishable({3, 3})));
    // the S1 eigenspace has (N(N-1)/2)^2 = 9 dimensions
    CHECK(w.kraus.size() == 9);
    CHECK(w.kraus_all.size() == 9);
    const auto g = build_witness(represent(SystemSpec::distinguishable({3, 3})), WitnessKind::SpectralGap);
    // A and S1 levels: 81 - 36 = 45 operators, 9 of them symmetric
    CHECK(g.kraus_all.size() == 45);
    CHECK(g.kraus.size() == 9);
    // the projector witness is an orthogonal projector
    CHECK(oracle::max_abs(w.a_matrix * w.a_matrix - w.a_matrix) < 1e-10);
}

TEST_CASE("symmetric multiplicities") {
    const auto w = build_witness(represent(SystemSpec::distinguishable({2, 2})));
    CHECK(w.eigenspaces[0].symmetric_multiplicity == 1);
    CHECK(w.eigenspaces[1].symmetric_multiplicity == 0);
    CHECK(w.eigenspaces[2].symmetric_multiplicity == 9);
}

TEST_CASE("spectral gap witness is l_max - L") {
    const auto ra = represent(SystemSpec::boson(3));
    const auto w = build_witness(ra, WitnessKind::SpectralGap);
    const CMatrix l = lichtenstein(ra);
    CHECK(oracle::max_abs(w.a_matrix - (w.l_max * CMatrix::Identity(l.rows(), l.cols()) - l)) < 1e-12);
}

TEST_CASE("fermions with a one-dimensional composite space have no Kraus operators") {
    const auto w = build_witness(represent(SystemSpec::fermion(2)));
    CHECK(w.eigenspaces.size() == 1);
    CHECK(w.kraus.empty());
    CHECK(oracle::max_abs(w.a_matrix) == 0.0);
}

TEST_CASE("jamiolkowski map equals the Kraus sum") {
    for (const auto& spec : sample_specs())
        for (auto kind : {WitnessKind::Projector, WitnessKind::SpectralGap}) {
            const auto w = build_witness(represent(spec), kind);
            sampling::Rng rng(23);
            for (int trial = 0; trial < 5; ++trial) {
                const CMatrix rho = sampling::ginibre(w.dim, w.dim, rng);
                CHECK(oracle::max_abs(jamiolkowski_apply(w.a_matrix, rho) - kraus_apply(w.kraus_all, rho)) < 1e-9);
            }
        }
}

TEST_CASE("jamiolkowski map follows the partial-trace definition") {
    sampling::Rng rng(29);
    const Index d = 3;
    const CMatrix a = sampling::ginibre(d * d, d * d, rng);
    const CMatrix rho = sampling::ginibre(d, d, rng);
    const CMatrix expected =
        oracle::partial_trace_first(oracle::kron(rho.transpose(), CMatrix::Identity(d, d)) * a, d, d);
    CHECK(oracle::max_abs(jamiolkowski_apply(a, rho) - expected) < 1e-12);
    CHECK_THROWS_AS(jamiolkowski_apply(a, CMatrix::Zero(2, 2)), Error);
}

TEST_CASE("two-copy matrix elements from Kraus operators") {
    for (const auto& spec : sample_specs())
        for (auto kind : {WitnessKind::Projector, WitnessKind::SpectralGap}) {
            const auto w = build_witness(represent(spec), kind);
            sampling::Rng rng(31);
            for (int trial = 0; trial < 5; ++trial) {
                std::vector<CVector> p;
                for (int k = 0; k < 4; ++k) p.push_back(sampling::random_unit_vector(w.dim, rng));
                const cplx direct = tensor::kron(p[1], p[3]).dot(w.a_matrix * tensor::kron(p[0], p[2]));
                CHECK(std::abs(direct - kraus_matrix_element(w.kraus_all, p[1], p[3], p[0], p[2])) < 1e-9);
            }
        }
}

TEST_CASE("L' action on basis kets matches the dense operator") {
    for (int n = 2; n <= 3; ++n) {
        const CMatrix dense = lichtenstein_prime_dense(n);
        const Index dim = Index{n} * n * n * n;
        const auto idx = [n](int i, int j, int k, int l) { return ((Index{i} * n + j) * n + k) * n + l; };
        CMatrix sparse = CMatrix::Zero(dim, dim);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l)
                        for (const auto& t : lichtenstein_prime_action(n, i, j, k, l))
                            sparse(idx(t.ket[0], t.ket[1], t.ket[2], t.ket[3]), idx(i, j, k, l)) += t.coeff;
        CHECK(oracle::max_abs(sparse - dense) < 1e-12);
    }
    CHECK_THROWS_AS(lichtenstein_prime_action(3, 0, 1, 2, 3), Error);
}

TEST_CASE("L' is a sum of slot transpositions") {
    const int n = 3;
    const Index dim = Index{n} * n * n * n;
    const auto idx = [n](const std::array<int, 4>& s) { return ((Index{s[0]} * n + s[1]) * n + s[2]) * n + s[3]; };
    // slot pairs (1,3), (1,4), (2,3), (2,4) exchange one index between the copies
    const std::array<std::pair<int, int>, 4> swaps{{{0, 2}, {0, 3}, {1, 2}, {1, 3}}};
    CMatrix expected = CMatrix::Zero(dim, dim);
    for (Index col = 0; col < dim; ++col) {
        std::array<int, 4> s{int(col / (n * n * n)), int(col / (n * n) % n), int(col / n % n), int(col % n)};
        double diag = -4.0 / n;
        for (auto [a, b] : swaps) {
            if (s[std::size_t(a)] == s[std::size_t(b)]) {
                diag += 1.0;
                continue;
            }
            auto t = s;
            std::swap(t[std::size_t(a)], t[std::size_t(b)]);
            expected(idx(t), col) += 1.0;
        }
        expected(col, col) += diag;
    }
    CHECK(oracle::max_abs(expected - lichtenstein_prime_dense(n)) < 1e-12);
    const auto [s1, s2] = tensor::copy_swap_operators(n);
    // exchanging the two copies commutes with L'
    const CMatrix copy_swap = s1 * s2;
    CHECK(oracle::max_abs(copy_swap * expected - expected * copy_swap) < 1e-12);
}

TEST_CASE("projector appendix equals the projector witness") {
    std::vector<SystemSpec> specs;
    for (int n = 2; n <= 3; ++n) specs.push_back(SystemSpec::distinguishable({n, n}));
    specs.push_back(SystemSpec::distinguishable({2, 3}));
    for (int n = 2; n <= 4; ++n) specs.push_back(SystemSpec::boson(n));
    for (int n = 3; n <= 4; ++n) specs.push_back(SystemSpec::fermion(n));
    for (const auto& spec : specs) {
        INFO(spec.to_string());
        const auto w = build_witness(represent(spec));
        CHECK(oracle::max_abs(projector_appendix(spec) - w.a_matrix) < 1e-10);
    }
    CHECK_THROWS_AS(projector_appendix(SystemSpec::distinguishable({2, 2, 2})), Error);
}

TEST_CASE("witness kind parsing") {
    CHECK(parse_witness_kind("projector") == WitnessKind::Projector);
    CHECK(parse_witness_kind("gap") == WitnessKind::SpectralGap);
    CHECK_THROWS_AS(parse_witness_kind("other"), Error);
    CHECK(to_string(WitnessKind::SpectralGap) == "gap");
}
