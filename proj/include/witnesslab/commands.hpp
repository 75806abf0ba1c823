#pragma once

// Command implementations behind the witnesslab executable. Each command
// returns a JSON report plus the process exit code.

#include "witnesslab/canonical_forms.hpp"
#include "witnesslab/concurrence.hpp"
#include "witnesslab/errors.hpp"
#include "witnesslab/lie_rep.hpp"
#include "witnesslab/state_io.hpp"
#include "witnesslab/witness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace witnesslab::cli {

using io::Json;

enum ExitCode : int { kOk = 0, kUsage = 2, kCap = 3, kInput = 4, kVerification = 5 };

inline int exit_code_for(ErrorKind kind) { return kind == ErrorKind::DimensionCap ? kCap : kInput; }

struct Result {
    Json report;
    int exit_code = kOk;
    std::string message; // printed to stderr when non-empty
};

inline Json report_header(const std::string& command_echo, const std::string& digest_source,
                          std::optional<std::uint64_t> seed) {
    Json r;
    r["command"] = command_echo;
    r["inputs_digest"] = io::fnv1a_hex(digest_source);
    r["seed"] = seed ? Json(*seed) : Json(nullptr);
    return r;
}

inline Json spectrum_json(const Witness& w) {
    Json levels = Json::array();
    for (auto it = w.eigenspaces.rbegin(); it != w.eigenspaces.rend(); ++it) {
        Json level;
        level["eigenvalue"] = io::number(it->eigenvalue);
        level["multiplicity"] = it->multiplicity;
        level["symmetric_multiplicity"] = it->symmetric_multiplicity;
        levels.push_back(level);
    }
    return levels;
}

struct WitnessArgs {
    std::string system;
    std::string kind = "projector";
    std::string save_witness;
    bool spectrum_only = false;
};

inline Result cmd_witness(const WitnessArgs& args, const std::string& echo) {
    const auto spec = SystemSpec::parse(args.system);
    const auto kind = parse_witness_kind(args.kind);
    const auto w = build_witness(represent(spec), kind);

    Result res{report_header(echo, spec.to_string() + "|" + to_string(kind), std::nullopt)};
    Json out;
    out["system"] = spec.to_string();
    out["kind"] = to_string(kind);
    out["composite_dim"] = w.dim;
    out["spectrum"] = spectrum_json(w);
    out["l_max"] = io::number(w.l_max);
    if (!args.spectrum_only) {
        out["kraus_count"] = w.kraus_all.size();
        out["symmetric_kraus_count"] = w.kraus.size();
    }
    res.report["outputs"] = out;
    res.report["tolerances"] = {{"eigenvalue_grouping", io::number(tensor::kGroupTol)},
                                {"kraus_cutoff", io::number(tensor::kZeroTol)}};

    if (!args.save_witness.empty()) {
        Json saved;
        saved["schema_version"] = io::kSchemaVersion;
        saved["system"] = spec.to_string();
        saved["kind"] = to_string(kind);
        saved["dim"] = w.dim * w.dim;
        saved["a_matrix"] = io::complex_matrix(w.a_matrix);
        io::write_file(args.save_witness, saved.dump(2) + "\n");
        res.report["outputs"]["saved_witness"] = args.save_witness;
    }
    return res;
}

struct ConcurrenceArgs {
    std::string state;
    std::string system;
    std::string kind = "projector";
    std::string strategy = "single";
    int trials = 0;
    int decomposition_size = 0; // 0: rank + 2
    std::uint64_t seed = 0;
};

inline Result cmd_concurrence(const ConcurrenceArgs& args, const std::string& echo) {
    const auto kind = parse_witness_kind(args.kind);
    const auto strategy = Strategy::parse(args.strategy);
    const std::optional<SystemSpec> requested =
        args.system.empty() ? std::nullopt : std::optional<SystemSpec>(SystemSpec::parse(args.system));
    require(args.trials >= 0, ErrorKind::BadInput, "--trials must be non-negative");

    const std::string text = io::read_file(args.state);
    const auto file = io::parse_state(text);
    const SystemSpec witness_spec = requested.value_or(file.system);
    const auto w = build_witness(represent(witness_spec), kind);

    Result res{report_header(echo, text + "|" + witness_spec.to_string() + "|" + to_string(kind), args.seed)};
    Json out;
    out["system"] = file.system.to_string();
    out["kind"] = to_string(kind);
    Json tol;
    if (file.state_type == io::StateType::Pure) {
        const auto psi = file.pure();
        out["state_type"] = "pure";
        out["concurrence"] = io::number(concurrence_pure(psi, w));
        tol["normalization"] = io::number(1e-8);
    } else {
        const auto rho = file.mixed();
        const auto ts = tau_matrices(rho, w);
        const auto bound = optimize_y(ts, strategy, args.seed);
        out["state_type"] = "mixed";
        out["rank"] = ts.r;
        out["strategy"] = strategy.to_string();
        out["bound"] = io::number(bound.bound);
        out["y"] = io::real_array(bound.y);
        out["singulars"] = io::real_array(bound.singulars);
        if (args.trials > 0) {
            const Index k = args.decomposition_size > 0 ? args.decomposition_size : default_decomposition_size(ts);
            out["decomposition_size"] = k;
            out["trials"] = args.trials;
            out["convex_roof_upper"] = io::number(convex_roof_upper(rho, w, args.trials, k, args.seed));
        }
        tol["rank"] = io::number(kRankTol);
        tol["hermitian"] = io::number(1e-8);
    }
    res.report["outputs"] = out;
    res.report["tolerances"] = tol;
    return res;
}

struct CanonicalArgs {
    std::string state;
};

inline Result cmd_canonical(const CanonicalArgs& args, const std::string& echo) {
    const std::string text = io::read_file(args.state);
    const auto file = io::parse_state(text);
    require(file.state_type == io::StateType::Pure, ErrorKind::UnsupportedSpec,
            "canonical forms are defined for pure states only");
    const auto psi = file.pure();
    const auto c = canonical(psi);

    Result res{report_header(echo, text, std::nullopt)};
    Json out;
    out["system"] = psi.spec.to_string();
    out["form"] = to_string(c.kind);
    out["coefficients"] = io::real_array(c.values);
    out["rank"] = canonical_rank(c);
    out["nonentangled"] = canonical_rank(c) == 1;
    res.report["outputs"] = out;
    res.report["tolerances"] = {{"nonentangled", io::number(kNonentangledTol)}};
    return res;
}

struct VerifyArgs {
    std::string family;
    int nmax = 0;
};

inline constexpr double kVerifyTol = 1e-9;

struct Check {
    std::string identity;
    int n = 0;
    double error = 0.0;
    [[nodiscard]] bool pass() const { return error <= kVerifyTol; }
};

/// Distinct eigenvalues with multiplicities against the closed forms; levels
/// that are empty for this n are skipped.
inline double spectrum_error(const Witness& w) {
    std::vector<ClosedFormLevel> expected;
    for (const auto& level : closed_form_spectrum(w.spec))
        if (level.multiplicity > 0) expected.push_back(level);
    if (expected.size() != w.eigenspaces.size()) return INFINITY;
    double err = 0.0;
    for (std::size_t k = 0; k < expected.size(); ++k) {
        if (expected[k].multiplicity != w.eigenspaces[k].multiplicity) return INFINITY;
        err = std::max(err, std::abs(expected[k].value - w.eigenspaces[k].eigenvalue));
    }
    return err;
}

inline std::vector<Check> appendix_checks(const SystemSpec& spec) {
    const auto ra = represent(spec);
    const auto w = build_witness(ra, WitnessKind::Projector);
    const int n = spec.n();
    std::vector<Check> checks;
    checks.push_back({"lichtenstein_spectrum", n, spectrum_error(w)});
    const CMatrix c2 = casimir(ra);
    checks.push_back({"casimir_constant", n,
                      tensor::max_abs(c2 - closed_form_casimir(spec) * CMatrix::Identity(ra.dim(), ra.dim()))});
    checks.push_back({"projector_equivalence", n, tensor::max_abs(projector_appendix(spec) - w.a_matrix)});
    return checks;
}

inline SystemSpec family_member(const std::string& family, int n) {
    if (family == "dist") return SystemSpec::distinguishable({n, n});
    if (family == "boson") return SystemSpec::boson(n);
    if (family == "fermion") return SystemSpec::fermion(n);
    throw Error(ErrorKind::BadInput, "family must be dist, boson or fermion, got '" + family + "'");
}

inline Result cmd_verify_appendix(const VerifyArgs& args, const std::string& echo) {
    require(args.nmax >= 2, ErrorKind::BadInput, "--nmax must be at least 2");
    (void)family_member(args.family, 2);
    for (int n = 2; n <= args.nmax; ++n) {
        const auto d = family_member(args.family, n).composite_dim();
        check_cap(d * d, dimension_cap(), "verify appendix at n=" + std::to_string(n));
    }

    Result res{report_header(echo, args.family + "|" + std::to_string(args.nmax), std::nullopt)};
    Json checks = Json::array();
    std::string first_failure;
    for (int n = 2; n <= args.nmax; ++n) {
        for (const auto& c : appendix_checks(family_member(args.family, n))) {
            Json entry;
            entry["identity"] = c.identity;
            entry["n"] = c.n;
            entry["max_error"] = std::isfinite(c.error) ? io::number(c.error) : Json("mismatch");
            entry["pass"] = c.pass();
            checks.push_back(entry);
            if (!c.pass() && first_failure.empty())
                first_failure = c.identity + " failed for " + args.family + " n=" + std::to_string(c.n);
        }
    }
    res.report["outputs"] = {{"family", args.family}, {"nmax", args.nmax}, {"checks", checks},
                             {"pass", first_failure.empty()}};
    res.report["tolerances"] = {{"identity", io::number(kVerifyTol)}};
    if (!first_failure.empty()) {
        res.exit_code = kVerification;
        res.message = first_failure;
    }
    return res;
}

} // namespace witnesslab::cli
