#include "witnesslab/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace wl = witnesslab;

namespace {

std::string echo_of(int argc, char** argv) {
    std::string out = "witnesslab";
    for (int i = 1; i < argc; ++i) out += std::string(" ") + argv[i];
    return out;
}

// Flag values are checked up front so malformed ones count as usage errors.
int check_flags(const std::string& system, const std::string& kind, const std::string& strategy) {
    try {
        if (!system.empty()) (void)wl::SystemSpec::parse(system);
        if (!kind.empty()) (void)wl::parse_witness_kind(kind);
        if (!strategy.empty()) (void)wl::Strategy::parse(strategy);
    } catch (const wl::Error& e) {
        std::cerr << e.what() << "\n";
        return wl::cli::kUsage;
    }
    return wl::cli::kOk;
}

int emit(const wl::cli::Result& res, const std::string& out_path) {
    const std::string text = res.report.dump(2) + "\n";
    if (out_path.empty()) std::cout << text;
    else wl::io::write_file(out_path, text);
    if (!res.message.empty()) std::cerr << res.message << "\n";
    return res.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlinear entanglement witnesses and generalized concurrence"};
    app.require_subcommand(1);
    std::string out_path;

    auto* witness = app.add_subcommand("witness", "Build the witness of a system");
    witness->require_subcommand(1);
    wl::cli::WitnessArgs witness_args;
    for (const char* name : {"build", "spectrum"}) {
        auto* sub = witness->add_subcommand(name, std::string(name) == "build" ? "Spectrum of L and Kraus counts"
                                                                               : "Spectrum of L only");
        sub->add_option("--system", witness_args.system, "dist:<d1,d2,...>, boson:<n> or fermion:<n>")->required();
        sub->add_option("--kind", witness_args.kind, "projector or gap");
        sub->add_option("--save-witness", witness_args.save_witness, "Write the two-copy operator A as JSON");
        sub->add_option("--out", out_path, "Report path (stdout by default)");
    }

    auto* conc = app.add_subcommand("concurrence", "Concurrence of a pure state or bound for a mixed state");
    wl::cli::ConcurrenceArgs conc_args;
    conc->add_option("--state", conc_args.state, "State file")->required();
    conc->add_option("--system", conc_args.system, "Witness system (defaults to the state's)");
    conc->add_option("--kind", conc_args.kind, "projector or gap");
    conc->add_option("--strategy", conc_args.strategy, "single, random:<k> or ascent");
    conc->add_option("--trials", conc_args.trials, "Random decompositions for the convex-roof estimate");
    conc->add_option("--decomposition-size", conc_args.decomposition_size, "Decomposition size K (rank + 2 by default)");
    conc->add_option("--seed", conc_args.seed, "Random seed");
    conc->add_option("--out", out_path, "Report path (stdout by default)");

    auto* canon = app.add_subcommand("canonical", "Schmidt, Slater or Takagi coefficients");
    wl::cli::CanonicalArgs canon_args;
    canon->add_option("--state", canon_args.state, "State file")->required();
    canon->add_option("--out", out_path, "Report path (stdout by default)");

    auto* verify = app.add_subcommand("verify", "Numerical identity checks");
    verify->require_subcommand(1);
    auto* appendix = verify->add_subcommand("appendix", "Closed-form spectra, Casimir constants and projectors");
    wl::cli::VerifyArgs verify_args;
    appendix->add_option("--system", verify_args.family, "dist, boson or fermion")->required();
    appendix->add_option("--nmax", verify_args.nmax, "Largest single-particle dimension")->required();
    appendix->add_option("--out", out_path, "Report path (stdout by default)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : wl::cli::kUsage;
    }

    const std::string echo = echo_of(argc, argv);
    try {
        if (witness->parsed()) {
            witness_args.spectrum_only = witness->get_subcommand("spectrum")->parsed();
            if (int rc = check_flags(witness_args.system, witness_args.kind, ""); rc != 0) return rc;
            return emit(wl::cli::cmd_witness(witness_args, echo), out_path);
        }
        if (conc->parsed()) {
            if (int rc = check_flags(conc_args.system, conc_args.kind, conc_args.strategy); rc != 0) return rc;
            return emit(wl::cli::cmd_concurrence(conc_args, echo), out_path);
        }
        if (canon->parsed()) return emit(wl::cli::cmd_canonical(canon_args, echo), out_path);
        if (appendix->parsed()) {
            if (verify_args.family != "dist" && verify_args.family != "boson" && verify_args.family != "fermion") {
                std::cerr << "--system must be dist, boson or fermion\n";
                return wl::cli::kUsage;
            }
            return emit(wl::cli::cmd_verify_appendix(verify_args, echo), out_path);
        }
    } catch (const wl::Error& e) {
        std::cerr << e.what() << "\n";
        return wl::cli::exit_code_for(e.kind());
    }
    return wl::cli::kUsage;
}
