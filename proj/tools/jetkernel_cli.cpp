#include "jetkernel/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>

using namespace jetkernel;

namespace {

struct Shared {
    std::string mode = "exact";
    double tol = -1.0;
    std::string output;
    int indent = 2;
    bool quiet = false;
};

void add_shared(CLI::App* sub, cli::RunConfig& cfg, Shared& sh) {
    sub->add_option("--seed", cfg.seed, "Seed for randomized checks")->capture_default_str();
    sub->add_option("--tol", sh.tol, "Tolerance for floating-point checks");
    sub->add_option("--mode", sh.mode, "exact or numeric")->check(CLI::IsMember({"exact", "numeric"}));
    sub->add_option("--output", sh.output, "Write JSON here instead of stdout");
    sub->add_option("--json-indent", sh.indent, "JSON indent, -1 for compact")->capture_default_str();
    sub->add_flag("--quiet", sh.quiet, "Do not print JSON on stdout");
}

void add_param(CLI::App* sub, std::map<std::string, std::string>& params, const std::string& name,
               const std::string& help, bool required = false) {
    auto* opt = sub->add_option_function<std::string>(
        "--" + name, [&params, name](const std::string& v) { params[name] = v; }, help);
    if (required) opt->required();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact checks for jet-construction kernels on the bidisc and tridisc"};
    app.require_subcommand(1);
    cli::RunConfig cfg;
    Shared sh;
    auto& p = cfg.params;

    auto* jet = app.add_subcommand("jet-coeffs", "Taylor coefficients of the jet kernel");
    add_param(jet, p, "alpha", "alpha as p/q", true);
    add_param(jet, p, "beta", "beta as p/q", true);
    add_param(jet, p, "order", "jet order n", true);
    jet->add_option("--trunc", cfg.trunc, "Truncation order (<= 12)")->capture_default_str();
    jet->add_flag("--normalized", cfg.normalized, "Also emit the normalized coefficients");

    auto* irr = app.add_subcommand("irreducibility", "Commutant of the normalized coefficients");
    add_param(irr, p, "alpha", "alpha as p/q", true);
    add_param(irr, p, "beta", "beta as p/q", true);
    add_param(irr, p, "order", "jet order n >= 1", true);

    auto* curv = app.add_subcommand("curvature", "Curvature at 0 and as a series");
    add_param(curv, p, "alpha", "alpha as p/q", true);
    add_param(curv, p, "beta", "beta as p/q", true);
    add_param(curv, p, "order", "jet order n", true);
    curv->add_option("--at", cfg.at, "Evaluation point x,y (repeatable, |z| <= 0.5)");
    curv->add_option("--curv-trunc", cfg.curv_trunc, "Series truncation for the curvature")->capture_default_str();
    curv->add_option("--metric", cfg.metric, "jet or normalized")->capture_default_str();

    auto* coc = app.add_subcommand("cocycle-check", "Random checks of the cocycle identities");
    add_param(coc, p, "alpha", "alpha as p/q", true);
    add_param(coc, p, "beta", "beta as p/q", true);
    add_param(coc, p, "order", "jet order n", true);
    add_param(coc, p, "samples", "number of random (g, h, z) triples");

    auto* ide = app.add_subcommand("identity-check", "Binomial and quasi-invariance polynomial identities");
    add_param(ide, p, "max-ij", "largest j");
    add_param(ide, p, "beta", "single beta as p/q (default: 1/2, 1, 5/2)");

    auto* wil = app.add_subcommand("wilkins", "Orthonormal-basis sum against the closed form");
    add_param(wil, p, "alpha", "alpha as p/q", true);
    add_param(wil, p, "beta", "beta as p/q", true);
    add_param(wil, p, "terms", "number of basis terms P");
    wil->add_option("--at", cfg.at, "Point z = w as x,y");

    auto* tri = app.add_subcommand("tridisc", "Splitting of the tridisc jet kernel");
    add_param(tri, p, "alpha", "alpha as p/q", true);
    add_param(tri, p, "beta", "beta as p/q", true);
    add_param(tri, p, "gamma", "gamma as p/q", true);
    tri->add_flag("--mutate-sum", cfg.mutate_sum, "Use beta+gamma-1 in place of beta+gamma");

    auto* all = app.add_subcommand("verify-all", "Run every acceptance criterion");
    all->add_flag("--timings", cfg.timings, "Include wall-clock times (output no longer reproducible)");

    for (auto* sub : {jet, irr, curv, coc, ide, wil, tri, all}) add_shared(sub, cfg, sh);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::exit_usage;
    }

    for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
    cfg.mode = sh.mode == "numeric" ? Mode::numeric : Mode::exact;
    if (sh.tol >= 0.0) cfg.tolerance = sh.tol;

    const auto result = cli::run(cfg);
    if (!result.diagnostic.empty()) std::cerr << cfg.subcommand << ": " << result.diagnostic << "\n";
    if (result.exit_code == cli::exit_usage) return result.exit_code;

    const std::string text = result.doc.dump(sh.indent) + "\n";
    if (!sh.output.empty()) {
        std::ofstream out(sh.output);
        if (!out) {
            std::cerr << "cannot write " << sh.output << "\n";
            return cli::exit_usage;
        }
        out << text;
    } else if (!sh.quiet) {
        std::cout << text;
    }
    return result.exit_code;
}
