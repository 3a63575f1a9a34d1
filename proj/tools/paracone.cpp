// Command-line front end: flags map one-to-one onto RunConfig fields.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "paracone/report_cli.hpp"

namespace {

void add_common(CLI::App* sub, paracone::RunConfig& flags) {
    sub->add_option("--mapping", flags.mapping, "corpus entry name or polynomial mapping JSON file");
    sub->add_option("--cone", flags.cone, "cone JSON file (default: the mapping's own cone)");
    sub->add_option("--alpha", flags.alpha, "modulus, e.g. pow:2");
    sub->add_option("--C", flags.C, "defect constant");
    sub->add_option("--k0", flags.k0, "direction in the cone, e.g. 1,0");
    sub->add_option("--form", flags.form, "defect weight: min or product");
    sub->add_option("--grid", flags.grid, "sampling plan: default, coarse or fine");
    sub->add_option("--seed", flags.seed, "RNG seed (default: $PARACONE_SEED or 7)");
    sub->add_option("--tol", flags.tol, "tolerance");
    sub->add_option("--norm", flags.norm, "euclidean or sup");
    sub->add_option("--out", flags.out, "write the JSON report here instead of stdout");
}

const char* describe(const std::string& name) {
    if (name == "check-paraconvex") return "sample the paraconvex inclusion for given C, k0 and alpha";
    if (name == "check-convex") return "sample the plain cone-convexity inclusion";
    if (name == "estimate-C") return "smallest sampled defect constant";
    if (name == "dderiv") return "directional derivative from corrected difference quotients";
    if (name == "cone-info") return "generators, dual, pointedness and normality of a cone";
    return "run the full suite over the built-in corpus";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"paracone: checks for strongly cone-paraconvex mappings"};
    app.require_subcommand(1);
    paracone::RunConfig flags;
    std::string config_file;
    app.add_option("--config", config_file, "JSON config file; command-line flags override it");

    for (const auto& name : paracone::known_commands()) {
        auto* sub = app.add_subcommand(name, describe(name));
        sub->add_option("--config", config_file, "JSON config file; command-line flags override it");
        add_common(sub, flags);
        if (name == "dderiv") {
            sub->set_help_flag("--help", "Print this help message and exit");
            sub->add_option("--x0", flags.x0, "base point, e.g. 0.5");
            sub->add_option("--h", flags.h, "direction, e.g. 1");
            sub->add_option("--t-start", flags.t_start, "first step (default 0.5)");
            sub->add_option("--ratio", flags.ratio, "geometric step ratio (default 0.5)");
            sub->add_option("--steps", flags.steps, "maximum number of steps (default 40)");
            sub->add_option("--trace", flags.trace, "write the quotient trace CSV here");
        }
        if (name == "cone-info") sub->add_option("--samples", flags.samples, "normality-constant samples (default 1e5)");
        if (name == "corpus-run") sub->add_flag("--all", flags.all, "run every corpus entry");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : paracone::kExitUsage;
    }
    for (auto* sub : app.get_subcommands()) flags.command = sub->get_name();

    paracone::RunConfig config;
    if (!config_file.empty()) {
        try {
            config = paracone::config_from_json(paracone::read_json_file(config_file));
        } catch (const paracone::Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return paracone::kExitUsage;
        }
    }
    return paracone::run(config.overridden_by(flags));
}
