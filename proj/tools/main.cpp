// Experiment runner for the coset-code synthesis toolkit.
//
// Subcommands mirror the experiment modes: synthesize, soft-cover,
// rate-region, example1, diagnostics, plus validate and plot-data.
// Exit codes: 0 success, 2 validation failure, 3 partial (some runs
// skipped over budget), 1 unexpected error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ucs/experiment.hpp"

namespace {

struct CommonArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
    std::string out = ".";
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_config = true) {
    auto* opt = cmd->add_option("--config", args.config, "experiment config (JSON)");
    if (needs_config) opt->required();
    cmd->add_option("--seed", [&args](const std::vector<std::string>& v) {
        args.seed = std::stoull(v[0]);
        return true;
    }, "override the master seed");
    cmd->add_option("--jobs", args.jobs, "worker threads for sweep points");
    cmd->add_option("--out", args.out, "output directory");
}

int run_mode(const std::string& expected_mode, const CommonArgs& args) {
    ucs::cli::ExperimentSpec spec = ucs::cli::ExperimentSpec::load_file(args.config);
    if (!expected_mode.empty() && spec.mode != expected_mode) {
        std::cerr << "config mode '" << spec.mode << "' does not match subcommand '"
                  << expected_mode << "'\n";
        return 2;
    }
    ucs::cli::RunOptions options;
    options.seed_override = args.seed;
    options.jobs = args.jobs;
    options.out_dir = args.out;
    const ucs::cli::RunManifest manifest = ucs::cli::run(spec, options);
    for (const auto& skip : manifest.skipped) std::cerr << "skipped: " << skip << '\n';
    for (const auto& rec : manifest.outputs)
        std::cout << rec.path << " (" << rec.digest << ")\n";
    return manifest.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"unionized coset code synthesis experiments"};
    app.require_subcommand(1);

    CommonArgs synth_args, soft_args, region_args, ex1_args, diag_args, val_args;
    double ex1_p = 0.0, ex1_q = 0.0;
    std::size_t theta_grid = 10000;
    std::string plot_in, plot_kind, plot_out = "plot.csv";

    auto* synth_cmd = app.add_subcommand("synthesize", "exact protocol TV sweep");
    add_common(synth_cmd, synth_args);
    auto* soft_cmd = app.add_subcommand("soft-cover", "covering lemma TV sweep");
    add_common(soft_cmd, soft_args);

    auto* region_cmd = app.add_subcommand("rate-region", "rate region of an auxiliary joint");
    add_common(region_cmd, region_args, false);
    region_cmd->add_option("--example1", [&](const std::vector<std::string>& v) {
        ex1_p = std::stod(v[0]);
        ex1_q = std::stod(v[1]);
        return true;
    }, "source flip p and noise q for the two-source family")->expected(2);
    region_cmd->add_option("--theta-grid", theta_grid, "grid points for the theta sweep");

    auto* ex1_cmd = app.add_subcommand("example1", "two-source minimum sum rate");
    add_common(ex1_cmd, ex1_args, false);
    ex1_cmd->add_option("--p", ex1_p, "source flip probability");
    ex1_cmd->add_option("--q", ex1_q, "output noise probability");
    ex1_cmd->add_option("--theta-grid", theta_grid, "grid points for the theta sweep");

    auto* diag_cmd = app.add_subcommand("diagnostics", "overflow and ambiguity estimates");
    add_common(diag_cmd, diag_args);

    auto* val_cmd = app.add_subcommand("validate", "check a config without running it");
    add_common(val_cmd, val_args);

    auto* plot_cmd = app.add_subcommand("plot-data", "tidy plot table from results");
    plot_cmd->add_option("--in", plot_in, "results CSV")->required();
    plot_cmd->add_option("--kind", plot_kind, "tv-vs-n | theta-sweep | threshold-heatmap")
        ->required();
    plot_cmd->add_option("--out", plot_out, "output CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth_cmd->parsed()) return run_mode("synthesize", synth_args);
        if (soft_cmd->parsed()) return run_mode("soft-cover", soft_args);
        if (diag_cmd->parsed()) return run_mode("diagnostics", diag_args);

        if (region_cmd->parsed() || ex1_cmd->parsed()) {
            CommonArgs& args = region_cmd->parsed() ? region_args : ex1_args;
            if (!args.config.empty()) return run_mode("", args);
            nlohmann::json j{{"mode", "example1"}, {"p", ex1_p}, {"q", ex1_q},
                             {"theta_grid", theta_grid}};
            ucs::cli::RunOptions options;
            options.seed_override = args.seed;
            options.jobs = args.jobs;
            options.out_dir = args.out;
            const auto manifest =
                ucs::cli::run(ucs::cli::ExperimentSpec::from_json(std::move(j)), options);
            for (const auto& skip : manifest.skipped) std::cerr << "skipped: " << skip << '\n';
            for (const auto& rec : manifest.outputs)
                std::cout << rec.path << " (" << rec.digest << ")\n";
            return manifest.exit_code;
        }

        if (val_cmd->parsed()) {
            const auto spec = ucs::cli::ExperimentSpec::load_file(val_args.config);
            const auto report = ucs::cli::validate(spec);
            if (report.ok()) {
                std::cout << "ok: no problems found\n";
                return 0;
            }
            for (const auto& issue : report.problems)
                std::cout << "problem: " << issue.where << ": " << issue.what << '\n';
            return 2;
        }

        if (plot_cmd->parsed()) {
            ucs::cli::plot_data(plot_in, plot_kind, plot_out);
            std::cout << plot_out << '\n';
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
