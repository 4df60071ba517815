#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "wedgewave/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitTolerance = 3;
constexpr int kExitIo = 4;
constexpr int kCliWedgeCap = 64;

struct CommonOpts {
    std::string config_path;
    std::string out_override;
    int threads = 1;
    double gamma_override = 0.0;
};

wedgewave::RunConfig load_with_overrides(const CommonOpts& opts) {
    wedgewave::RunConfig cfg = wedgewave::load_run_config(opts.config_path);
    if (!opts.out_override.empty()) cfg.output_dir = opts.out_override;
    if (opts.gamma_override > 0.0) cfg.gamma = opts.gamma_override;
    if (cfg.wedge_n > kCliWedgeCap)
        throw wedgewave::ConfigError("wedge index exceeds the CLI cap of 64");
    return cfg;
}

int do_run(const wedgewave::RunConfig& cfg, int threads) {
    const wedgewave::RunResult result = wedgewave::run(cfg, threads);
    std::cout << "wrote " << result.files.size() << " files to " << cfg.output_dir << "\n";
    for (const std::string& note : result.notes) std::cout << "note: " << note << "\n";
    return kExitOk;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_gamma) {
    cmd->add_option("config", opts.config_path, "run configuration file")->required();
    cmd->add_option("--out", opts.out_override, "override the output directory");
    cmd->add_option("--threads", opts.threads, "worker threads for grid evaluation")
        ->check(CLI::Range(1, 256));
    if (with_gamma)
        cmd->add_option("--gamma", opts.gamma_override, "override the heatmap gamma")
            ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"closed-form wave packets in pi/N wedge barriers"};
    app.require_subcommand(1);

    // images
    int images_n = 0;
    std::pair<double, double> probe{5.0, 3.0};
    CLI::App* images = app.add_subcommand("images", "print the signed image isometries");
    images->add_option("N", images_n, "wedge index (angle pi/N)")
        ->required()
        ->check(CLI::Range(1, kCliWedgeCap));
    images->add_option("--probe", probe, "probe point mapped by every term")
        ->delimiter(',');

    CommonOpts run_opts, expect_opts, momentum_opts, validate_opts;
    CLI::App* run_cmd = app.add_subcommand("run", "emit the artifacts requested by the config");
    add_common(run_cmd, run_opts, true);
    CLI::App* expect_cmd =
        app.add_subcommand("expect", "emit the expectation-value series only");
    add_common(expect_cmd, expect_opts, false);
    CLI::App* momentum_cmd =
        app.add_subcommand("momentum1d", "emit the 1D mirror momentum densities only");
    add_common(momentum_cmd, momentum_opts, false);
    unsigned validate_seed = 12345;
    CLI::App* validate_cmd =
        app.add_subcommand("validate", "closure, boundary and residual checks");
    add_common(validate_cmd, validate_opts, false);
    validate_cmd->add_option("--seed", validate_seed, "RNG seed for the sampled checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (images->parsed()) {
            std::cout << wedgewave::format_image_table(wedgewave::build_wedge_images(images_n),
                                                       probe.first, probe.second);
            return kExitOk;
        }
        if (run_cmd->parsed()) {
            return do_run(load_with_overrides(run_opts), run_opts.threads);
        }
        if (expect_cmd->parsed()) {
            wedgewave::RunConfig cfg = load_with_overrides(expect_opts);
            cfg.artifacts = {wedgewave::Artifact::Series};
            return do_run(cfg, expect_opts.threads);
        }
        if (momentum_cmd->parsed()) {
            wedgewave::RunConfig cfg = load_with_overrides(momentum_opts);
            cfg.artifacts = {wedgewave::Artifact::Momentum1D};
            return do_run(cfg, momentum_opts.threads);
        }
        if (validate_cmd->parsed()) {
            const wedgewave::RunConfig cfg = load_with_overrides(validate_opts);
            const wedgewave::ValidationOutcome outcome = wedgewave::validate(cfg, validate_seed);
            for (const std::string& line : outcome.report) std::cout << line << "\n";
            std::cout << (outcome.pass ? "validate: all checks passed"
                                       : "validate: tolerance failure")
                      << "\n";
            return outcome.pass ? kExitOk : kExitTolerance;
        }
    } catch (const wedgewave::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const wedgewave::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
