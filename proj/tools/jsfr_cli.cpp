// jsfr: carrier-assisted direct-detection link simulator and sweep runner.
//
// Exit codes: 0 success, 1 invalid config, 2 identity-check failure,
// 3 I/O error.

#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"

#include "jsfr/harness.hpp"

namespace {

int run_sweep(const jsfr::ExperimentConfig& cfg, const std::string& out,
              int workers) {
    const auto result = jsfr::sweep(cfg, workers);
    if (out.empty()) {
        std::fputs(jsfr::to_csv(result).c_str(), stdout);
    } else {
        jsfr::emit_csv(result, out);
        std::fprintf(stderr, "wrote %zu rows to %s\n", result.rows.size(),
                     out.c_str());
    }
    return 0;
}

jsfr::ExperimentConfig with_overrides(jsfr::ExperimentConfig cfg,
                                      long long seed, int trials) {
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (trials > 0) cfg.trials_per_point = trials;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Jones-space field recovery link simulator"};
    app.require_subcommand(1);

    std::string config_path, out_path, preset_name;
    long long seed = -1;
    int trials = 0;
    int workers = 0;
    bool list_presets = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "master seed override");
        cmd->add_option("--out", out_path, "output CSV path (default: stdout)");
        cmd->add_option("--trials", trials, "trials per sweep point override");
        cmd->add_option("--workers", workers, "worker threads (0 = all cores)");
    };

    auto* run_cmd = app.add_subcommand("run", "run a single trial from a config");
    run_cmd->add_option("config", config_path, "config file")->required();
    add_common(run_cmd);

    auto* sweep_cmd = app.add_subcommand("sweep", "run the configured sweep");
    sweep_cmd->add_option("config", config_path, "config file")->required();
    add_common(sweep_cmd);

    auto* verify_cmd = app.add_subcommand(
        "verify-identities", "certify the CSPR and reconstruction algebra");
    (void)verify_cmd;

    auto* preset_cmd = app.add_subcommand("preset", "run a named preset sweep");
    preset_cmd->add_option("name", preset_name, "preset name");
    preset_cmd->add_flag("--list", list_presets, "list available presets");
    add_common(preset_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            auto cfg = with_overrides(jsfr::load_config(config_path), seed, trials);
            cfg.sweep.kind = jsfr::SweepAxis::Kind::Single;
            cfg.trials_per_point = 1;
            return run_sweep(cfg, out_path, workers);
        }
        if (sweep_cmd->parsed()) {
            auto cfg = with_overrides(jsfr::load_config(config_path), seed, trials);
            return run_sweep(cfg, out_path, workers);
        }
        if (verify_cmd->parsed()) {
            const auto report = jsfr::verify_identities();
            for (const auto& line : report.lines) {
                std::printf("%s\n", line.c_str());
            }
            std::printf("%s (worst residual %.3e)\n",
                        report.pass ? "ALL IDENTITIES PASS" : "IDENTITY CHECK FAILED",
                        report.worst_residual);
            return report.pass ? 0 : 2;
        }
        if (preset_cmd->parsed()) {
            if (list_presets) {
                for (const auto& n : jsfr::preset_names()) std::printf("%s\n", n.c_str());
                return 0;
            }
            if (preset_name.empty()) {
                std::fprintf(stderr, "preset: name required (or --list)\n");
                return 1;
            }
            auto cfg = with_overrides(
                jsfr::load_config(jsfr::preset_path(preset_name)), seed, trials);
            if (out_path.empty()) out_path = preset_name + ".csv";
            return run_sweep(cfg, out_path, workers);
        }
    } catch (const jsfr::IoError& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return 3;
    } catch (const jsfr::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
