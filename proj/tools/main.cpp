// jumpcast: synthetic LOB scenarios, jump labels, feature extraction,
// network training, and evaluation, staged over documented file formats.

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>

#include "jumpcast/common/config.hpp"
#include "jumpcast/common/error.hpp"
#include "jumpcast/pipeline/pipeline.hpp"

using namespace jumpcast;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string scenario = "demo";
    std::string out_dir;
    int64_t seed = -1;
};

Config resolve_config(const CommonOpts& opts) {
    Config cfg = opts.config_path.empty() ? pipeline::default_config(opts.scenario)
                                          : Config::load(opts.config_path);
    if (!opts.out_dir.empty()) cfg.set("paths.out_dir", opts.out_dir);
    if (opts.seed >= 0) cfg.set_int("run.seed", opts.seed);
    return cfg;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "configuration file (key = value sections)");
    cmd->add_option("--scenario", opts.scenario, "built-in profile when no config is given (demo|flat)");
    cmd->add_option("--out-dir", opts.out_dir, "output directory");
    cmd->add_option("--seed", opts.seed, "override run.seed");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"limit order book jump forecasting pipeline"};
    app.require_subcommand(1);

    CommonOpts opts;
    const char* stages[] = {"synth", "replay", "detect", "features", "dataset", "train", "eval", "attention"};
    for (const char* stage : stages) {
        auto* cmd = app.add_subcommand(stage, std::string("run the ") + stage + " stage");
        add_common(cmd, opts);
    }
    auto* pipe = app.add_subcommand("pipeline", "run every stage in order");
    add_common(pipe, opts);
    auto* dump = app.add_subcommand("print-config", "print the resolved configuration");
    add_common(dump, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        Config cfg = resolve_config(opts);
        std::string chosen = app.get_subcommands().front()->get_name();
        if (chosen == "print-config") {
            std::fputs(cfg.serialize().c_str(), stdout);
            return 0;
        }
        if (chosen == "pipeline") {
            for (const auto& result : pipeline::run_pipeline(cfg)) {
                std::printf("[%s] done", result.stage.c_str());
                for (const auto& f : result.outputs) std::printf(" %s", f.c_str());
                std::printf("\n");
            }
            return 0;
        }
        auto result = pipeline::run_stage(chosen, cfg);
        std::printf("[%s] done", result.stage.c_str());
        for (const auto& f : result.outputs) std::printf(" %s", f.c_str());
        std::printf("\n");
        return 0;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
