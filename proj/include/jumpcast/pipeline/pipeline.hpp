#pragma once

#include <string>
#include <vector>

#include "jumpcast/common/config.hpp"

namespace jumpcast::pipeline {

// Stage drivers behind the CLI subcommands. Every stage reads its inputs and
// settings from the config, writes its module's file format under
// [paths].out_dir, records what it wrote, and appends a manifest. Outputs of
// a failing stage are removed by run_stage.

struct StageResult {
    std::string stage;
    std::vector<std::string> outputs;
};

// built-in profiles: "demo" (small, signalled) and "flat" (no signal)
Config default_config(const std::string& scenario = "demo");

std::string out_dir(const Config& cfg);
std::string stock_name(const Config& cfg, int instrument);

StageResult run_synth(const Config& cfg);
StageResult run_replay(const Config& cfg);
StageResult run_detect(const Config& cfg);
StageResult run_features(const Config& cfg);
StageResult run_dataset(const Config& cfg);
StageResult run_train(const Config& cfg);
StageResult run_eval(const Config& cfg);
StageResult run_attention(const Config& cfg);

// chains every stage; returns all outputs
std::vector<StageResult> run_pipeline(const Config& cfg);

// dispatch by stage name, with cleanup of partial outputs on failure
StageResult run_stage(const std::string& name, const Config& cfg);

// paths used across stages
std::string events_path(const Config& cfg, int instrument);
std::string truth_path(const Config& cfg, int instrument);
std::string snapshots_path(const Config& cfg, int instrument);
std::string features_path(const Config& cfg, int instrument);
std::string labels_path(const Config& cfg, int instrument);
std::string dataset_path(const Config& cfg, int instrument);
std::string checkpoint_path(const Config& cfg, const std::string& arch, int set, int instrument);
std::string model_spec_path(const Config& cfg, const std::string& arch, int set, int instrument);

} // namespace jumpcast::pipeline
