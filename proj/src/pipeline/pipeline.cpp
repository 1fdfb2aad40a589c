#include "jumpcast/pipeline/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "jumpcast/common/error.hpp"
#include "jumpcast/data/dataset.hpp"
#include "jumpcast/data/dataset_io.hpp"
#include "jumpcast/data/split.hpp"
#include "jumpcast/eval/grid.hpp"
#include "jumpcast/eval/metrics.hpp"
#include "jumpcast/feat/feature_io.hpp"
#include "jumpcast/feat/features.hpp"
#include "jumpcast/jump/detector.hpp"
#include "jumpcast/lob/event_io.hpp"
#include "jumpcast/lob/replay.hpp"
#include "jumpcast/lob/snapshot_io.hpp"
#include "jumpcast/model/builders.hpp"
#include "jumpcast/model/checkpoint.hpp"
#include "jumpcast/model/train.hpp"
#include "jumpcast/synth/scenario.hpp"

namespace jumpcast::pipeline {

namespace fs = std::filesystem;

namespace {

constexpr int64_t kNs = 1'000'000'000;

uint64_t run_seed(const Config& cfg) { return uint64_t(cfg.get_int("run.seed", 1)); }

int instruments(const Config& cfg) { return int(cfg.get_int("scenario.instruments", 1)); }

synth::ScenarioConfig scenario_config(const Config& cfg, int instrument) {
    synth::ScenarioConfig sc;
    sc.days = int(cfg.get_int("scenario.days", 10));
    sc.seconds_per_day = cfg.get_int("scenario.seconds_per_day", 23400);
    sc.tick_size = cfg.get_real("scenario.tick_size", 0.01);
    sc.start_price_ticks = cfg.get_int("scenario.start_price_ticks", 10000);
    sc.sigma_per_minute = cfg.get_real("scenario.sigma_per_minute", 5e-4);
    sc.jump_intensity_per_day = cfg.get_real("scenario.jump_intensity_per_day", 3.0);
    sc.jump_size_sigma = cfg.get_real("scenario.jump_size_sigma", 10.0);
    sc.orders_per_minute = cfg.get_real("scenario.orders_per_minute", 240.0);
    sc.trades_per_minute = cfg.get_real("scenario.trades_per_minute", 30.0);
    sc.cancels_per_minute = cfg.get_real("scenario.cancels_per_minute", 210.0);
    sc.withdraw_fraction = cfg.get_real("scenario.withdraw_fraction", 0.0);
    sc.signal_lead_seconds = cfg.get_int("scenario.signal_lead_seconds", 120);
    sc.symmetric_signal = cfg.get_bool("scenario.symmetric_signal", false);
    sc.warmup_days = int(cfg.get_int("detector.skip_days", 2));
    sc.seed = run_seed(cfg) + uint64_t(instrument) * 10007;
    return sc;
}

jump::DetectorConfig detector_config(const Config& cfg) {
    jump::DetectorConfig dc;
    dc.window_k = int(cfg.get_int("detector.window_k", 600));
    dc.alpha = cfg.get_real("detector.alpha", 0.01);
    dc.obs_per_day = int(cfg.get_int("detector.obs_per_day", 390));
    dc.minutes_per_day = int(cfg.get_int("scenario.seconds_per_day", 23400) / 60);
    dc.skip_days = int(cfg.get_int("detector.skip_days", 2));
    return dc;
}

feat::FeatureConfig feature_config(const Config& cfg) {
    feat::FeatureConfig fc;
    fc.dt_short = int(cfg.get_int("features.dt_short", 60));
    fc.dt_long = int(cfg.get_int("features.dt_long", 600));
    fc.session_open = cfg.get_int("features.session_open", 34200);
    fc.seconds_per_day = cfg.get_int("scenario.seconds_per_day", 23400);
    return fc;
}

data::DatasetConfig dataset_config(const Config& cfg) {
    data::DatasetConfig dc;
    dc.n_classes = int(cfg.get_int("dataset.n_classes", 2));
    dc.target_positive_share = cfg.get_real("dataset.target_positive_share", 0.25);
    dc.jitter_max_seconds = int(cfg.get_int("dataset.jitter_max_seconds", 20));
    dc.minutes_per_day = int(cfg.get_int("scenario.seconds_per_day", 23400) / 60);
    dc.seed = run_seed(cfg);
    auto shifts = cfg.get_list("dataset.duplicate_shifts", {5, 10, 15, 20});
    dc.duplicate_shifts.clear();
    for (double s : shifts) dc.duplicate_shifts.push_back(int(s));
    return dc;
}

data::SplitPlan split_plan(const Config& cfg) {
    data::SplitPlan plan;
    std::string mode = cfg.get_str("split.mode", "auto");
    int skip = int(cfg.get_int("detector.skip_days", 2));
    int test_days = int(cfg.get_int("split.test_days", 10));
    if (mode == "table2") {
        plan = data::SplitPlan::table2(int(cfg.get_int("split.sets", 7)), int(cfg.get_int("split.span", 50)),
                                       test_days);
    } else if (mode == "auto") {
        int labeled = int(cfg.get_int("scenario.days", 10)) - skip;
        plan = data::SplitPlan::single(labeled, test_days);
    } else {
        fail(Errc::BadConfig, "unknown split mode: " + mode);
    }
    plan.validation_fraction = cfg.get_real("split.validation_fraction", 0.15);
    plan.skip_days = skip;
    plan.seed = run_seed(cfg);
    return plan;
}

model::TrainConfig train_config(const Config& cfg) {
    model::TrainConfig tc;
    tc.max_epochs = int(cfg.get_int("train.max_epochs", 100));
    tc.batch_size = int(cfg.get_int("train.batch_size", 64));
    tc.patience = int(cfg.get_int("train.patience", 10));
    tc.learning_rate = cfg.get_real("train.learning_rate", 1e-3);
    tc.seed = run_seed(cfg);
    tc.curriculum = cfg.get_bool("train.curriculum", true);
    tc.curriculum_days = int(cfg.get_int("train.curriculum_days", 50));
    tc.positive_weight = cfg.get_real("train.positive_weight", 0.0);
    tc.workers = int(cfg.get_int("train.workers", 2));
    return tc;
}

std::vector<std::string> architectures(const Config& cfg) {
    std::string list = cfg.get_str("train.architectures", "cnn_lstm_attention");
    std::vector<std::string> out;
    std::string cur;
    for (char c : list + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    return out;
}

void write_manifest(const Config& cfg, const StageResult& result) {
    std::string dir = out_dir(cfg) + "/manifests";
    fs::create_directories(dir);
    std::ofstream os(dir + "/" + result.stage + ".manifest");
    os << "stage = " << result.stage << "\n";
    os << "seed = " << run_seed(cfg) << "\n";
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx", static_cast<unsigned long long>(cfg.hash()));
    os << "config_hash = " << hash << "\n";
    os << "format_version = 1\n";
    for (const auto& f : result.outputs) os << "output = " << f << "\n";
}

// Minute-mark mid series from a snapshot stream. A side that is empty at a
// mark reuses the previous mark's mid; a jump into an empty book is not
// observable, and the synthetic generators keep marks quotable anyway.
std::vector<double> sample_mid_series(const std::string& snap_path, int64_t total_seconds) {
    lob::SnapshotReader reader(snap_path);
    std::vector<double> series;
    series.reserve(size_t(total_seconds / 60));
    lob::BookSnapshot snap;
    double last_mid = 0.0;
    bool have_mid = false;
    int64_t expected = 1;
    while (reader.next(snap)) {
        if (int64_t(snap.second) != expected)
            fail(Errc::StreamMisalignment, "snapshot stream is not contiguous at second " +
                                               std::to_string(snap.second));
        ++expected;
        if (snap.second % 60 != 0) continue;
        if (snap.asks[0].price != 0 && snap.bids[0].price != 0) {
            last_mid = lob::mid_price(snap);
            have_mid = true;
        } else if (!have_mid) {
            fail(Errc::EmptySide, "no quotable mid by second " + std::to_string(snap.second));
        }
        series.push_back(last_mid);
    }
    return series;
}

} // namespace

std::string out_dir(const Config& cfg) { return cfg.get_str("paths.out_dir", "out"); }

std::string stock_name(const Config& cfg, int instrument) {
    (void)cfg;
    return "SYN" + std::to_string(instrument);
}

std::string events_path(const Config& cfg, int i) { return out_dir(cfg) + "/events_" + stock_name(cfg, i) + ".txt"; }
std::string truth_path(const Config& cfg, int i) { return out_dir(cfg) + "/truth_" + stock_name(cfg, i) + ".csv"; }
std::string snapshots_path(const Config& cfg, int i) {
    return out_dir(cfg) + "/snapshots_" + stock_name(cfg, i) + ".bin";
}
std::string features_path(const Config& cfg, int i) {
    return out_dir(cfg) + "/features_" + stock_name(cfg, i) + ".bin";
}
std::string labels_path(const Config& cfg, int i) { return out_dir(cfg) + "/labels_" + stock_name(cfg, i) + ".csv"; }
std::string dataset_path(const Config& cfg, int i) {
    return out_dir(cfg) + "/dataset_" + stock_name(cfg, i) + ".bin";
}
std::string checkpoint_path(const Config& cfg, const std::string& arch, int set, int i) {
    return out_dir(cfg) + "/ckpt_" + arch + "_set" + std::to_string(set) + "_" + stock_name(cfg, i) + ".bin";
}
std::string model_spec_path(const Config& cfg, const std::string& arch, int set, int i) {
    return out_dir(cfg) + "/model_" + arch + "_set" + std::to_string(set) + "_" + stock_name(cfg, i) + ".spec";
}

Config default_config(const std::string& scenario) {
    Config cfg;
    cfg.set("paths.out_dir", "out");
    cfg.set_int("run.seed", 1);
    cfg.set_int("scenario.days", 10);
    cfg.set_int("scenario.instruments", 1);
    cfg.set_real("scenario.orders_per_minute", 240);
    cfg.set_real("scenario.trades_per_minute", 30);
    cfg.set_real("scenario.cancels_per_minute", 210);
    cfg.set_real("scenario.jump_intensity_per_day", 3);
    cfg.set_real("scenario.sigma_per_minute", 5e-4);
    cfg.set_real("scenario.jump_size_sigma", 10);
    cfg.set_int("scenario.signal_lead_seconds", 120);
    cfg.set_int("split.test_days", 2);
    cfg.set_int("train.max_epochs", 8);
    cfg.set_int("train.patience", 3);
    cfg.set_int("train.batch_size", 64);
    cfg.set("train.architectures", "cnn_lstm_attention");
    if (scenario == "demo") {
        cfg.set_real("scenario.withdraw_fraction", 0.8);
    } else if (scenario == "flat") {
        cfg.set_real("scenario.withdraw_fraction", 0.0);
    } else {
        fail(Errc::BadConfig, "unknown scenario profile: " + scenario);
    }
    return cfg;
}

StageResult run_synth(const Config& cfg) {
    StageResult result{"synth", {}};
    fs::create_directories(out_dir(cfg));
    for (int i = 0; i < instruments(cfg); ++i) {
        auto sc = scenario_config(cfg, i);
        synth::generate_scenario(sc, events_path(cfg, i), truth_path(cfg, i));
        result.outputs.push_back(events_path(cfg, i));
        result.outputs.push_back(truth_path(cfg, i));
    }
    write_manifest(cfg, result);
    return result;
}

StageResult run_replay(const Config& cfg) {
    StageResult result{"replay", {}};
    const int64_t total = cfg.get_int("scenario.days", 10) * cfg.get_int("scenario.seconds_per_day", 23400);
    for (int i = 0; i < instruments(cfg); ++i) {
        lob::EventReader reader(events_path(cfg, i));
        lob::SnapshotWriter writer(snapshots_path(cfg, i));
        lob::Replayer rp(total);
        auto sink = [&](const lob::BookSnapshot& s) { writer.write(s); };
        lob::OrderEvent ev;
        while (reader.next(ev)) rp.feed(ev, sink);
        rp.finish(sink);
        writer.close();
        result.outputs.push_back(snapshots_path(cfg, i));
    }
    write_manifest(cfg, result);
    return result;
}

StageResult run_detect(const Config& cfg) {
    StageResult result{"detect", {}};
    const int64_t total = cfg.get_int("scenario.days", 10) * cfg.get_int("scenario.seconds_per_day", 23400);
    for (int i = 0; i < instruments(cfg); ++i) {
        jump::PriceSeries series{sample_mid_series(snapshots_path(cfg, i), total)};
        auto labels = jump::detect_jumps(series, detector_config(cfg));
        jump::write_labels(labels_path(cfg, i), labels);
        result.outputs.push_back(labels_path(cfg, i));
    }
    write_manifest(cfg, result);
    return result;
}

StageResult run_features(const Config& cfg) {
    StageResult result{"features", {}};
    const int64_t total = cfg.get_int("scenario.days", 10) * cfg.get_int("scenario.seconds_per_day", 23400);
    for (int i = 0; i < instruments(cfg); ++i) {
        lob::EventReader events(events_path(cfg, i));
        lob::SnapshotReader snaps(snapshots_path(cfg, i));
        feat::FeatureWriter writer(features_path(cfg, i), uint32_t(total));
        feat::FrameAssembler assembler(feature_config(cfg));
        lob::OrderEvent ev;
        bool have_ev = events.next(ev);
        lob::BookSnapshot snap;
        while (snaps.next(snap)) {
            while (have_ev) {
                int64_t bucket = (ev.timestamp_ns + kNs - 1) / kNs;
                if (bucket > int64_t(snap.second)) break;
                assembler.add_event(bucket, ev.side, ev.action);
                have_ev = events.next(ev);
            }
            writer.write(assembler.push_snapshot(snap));
        }
        writer.close();
        result.outputs.push_back(features_path(cfg, i));
    }
    write_manifest(cfg, result);
    return result;
}

StageResult run_dataset(const Config& cfg) {
    StageResult result{"dataset", {}};
    auto dc = dataset_config(cfg);
    for (int i = 0; i < instruments(cfg); ++i) {
        auto labels = jump::read_labels(labels_path(cfg, i));
        data::WindowBuilder builder(labels, dc, uint32_t(i));

        // the sample count is known exactly before streaming
        int64_t expected = 0;
        int dups = builder.duplicates_per_positive();
        for (const auto& lab : labels) {
            if (!lab.detectable || lab.minute_index < data::kWindowSteps) continue;
            if (lab.is_jump)
                expected += dc.target_positive_share > 0.0 ? 1 + dups : 1 + int64_t(dc.duplicate_shifts.size());
            else
                expected += 1;
        }

        feat::FeatureReader frames(features_path(cfg, i));
        data::DatasetWriter writer(dataset_path(cfg, i), uint32_t(expected), uint32_t(dc.n_features),
                                   uint8_t(dc.n_classes));
        feat::FeatureFrame frame;
        while (frames.next(frame))
            for (const auto& s : builder.push_frame(frame)) writer.write(s);
        writer.close();
        result.outputs.push_back(dataset_path(cfg, i));
    }
    write_manifest(cfg, result);
    return result;
}

StageResult run_train(const Config& cfg) {
    StageResult result{"train", {}};
    auto plan = split_plan(cfg);
    auto tc = train_config(cfg);
    for (int i = 0; i < instruments(cfg); ++i) {
        auto samples = data::read_dataset(dataset_path(cfg, i));
        data::DatasetHeader header;
        {
            data::DatasetReader r(dataset_path(cfg, i));
            header = r.header();
        }
        for (size_t entry = 0; entry < plan.entries.size(); ++entry) {
            auto splits = data::split(samples, plan, entry);
            if (splits.train.empty() || splits.test.empty())
                fail(Errc::MissingCell, "split entry " + std::to_string(entry + 1) + " has no data");
            for (const auto& arch : architectures(cfg)) {
                model::ModelSpec spec = model::build_architecture(arch, int(header.features),
                                                                  int(header.steps));
                if (header.n_classes == 3) spec = model::three_class_variant(spec);
                model::Network net = model::Network::build(spec, tc.seed);
                model::train(net, samples, splits.train, splits.validation, tc);
                std::string ckpt = checkpoint_path(cfg, arch, int(entry + 1), i);
                model::save_checkpoint(ckpt, net);
                spec.save(model_spec_path(cfg, arch, int(entry + 1), i));
                result.outputs.push_back(ckpt);
                result.outputs.push_back(model_spec_path(cfg, arch, int(entry + 1), i));
            }
        }
    }
    write_manifest(cfg, result);
    return result;
}

StageResult run_eval(const Config& cfg) {
    StageResult result{"eval", {}};
    auto plan = split_plan(cfg);
    eval::ReportGrid grid;
    for (int i = 0; i < instruments(cfg); ++i) {
        auto samples = data::read_dataset(dataset_path(cfg, i));
        data::DatasetHeader header;
        {
            data::DatasetReader r(dataset_path(cfg, i));
            header = r.header();
        }
        for (size_t entry = 0; entry < plan.entries.size(); ++entry) {
            auto splits = data::split(samples, plan, entry);
            std::vector<int> labels;
            labels.reserve(splits.test.size());
            for (size_t k : splits.test) labels.push_back(samples[k].label != 0 ? 1 : 0);
            for (const auto& arch : architectures(cfg)) {
                model::ModelSpec spec = model::ModelSpec::load(model_spec_path(cfg, arch, int(entry + 1), i));
                model::Network net = model::Network::build(spec, 0);
                model::load_checkpoint(checkpoint_path(cfg, arch, int(entry + 1), i), net);
                std::vector<int> preds;
                preds.reserve(splits.test.size());
                for (size_t k : splits.test) {
                    const auto& s = samples[k];
                    auto probs = net.predict_probs(s.matrix.data(), int(header.steps), int(header.features));
                    if (net.n_outputs() == 1) {
                        preds.push_back(model::Network::classify(probs[0]));
                    } else {
                        int argmax = int(std::max_element(probs.begin(), probs.end()) - probs.begin());
                        preds.push_back(argmax != 0 ? 1 : 0);
                    }
                }
                grid.add_cell(int(entry + 1), stock_name(cfg, i), arch,
                              eval::evaluate(eval::confusion(preds, labels)));
            }
            grid.add_cell(int(entry + 1), stock_name(cfg, i), "random",
                          eval::random_baseline(labels, run_seed(cfg),
                                                int(cfg.get_int("eval.random_trials", 1000))));
        }
    }
    std::string csv = out_dir(cfg) + "/report.csv";
    std::string table = out_dir(cfg) + "/report.txt";
    grid.save_csv(csv);
    auto models = architectures(cfg);
    models.push_back("random");
    grid.save_table(table, models);
    result.outputs.push_back(csv);
    result.outputs.push_back(table);
    write_manifest(cfg, result);
    return result;
}

StageResult run_attention(const Config& cfg) {
    StageResult result{"attention", {}};
    auto plan = split_plan(cfg);
    for (int i = 0; i < instruments(cfg); ++i) {
        bool found = false;
        for (const auto& arch : architectures(cfg)) {
            if (arch != "cnn_lstm_attention") continue;
            found = true;
            auto samples = data::read_dataset(dataset_path(cfg, i));
            data::DatasetHeader header;
            {
                data::DatasetReader r(dataset_path(cfg, i));
                header = r.header();
            }
            size_t entry = plan.entries.size() - 1;
            auto splits = data::split(samples, plan, entry);
            model::ModelSpec spec = model::ModelSpec::load(model_spec_path(cfg, arch, int(entry + 1), i));
            model::Network net = model::Network::build(spec, 0);
            model::load_checkpoint(checkpoint_path(cfg, arch, int(entry + 1), i), net);
            std::vector<double> mean_alpha(size_t(header.features), 0.0);
            int64_t n = 0;
            for (size_t k : splits.test) {
                net.predict_probs(samples[k].matrix.data(), int(header.steps), int(header.features));
                const auto& alpha = net.attention_weights();
                for (size_t f = 0; f < alpha.size(); ++f) mean_alpha[f] += alpha[f];
                ++n;
            }
            if (n == 0) fail(Errc::MissingCell, "no test samples for the attention report");
            for (auto& a : mean_alpha) a /= double(n);
            std::string path = out_dir(cfg) + "/attention_" + stock_name(cfg, i) + ".csv";
            FILE* f = std::fopen(path.c_str(), "w");
            if (!f) fail(Errc::BadFile, "cannot open for writing: " + path);
            std::fprintf(f, "slot,name,mean_alpha\n");
            const auto& names = feat::slot_names();
            for (size_t k = 0; k < mean_alpha.size(); ++k)
                std::fprintf(f, "%zu,%s,%.10g\n", k, k < names.size() ? names[k].c_str() : "?", mean_alpha[k]);
            std::fclose(f);
            result.outputs.push_back(path);
        }
        if (!found) fail(Errc::UnsupportedArchitecture, "attention report needs cnn_lstm_attention in train.architectures");
    }
    write_manifest(cfg, result);
    return result;
}

std::vector<StageResult> run_pipeline(const Config& cfg) {
    std::vector<StageResult> results;
    for (const char* stage : {"synth", "replay", "detect", "features", "dataset", "train", "eval", "attention"})
        results.push_back(run_stage(stage, cfg));
    return results;
}

StageResult run_stage(const std::string& name, const Config& cfg) {
    StageResult (*fn)(const Config&) = nullptr;
    if (name == "synth")
        fn = run_synth;
    else if (name == "replay")
        fn = run_replay;
    else if (name == "detect")
        fn = run_detect;
    else if (name == "features")
        fn = run_features;
    else if (name == "dataset")
        fn = run_dataset;
    else if (name == "train")
        fn = run_train;
    else if (name == "eval")
        fn = run_eval;
    else if (name == "attention")
        fn = run_attention;
    else
        fail(Errc::BadConfig, "unknown stage: " + name);

    // predictable cleanup: remove this stage's outputs if it throws midway
    try {
        return fn(cfg);
    } catch (...) {
        std::vector<std::string> candidates;
        for (int i = 0; i < instruments(cfg); ++i) {
            if (name == "synth") {
                candidates.push_back(events_path(cfg, i));
                candidates.push_back(truth_path(cfg, i));
            } else if (name == "replay") {
                candidates.push_back(snapshots_path(cfg, i));
            } else if (name == "detect") {
                candidates.push_back(labels_path(cfg, i));
            } else if (name == "features") {
                candidates.push_back(features_path(cfg, i));
            } else if (name == "dataset") {
                candidates.push_back(dataset_path(cfg, i));
            }
        }
        for (const auto& path : candidates) {
            std::error_code ec;
            fs::remove(path, ec);
        }
        throw;
    }
}

} // namespace jumpcast::pipeline
