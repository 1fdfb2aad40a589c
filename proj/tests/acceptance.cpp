// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Heavy scenario artifacts are generated once and shared.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "jumpcast/common/binio.hpp"

#include "jumpcast/common/config.hpp"
#include "jumpcast/common/error.hpp"
#include "jumpcast/common/rng.hpp"
#include "jumpcast/data/dataset.hpp"
#include "jumpcast/data/dataset_io.hpp"
#include "jumpcast/data/split.hpp"
#include "jumpcast/eval/metrics.hpp"
#include "jumpcast/feat/feature_io.hpp"
#include "jumpcast/jump/detector.hpp"
#include "jumpcast/lob/replay.hpp"
#include "jumpcast/model/builders.hpp"
#include "jumpcast/model/train.hpp"
#include "jumpcast/nn/attention.hpp"
#include "jumpcast/nn/gradcheck.hpp"
#include "jumpcast/nn/layers.hpp"
#include "jumpcast/nn/loss.hpp"
#include "jumpcast/nn/lstm.hpp"
#include "jumpcast/pipeline/pipeline.hpp"
#include "jumpcast/synth/scenario.hpp"
#include "support/naive_book.hpp"

using namespace jumpcast;
namespace fs = std::filesystem;

namespace {

struct CriterionResult {
    int id;
    bool pass;
    std::string detail;
};

std::vector<CriterionResult> g_results;

void report(int id, bool pass, const std::string& detail) {
    g_results.push_back({id, pass, detail});
    std::printf("criterion %d: %s - %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

double now_seconds() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

double binomial_cdf(int k, int n, double p) {
    double sum = 0.0;
    for (int i = 0; i <= k; ++i) {
        double logc = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0);
        sum += std::exp(logc + i * std::log(p) + (n - i) * std::log1p(-p));
    }
    return sum;
}

bool files_identical(const std::string& a, const std::string& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    if (!fa || !fb) return false;
    std::istreambuf_iterator<char> ia(fa), ib(fb), end;
    while (ia != end && ib != end) {
        if (*ia != *ib) return false;
        ++ia;
        ++ib;
    }
    return ia == end && ib == end;
}

// ---------------------------------------------------------------------------
// criterion 1: incremental book vs from-scratch rebuild
void criterion_1() {
    double t0 = now_seconds();
    const int runs = 20;
    const size_t n_events = 100000;
    const int64_t session = 200;
    int64_t checked = 0;
    for (uint64_t seed = 1; seed <= runs; ++seed) {
        Rng rng(seed * 7919);
        auto events = testsupport::random_events(rng, n_events, session * 1'000'000'000);
        auto snaps = lob::replay(events, session);
        size_t e = 0;
        for (const auto& s : snaps) {
            while (e < events.size() && events[e].timestamp_ns <= int64_t(s.second) * 1'000'000'000) ++e;
            lob::BookSnapshot want = testsupport::naive_snapshot(events, e, s.second);
            if (!(s == want)) {
                report(1, false, fmt("mismatch at run %llu second %u", (unsigned long long)seed, s.second));
                return;
            }
            ++checked;
        }
    }
    double dt = now_seconds() - t0;
    report(1, dt < 60.0,
           fmt("%d runs x %zu events, %lld boundary snapshots equal, %.1f s", runs, n_events,
               (long long)checked, dt));
}

// ---------------------------------------------------------------------------
// criterion 2: finite-difference gradient suite
double proj_dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double layer_grad_error(nn::Layer& layer, nn::Tensor x, uint64_t seed) {
    Rng rng(seed);
    nn::Tensor y;
    layer.forward(x, y, false, nullptr);
    std::vector<double> proj(y.v.size());
    for (auto& p : proj) p = rng.normal();
    layer.zero_grad();
    layer.forward(x, y, false, nullptr);
    nn::Tensor dy = y;
    dy.v = proj;
    nn::Tensor dx;
    layer.backward(dy, dx);
    auto loss = [&]() {
        nn::Tensor out;
        layer.forward(x, out, false, nullptr);
        return proj_dot(out.v, proj);
    };
    double worst = 0.0;
    for (auto& p : layer.params())
        worst = std::max(worst, nn::gradcheck_max_rel_error(loss, std::span<double>(p.value->v),
                                                            std::span<const double>(p.grad->v)));
    worst = std::max(worst, nn::gradcheck_max_rel_error(loss, std::span<double>(x.v),
                                                        std::span<const double>(dx.v)));
    return worst;
}

nn::Tensor rand_tensor(std::vector<int> shape, Rng& rng, double scale = 1.0) {
    nn::Tensor t(std::move(shape));
    for (auto& v : t.v) v = scale * rng.normal();
    return t;
}

void criterion_2() {
    double t0 = now_seconds();
    Rng rng(505);
    double worst_layer = 0.0;
    std::string worst_name = "none";
    auto track = [&](const char* name, double err) {
        if (err > worst_layer) {
            worst_layer = err;
            worst_name = name;
        }
    };

    {
        nn::Dense d(7, 5, nn::Act::Tanh);
        d.init(rng);
        track("dense", layer_grad_error(d, rand_tensor({7}, rng), 1));
    }
    {
        nn::Conv1d c(3, 4, 2, nn::Act::LeakyReLU);
        c.init(rng);
        track("conv1d", layer_grad_error(c, rand_tensor({6, 3}, rng), 2));
    }
    {
        nn::Conv2d c(2, 3, 2, nn::Act::LeakyReLU);
        c.init(rng);
        track("conv2d", layer_grad_error(c, rand_tensor({5, 4}, rng), 3));
    }
    {
        nn::MaxPool1d p(2);
        // gaps well above the finite-difference step keep argmax stable
        nn::Tensor x({6, 2});
        for (size_t i = 0; i < x.v.size(); ++i) x.v[i] = double((i * 7) % 12) * 0.1 + 0.01 * double(i);
        track("maxpool", layer_grad_error(p, x, 4));
    }
    {
        nn::Lstm l(4, 3);
        l.init(rng);
        track("lstm_bptt", layer_grad_error(l, rand_tensor({5, 4}, rng, 0.7), 5));
    }
    {
        nn::FeatureAttention a(5);
        a.init(rng);
        track("feature_attention", layer_grad_error(a, rand_tensor({5, 6}, rng), 6));
    }
    {
        // losses against central differences
        double worst = 0;
        for (double y : {0.0, 1.0})
            for (double z : {-1.7, 0.0, 2.1}) {
                double eps = 1e-5;
                double numeric =
                    (nn::sigmoid_bce_head(z + eps, y, 1.0).loss - nn::sigmoid_bce_head(z - eps, y, 1.0).loss) /
                    (2 * eps);
                double analytic = nn::sigmoid_bce_head(z, y, 1.0).dlogits[0];
                worst = std::max(worst, std::fabs(analytic - numeric) / std::max(1.0, std::fabs(analytic)));
            }
        std::vector<double> logits{0.4, -0.9, 1.3};
        auto head = nn::softmax_ce_head(logits, 1, 1.0);
        for (size_t i = 0; i < logits.size(); ++i) {
            double eps = 1e-5;
            auto up = logits, dn = logits;
            up[i] += eps;
            dn[i] -= eps;
            double numeric =
                (nn::softmax_ce_head(up, 1, 1.0).loss - nn::softmax_ce_head(dn, 1, 1.0).loss) / (2 * eps);
            worst = std::max(worst, std::fabs(head.dlogits[i] - numeric) / std::max(1.0, std::fabs(head.dlogits[i])));
        }
        track("losses", worst);
    }

    // tiny full architectures through the training head
    double worst_model = 0.0;
    std::string worst_model_name = "none";
    for (const char* arch : {"mlp", "cnn", "lstm", "cnn_lstm_attention", "cnn_lstm_v10"}) {
        model::ModelSpec spec;
        const int T = 8, F = 5;
        if (std::string(arch) == "mlp") {
            spec = model::build_mlp(F, T);
        } else if (std::string(arch) == "lstm") {
            spec = model::build_lstm(F, T);
            spec.layers[0].set_int("units", 3);
            spec.layers[1].set_int("in", 3);
            spec.layers[1].set_int("out", 3);
            spec.layers[2].set_int("in", 3);
        } else {
            // conv/attention stacks assembled at toy sizes
            spec.architecture = arch;
            spec.steps = T;
            spec.features = F;
            if (std::string(arch) == "cnn") {
                model::LayerSpec c2;
                c2.type = "conv2d";
                c2.set_int("kernel_h", 2);
                c2.set_int("kernel_w", F);
                c2.set_int("filters", 2);
                spec.layers.push_back(c2);
                model::LayerSpec sq;
                sq.type = "squeeze";
                spec.layers.push_back(sq);
                model::LayerSpec c1;
                c1.type = "conv1d";
                c1.set_int("in", 2);
                c1.set_int("filters", 2);
                c1.set_int("kernel", 2);
                spec.layers.push_back(c1);
                model::LayerSpec mp;
                mp.type = "maxpool";
                mp.set_int("size", 2);
                spec.layers.push_back(mp);
                model::LayerSpec fl;
                fl.type = "flatten";
                spec.layers.push_back(fl);
                model::LayerSpec d1;
                d1.type = "dense";
                d1.set_int("in", 6);
                d1.set_int("out", 4);
                d1.set_str("activation", "leaky_relu");
                spec.layers.push_back(d1);
                model::LayerSpec d2;
                d2.type = "dense";
                d2.set_int("in", 4);
                d2.set_int("out", 1);
                d2.set_str("activation", "identity");
                spec.layers.push_back(d2);
            } else {
                bool v10 = std::string(arch) == "cnn_lstm_v10";
                spec.features = v10 ? 1 : F;
                if (v10) spec.input_columns = {F - 1};
                model::LayerSpec att;
                att.type = "feature_attention";
                att.set_int("steps", T);
                spec.layers.push_back(att);
                model::LayerSpec c1;
                c1.type = "conv1d";
                c1.set_int("in", spec.features);
                c1.set_int("filters", 2);
                c1.set_int("kernel", 3);
                spec.layers.push_back(c1);
                model::LayerSpec mp;
                mp.type = "maxpool";
                mp.set_int("size", 2);
                spec.layers.push_back(mp);
                model::LayerSpec l;
                l.type = "lstm";
                l.set_int("in", 2);
                l.set_int("units", 3);
                l.set_str("hidden_activation", "tanh");
                spec.layers.push_back(l);
                model::LayerSpec d1;
                d1.type = "dense";
                d1.set_int("in", 3);
                d1.set_int("out", 3);
                d1.set_str("activation", "leaky_relu");
                spec.layers.push_back(d1);
                model::LayerSpec d2;
                d2.type = "dense";
                d2.set_int("in", 3);
                d2.set_int("out", 1);
                d2.set_str("activation", "identity");
                spec.layers.push_back(d2);
            }
        }
        model::Network net = model::Network::build(spec, 4242);
        Rng srng(fnv1a(arch));
        std::vector<float> sample(size_t(T) * F);
        for (auto& v : sample) v = float(srng.normal());
        auto loss = [&]() {
            auto z = net.logits(sample.data(), T, F, false, nullptr);
            return nn::sigmoid_bce_head(z[0], 1.0, 1.0).loss;
        };
        net.zero_grads();
        auto z = net.logits(sample.data(), T, F, false, nullptr);
        net.backward(nn::sigmoid_bce_head(z[0], 1.0, 1.0).dlogits);
        double worst = 0.0;
        for (auto& p : net.params())
            worst = std::max(worst, nn::gradcheck_max_rel_error(loss, std::span<double>(p.value->v),
                                                                std::span<const double>(p.grad->v)));
        if (worst > worst_model) {
            worst_model = worst;
            worst_model_name = arch;
        }
    }

    double dt = now_seconds() - t0;
    bool pass = worst_layer < 1e-5 && worst_model < 1e-4 && dt < 300.0;
    report(2, pass,
           fmt("worst layer %.2e (%s), worst model %.2e (%s), %.1f s", worst_layer, worst_name.c_str(),
               worst_model, worst_model_name.c_str(), dt));
}

// ---------------------------------------------------------------------------
// criterion 3: detector calibration on GBM
void criterion_3() {
    double t0 = now_seconds();
    jump::DetectorConfig cfg;  // K = 600, alpha = 0.01, n = 390

    Rng rng(99821);
    const int days = 100;
    std::vector<double> prices;
    prices.reserve(size_t(days) * 390);
    double logp = std::log(100.0);
    for (int i = 0; i < days * 390; ++i) {
        logp += 5e-4 * rng.normal();
        prices.push_back(std::exp(logp));
    }
    auto labels = jump::detect_jumps(jump::PriceSeries{prices}, cfg);
    std::vector<bool> day_hit(days, false);
    for (const auto& lab : labels)
        if (lab.is_jump) day_hit[size_t(lab.minute_index / 390)] = true;
    int fp_days = 0;
    for (bool h : day_hit) fp_days += h ? 1 : 0;
    // central 99% interval of Bin(100, alpha)
    int lo = 0;
    while (lo < days && binomial_cdf(lo, days, cfg.alpha) <= 0.005) ++lo;
    int hi = 0;
    while (hi < days && binomial_cdf(hi, days, cfg.alpha) < 0.995) ++hi;
    bool fp_ok = fp_days >= lo && fp_days <= hi;

    // planted ten-local-sigma jumps on fresh paths
    synth::ScenarioConfig sc;
    sc.days = 40;
    sc.jump_intensity_per_day = 3;
    sc.jump_size_sigma = 10;
    sc.seed = 314159;
    auto path = synth::gen_price_path(sc);
    auto planted_labels = jump::detect_jumps(jump::PriceSeries{path.minute_marks()}, cfg);
    int recalled = 0, direction_ok = 0;
    for (const auto& truth : path.jumps) {
        const auto& lab = planted_labels[size_t(truth.minute_index)];
        if (lab.is_jump) {
            ++recalled;
            if ((truth.direction > 0) == (lab.direction == jump::Direction::Up)) ++direction_ok;
        }
    }
    double recall = double(recalled) / double(path.jumps.size());
    bool recall_ok = recall >= 0.95;
    bool dir_ok = direction_ok == recalled;
    double dt = now_seconds() - t0;
    report(3, fp_ok && recall_ok && dir_ok && dt < 300.0,
           fmt("fp days %d in [%d,%d], recall %.3f (%d/%zu), direction %d/%d, %.1f s", fp_days, lo, hi, recall,
               recalled, path.jumps.size(), direction_ok, recalled, dt));
}

// ---------------------------------------------------------------------------
// criterion 4: metric arithmetic against the published table
void criterion_4() {
    struct Row {
        double p, r, f1;
    };
    // precision/recall pairs and the published f1 column
    std::vector<Row> rows{{0.66, 0.80, 0.72}, {0.73, 0.66, 0.69}, {0.66, 0.66, 0.66},
                          {0.78, 0.41, 0.53}, {0.24, 0.50, 0.32}};
    bool all_ok = true;
    std::string detail;
    for (const auto& row : rows) {
        double f1 = 2.0 * row.p * row.r / (row.p + row.r);
        bool ok = std::fabs(f1 - row.f1) <= 0.005;
        all_ok = all_ok && ok;
        detail += fmt("(%.2f,%.2f)->%.4f vs %.2f%s ", row.p, row.r, f1, row.f1, ok ? "" : "!");
    }

    Rng rng(606);
    std::vector<int> labels(100000);
    for (auto& l : labels) l = rng.bernoulli(0.24) ? 1 : 0;
    auto baseline = eval::random_baseline(labels, 909, 1000);
    bool base_ok = std::fabs(baseline.precision - 0.24) <= 0.01 && std::fabs(baseline.recall - 0.50) <= 0.01 &&
                   std::fabs(baseline.kappa) <= 0.02;
    detail += fmt("| random p=%.3f r=%.3f k=%.4f", baseline.precision, baseline.recall, baseline.kappa);
    report(4, all_ok && base_ok, detail);
}

// ---------------------------------------------------------------------------
// shared scenario artifacts for criteria 5-7
struct ScenarioArtifacts {
    Config cfg;
    std::vector<data::Sample> samples;
    data::SplitPlan plan;
    data::SplitResult split;
    std::vector<int> test_labels;
};

Config scenario_config(const std::string& dir, double fraction, bool symmetric, int days, int n_classes,
                       uint64_t seed) {
    Config cfg;
    cfg.set("paths.out_dir", dir);
    cfg.set_int("run.seed", int64_t(seed));
    cfg.set_int("scenario.days", days);
    cfg.set_real("scenario.orders_per_minute", 240);
    cfg.set_real("scenario.trades_per_minute", 30);
    cfg.set_real("scenario.cancels_per_minute", 210);
    cfg.set_real("scenario.jump_intensity_per_day", 3);
    cfg.set_real("scenario.withdraw_fraction", fraction);
    cfg.set_int("scenario.signal_lead_seconds", 120);
    cfg.set(("scenario.symmetric_signal"), symmetric ? "true" : "false");
    cfg.set_int("split.test_days", 10);
    cfg.set_int("dataset.n_classes", n_classes);
    return cfg;
}

ScenarioArtifacts build_scenario(const Config& cfg) {
    ScenarioArtifacts art;
    art.cfg = cfg;
    fs::create_directories(pipeline::out_dir(cfg));
    pipeline::run_stage("synth", cfg);
    pipeline::run_stage("replay", cfg);
    pipeline::run_stage("detect", cfg);
    pipeline::run_stage("features", cfg);
    pipeline::run_stage("dataset", cfg);
    art.samples = data::read_dataset(pipeline::dataset_path(cfg, 0));
    int labeled = int(cfg.get_int("scenario.days", 10)) - 2;
    art.plan = data::SplitPlan::single(labeled, int(cfg.get_int("split.test_days", 10)));
    art.plan.seed = uint64_t(cfg.get_int("run.seed", 1));
    art.split = data::split(art.samples, art.plan, 0);
    for (size_t k : art.split.test) art.test_labels.push_back(art.samples[k].label != 0 ? 1 : 0);
    return art;
}

model::TrainConfig accept_train_config(uint64_t seed) {
    model::TrainConfig tc;
    tc.max_epochs = 20;
    tc.patience = 5;
    tc.batch_size = 64;
    tc.learning_rate = 1e-3;
    tc.seed = seed;
    tc.workers = 2;
    return tc;
}

double test_f1(model::Network& net, const ScenarioArtifacts& art) {
    std::vector<int> preds;
    preds.reserve(art.split.test.size());
    const int steps = net.spec().steps;
    for (size_t k : art.split.test) {
        const auto& s = art.samples[k];
        const int fdim = int(s.matrix.size()) / steps;
        preds.push_back(model::Network::classify(net.predict(s.matrix.data(), steps, fdim)));
    }
    return eval::evaluate(eval::confusion(preds, art.test_labels)).f1;
}

double train_arch_f1(const std::string& arch, const ScenarioArtifacts& art, uint64_t seed) {
    model::ModelSpec spec = model::build_architecture(arch, feat::kNumSlots, data::kWindowSteps);
    model::Network net = model::Network::build(spec, seed);
    model::train(net, art.samples, art.split.train, art.split.validation, accept_train_config(seed));
    return test_f1(net, art);
}

void criteria_5_6_7(const std::string& workdir) {
    // --- signalled scenario, built once for criteria 5, 6 and 7
    double t0 = now_seconds();
    Config cfg_signal = scenario_config(workdir + "/signal", 0.8, false, 60, 2, 11);
    ScenarioArtifacts sig = build_scenario(cfg_signal);
    double t_build = now_seconds() - t0;

    // criterion 7 first: dataset invariants on the generated samples
    {
        bool leakage_ok = true;
        int64_t pos = 0;
        for (const auto& s : sig.samples) {
            if (!(s.end_second <= 60 * s.end_minute && s.end_second >= 60 * s.end_minute - 59)) leakage_ok = false;
            if (s.label) ++pos;
        }
        double share = double(pos) / double(sig.samples.size());
        bool share_ok = std::fabs(share - 0.25) <= 0.03;

        // re-run the builder with the double-precision verifier and compare
        // the stored float32 matrices bit for bit
        auto labels = jump::read_labels(pipeline::labels_path(cfg_signal, 0));
        data::DatasetConfig dc;
        dc.seed = 11;
        data::WindowBuilder builder(labels, dc, 0);
        double worst_mean = 0.0, worst_sd = 0.0;
        int64_t degenerate_cols = 0, rebuilt = 0;
        bool bytes_ok = true;
        size_t cursor = 0;
        builder.set_verifier([&](const std::vector<double>& z, const data::Sample& s) {
            const int rows = data::kWindowSteps, cols = dc.n_features;
            for (int c = 0; c < cols; ++c) {
                double mean = 0, ss = 0;
                for (int r = 0; r < rows; ++r) mean += z[size_t(r) * cols + c];
                mean /= rows;
                for (int r = 0; r < rows; ++r) {
                    double d = z[size_t(r) * cols + c] - mean;
                    ss += d * d;
                }
                if (ss == 0.0) {
                    ++degenerate_cols;
                    continue;
                }
                double sd = std::sqrt(ss / (rows - 1));
                worst_mean = std::max(worst_mean, std::fabs(mean));
                worst_sd = std::max(worst_sd, std::fabs(sd - 1.0));
            }
            if (cursor < sig.samples.size()) {
                if (sig.samples[cursor].matrix != s.matrix) bytes_ok = false;
            } else {
                bytes_ok = false;
            }
            ++cursor;
            ++rebuilt;
        });
        feat::FeatureReader frames(pipeline::features_path(cfg_signal, 0));
        feat::FeatureFrame frame;
        while (frames.next(frame)) builder.push_frame(frame);
        bool rebuild_ok = bytes_ok && cursor == sig.samples.size();
        bool stats_ok = worst_mean < 1e-9 && worst_sd < 1e-6;

        // duplicated positives stay on one side of the train/validation line
        std::set<int64_t> train_bases, val_bases;
        for (size_t k : sig.split.train) train_bases.insert(sig.samples[k].end_minute);
        for (size_t k : sig.split.validation) val_bases.insert(sig.samples[k].end_minute);
        bool colocated = true;
        for (int64_t m : val_bases)
            if (train_bases.count(m)) colocated = false;

        report(7, leakage_ok && share_ok && stats_ok && rebuild_ok && colocated,
               fmt("leakage %s, share %.3f, |mean|max %.1e, |sd-1|max %.1e, rebuilt %lld samples %s, co-located %s",
                   leakage_ok ? "0" : "violations", share, worst_mean, worst_sd, (long long)rebuilt,
                   rebuild_ok ? "bit-equal" : "MISMATCH", colocated ? "yes" : "NO"));
    }

    // --- criterion 5: separability with and without the signal
    double f1_signal_seed1 = 0.0;
    {
        double t1 = now_seconds();
        f1_signal_seed1 = train_arch_f1("cnn_lstm_attention", sig, 11);
        auto baseline = eval::random_baseline(sig.test_labels, 11, 1000);
        double t_total = (now_seconds() - t1) + t_build;

        Config cfg_flat = scenario_config(workdir + "/flat", 0.0, false, 60, 2, 11);
        ScenarioArtifacts flat = build_scenario(cfg_flat);
        double f1_flat = train_arch_f1("cnn_lstm_attention", flat, 11);
        auto baseline_flat = eval::random_baseline(flat.test_labels, 11, 1000);

        bool sep_ok = f1_signal_seed1 >= 0.90;
        bool margin_ok = f1_signal_seed1 - baseline.f1 >= 0.30;
        bool flat_ok = std::fabs(f1_flat - baseline_flat.f1) <= 0.10;
        bool time_ok = t_total < 1800.0;
        report(5, sep_ok && margin_ok && flat_ok && time_ok,
               fmt("signal f1 %.3f vs random %.3f (margin %.3f), no-signal f1 %.3f vs random %.3f (|diff| %.3f), "
                   "scenario %.0f s",
                   f1_signal_seed1, baseline.f1, f1_signal_seed1 - baseline.f1, f1_flat, baseline_flat.f1,
                   std::fabs(f1_flat - baseline_flat.f1), t_total));
    }

    // --- criterion 6: v10 baseline strictly below the full model, 3 seeds
    {
        int wins = 0;
        std::string detail;
        for (uint64_t seed : {11ull, 12ull, 13ull}) {
            double full = seed == 11 ? f1_signal_seed1 : train_arch_f1("cnn_lstm_attention", sig, seed);
            double v10 = train_arch_f1("cnn_lstm_v10", sig, seed);
            if (full > v10) ++wins;
            detail += fmt("seed %llu: full %.3f vs v10 %.3f; ", (unsigned long long)seed, full, v10);
        }
        report(6, wins >= 2, detail + fmt("majority %d/3", wins));
    }
}

// ---------------------------------------------------------------------------
// criterion 8: byte-identical reruns of the CLI pipeline
void criterion_8(const std::string& workdir) {
    std::string cfg_path = workdir + "/det.ini";
    {
        std::ofstream os(cfg_path);
        os << "[paths]\nout_dir = " << workdir << "/detA\n";
        os << "[run]\nseed = 99\n";
        os << "[scenario]\ndays = 6\norders_per_minute = 120\ntrades_per_minute = 15\ncancels_per_minute = 100\n";
        os << "jump_intensity_per_day = 4\nwithdraw_fraction = 0.8\n";
        os << "[split]\ntest_days = 1\n";
        os << "[train]\nmax_epochs = 2\npatience = 2\nworkers = 2\n";
    }
    std::string cli = JUMPCAST_CLI_PATH;
    auto run = [&](const std::string& out) {
        std::string cmd = cli + " pipeline --config " + cfg_path + " --out-dir " + out + " > /dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    int rc1 = run(workdir + "/detA");
    int rc2 = run(workdir + "/detB");
    if (rc1 != 0 || rc2 != 0) {
        report(8, false, fmt("pipeline exits %d / %d", rc1, rc2));
        return;
    }
    bool ds = files_identical(workdir + "/detA/dataset_SYN0.bin", workdir + "/detB/dataset_SYN0.bin");
    bool ck = files_identical(workdir + "/detA/ckpt_cnn_lstm_attention_set1_SYN0.bin",
                              workdir + "/detB/ckpt_cnn_lstm_attention_set1_SYN0.bin");
    bool rp = files_identical(workdir + "/detA/report.csv", workdir + "/detB/report.csv");
    report(8, ds && ck && rp,
           fmt("dataset %s, checkpoint %s, report %s", ds ? "identical" : "DIFFER", ck ? "identical" : "DIFFER",
               rp ? "identical" : "DIFFER"));
}

// ---------------------------------------------------------------------------
// criterion 9: three-class direction variant on direction-symmetric data
void criterion_9(const std::string& workdir) {
    Config cfg = scenario_config(workdir + "/dir", 0.8, /*symmetric=*/true, 30, 3, 21);
    ScenarioArtifacts art = build_scenario(cfg);

    // direction discrimination among true jump samples: up against down
    std::vector<size_t> jump_test;
    std::vector<int> dir_labels;  // 1 = up
    for (size_t k : art.split.test) {
        if (art.samples[k].label == 0) continue;
        jump_test.push_back(k);
        dir_labels.push_back(art.samples[k].label == 1 ? 1 : 0);
    }
    if (jump_test.size() < 50) {
        report(9, false, fmt("only %zu jump test samples", jump_test.size()));
        return;
    }

    double sum_diff = 0.0;
    std::string detail;
    for (uint64_t seed : {21ull, 22ull, 23ull}) {
        model::ModelSpec spec =
            model::three_class_variant(model::build_cnn_lstm_attention(feat::kNumSlots, data::kWindowSteps));
        model::Network net = model::Network::build(spec, seed);
        model::train(net, art.samples, art.split.train, art.split.validation, accept_train_config(seed));
        std::vector<int> dir_preds;
        for (size_t k : jump_test) {
            const auto& s = art.samples[k];
            auto probs = net.predict_probs(s.matrix.data(), data::kWindowSteps,
                                           int(s.matrix.size()) / data::kWindowSteps);
            dir_preds.push_back(probs[1] >= probs[2] ? 1 : 0);
        }
        double f1 = eval::evaluate(eval::confusion(dir_preds, dir_labels)).f1;
        auto coin = eval::random_baseline(dir_labels, seed, 1000);
        sum_diff += f1 - coin.f1;
        detail += fmt("seed %llu: dir f1 %.3f vs coin %.3f; ", (unsigned long long)seed, f1, coin.f1);
    }
    double mean_diff = sum_diff / 3.0;
    report(9, std::fabs(mean_diff) <= 0.05, detail + fmt("mean diff %.3f", mean_diff));
}

} // namespace

int main() {
    std::string workdir = "acceptance_out";
    fs::create_directories(workdir);
    try {
        criterion_1();
        criterion_2();
        criterion_3();
        criterion_4();
        criteria_5_6_7(workdir);
        criterion_8(workdir);
        criterion_9(workdir);
    } catch (const std::exception& e) {
        std::printf("acceptance aborted: %s\n", e.what());
        return 2;
    }

    int failures = 0;
    for (const auto& r : g_results)
        if (!r.pass) ++failures;
    std::printf("acceptance: %zu criteria, %d failed\n", g_results.size(), failures);

    std::error_code ec;
    fs::remove_all(workdir, ec);  // scenario artifacts are multi-gigabyte
    return failures == 0 ? 0 : 1;
}
