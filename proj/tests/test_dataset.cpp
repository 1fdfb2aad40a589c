#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "jumpcast/common/error.hpp"
#include "jumpcast/data/dataset.hpp"
#include "jumpcast/data/dataset_io.hpp"
#include "jumpcast/data/split.hpp"

using namespace jumpcast;
using namespace jumpcast::data;

namespace {

// Labels for n_days of 390 minutes: detectable from day `skip`, jumps at the
// given minute indices.
std::vector<jump::JumpLabel> make_labels(int n_days, const std::set<int64_t>& jump_minutes, int skip = 2) {
    std::vector<jump::JumpLabel> labels(size_t(n_days) * 390);
    for (size_t i = 0; i < labels.size(); ++i) {
        auto& lab = labels[i];
        lab.minute_index = int64_t(i);
        lab.detectable = int64_t(i) >= int64_t(skip) * 390;
        lab.is_jump = lab.detectable && jump_minutes.count(int64_t(i)) > 0;
        lab.direction = lab.is_jump ? jump::Direction::Up : jump::Direction::None;
        lab.statistic = lab.detectable ? 0.0 : std::nan("");
    }
    return labels;
}

// Deterministic synthetic frame: distinct values per (second, slot).
feat::FeatureFrame frame_at(int64_t second, int n_features) {
    feat::FeatureFrame fr;
    fr.second = second;
    for (int c = 0; c < n_features; ++c)
        fr.v[size_t(c)] = std::sin(double(second) * 0.013 + c) + 0.01 * double(c);
    return fr;
}

std::vector<Sample> build(int n_days, const std::set<int64_t>& jumps, DatasetConfig cfg,
                          WindowBuilder::Verifier verifier = nullptr) {
    auto labels = make_labels(n_days, jumps);
    WindowBuilder wb(labels, cfg);
    if (verifier) wb.set_verifier(std::move(verifier));
    std::vector<Sample> out;
    for (int64_t s = 1; s <= int64_t(n_days) * 23400; ++s) {
        auto batch = wb.push_frame(frame_at(s, cfg.n_features));
        for (auto& smp : batch) out.push_back(std::move(smp));
    }
    return out;
}

DatasetConfig small_cfg() {
    DatasetConfig cfg;
    cfg.n_features = 6;
    cfg.seed = 5;
    return cfg;
}

} // namespace

TEST_CASE("znormalize basics") {
    std::vector<double> ramp(120);
    for (int i = 0; i < 120; ++i) ramp[size_t(i)] = double(i + 1);
    auto z = znormalize(ramp, 120, 1);
    double mean = 0, ss = 0;
    for (double v : z) mean += v;
    mean /= 120;
    for (double v : z) ss += (v - mean) * (v - mean);
    double sd = std::sqrt(ss / 119.0);
    CHECK(std::fabs(mean) < 1e-12);
    CHECK(std::fabs(sd - 1.0) < 1e-12);

    std::vector<double> flat(120, 42.0);
    for (double v : znormalize(flat, 120, 1)) CHECK(v == 0.0);
}

TEST_CASE("znormalize matches a two-pass oracle and is idempotent") {
    Rng rng(17);
    const int rows = 120, cols = 7;
    std::vector<double> m(size_t(rows) * cols);
    for (auto& v : m) v = rng.normal(3.0, 11.0);
    auto z = znormalize(m, rows, cols);
    for (int c = 0; c < cols; ++c) {
        double mean = 0;
        for (int r = 0; r < rows; ++r) mean += m[size_t(r) * cols + c];
        mean /= rows;
        double ss = 0;
        for (int r = 0; r < rows; ++r) {
            double d = m[size_t(r) * cols + c] - mean;
            ss += d * d;
        }
        double sd = std::sqrt(ss / (rows - 1));
        for (int r = 0; r < rows; ++r)
            CHECK(z[size_t(r) * cols + c] ==
                  doctest::Approx((m[size_t(r) * cols + c] - mean) / sd).epsilon(1e-12));
    }
    auto zz = znormalize(z, rows, cols);
    for (size_t i = 0; i < z.size(); ++i) CHECK(std::fabs(zz[i] - z[i]) < 1e-9);
}

TEST_CASE("one full labeled day yields 390 base samples") {
    DatasetConfig cfg = small_cfg();
    cfg.target_positive_share = 0;
    cfg.jitter_max_seconds = 0;
    auto samples = build(3, {}, cfg);
    REQUIRE(samples.size() == 390);  // day 2 only; days 0-1 are undetectable
    for (const auto& s : samples) {
        CHECK(s.day == 2);
        CHECK(s.label == 0);
        CHECK(s.shift_seconds == 0);
    }
}

TEST_CASE("windows never touch the labeled minute") {
    DatasetConfig cfg = small_cfg();
    auto samples = build(3, {800, 900}, cfg);
    for (const auto& s : samples) {
        CHECK(s.end_second <= 60 * s.end_minute);
        CHECK(s.end_second >= 60 * s.end_minute - 59);
        CHECK(s.end_second < 60 * s.end_minute + 1);  // labeled interval starts after end_second
    }
}

TEST_CASE("positives are duplicated with backward shifts") {
    DatasetConfig cfg = small_cfg();
    cfg.target_positive_share = 0;  // explicit shift list {5,10,15,20}
    cfg.jitter_max_seconds = 0;
    std::set<int64_t> jumps{850, 1000};
    auto samples = build(3, jumps, cfg);
    std::map<int64_t, std::vector<const Sample*>> by_minute;
    for (const auto& s : samples) by_minute[s.end_minute].push_back(&s);
    for (int64_t j : jumps) {
        auto& group = by_minute[j];
        REQUIRE(group.size() == 5);  // base + four shifted duplicates
        std::set<int32_t> shifts;
        for (const auto* s : group) {
            CHECK(s->label == 1);
            shifts.insert(s->shift_seconds);
        }
        CHECK(shifts == std::set<int32_t>{0, 5, 10, 15, 20});
        // shifted variants differ from the base bytewise
        for (const auto* s : group)
            if (s->shift_seconds != 0) CHECK(s->matrix != group[0]->matrix);
    }
    // negatives stay single
    CHECK(by_minute[900].size() == 1);
}

TEST_CASE("adaptive duplication hits the target positive share") {
    DatasetConfig cfg = small_cfg();
    cfg.target_positive_share = 0.25;
    std::set<int64_t> jumps;
    for (int64_t j = 790; j < 1170; j += 40) jumps.insert(j);  // ~10 jumps on day 2
    auto samples = build(4, jumps, cfg);
    int64_t pos = 0;
    for (const auto& s : samples) pos += s.label > 0 ? 1 : 0;
    double share = double(pos) / double(samples.size());
    CHECK(std::fabs(share - 0.25) < 0.03);
}

TEST_CASE("negative jitter preserves the count and the zero-jitter identity") {
    DatasetConfig cfg = small_cfg();
    cfg.jitter_max_seconds = 0;
    auto no_jitter = build(3, {}, cfg);
    for (const auto& s : no_jitter) CHECK(s.end_second == 60 * s.end_minute);

    cfg.jitter_max_seconds = 20;
    auto jittered = build(3, {}, cfg);
    CHECK(jittered.size() == no_jitter.size());
    bool any_shifted = false;
    for (const auto& s : jittered) {
        CHECK(s.shift_seconds >= 0);
        CHECK(s.shift_seconds <= 20);
        any_shifted |= s.shift_seconds > 0;
    }
    CHECK(any_shifted);
}

TEST_CASE("jitter next to a jump minute falls back to the base end") {
    DatasetConfig cfg = small_cfg();
    cfg.jitter_max_seconds = 20;
    auto samples = build(3, {901}, cfg);
    for (const auto& s : samples) {
        if (s.end_minute == 902) CHECK(s.shift_seconds == 0);  // previous interval jumped
    }
}

TEST_CASE("constant frames normalize to all-zero matrices") {
    DatasetConfig cfg = small_cfg();
    auto labels = make_labels(3, {});
    WindowBuilder wb(labels, cfg);
    std::vector<Sample> out;
    for (int64_t s = 1; s <= 3 * 23400; ++s) {
        feat::FeatureFrame fr;
        fr.second = s;
        for (int c = 0; c < cfg.n_features; ++c) fr.v[size_t(c)] = double(c) + 1.0;
        for (auto& smp : wb.push_frame(fr)) out.push_back(std::move(smp));
    }
    REQUIRE(!out.empty());
    for (const auto& s : out)
        for (float v : s.matrix) REQUIRE(v == 0.0f);
}

TEST_CASE("normalization invariants hold in double precision") {
    DatasetConfig cfg = small_cfg();
    int checked = 0;
    auto verifier = [&](const std::vector<double>& z, const Sample&) {
        const int rows = kWindowSteps, cols = cfg.n_features;
        for (int c = 0; c < cols; ++c) {
            double mean = 0, ss = 0;
            for (int r = 0; r < rows; ++r) mean += z[size_t(r) * cols + c];
            mean /= rows;
            for (int r = 0; r < rows; ++r) {
                double d = z[size_t(r) * cols + c] - mean;
                ss += d * d;
            }
            double sd = std::sqrt(ss / (rows - 1));
            bool degenerate = ss == 0.0;
            if (!degenerate) {
                REQUIRE(std::fabs(mean) < 1e-9);
                REQUIRE(std::fabs(sd - 1.0) < 1e-6);
            }
        }
        ++checked;
    };
    auto samples = build(3, {820}, cfg, verifier);
    CHECK(checked == int(samples.size()));
}

TEST_CASE("table-2 plan ranges") {
    auto plan = SplitPlan::table2();
    REQUIRE(plan.entries.size() == 7);
    CHECK(plan.entries[3].train_first == 1);
    CHECK(plan.entries[3].train_last == 200);
    CHECK(plan.entries[3].test_first == 201);
    CHECK(plan.entries[3].test_last == 210);
    CHECK(plan.entries[6].train_last == 350);
    CHECK(plan.entries[6].test_last == 360);
}

TEST_CASE("split keeps duplicates together and days disjoint") {
    DatasetConfig cfg = small_cfg();
    cfg.target_positive_share = 0.25;
    std::set<int64_t> jumps{800, 860, 1200, 1600, 2000, 2340};
    auto samples = build(9, jumps, cfg);  // labeled days 1..7

    SplitPlan plan = SplitPlan::single(7, 2);
    plan.seed = 77;
    auto res = split(samples, plan, 0);
    CHECK(!res.train.empty());
    CHECK(!res.validation.empty());
    CHECK(!res.test.empty());
    CHECK(res.train.size() + res.validation.size() + res.test.size() == samples.size());

    // validation near 15% of train+validation base minutes
    std::set<int64_t> train_bases, val_bases;
    for (size_t i : res.train) train_bases.insert(samples[i].end_minute);
    for (size_t i : res.validation) val_bases.insert(samples[i].end_minute);
    double frac = double(val_bases.size()) / double(train_bases.size() + val_bases.size());
    CHECK(std::fabs(frac - 0.15) < 0.03);

    // base minutes never straddle train/validation
    for (int64_t m : val_bases) CHECK(train_bases.count(m) == 0);

    // test days disjoint from training days
    std::set<uint32_t> train_days, test_days;
    for (size_t i : res.train) train_days.insert(samples[i].day);
    for (size_t i : res.validation) train_days.insert(samples[i].day);
    for (size_t i : res.test) test_days.insert(samples[i].day);
    for (uint32_t d : test_days) CHECK(train_days.count(d) == 0);

    // deterministic for a fixed seed
    auto res2 = split(samples, plan, 0);
    CHECK(res2.train == res.train);
    CHECK(res2.validation == res.validation);
    CHECK(res2.test == res.test);
}

TEST_CASE("overlapping day ranges are rejected") {
    SplitPlan plan;
    SplitPlan::Entry e;
    e.train_first = 1;
    e.train_last = 10;
    e.test_first = 10;
    e.test_last = 12;
    plan.entries.push_back(e);
    std::vector<Sample> none;
    try {
        split(none, plan, 0);
        FAIL("expected OverlapViolation");
    } catch (const Error& err) {
        CHECK(err.code() == Errc::OverlapViolation);
    }
}

TEST_CASE("dataset file round trip") {
    DatasetConfig cfg = small_cfg();
    auto samples = build(3, {888}, cfg);
    write_dataset("test_dataset_roundtrip.bin", samples, uint32_t(cfg.n_features), 2);
    DatasetHeader header;
    auto back = read_dataset("test_dataset_roundtrip.bin", &header);
    CHECK(header.n_samples == samples.size());
    CHECK(header.features == uint32_t(cfg.n_features));
    CHECK(header.n_classes == 2);
    REQUIRE(back.size() == samples.size());
    for (size_t i = 0; i < samples.size(); ++i) {
        CHECK(back[i].matrix == samples[i].matrix);
        CHECK(back[i].label == samples[i].label);
        CHECK(back[i].day == samples[i].day);
        CHECK(back[i].end_minute == samples[i].end_minute);
        CHECK(back[i].shift_seconds == samples[i].shift_seconds);
        CHECK(back[i].end_second == samples[i].end_second);
    }
    std::remove("test_dataset_roundtrip.bin");
}

TEST_CASE("three-class direction labels") {
    DatasetConfig cfg = small_cfg();
    cfg.n_classes = 3;
    cfg.target_positive_share = 0;
    cfg.jitter_max_seconds = 0;
    auto labels = make_labels(3, {});
    labels[850].is_jump = true;
    labels[850].direction = jump::Direction::Up;
    labels[950].is_jump = true;
    labels[950].direction = jump::Direction::Down;
    WindowBuilder wb(labels, cfg);
    std::vector<Sample> out;
    for (int64_t s = 1; s <= 3 * 23400; ++s)
        for (auto& smp : wb.push_frame(frame_at(s, cfg.n_features))) out.push_back(std::move(smp));
    std::map<int64_t, uint8_t> got;
    for (const auto& s : out) got[s.end_minute] = s.label;
    CHECK(got[850] == 1);
    CHECK(got[950] == 2);
    CHECK(got[900] == 0);
}
