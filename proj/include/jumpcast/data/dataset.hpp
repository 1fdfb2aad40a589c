#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "jumpcast/common/rng.hpp"
#include "jumpcast/feat/slots.hpp"
#include "jumpcast/jump/detector.hpp"

namespace jumpcast::data {

inline constexpr int kWindowSteps = 120;

// One normalized training window. Matrix rows run oldest to newest, one per
// minute, sampled on the second grid; row k is the frame at
// end_second - (119 - k) * 60. Stored as float32; training math upcasts.
struct Sample {
    std::vector<float> matrix;  // kWindowSteps x n_features, row-major
    uint8_t label = 0;          // 0/1, or 0/1/2 in direction mode
    uint32_t stock = 0;
    uint32_t day = 0;            // stream day of the labeled minute
    int64_t end_minute = 0;      // label index of the base window
    int32_t shift_seconds = 0;   // backward shift applied to this variant
    int64_t end_second = 0;      // last frame second actually used
};

struct DatasetConfig {
    int n_features = feat::kNumSlots;
    int minutes_per_day = 390;
    int n_classes = 2;                 // 3 enables the jump-direction labels
    double target_positive_share = 0.25;  // 0 disables adaptive duplication
    std::vector<int> duplicate_shifts = {5, 10, 15, 20};  // used when share target is off
    int max_duplicates = 59;
    int jitter_max_seconds = 20;       // negatives shift back by 0..this
    uint64_t seed = 1;
};

// Per-column z-score over the window rows (sample std, n-1). Columns whose
// std underflows are zeroed. Returns the normalized copy in doubles.
std::vector<double> znormalize(const std::vector<double>& matrix, int rows, int cols);

// Streaming window builder. Frames arrive once, in second order; samples for
// minute j are emitted once every frame up to second 60*j has been pushed.
class WindowBuilder {
public:
    using Verifier = std::function<void(const std::vector<double>& normalized, const Sample& sample)>;

    WindowBuilder(const std::vector<jump::JumpLabel>& labels, const DatasetConfig& cfg, uint32_t stock_id = 0);

    // Push the frame for the next second; returns samples completed by it.
    std::vector<Sample> push_frame(const feat::FeatureFrame& frame);

    // Called per emitted sample with the double-precision normalized matrix
    // before the float32 cast.
    void set_verifier(Verifier v) { verifier_ = std::move(v); }

    int64_t base_positives() const { return base_positives_; }
    int64_t base_negatives() const { return base_negatives_; }
    int duplicates_per_positive() const { return dups_per_positive_; }

private:
    Sample cut_window(int64_t end_second, int64_t end_minute, uint8_t label, int32_t shift);
    bool label_safe_negative(int64_t minute) const;

    const std::vector<jump::JumpLabel>& labels_;
    DatasetConfig cfg_;
    uint32_t stock_;
    Rng rng_;
    int dups_per_positive_ = 0;

    std::vector<std::array<double, feat::kNumSlots>> ring_;
    int64_t ring_span_;
    int64_t next_second_ = 1;
    int64_t base_positives_ = 0;
    int64_t base_negatives_ = 0;
    Verifier verifier_;
};

// Counts detectable labels to size adaptive duplication before building.
int plan_duplicates(const std::vector<jump::JumpLabel>& labels, const DatasetConfig& cfg);

// One-shot builder over in-memory frames.
std::vector<Sample> make_windows(const std::vector<feat::FeatureFrame>& frames,
                                 const std::vector<jump::JumpLabel>& labels, const DatasetConfig& cfg,
                                 uint32_t stock_id = 0);

} // namespace jumpcast::data
