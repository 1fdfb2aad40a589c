#include "jumpcast/data/dataset.hpp"

#include <cmath>

#include "jumpcast/common/error.hpp"

namespace jumpcast::data {

std::vector<double> znormalize(const std::vector<double>& matrix, int rows, int cols) {
    if (rows < 2 || cols < 1 || matrix.size() != size_t(rows) * size_t(cols))
        fail(Errc::ShapeMismatch, "znormalize expects a rows x cols matrix with rows >= 2");
    std::vector<double> out(matrix.size());
    for (int c = 0; c < cols; ++c) {
        double mean = 0.0;
        for (int r = 0; r < rows; ++r) mean += matrix[size_t(r) * cols + c];
        mean /= rows;
        double ss = 0.0;
        for (int r = 0; r < rows; ++r) {
            double d = matrix[size_t(r) * cols + c] - mean;
            ss += d * d;
        }
        double sd = std::sqrt(ss / (rows - 1));
        if (sd == 0.0) {
            for (int r = 0; r < rows; ++r) out[size_t(r) * cols + c] = 0.0;
        } else {
            for (int r = 0; r < rows; ++r) out[size_t(r) * cols + c] = (matrix[size_t(r) * cols + c] - mean) / sd;
        }
    }
    return out;
}

int plan_duplicates(const std::vector<jump::JumpLabel>& labels, const DatasetConfig& cfg) {
    if (cfg.target_positive_share <= 0.0) return 0;
    if (cfg.target_positive_share >= 1.0) fail(Errc::BadConfig, "positive share target must be below 1");
    int64_t pos = 0, neg = 0;
    for (const auto& lab : labels) {
        if (!lab.detectable || lab.minute_index < kWindowSteps) continue;
        if (lab.is_jump)
            ++pos;
        else
            ++neg;
    }
    if (pos == 0) return 0;
    double s = cfg.target_positive_share;
    double per_positive = s * double(neg) / ((1.0 - s) * double(pos));
    int d = int(std::lround(per_positive)) - 1;
    if (d < 0) d = 0;
    if (d > cfg.max_duplicates) d = cfg.max_duplicates;
    return d;
}

WindowBuilder::WindowBuilder(const std::vector<jump::JumpLabel>& labels, const DatasetConfig& cfg,
                             uint32_t stock_id)
    : labels_(labels), cfg_(cfg), stock_(stock_id), rng_(Rng(cfg.seed).child("windows")) {
    if (cfg_.jitter_max_seconds < 0 || cfg_.jitter_max_seconds >= 60)
        fail(Errc::BadConfig, "negative jitter must stay below one minute");
    for (int s : cfg_.duplicate_shifts)
        if (s <= 0 || s >= 60) fail(Errc::ShiftTooLarge, "duplicate shifts must lie in (0, 60) seconds");
    dups_per_positive_ = plan_duplicates(labels_, cfg_);
    ring_span_ = int64_t(kWindowSteps) * 60 + 61;
    ring_.assign(size_t(ring_span_), {});
}

Sample WindowBuilder::cut_window(int64_t end_second, int64_t end_minute, uint8_t label, int32_t shift) {
    const int cols = cfg_.n_features;
    std::vector<double> m(size_t(kWindowSteps) * cols);
    for (int k = 0; k < kWindowSteps; ++k) {
        int64_t sec = end_second - int64_t(kWindowSteps - 1 - k) * 60;
        const auto& fr = ring_[size_t(sec % ring_span_)];
        for (int c = 0; c < cols; ++c) m[size_t(k) * cols + c] = fr[size_t(c)];
    }
    std::vector<double> normalized = znormalize(m, kWindowSteps, cols);
    Sample out;
    out.matrix.resize(normalized.size());
    for (size_t i = 0; i < normalized.size(); ++i) out.matrix[i] = float(normalized[i]);
    out.label = label;
    out.stock = stock_;
    out.day = uint32_t(end_minute / cfg_.minutes_per_day);
    out.end_minute = end_minute;
    out.shift_seconds = shift;
    out.end_second = end_second;
    if (verifier_) verifier_(normalized, out);
    return out;
}

bool WindowBuilder::label_safe_negative(int64_t minute) const {
    if (minute < 1 || size_t(minute) >= labels_.size()) return false;
    const auto& prev = labels_[size_t(minute - 1)];
    return prev.detectable && !prev.is_jump;
}

std::vector<Sample> WindowBuilder::push_frame(const feat::FeatureFrame& frame) {
    if (frame.second != next_second_)
        fail(Errc::StreamMisalignment, "frame second " + std::to_string(frame.second) + ", expected " +
                                           std::to_string(next_second_));
    for (int c = 0; c < cfg_.n_features; ++c) ring_[size_t(next_second_ % ring_span_)][size_t(c)] = frame.v[size_t(c)];
    std::vector<Sample> out;
    if (next_second_ % 60 == 0) {
        int64_t j = next_second_ / 60;
        bool has_label = size_t(j) < labels_.size() && labels_[size_t(j)].detectable;
        if (j >= kWindowSteps && has_label) {
            const auto& lab = labels_[size_t(j)];
            uint8_t label = 0;
            if (lab.is_jump)
                label = cfg_.n_classes == 3 ? (lab.direction == jump::Direction::Up ? 1 : 2) : 1;
            if (label > 0) {
                ++base_positives_;
                out.push_back(cut_window(60 * j, j, label, 0));
                if (cfg_.target_positive_share > 0.0) {
                    for (int k = 1; k <= dups_per_positive_; ++k)
                        out.push_back(cut_window(60 * j - k, j, label, k));
                } else {
                    for (int s : cfg_.duplicate_shifts) out.push_back(cut_window(60 * j - s, j, label, s));
                }
            } else {
                ++base_negatives_;
                // negatives are emitted at a jittered end; the draw re-rolls
                // when the shifted label interval could contain a jump
                int32_t u = 0;
                if (cfg_.jitter_max_seconds > 0) {
                    for (int attempt = 0; attempt < 8; ++attempt) {
                        auto draw = int32_t(rng_.uniform_int(uint64_t(cfg_.jitter_max_seconds) + 1));
                        if (draw == 0 || label_safe_negative(j)) {
                            u = draw;
                            break;
                        }
                    }
                }
                out.push_back(cut_window(60 * j - u, j, 0, u));
            }
        }
    }
    ++next_second_;
    return out;
}

std::vector<Sample> make_windows(const std::vector<feat::FeatureFrame>& frames,
                                 const std::vector<jump::JumpLabel>& labels, const DatasetConfig& cfg,
                                 uint32_t stock_id) {
    WindowBuilder wb(labels, cfg, stock_id);
    std::vector<Sample> out;
    for (const auto& fr : frames) {
        auto batch = wb.push_frame(fr);
        for (auto& s : batch) out.push_back(std::move(s));
    }
    return out;
}

} // namespace jumpcast::data
