#include "jumpcast/feat/features.hpp"

#include <cmath>

#include "jumpcast/common/error.hpp"

namespace jumpcast::feat {

std::array<double, 40> basic_v1(const lob::BookSnapshot& s) {
    std::array<double, 40> out{};
    for (int i = 0; i < 10; ++i) {
        out[4 * i + 0] = static_cast<double>(s.asks[i].price);
        out[4 * i + 1] = static_cast<double>(s.asks[i].volume);
        out[4 * i + 2] = static_cast<double>(s.bids[i].price);
        out[4 * i + 3] = static_cast<double>(s.bids[i].volume);
    }
    return out;
}

std::array<double, 44> time_insensitive_v2_v5(const lob::BookSnapshot& s) {
    std::array<double, 44> out{};
    double sum_pa = 0, sum_pb = 0, sum_va = 0, sum_vb = 0;
    for (int i = 0; i < 10; ++i) {
        double pa = static_cast<double>(s.asks[i].price);
        double pb = static_cast<double>(s.bids[i].price);
        out[2 * i] = pa - pb;
        out[2 * i + 1] = 0.5 * (pa + pb);
        sum_pa += pa;
        sum_pb += pb;
        sum_va += static_cast<double>(s.asks[i].volume);
        sum_vb += static_cast<double>(s.bids[i].volume);
    }
    for (int i = 0; i < 9; ++i) {
        out[20 + 2 * i] = std::abs(static_cast<double>(s.asks[i + 1].price - s.asks[i].price));
        out[20 + 2 * i + 1] = std::abs(static_cast<double>(s.bids[i + 1].price - s.bids[i].price));
    }
    out[38] = sum_pa / 10.0;
    out[39] = sum_pb / 10.0;
    out[40] = sum_va / 10.0;
    out[41] = sum_vb / 10.0;
    out[42] = (sum_pa - sum_pb) / 10.0;
    out[43] = (sum_va - sum_vb) / 10.0;
    return out;
}

std::array<double, 40> derivatives_v6(const std::array<double, 40>& v1_now,
                                      const std::array<double, 40>& v1_past, double dt_seconds) {
    if (dt_seconds <= 0.0) fail(Errc::InsufficientHistory, "derivative window must be positive");
    std::array<double, 40> out{};
    for (int i = 0; i < 40; ++i) out[i] = (v1_now[i] - v1_past[i]) / dt_seconds;
    return out;
}

int64_t clock_v10(int64_t seconds_since_midnight) {
    if (seconds_since_midnight < 0) fail(Errc::InvariantViolation, "negative wall-clock time");
    return seconds_since_midnight / 3600;
}

EventClass classify_event(lob::Side side, lob::Action action) {
    switch (action) {
        case lob::Action::Add: return side == lob::Side::Ask ? EventClass::LimitAsk : EventClass::LimitBid;
        case lob::Action::Execute: return side == lob::Side::Ask ? EventClass::MarketAsk : EventClass::MarketBid;
        case lob::Action::Cancel: return side == lob::Side::Ask ? EventClass::CancelAsk : EventClass::CancelBid;
    }
    return EventClass::LimitAsk;
}

namespace {

// Window sum over seconds (t - w, t], clipped at second 1.
int64_t window_count(const std::vector<std::array<int64_t, kNumEventClasses>>& counts, int64_t t, int w, int cls) {
    int64_t lo = std::max<int64_t>(1, t - w + 1);
    int64_t hi = std::min<int64_t>(t, static_cast<int64_t>(counts.size()) - 1);
    int64_t sum = 0;
    for (int64_t s = lo; s <= hi; ++s) sum += counts[static_cast<size_t>(s)][cls];
    return sum;
}

} // namespace

IntensitySlots intensities_v7_v9(const std::vector<std::array<int64_t, kNumEventClasses>>& counts_by_second,
                                 int64_t t, int dt_short, int dt_long) {
    IntensitySlots out;
    for (int c = 0; c < kNumEventClasses; ++c) {
        int64_t n_short = window_count(counts_by_second, t, dt_short, c);
        out.v7[c] = static_cast<double>(n_short) / static_cast<double>(dt_short);
        if (c < 4) {
            int64_t n_long = window_count(counts_by_second, t, dt_long, c);
            double lam_long = static_cast<double>(n_long) / static_cast<double>(dt_long);
            out.v8[c] = out.v7[c] > lam_long ? 1.0 : 0.0;
        }
    }
    for (int k = 0; k < 4; ++k) {
        int c = kAccelClasses[k];
        if (t > dt_short) {
            int64_t lagged = window_count(counts_by_second, t - dt_short, dt_short, c);
            double lam_now = static_cast<double>(window_count(counts_by_second, t, dt_short, c)) /
                             static_cast<double>(dt_short);
            double lam_lag = static_cast<double>(lagged) / static_cast<double>(dt_short);
            out.v9[k] = (lam_now - lam_lag) / static_cast<double>(dt_short);
        }
    }
    return out;
}

FrameAssembler::FrameAssembler(const FeatureConfig& cfg) : cfg_(cfg) {
    if (cfg_.dt_short < 1 || cfg_.dt_long < cfg_.dt_short)
        fail(Errc::InvariantViolation, "intensity windows must satisfy 1 <= dt_short <= dt_long");
    ring_span_ = std::max<int64_t>(cfg_.dt_long, 2 * cfg_.dt_short) + 1;
    count_ring_.assign(static_cast<size_t>(ring_span_), {});
    v1_ring_.assign(static_cast<size_t>(cfg_.dt_short + 1), {});
}

std::array<int64_t, kNumEventClasses>& FrameAssembler::counts_at(int64_t second) {
    return count_ring_[static_cast<size_t>(second % ring_span_)];
}

int64_t FrameAssembler::counts_get(int64_t second, int cls) const {
    if (second < 1 || second > next_second_) return 0;
    return count_ring_[static_cast<size_t>(second % ring_span_)][cls];
}

void FrameAssembler::add_event(int64_t bucket_second, lob::Side side, lob::Action action) {
    if (bucket_second <= 0) return;  // before the first sampling boundary
    if (bucket_second != next_second_)
        fail(Errc::StreamMisalignment, "event bucket " + std::to_string(bucket_second) +
                                           " does not match pending second " + std::to_string(next_second_));
    counts_at(bucket_second)[static_cast<int>(classify_event(side, action))] += 1;
}

FeatureFrame FrameAssembler::push_snapshot(const lob::BookSnapshot& snap) {
    const int64_t t = next_second_;
    if (static_cast<int64_t>(snap.second) != t)
        fail(Errc::StreamMisalignment, "snapshot second " + std::to_string(snap.second) + ", expected " +
                                           std::to_string(t));
    lob::check_snapshot(snap);

    const int dt = cfg_.dt_short;
    // Advance the exact rolling window sums to cover second t.
    for (int c = 0; c < kNumEventClasses; ++c) {
        int64_t ct = counts_at(t)[c];
        sum_short_[c] += ct - counts_get(t - dt, c);
        sum_short_lag_[c] += counts_get(t - dt, c) - counts_get(t - 2 * dt, c);
        sum_long_[c] += ct - counts_get(t - cfg_.dt_long, c);
    }

    FeatureFrame frame;
    frame.second = t;
    auto v1 = basic_v1(snap);
    auto v25 = time_insensitive_v2_v5(snap);
    std::copy(v1.begin(), v1.end(), frame.v.begin() + kV1Offset);
    std::copy(v25.begin(), v25.end(), frame.v.begin() + kV2Offset);

    v1_ring_[static_cast<size_t>(t % (dt + 1))] = v1;
    if (t - dt >= 1) {
        const auto& past = v1_ring_[static_cast<size_t>((t - dt) % (dt + 1))];
        auto v6 = derivatives_v6(v1, past, static_cast<double>(dt));
        std::copy(v6.begin(), v6.end(), frame.v.begin() + kV6Offset);
    }

    for (int c = 0; c < kNumEventClasses; ++c) {
        double lam_short = static_cast<double>(sum_short_[c]) / static_cast<double>(dt);
        frame.v[kV7Offset + c] = lam_short;
        if (c < 4) {
            double lam_long = static_cast<double>(sum_long_[c]) / static_cast<double>(cfg_.dt_long);
            frame.v[kV8Offset + c] = lam_short > lam_long ? 1.0 : 0.0;
        }
    }
    if (t > dt) {
        for (int k = 0; k < 4; ++k) {
            int c = kAccelClasses[k];
            double lam_now = static_cast<double>(sum_short_[c]) / static_cast<double>(dt);
            double lam_lag = static_cast<double>(sum_short_lag_[c]) / static_cast<double>(dt);
            frame.v[kV9Offset + k] = (lam_now - lam_lag) / static_cast<double>(dt);
        }
    }

    int64_t in_day = (t - 1) % cfg_.seconds_per_day + 1;
    frame.v[kV10Offset] = static_cast<double>(clock_v10(cfg_.session_open + in_day));

    ++next_second_;
    counts_at(next_second_) = {};  // clear the slot the new second will reuse
    return frame;
}

std::vector<FeatureFrame> assemble(const std::vector<lob::BookSnapshot>& snaps,
                                   const std::vector<lob::OrderEvent>& events, const FeatureConfig& cfg) {
    FrameAssembler fa(cfg);
    std::vector<FeatureFrame> out;
    out.reserve(snaps.size());
    size_t e = 0;
    constexpr int64_t kNs = 1'000'000'000;
    for (const auto& snap : snaps) {
        while (e < events.size()) {
            int64_t bucket = (events[e].timestamp_ns + kNs - 1) / kNs;
            if (bucket > static_cast<int64_t>(snap.second)) break;
            fa.add_event(bucket, events[e].side, events[e].action);
            ++e;
        }
        out.push_back(fa.push_snapshot(snap));
    }
    return out;
}

} // namespace jumpcast::feat
