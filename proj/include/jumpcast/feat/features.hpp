#pragma once

#include <array>
#include <deque>
#include <vector>

#include "jumpcast/feat/slots.hpp"
#include "jumpcast/lob/types.hpp"

namespace jumpcast::feat {

struct FeatureConfig {
    int dt_short = 60;             // short intensity / derivative window, seconds
    int dt_long = 600;             // long intensity window, seconds
    int64_t session_open = 34200;  // wall-clock session open, seconds since midnight
    int64_t seconds_per_day = 23400;
};

// v1: raw ten-level book as (p_ask, v_ask, p_bid, v_bid) per level.
std::array<double, 40> basic_v1(const lob::BookSnapshot& s);

// v2..v5 (44 values): per-level spreads and mids, adjacent price steps,
// side means, accumulated differences. Zero-padded levels enter the
// arithmetic as literal zeros.
std::array<double, 44> time_insensitive_v2_v5(const lob::BookSnapshot& s);

// v6: (x(t) - x(t - dt)) / dt per v1 slot.
std::array<double, 40> derivatives_v6(const std::array<double, 40>& v1_now,
                                      const std::array<double, 40>& v1_past, double dt_seconds);

// Wall-clock hour bucket.
int64_t clock_v10(int64_t seconds_since_midnight);

// Maps an order event to its intensity class.
EventClass classify_event(lob::Side side, lob::Action action);

// v7/v8/v9 from per-second event counts. counts[c][s] holds the number of
// class-c events in wall second s (1-based); windows are (t - w, t],
// clipped at the stream start and divided by the nominal width.
struct IntensitySlots {
    std::array<double, 6> v7{};
    std::array<double, 4> v8{};
    std::array<double, 4> v9{};
};
IntensitySlots intensities_v7_v9(const std::vector<std::array<int64_t, kNumEventClasses>>& counts_by_second,
                                 int64_t t, int dt_short, int dt_long);

// Streaming frame assembly: feed events bucketed into their wall second,
// push one snapshot per second (contiguous from 1), collect one frame per
// second. Derivative slots are zero until dt_short seconds of history exist.
class FrameAssembler {
public:
    explicit FrameAssembler(const FeatureConfig& cfg);

    // bucket = ceil(timestamp / 1e9); must equal the next snapshot second.
    void add_event(int64_t bucket_second, lob::Side side, lob::Action action);

    FeatureFrame push_snapshot(const lob::BookSnapshot& snap);

    int64_t next_second() const { return next_second_; }

private:
    FeatureConfig cfg_;
    int64_t next_second_ = 1;

    // per-second class counts for the trailing long+short span
    std::vector<std::array<int64_t, kNumEventClasses>> count_ring_;
    int64_t ring_span_;

    // rolling integer window sums; exact, so rolling == direct recount
    std::array<int64_t, kNumEventClasses> sum_short_{};
    std::array<int64_t, kNumEventClasses> sum_short_lag_{};
    std::array<int64_t, kNumEventClasses> sum_long_{};

    std::vector<std::array<double, 40>> v1_ring_;

    std::array<int64_t, kNumEventClasses>& counts_at(int64_t second);
    int64_t counts_get(int64_t second, int cls) const;
};

// One-shot assembly over in-memory streams; events must be time-ordered.
std::vector<FeatureFrame> assemble(const std::vector<lob::BookSnapshot>& snaps,
                                   const std::vector<lob::OrderEvent>& events, const FeatureConfig& cfg);

} // namespace jumpcast::feat
