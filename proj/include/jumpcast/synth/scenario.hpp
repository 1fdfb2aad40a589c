#pragma once

#include <functional>
#include <string>
#include <vector>

#include "jumpcast/common/rng.hpp"
#include "jumpcast/lob/types.hpp"

namespace jumpcast::synth {

// Synthetic market scenario: GBM mid-price with planted compound-Poisson
// jumps, order flow at configurable per-minute rates, and an optional
// pre-jump liquidity-withdrawal signal.
struct ScenarioConfig {
    int days = 10;
    int64_t seconds_per_day = 23400;
    double tick_size = 0.01;
    int64_t start_price_ticks = 10000;
    double sigma_per_minute = 5e-4;       // diffusive log-mid volatility per minute
    double jump_intensity_per_day = 3.0;  // expected planted jumps per day
    double jump_size_sigma = 10.0;        // jump size in multiples of per-minute sigma
    double orders_per_minute = 240.0;     // limit order submissions
    double trades_per_minute = 30.0;      // executions
    double cancels_per_minute = 210.0;
    double withdraw_fraction = 0.0;       // 0 disables the liquidity signal
    int64_t signal_lead_seconds = 120;    // withdrawal starts this long before the jump
    bool symmetric_signal = false;        // withdraw both sides regardless of jump sign
    int warmup_days = 2;                  // days that receive no planted jumps
    uint64_t seed = 1;

    int64_t total_seconds() const { return static_cast<int64_t>(days) * seconds_per_day; }
    int64_t minutes_per_day() const { return seconds_per_day / 60; }
};

struct JumpTruth {
    int64_t second = 0;        // global second the jump lands on
    int64_t minute_index = 0;  // label interval (60m, 60m+60] containing it
    int direction = 0;         // +1 up, -1 down
    double size_sigma = 0.0;
};

struct PricePath {
    // mid[s] is the latent mid in ticks at global second s; mid[0] is the
    // pre-session level.
    std::vector<double> mid;
    std::vector<JumpTruth> jumps;

    // Minute-mark series: element j is mid at second 60 * (j + 1).
    std::vector<double> minute_marks() const;
};

PricePath gen_price_path(const ScenarioConfig& cfg);

using EventSink = std::function<void(const lob::OrderEvent&)>;

// Emits a valid event stream around the latent mid: adds on a 1..10-tick
// ladder, random cancels, executions against the best level, and cancels of
// orders left on the wrong side after mid moves. Books never cross at
// sampling boundaries and neither side is left empty at a second boundary.
void gen_order_flow(const PricePath& path, const ScenarioConfig& cfg, const EventSink& sink);

// Streaming filter that plants the pre-jump withdrawal: at jump - lead it
// cancels withdraw_fraction of the visible depth on the jump side (both
// sides when symmetric), suppresses matching arrivals inside the lead
// window, and re-adds the withdrawn volume once the jump minute has closed.
class LiquiditySignalInjector {
public:
    LiquiditySignalInjector(const std::vector<JumpTruth>& jumps, const ScenarioConfig& cfg, EventSink sink);
    ~LiquiditySignalInjector();

    void push(const lob::OrderEvent& ev);
    void finish();

private:
    struct Impl;
    Impl* impl_;
};

// Scenario driver: price path -> order flow -> signal injection -> files.
// Writes the event file and the truth CSV ("day,minute,direction,size").
std::vector<JumpTruth> generate_scenario(const ScenarioConfig& cfg, const std::string& events_path,
                                         const std::string& truth_path);

void write_truth(const std::string& path, const std::vector<JumpTruth>& jumps);
std::vector<JumpTruth> read_truth(const std::string& path);

// In-memory variants used by tests.
std::vector<lob::OrderEvent> gen_order_flow_vec(const PricePath& path, const ScenarioConfig& cfg);
std::vector<lob::OrderEvent> inject_liquidity_signal(const std::vector<lob::OrderEvent>& events,
                                                     const std::vector<JumpTruth>& jumps,
                                                     const ScenarioConfig& cfg);

} // namespace jumpcast::synth
