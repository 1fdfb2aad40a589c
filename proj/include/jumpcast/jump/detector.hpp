#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jumpcast::jump {

enum class Direction : uint8_t { None = 0, Up = 1, Down = 2 };

// Minute-sampled mid-price series, treated as one continuous sequence across
// trading days. prices[i] is the mid at the close of minute interval i; the
// return r[i] = ln(p[i]/p[i-1]) spans interval i.
struct PriceSeries {
    std::vector<double> prices;
};

struct DetectorConfig {
    int window_k = 600;          // bipower estimation window, in observations
    double alpha = 0.01;         // test significance level
    int obs_per_day = 390;       // n in the Gumbel threshold constants
    int minutes_per_day = 390;   // day structure of the series
    int skip_days = 2;           // leading days emitted as undetectable
    bool suppress_session_open = true;  // no jumps at each day's first minute
};

struct JumpLabel {
    int64_t minute_index = 0;
    bool detectable = false;
    bool is_jump = false;
    Direction direction = Direction::None;
    double statistic = 0.0;  // L(i); NaN when undetectable
};

// r[i] = ln(p[i] / p[i-1]) for i = 1..n-1; output index j holds r[j+1]'s
// value shifted down by one, i.e. out[j] corresponds to series index j+1.
std::vector<double> log_returns(const std::vector<double>& prices);

// Realized bipower volatility estimate at return index i:
//   sigma^2(i) = 1/(K-2) * sum_{j=i-K+2}^{i-1} |r_j| |r_{j-1}|
// where r is indexed so that r[i] is the return into observation i.
// Requires i >= K.
double bipower_sigma(const std::vector<double>& returns, int64_t i, int window_k);

// L(i) = r_i / sigma(i). Throws ZeroVolatility when sigma(i) == 0.
double jump_statistic(const std::vector<double>& returns, int64_t i, int window_k);

// Rejection threshold on |L|: reject when (|L| - C_n) / S_n > beta* with
// beta* = -ln(-ln(1 - alpha)), c = sqrt(2/pi),
// C_n = sqrt(2 ln n)/c - (ln pi + ln ln n) / (2 c sqrt(2 ln n)),
// S_n = 1 / (c sqrt(2 ln n)).
double rejection_threshold(int n_obs, double alpha);

// One label per series minute. Minutes before max(window_k, skip_days worth
// of minutes) are emitted with detectable = false. Flat-volatility windows
// yield no jump rather than an error. Each day's first minute never jumps
// when suppress_session_open is set.
std::vector<JumpLabel> detect_jumps(const PriceSeries& series, const DetectorConfig& cfg);

// Binary per-minute classes; undetectable minutes are reported as -1 so the
// dataset builder can exclude them.
std::vector<int> label_minutes(const std::vector<JumpLabel>& labels);

// CSV: "minute_index,is_jump,direction,L"; undetectable minutes carry
// direction "none" and L = nan.
void write_labels(const std::string& path, const std::vector<JumpLabel>& labels);
std::vector<JumpLabel> read_labels(const std::string& path);

} // namespace jumpcast::jump
