#include "jumpcast/jump/detector.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>

#include "jumpcast/common/error.hpp"

namespace jumpcast::jump {

std::vector<double> log_returns(const std::vector<double>& prices) {
    if (prices.size() < 2) fail(Errc::SeriesTooShort, "need at least two prices");
    std::vector<double> out(prices.size() - 1);
    for (size_t i = 1; i < prices.size(); ++i) {
        if (prices[i] <= 0.0 || prices[i - 1] <= 0.0)
            fail(Errc::NonPositivePrice, "price at index " + std::to_string(i));
        out[i - 1] = std::log(prices[i] / prices[i - 1]);
    }
    return out;
}

// Observation index i maps to returns[i-1]; the estimation window covers the
// K-2 adjacent-return products ending at observation i-1, which excludes the
// tested return itself.
double bipower_sigma(const std::vector<double>& returns, int64_t i, int window_k) {
    if (window_k < 3) fail(Errc::InvariantViolation, "window must be at least 3");
    if (i < window_k) fail(Errc::InsufficientHistory, "observation " + std::to_string(i) + " needs window " +
                                                          std::to_string(window_k));
    if (i - 2 >= static_cast<int64_t>(returns.size()))
        fail(Errc::InsufficientHistory, "observation beyond series end");
    double sum = 0.0;
    for (int64_t m = i - window_k + 1; m <= i - 2; ++m)
        sum += std::abs(returns[static_cast<size_t>(m)]) * std::abs(returns[static_cast<size_t>(m - 1)]);
    return std::sqrt(sum / static_cast<double>(window_k - 2));
}

double jump_statistic(const std::vector<double>& returns, int64_t i, int window_k) {
    if (i < 1 || i - 1 >= static_cast<int64_t>(returns.size()))
        fail(Errc::InsufficientHistory, "no return at observation " + std::to_string(i));
    double sigma = bipower_sigma(returns, i, window_k);
    if (sigma == 0.0) fail(Errc::ZeroVolatility, "flat window at observation " + std::to_string(i));
    return returns[static_cast<size_t>(i - 1)] / sigma;
}

double rejection_threshold(int n_obs, double alpha) {
    if (n_obs < 2 || alpha <= 0.0 || alpha >= 1.0)
        fail(Errc::InvariantViolation, "bad threshold parameters");
    const double c = std::sqrt(2.0 / M_PI);
    const double sq = std::sqrt(2.0 * std::log(static_cast<double>(n_obs)));
    const double cn = sq / c - (std::log(M_PI) + std::log(std::log(static_cast<double>(n_obs)))) / (2.0 * c * sq);
    const double sn = 1.0 / (c * sq);
    const double beta = -std::log(-std::log(1.0 - alpha));
    return cn + sn * beta;
}

std::vector<JumpLabel> detect_jumps(const PriceSeries& series, const DetectorConfig& cfg) {
    const int64_t n = static_cast<int64_t>(series.prices.size());
    if (n <= cfg.window_k) fail(Errc::SeriesTooShort, "series must exceed the bipower window");
    const auto returns = log_returns(series.prices);
    const double threshold = rejection_threshold(cfg.obs_per_day, cfg.alpha);
    const int64_t detect_start =
        std::max<int64_t>(cfg.window_k, static_cast<int64_t>(cfg.skip_days) * cfg.minutes_per_day);

    std::vector<JumpLabel> labels(static_cast<size_t>(n));
    for (int64_t i = 0; i < n; ++i) {
        JumpLabel& lab = labels[static_cast<size_t>(i)];
        lab.minute_index = i;
        if (i < detect_start) {
            lab.detectable = false;
            lab.statistic = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        lab.detectable = true;
        const double r = returns[static_cast<size_t>(i - 1)];
        const double sigma = bipower_sigma(returns, i, cfg.window_k);
        if (sigma == 0.0) {
            // A zero denominator cannot evidence a jump; flat windows label 0.
            lab.statistic = 0.0;
            continue;
        }
        lab.statistic = r / sigma;
        const bool session_open = cfg.suppress_session_open && cfg.minutes_per_day > 0 &&
                                  i % cfg.minutes_per_day == 0;
        if (!session_open && std::abs(lab.statistic) > threshold) {
            lab.is_jump = true;
            lab.direction = r > 0.0 ? Direction::Up : Direction::Down;
        }
    }
    return labels;
}

std::vector<int> label_minutes(const std::vector<JumpLabel>& labels) {
    std::vector<int> out(labels.size());
    for (size_t i = 0; i < labels.size(); ++i)
        out[i] = labels[i].detectable ? (labels[i].is_jump ? 1 : 0) : -1;
    return out;
}

namespace {

const char* dir_str(Direction d) {
    switch (d) {
        case Direction::Up: return "up";
        case Direction::Down: return "down";
        case Direction::None: return "none";
    }
    return "none";
}

} // namespace

void write_labels(const std::string& path, const std::vector<JumpLabel>& labels) {
    FILE* f = std::fopen(path.c_str(), "w");
    if (!f) fail(Errc::BadFile, "cannot open for writing: " + path);
    std::fprintf(f, "minute_index,is_jump,direction,L\n");
    for (const auto& lab : labels)
        std::fprintf(f, "%lld,%d,%s,%.17g\n", static_cast<long long>(lab.minute_index), lab.is_jump ? 1 : 0,
                     dir_str(lab.direction), lab.statistic);
    std::fclose(f);
}

std::vector<JumpLabel> read_labels(const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "r");
    if (!f) fail(Errc::BadFile, "cannot open for reading: " + path);
    char line[256];
    if (!std::fgets(line, sizeof(line), f) || std::strncmp(line, "minute_index,", 13) != 0) {
        std::fclose(f);
        fail(Errc::BadFile, "missing label header in " + path);
    }
    std::vector<JumpLabel> labels;
    while (std::fgets(line, sizeof(line), f)) {
        long long idx;
        int is_jump;
        char dir[16];
        char lstr[64];
        if (std::sscanf(line, "%lld,%d,%15[a-z],%63s", &idx, &is_jump, dir, lstr) != 4) {
            std::fclose(f);
            fail(Errc::BadFile, "malformed label line in " + path);
        }
        JumpLabel lab;
        lab.minute_index = idx;
        lab.is_jump = is_jump != 0;
        lab.direction = std::strcmp(dir, "up") == 0   ? Direction::Up
                        : std::strcmp(dir, "down") == 0 ? Direction::Down
                                                        : Direction::None;
        lab.statistic = std::strtod(lstr, nullptr);
        lab.detectable = !std::isnan(lab.statistic);
        labels.push_back(lab);
    }
    std::fclose(f);
    return labels;
}

} // namespace jumpcast::jump
