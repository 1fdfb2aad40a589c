#pragma once

#include <array>
#include <cstdint>

#include "jumpcast/common/error.hpp"

namespace jumpcast::lob {

enum class Side : uint8_t { Bid = 0, Ask = 1 };

enum class Action : uint8_t { Add = 0, Cancel = 1, Execute = 2 };

inline Side other(Side s) { return s == Side::Bid ? Side::Ask : Side::Bid; }

// One order-stream event. Prices are integer ticks (tick size travels in the
// stream header); quantity is the order size for Add and the amount removed
// for Cancel/Execute. Partial removals leave the order live.
struct OrderEvent {
    int64_t timestamp_ns = 0;
    uint64_t order_id = 0;
    Side side = Side::Bid;
    Action action = Action::Add;
    int64_t price = 0;  // ticks; meaningful for Add only
    int64_t quantity = 0;
};

inline constexpr int kSnapshotLevels = 10;

struct Level {
    int64_t price = 0;
    int64_t volume = 0;

    bool operator==(const Level&) const = default;
};

// Ten best levels per side at a sampling instant. Asks ascend, bids descend,
// unused trailing levels are (0,0).
struct BookSnapshot {
    uint32_t second = 0;  // seconds since session open
    std::array<Level, kSnapshotLevels> asks{};
    std::array<Level, kSnapshotLevels> bids{};

    bool operator==(const BookSnapshot&) const = default;
};

// Mid-price of the best levels, in ticks; may land on a half tick.
inline double mid_price(const BookSnapshot& s) {
    if (s.asks[0].price == 0 || s.bids[0].price == 0)
        fail(Errc::EmptySide, "mid price needs both L1 sides at second " + std::to_string(s.second));
    return 0.5 * static_cast<double>(s.asks[0].price + s.bids[0].price);
}

// Structural checks: sorted nonzero prefix, no interior gaps, positive
// volumes, and an uncrossed top of book.
void check_snapshot(const BookSnapshot& s);

} // namespace jumpcast::lob
