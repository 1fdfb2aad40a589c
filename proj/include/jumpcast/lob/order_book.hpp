#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <unordered_map>

#include "jumpcast/lob/types.hpp"

namespace jumpcast::lob {

// Incremental limit order book. Orders are keyed by id; per-side aggregates
// map price -> total resting quantity and never hold zero-volume levels.
// A failed event leaves the book untouched.
class OrderBook {
public:
    struct LiveOrder {
        Side side;
        int64_t price;
        int64_t remaining;
    };

    void apply(const OrderEvent& ev);

    // Best-first levels, zero-padded to n_levels.
    BookSnapshot snapshot(uint32_t second, int n_levels = kSnapshotLevels) const;

    bool empty() const { return orders_.empty(); }
    size_t live_orders() const { return orders_.size(); }
    const LiveOrder* find(uint64_t order_id) const;

    // Aggregates exposed for consistency checks and the flow generators.
    const std::map<int64_t, int64_t, std::greater<int64_t>>& bid_levels() const { return bids_; }
    const std::map<int64_t, int64_t>& ask_levels() const { return asks_; }
    const std::unordered_map<uint64_t, LiveOrder>& orders() const { return orders_; }

private:
    void reduce(uint64_t id, int64_t qty, const char* what);

    std::unordered_map<uint64_t, LiveOrder> orders_;
    std::map<int64_t, int64_t, std::greater<int64_t>> bids_;  // price desc
    std::map<int64_t, int64_t> asks_;                         // price asc
};

} // namespace jumpcast::lob
