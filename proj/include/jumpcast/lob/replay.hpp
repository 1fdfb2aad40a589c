#pragma once

#include <functional>
#include <vector>

#include "jumpcast/lob/order_book.hpp"
#include "jumpcast/lob/types.hpp"

namespace jumpcast::lob {

// Folds a time-ordered event stream into per-second snapshots. Boundary k
// (k = 1..ceil(session/interval)) reflects every event with
// timestamp <= k * interval; an event exactly on a boundary lands in that
// boundary's snapshot. A 6.5 hour session yields 23,400 snapshots.
class Replayer {
public:
    explicit Replayer(int64_t session_seconds, int64_t interval_seconds = 1);

    // Feed the next event; emits zero or more snapshots through sink for
    // boundaries that close strictly before this event.
    void feed(const OrderEvent& ev, const std::function<void(const BookSnapshot&)>& sink);

    // Emit all remaining snapshots up to the session end.
    void finish(const std::function<void(const BookSnapshot&)>& sink);

    int64_t boundaries() const { return n_boundaries_; }
    const OrderBook& book() const { return book_; }
    size_t events_applied() const { return events_applied_; }

private:
    void emit_until(int64_t boundary_excl, const std::function<void(const BookSnapshot&)>& sink);

    OrderBook book_;
    int64_t interval_ns_;
    int64_t n_boundaries_;
    int64_t next_boundary_ = 1;  // 1-based boundary index
    int64_t last_ts_ = -1;
    size_t events_applied_ = 0;
};

// Convenience wrapper over Replayer for in-memory streams.
std::vector<BookSnapshot> replay(const std::vector<OrderEvent>& events, int64_t session_seconds,
                                 int64_t interval_seconds = 1);

} // namespace jumpcast::lob
