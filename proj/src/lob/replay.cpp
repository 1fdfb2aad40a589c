#include "jumpcast/lob/replay.hpp"

namespace jumpcast::lob {

namespace {
constexpr int64_t kNsPerSec = 1'000'000'000;
}

Replayer::Replayer(int64_t session_seconds, int64_t interval_seconds)
    : interval_ns_(interval_seconds * kNsPerSec),
      n_boundaries_((session_seconds + interval_seconds - 1) / interval_seconds) {
    if (session_seconds <= 0 || interval_seconds <= 0)
        fail(Errc::InvariantViolation, "session and interval must be positive");
}

void Replayer::emit_until(int64_t boundary_excl, const std::function<void(const BookSnapshot&)>& sink) {
    while (next_boundary_ < boundary_excl && next_boundary_ <= n_boundaries_) {
        uint32_t second = static_cast<uint32_t>(next_boundary_ * (interval_ns_ / kNsPerSec));
        sink(book_.snapshot(second));
        ++next_boundary_;
    }
}

void Replayer::feed(const OrderEvent& ev, const std::function<void(const BookSnapshot&)>& sink) {
    if (ev.timestamp_ns < last_ts_)
        fail(Errc::InvariantViolation, "events out of order at ns " + std::to_string(ev.timestamp_ns));
    last_ts_ = ev.timestamp_ns;
    // Boundary b covers ts <= b * interval, so this event belongs to boundary
    // ceil(ts / interval); emit every earlier boundary first.
    int64_t owner = (ev.timestamp_ns + interval_ns_ - 1) / interval_ns_;
    emit_until(owner, sink);
    try {
        book_.apply(ev);
    } catch (const Error& e) {
        fail(e.code(), std::string(e.what()) + " (event ns " + std::to_string(ev.timestamp_ns) + ", applied " +
                           std::to_string(events_applied_) + " events)");
    }
    ++events_applied_;
}

void Replayer::finish(const std::function<void(const BookSnapshot&)>& sink) {
    emit_until(n_boundaries_ + 1, sink);
}

std::vector<BookSnapshot> replay(const std::vector<OrderEvent>& events, int64_t session_seconds,
                                 int64_t interval_seconds) {
    Replayer rp(session_seconds, interval_seconds);
    std::vector<BookSnapshot> out;
    out.reserve(static_cast<size_t>(rp.boundaries()));
    auto sink = [&out](const BookSnapshot& s) { out.push_back(s); };
    for (const auto& ev : events) rp.feed(ev, sink);
    rp.finish(sink);
    return out;
}

} // namespace jumpcast::lob
