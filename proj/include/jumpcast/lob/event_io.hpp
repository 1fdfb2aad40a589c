#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "jumpcast/lob/types.hpp"

namespace jumpcast::lob {

// Event file: one header line "ticksize=<decimal>", then one event per line,
//   timestamp_ns,order_id,side(B|A),action(ADD|CXL|EXE),price_ticks,quantity
// Price is written as 0 for CXL/EXE.

class EventWriter {
public:
    EventWriter(const std::string& path, double tick_size);
    ~EventWriter();

    void write(const OrderEvent& ev);
    void close();

private:
    struct Impl;
    Impl* impl_;
};

class EventReader {
public:
    explicit EventReader(const std::string& path);
    ~EventReader();

    double tick_size() const;
    // Returns false at end of stream. Throws on malformed lines or
    // out-of-order timestamps.
    bool next(OrderEvent& ev);
    size_t line_number() const;

private:
    struct Impl;
    Impl* impl_;
};

void write_events(const std::string& path, double tick_size, const std::vector<OrderEvent>& events);
std::vector<OrderEvent> read_events(const std::string& path, double* tick_size = nullptr);

} // namespace jumpcast::lob
