#include "jumpcast/lob/event_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>

#include "jumpcast/common/error.hpp"

namespace jumpcast::lob {

namespace {

char side_char(Side s) { return s == Side::Bid ? 'B' : 'A'; }

const char* action_str(Action a) {
    switch (a) {
        case Action::Add: return "ADD";
        case Action::Cancel: return "CXL";
        case Action::Execute: return "EXE";
    }
    return "?";
}

} // namespace

struct EventWriter::Impl {
    FILE* f = nullptr;
    std::string path;
};

EventWriter::EventWriter(const std::string& path, double tick_size) : impl_(new Impl) {
    impl_->f = std::fopen(path.c_str(), "w");
    impl_->path = path;
    if (!impl_->f) fail(Errc::BadFile, "cannot open for writing: " + path);
    std::fprintf(impl_->f, "ticksize=%.10g\n", tick_size);
}

EventWriter::~EventWriter() {
    close();
    delete impl_;
}

void EventWriter::write(const OrderEvent& ev) {
    std::fprintf(impl_->f, "%" PRId64 ",%" PRIu64 ",%c,%s,%" PRId64 ",%" PRId64 "\n", ev.timestamp_ns, ev.order_id,
                 side_char(ev.side), action_str(ev.action), ev.action == Action::Add ? ev.price : int64_t{0},
                 ev.quantity);
}

void EventWriter::close() {
    if (impl_->f) {
        std::fclose(impl_->f);
        impl_->f = nullptr;
    }
}

struct EventReader::Impl {
    FILE* f = nullptr;
    double tick_size = 0.0;
    size_t lineno = 0;
    int64_t last_ts = -1;
    std::string path;
};

EventReader::EventReader(const std::string& path) : impl_(new Impl) {
    impl_->f = std::fopen(path.c_str(), "r");
    impl_->path = path;
    if (!impl_->f) fail(Errc::BadFile, "cannot open for reading: " + path);
    char header[128];
    if (!std::fgets(header, sizeof(header), impl_->f) || std::strncmp(header, "ticksize=", 9) != 0)
        fail(Errc::BadFile, "missing ticksize header in " + path);
    impl_->tick_size = std::strtod(header + 9, nullptr);
    if (impl_->tick_size <= 0.0) fail(Errc::BadFile, "nonpositive tick size in " + path);
    impl_->lineno = 1;
}

EventReader::~EventReader() {
    if (impl_->f) std::fclose(impl_->f);
    delete impl_;
}

double EventReader::tick_size() const { return impl_->tick_size; }

size_t EventReader::line_number() const { return impl_->lineno; }

bool EventReader::next(OrderEvent& ev) {
    char line[192];
    if (!std::fgets(line, sizeof(line), impl_->f)) return false;
    ++impl_->lineno;
    char side = 0;
    char action[8] = {0};
    int64_t ts, price, qty;
    uint64_t id;
    int n = std::sscanf(line, "%" SCNd64 ",%" SCNu64 ",%c,%3[A-Z],%" SCNd64 ",%" SCNd64, &ts, &id, &side, action,
                        &price, &qty);
    if (n != 6)
        fail(Errc::BadFile, impl_->path + ": malformed event at line " + std::to_string(impl_->lineno));
    if (ts < impl_->last_ts)
        fail(Errc::InvariantViolation,
             impl_->path + ": timestamps regress at line " + std::to_string(impl_->lineno));
    impl_->last_ts = ts;
    ev.timestamp_ns = ts;
    ev.order_id = id;
    if (side == 'B')
        ev.side = Side::Bid;
    else if (side == 'A')
        ev.side = Side::Ask;
    else
        fail(Errc::BadFile, impl_->path + ": bad side at line " + std::to_string(impl_->lineno));
    if (std::strcmp(action, "ADD") == 0)
        ev.action = Action::Add;
    else if (std::strcmp(action, "CXL") == 0)
        ev.action = Action::Cancel;
    else if (std::strcmp(action, "EXE") == 0)
        ev.action = Action::Execute;
    else
        fail(Errc::BadFile, impl_->path + ": bad action at line " + std::to_string(impl_->lineno));
    ev.price = price;
    ev.quantity = qty;
    if (ev.quantity <= 0)
        fail(Errc::BadFile, impl_->path + ": nonpositive quantity at line " + std::to_string(impl_->lineno));
    return true;
}

void write_events(const std::string& path, double tick_size, const std::vector<OrderEvent>& events) {
    EventWriter w(path, tick_size);
    for (const auto& ev : events) w.write(ev);
}

std::vector<OrderEvent> read_events(const std::string& path, double* tick_size) {
    EventReader r(path);
    if (tick_size) *tick_size = r.tick_size();
    std::vector<OrderEvent> out;
    OrderEvent ev;
    while (r.next(ev)) out.push_back(ev);
    return out;
}

} // namespace jumpcast::lob
