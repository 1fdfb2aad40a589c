#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <numeric>

#include "jumpcast/lob/event_io.hpp"
#include "jumpcast/lob/order_book.hpp"
#include "jumpcast/lob/replay.hpp"
#include "jumpcast/lob/snapshot_io.hpp"
#include "support/naive_book.hpp"

using namespace jumpcast;
using namespace jumpcast::lob;

namespace {

OrderEvent add(int64_t ts, uint64_t id, Side side, int64_t price, int64_t qty) {
    return {ts, id, side, Action::Add, price, qty};
}

OrderEvent remove_ev(int64_t ts, uint64_t id, Side side, Action act, int64_t qty) {
    return {ts, id, side, act, 0, qty};
}

void check_aggregates(const OrderBook& book) {
    std::map<int64_t, int64_t> asks, bids;
    for (const auto& [id, o] : book.orders()) {
        (o.side == Side::Ask ? asks : bids)[o.price] += o.remaining;
    }
    REQUIRE(asks.size() == book.ask_levels().size());
    REQUIRE(bids.size() == book.bid_levels().size());
    for (const auto& [p, v] : book.ask_levels()) {
        CHECK(v == asks[p]);
        CHECK(v > 0);
    }
    for (const auto& [p, v] : book.bid_levels()) {
        CHECK(v == bids[p]);
        CHECK(v > 0);
    }
}

} // namespace

TEST_CASE("apply_event add, partial execute, over-removal") {
    OrderBook book;
    book.apply(add(1, 1, Side::Ask, 10002, 10));
    REQUIRE(book.ask_levels().at(10002) == 10);

    book.apply(remove_ev(2, 1, Side::Ask, Action::Execute, 4));
    CHECK(book.ask_levels().at(10002) == 6);
    REQUIRE(book.find(1) != nullptr);
    CHECK(book.find(1)->remaining == 6);

    CHECK_THROWS_AS(book.apply(remove_ev(3, 1, Side::Ask, Action::Cancel, 7)), Error);
    try {
        book.apply(remove_ev(3, 1, Side::Ask, Action::Cancel, 7));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::OverRemoval);
    }
    // failed event leaves the book unchanged
    CHECK(book.ask_levels().at(10002) == 6);
    CHECK(book.find(1)->remaining == 6);
}

TEST_CASE("apply_event unknown order id") {
    OrderBook book;
    try {
        book.apply(remove_ev(1, 42, Side::Bid, Action::Cancel, 1));
        FAIL("expected UnknownOrderId");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::UnknownOrderId);
    }
    CHECK(book.empty());
}

TEST_CASE("snapshot basic, empty, and overfull book") {
    OrderBook book;
    book.apply(add(1, 1, Side::Ask, 10002, 10));
    book.apply(add(2, 2, Side::Bid, 9998, 5));
    BookSnapshot s = book.snapshot(7);
    CHECK(s.second == 7);
    CHECK(s.asks[0].price == 10002);
    CHECK(s.asks[0].volume == 10);
    CHECK(s.bids[0].price == 9998);
    CHECK(s.bids[0].volume == 5);
    for (int i = 1; i < kSnapshotLevels; ++i) {
        CHECK(s.asks[i].price == 0);
        CHECK(s.asks[i].volume == 0);
        CHECK(s.bids[i].price == 0);
        CHECK(s.bids[i].volume == 0);
    }
    check_snapshot(s);

    OrderBook empty_book;
    BookSnapshot e = empty_book.snapshot(0);
    for (int i = 0; i < kSnapshotLevels; ++i) {
        CHECK(e.asks[i].price == 0);
        CHECK(e.bids[i].price == 0);
    }

    // twelve distinct ask prices: the ten lowest survive
    OrderBook wide;
    for (int i = 0; i < 12; ++i) wide.apply(add(i + 1, 100 + i, Side::Ask, 10010 + i, 1));
    BookSnapshot w = wide.snapshot(1);
    for (int i = 0; i < kSnapshotLevels; ++i) CHECK(w.asks[i].price == 10010 + i);
}

TEST_CASE("mid price and empty side") {
    OrderBook book;
    book.apply(add(1, 1, Side::Ask, 10002, 1));
    book.apply(add(2, 2, Side::Bid, 10000, 1));
    CHECK(mid_price(book.snapshot(1)) == doctest::Approx(10001.0));

    OrderBook halfbook;
    halfbook.apply(add(1, 1, Side::Ask, 10003, 1));
    halfbook.apply(add(2, 2, Side::Bid, 10000, 1));
    CHECK(mid_price(halfbook.snapshot(1)) == doctest::Approx(10001.5));

    OrderBook askless;
    askless.apply(add(1, 1, Side::Bid, 10000, 1));
    try {
        mid_price(askless.snapshot(1));
        FAIL("expected EmptySide");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::EmptySide);
    }
}

TEST_CASE("crossed book rejected at snapshot time") {
    OrderBook book;
    book.apply(add(1, 1, Side::Bid, 10005, 1));
    book.apply(add(2, 2, Side::Ask, 10004, 1));
    try {
        book.snapshot(1);
        FAIL("expected InvariantViolation");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InvariantViolation);
    }
}

TEST_CASE("replay of an empty 6.5 hour session") {
    auto snaps = replay({}, 23400);
    REQUIRE(snaps.size() == 23400);
    CHECK(snaps.front().second == 1);
    CHECK(snaps.back().second == 23400);
    for (const auto& s : snaps) {
        CHECK(s.asks[0].price == 0);
        CHECK(s.bids[0].price == 0);
    }
}

TEST_CASE("replay boundary semantics") {
    // add at t = 1.5 s: invisible at the 1 s boundary, visible from 2 s on
    std::vector<OrderEvent> events = {add(1'500'000'000, 1, Side::Ask, 10002, 3)};
    auto snaps = replay(events, 5);
    REQUIRE(snaps.size() == 5);
    CHECK(snaps[0].asks[0].price == 0);
    for (size_t i = 1; i < snaps.size(); ++i) CHECK(snaps[i].asks[0].price == 10002);

    // an event exactly on a boundary belongs to that boundary
    std::vector<OrderEvent> on_boundary = {add(2'000'000'000, 1, Side::Bid, 9999, 1)};
    auto snaps2 = replay(on_boundary, 3);
    CHECK(snaps2[0].bids[0].price == 0);
    CHECK(snaps2[1].bids[0].price == 9999);
}

TEST_CASE("replay output count is ceil(session / interval)") {
    CHECK(replay({}, 10, 3).size() == 4);
    CHECK(replay({}, 9, 3).size() == 3);
    CHECK(replay({}, 1, 1).size() == 1);
}

TEST_CASE("incremental book matches from-scratch rebuild on random streams") {
    for (uint64_t seed = 1; seed <= 4; ++seed) {
        Rng rng(seed * 977);
        const int64_t session = 60;
        auto events = testsupport::random_events(rng, 20000, session * 1'000'000'000);
        auto snaps = replay(events, session);
        REQUIRE(snaps.size() == static_cast<size_t>(session));
        size_t e = 0;
        for (const auto& s : snaps) {
            while (e < events.size() && events[e].timestamp_ns <= int64_t(s.second) * 1'000'000'000) ++e;
            BookSnapshot want = testsupport::naive_snapshot(events, e, s.second);
            CHECK(s == want);
            check_snapshot(s);
        }
    }
}

TEST_CASE("aggregate consistency after random event sequences") {
    Rng rng(4242);
    auto events = testsupport::random_events(rng, 5000, 1'000'000'000);
    OrderBook book;
    for (size_t i = 0; i < events.size(); ++i) {
        book.apply(events[i]);
        if (i % 250 == 0) check_aggregates(book);
    }
    check_aggregates(book);
}

TEST_CASE("event file round trip") {
    Rng rng(7);
    auto events = testsupport::random_events(rng, 300, 5'000'000'000);
    std::string path = "test_events_roundtrip.txt";
    write_events(path, 0.01, events);
    double tick = 0.0;
    auto back = read_events(path, &tick);
    CHECK(tick == doctest::Approx(0.01));
    REQUIRE(back.size() == events.size());
    for (size_t i = 0; i < events.size(); ++i) {
        CHECK(back[i].timestamp_ns == events[i].timestamp_ns);
        CHECK(back[i].order_id == events[i].order_id);
        CHECK(back[i].side == events[i].side);
        CHECK(back[i].action == events[i].action);
        if (events[i].action == Action::Add) CHECK(back[i].price == events[i].price);
        CHECK(back[i].quantity == events[i].quantity);
    }
    std::remove(path.c_str());
}

TEST_CASE("snapshot file round trip") {
    Rng rng(11);
    auto events = testsupport::random_events(rng, 2000, 10'000'000'000);
    auto snaps = replay(events, 10);
    std::string path = "test_snaps_roundtrip.bin";
    write_snapshots(path, snaps);
    auto back = read_snapshots(path);
    REQUIRE(back.size() == snaps.size());
    for (size_t i = 0; i < snaps.size(); ++i) CHECK(back[i] == snaps[i]);
    std::remove(path.c_str());
}
