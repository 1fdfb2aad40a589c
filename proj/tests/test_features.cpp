#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "jumpcast/feat/feature_io.hpp"
#include "jumpcast/feat/features.hpp"
#include "jumpcast/lob/replay.hpp"
#include "support/naive_book.hpp"

using namespace jumpcast;
using namespace jumpcast::feat;
using jumpcast::lob::Action;
using jumpcast::lob::BookSnapshot;
using jumpcast::lob::OrderEvent;
using jumpcast::lob::Side;

namespace {

BookSnapshot two_level_snapshot() {
    BookSnapshot s;
    s.second = 1;
    s.asks[0] = {10002, 10};
    s.bids[0] = {9998, 5};
    return s;
}

} // namespace

TEST_CASE("slot layout is stable and total") {
    const auto& names = slot_names();
    REQUIRE(names.size() == size_t(kNumSlots));
    CHECK(names[0] == "v1.p_ask_1");
    CHECK(names[kV2Offset] == "v2.spread_1");
    CHECK(names[kV7Offset] == "v7.lambda_la");
    CHECK(names[kV10Offset] == "v10.hour");
    for (int i = 0; i < kNumSlots; ++i) CHECK(slot_index(names[size_t(i)]) == i);
    CHECK(slot_index("nope") == -1);
}

TEST_CASE("basic v1 layout and round trip") {
    BookSnapshot zero{};
    auto vz = basic_v1(zero);
    for (double x : vz) CHECK(x == 0.0);

    auto s = two_level_snapshot();
    auto v = basic_v1(s);
    CHECK(v[0] == 10002);
    CHECK(v[1] == 10);
    CHECK(v[2] == 9998);
    CHECK(v[3] == 5);
    for (int i = 4; i < 40; ++i) CHECK(v[size_t(i)] == 0.0);

    // v1 is a bijection onto the snapshot levels
    BookSnapshot rebuilt{};
    rebuilt.second = s.second;
    for (int i = 0; i < 10; ++i) {
        rebuilt.asks[i] = {int64_t(v[size_t(4 * i)]), int64_t(v[size_t(4 * i + 1)])};
        rebuilt.bids[i] = {int64_t(v[size_t(4 * i + 2)]), int64_t(v[size_t(4 * i + 3)])};
    }
    CHECK(rebuilt == s);
}

TEST_CASE("time insensitive sets v2 to v5") {
    auto s = two_level_snapshot();
    s.bids[0] = {10000, 5};
    auto v = time_insensitive_v2_v5(s);
    CHECK(v[0] == 2.0);        // level-1 spread
    CHECK(v[1] == 10001.0);    // level-1 mid

    // degenerate uniform book: every ask at p, every bid at q
    BookSnapshot u{};
    for (int i = 0; i < 10; ++i) {
        u.asks[i] = {500, 3};
        u.bids[i] = {400, 7};
    }
    auto vu = time_insensitive_v2_v5(u);
    for (int i = 0; i < 9; ++i) {
        CHECK(vu[size_t(20 + 2 * i)] == 0.0);
        CHECK(vu[size_t(20 + 2 * i + 1)] == 0.0);
    }
    CHECK(vu[38] == 500.0);
    CHECK(vu[39] == 400.0);
    CHECK(vu[40] == 3.0);
    CHECK(vu[41] == 7.0);
    CHECK(vu[42] == 100.0);
    CHECK(vu[43] == -4.0);
}

TEST_CASE("v2 to v5 equal a brute-force recomputation from v1") {
    Rng rng(19);
    auto events = testsupport::random_events(rng, 3000, 5'000'000'000);
    auto snaps = lob::replay(events, 5);
    for (const auto& s : snaps) {
        auto v1 = basic_v1(s);
        auto v = time_insensitive_v2_v5(s);
        double spa = 0, spb = 0, sva = 0, svb = 0;
        for (int i = 0; i < 10; ++i) {
            double pa = v1[size_t(4 * i)], va = v1[size_t(4 * i + 1)];
            double pb = v1[size_t(4 * i + 2)], vb = v1[size_t(4 * i + 3)];
            CHECK(v[size_t(2 * i)] == pa - pb);
            CHECK(v[size_t(2 * i + 1)] == (pa + pb) / 2.0);
            spa += pa;
            spb += pb;
            sva += va;
            svb += vb;
        }
        for (int i = 0; i < 9; ++i) {
            CHECK(v[size_t(20 + 2 * i)] == std::fabs(v1[size_t(4 * (i + 1))] - v1[size_t(4 * i)]));
            CHECK(v[size_t(21 + 2 * i)] == std::fabs(v1[size_t(4 * (i + 1) + 2)] - v1[size_t(4 * i + 2)]));
        }
        CHECK(v[38] == doctest::Approx(spa / 10).epsilon(1e-15));
        CHECK(v[39] == doctest::Approx(spb / 10).epsilon(1e-15));
        CHECK(v[40] == doctest::Approx(sva / 10).epsilon(1e-15));
        CHECK(v[41] == doctest::Approx(svb / 10).epsilon(1e-15));
        CHECK(v[42] == doctest::Approx((spa - spb) / 10).epsilon(1e-15));
        CHECK(v[43] == doctest::Approx((sva - svb) / 10).epsilon(1e-15));
    }
}

TEST_CASE("derivatives v6") {
    std::array<double, 40> a{};
    a.fill(3.0);
    auto zero = derivatives_v6(a, a, 60.0);
    for (double x : zero) CHECK(x == 0.0);

    auto b = a;
    b[0] += 2.0;  // ask L1 price moved two ticks over one minute
    auto d = derivatives_v6(b, a, 60.0);
    CHECK(d[0] == doctest::Approx(2.0 / 60.0).epsilon(1e-15));
    for (int i = 1; i < 40; ++i) CHECK(d[size_t(i)] == 0.0);
}

TEST_CASE("clock v10 hour buckets") {
    CHECK(clock_v10(34200) == 9);   // 9:30:00
    CHECK(clock_v10(35999) == 9);   // 9:59:59
    CHECK(clock_v10(36000) == 10);  // 10:00:00
    CHECK(clock_v10(50520) == 14);  // 14:02, the 2 pm cluster lands in bucket 14
}

TEST_CASE("intensities from per-second counts") {
    // 120 limit-ask adds spread uniformly over a minute
    std::vector<std::array<int64_t, kNumEventClasses>> counts(200);
    for (int s = 61; s <= 120; ++s) counts[size_t(s)][0] = 2;
    auto slots = intensities_v7_v9(counts, 120, 60, 600);
    CHECK(slots.v7[0] == doctest::Approx(2.0));
    // long window holds the same 120 events over 600 s
    CHECK(slots.v8[0] == 1.0);  // 2.0 > 0.2

    // no events at all
    std::vector<std::array<int64_t, kNumEventClasses>> empty(100);
    auto z = intensities_v7_v9(empty, 80, 60, 600);
    for (double x : z.v7) CHECK(x == 0.0);
    for (double x : z.v8) CHECK(x == 0.0);
    for (double x : z.v9) CHECK(x == 0.0);
}

TEST_CASE("event classification covers the la/lb/ma/mb/ca/cb taxonomy") {
    CHECK(classify_event(Side::Ask, Action::Add) == EventClass::LimitAsk);
    CHECK(classify_event(Side::Bid, Action::Add) == EventClass::LimitBid);
    CHECK(classify_event(Side::Ask, Action::Execute) == EventClass::MarketAsk);
    CHECK(classify_event(Side::Bid, Action::Execute) == EventClass::MarketBid);
    CHECK(classify_event(Side::Ask, Action::Cancel) == EventClass::CancelAsk);
    CHECK(classify_event(Side::Bid, Action::Cancel) == EventClass::CancelBid);
}

TEST_CASE("assembled frames match an independent recomputation") {
    Rng rng(4711);
    const int64_t session = 1500;
    auto events = testsupport::random_events(rng, 30000, session * 1'000'000'000);
    auto snaps = lob::replay(events, session);
    FeatureConfig cfg;
    auto frames = assemble(snaps, events, cfg);
    REQUIRE(frames.size() == size_t(session));

    // independent per-second counting straight off the raw events
    std::vector<std::array<int64_t, kNumEventClasses>> counts(size_t(session) + 1);
    for (const auto& ev : events) {
        int64_t bucket = (ev.timestamp_ns + 999'999'999) / 1'000'000'000;
        if (bucket >= 1 && bucket <= session)
            counts[size_t(bucket)][int(classify_event(ev.side, ev.action))] += 1;
    }

    std::vector<std::array<double, 40>> v1_hist(size_t(session) + 1);
    for (int64_t t = 1; t <= session; ++t) {
        const auto& fr = frames[size_t(t - 1)];
        CHECK(fr.second == t);
        auto v1 = basic_v1(snaps[size_t(t - 1)]);
        v1_hist[size_t(t)] = v1;
        auto v25 = time_insensitive_v2_v5(snaps[size_t(t - 1)]);
        for (int k = 0; k < 40; ++k) CHECK(fr.v[size_t(kV1Offset + k)] == v1[size_t(k)]);
        for (int k = 0; k < 44; ++k) CHECK(fr.v[size_t(kV2Offset + k)] == v25[size_t(k)]);

        if (t > cfg.dt_short) {
            auto v6 = derivatives_v6(v1, v1_hist[size_t(t - cfg.dt_short)], double(cfg.dt_short));
            for (int k = 0; k < 40; ++k) CHECK(fr.v[size_t(kV6Offset + k)] == v6[size_t(k)]);
        } else {
            for (int k = 0; k < 40; ++k) CHECK(fr.v[size_t(kV6Offset + k)] == 0.0);
        }

        auto want = intensities_v7_v9(counts, t, cfg.dt_short, cfg.dt_long);
        for (int c = 0; c < 6; ++c) CHECK(fr.v[size_t(kV7Offset + c)] == want.v7[size_t(c)]);
        for (int c = 0; c < 4; ++c) CHECK(fr.v[size_t(kV8Offset + c)] == want.v8[size_t(c)]);
        for (int c = 0; c < 4; ++c) CHECK(fr.v[size_t(kV9Offset + c)] == want.v9[size_t(c)]);
        CHECK(fr.v[kV10Offset] == double((34200 + t) / 3600));

        // v8 entries are indicators; intensity slots are nonnegative
        for (int c = 0; c < 4; ++c) CHECK((fr.v[size_t(kV8Offset + c)] == 0.0 || fr.v[size_t(kV8Offset + c)] == 1.0));
        for (int c = 0; c < 6; ++c) CHECK(fr.v[size_t(kV7Offset + c)] >= 0.0);
    }
}

TEST_CASE("translation covariance: shifting all prices by c ticks") {
    Rng rng(99);
    auto events = testsupport::random_events(rng, 4000, 600'000'000'000);
    auto shifted_events = events;
    const int64_t c = 250;
    for (auto& ev : shifted_events)
        if (ev.action == Action::Add) ev.price += c;
    FeatureConfig cfg;
    auto frames = assemble(lob::replay(events, 600), events, cfg);
    auto shifted = assemble(lob::replay(shifted_events, 600), shifted_events, cfg);
    std::vector<bool> full_history(frames.size(), false);
    for (size_t t = 0; t < frames.size(); ++t) {
        const auto& a = frames[t].v;
        const auto& b = shifted[t].v;
        for (int i = 0; i < 10; ++i) {
            if (a[size_t(4 * i)] != 0.0) CHECK(b[size_t(4 * i)] == a[size_t(4 * i)] + c);          // ask price
            if (a[size_t(4 * i + 2)] != 0.0) CHECK(b[size_t(4 * i + 2)] == a[size_t(4 * i + 2)] + c);  // bid price
            CHECK(b[size_t(4 * i + 1)] == a[size_t(4 * i + 1)]);  // volumes unchanged
            CHECK(b[size_t(4 * i + 3)] == a[size_t(4 * i + 3)]);
        }
        bool full_book = true;  // spreads/mids shift only where levels are populated
        for (int i = 0; i < 10; ++i)
            if (a[size_t(4 * i)] == 0.0 || a[size_t(4 * i + 2)] == 0.0) full_book = false;
        full_history[t] = full_book;
        if (full_book) {
            for (int i = 0; i < 10; ++i) {
                CHECK(b[size_t(kV2Offset + 2 * i)] == a[size_t(kV2Offset + 2 * i)]);  // spreads invariant
                CHECK(b[size_t(kV2Offset + 2 * i + 1)] ==
                      doctest::Approx(a[size_t(kV2Offset + 2 * i + 1)] + c).epsilon(1e-12));  // mids shift
            }
            for (int k = 0; k < 18; ++k) CHECK(b[size_t(kV3Offset + k)] == a[size_t(kV3Offset + k)]);
            CHECK(b[kV5Offset] == doctest::Approx(a[kV5Offset]).epsilon(1e-12));
            CHECK(b[kV5Offset + 1] == a[kV5Offset + 1]);
        }
        // price derivatives cancel the shift when both endpoints are populated
        if (t >= size_t(cfg.dt_short) && full_book && full_history[t - size_t(cfg.dt_short)]) {
            for (int i = 0; i < 10; ++i) {
                CHECK(b[size_t(kV6Offset + 4 * i)] == doctest::Approx(a[size_t(kV6Offset + 4 * i)]).epsilon(1e-12));
                CHECK(b[size_t(kV6Offset + 4 * i + 2)] ==
                      doctest::Approx(a[size_t(kV6Offset + 4 * i + 2)]).epsilon(1e-12));
            }
        }
        // intensities see the same event classes either way
        for (int k = 0; k < 6; ++k) CHECK(b[size_t(kV7Offset + k)] == a[size_t(kV7Offset + k)]);
    }
}

TEST_CASE("counter additivity over a window partition") {
    Rng rng(3);
    std::vector<std::array<int64_t, kNumEventClasses>> counts(301);
    for (int s = 1; s <= 300; ++s)
        for (int c = 0; c < kNumEventClasses; ++c) counts[size_t(s)][size_t(c)] = int64_t(rng.uniform_int(5));
    // lambda over (0,300] equals the average of lambdas over (0,150] and (150,300]
    for (int c = 0; c < kNumEventClasses; ++c) {
        auto whole = intensities_v7_v9(counts, 300, 300, 300).v7[size_t(c)];
        auto first = intensities_v7_v9(counts, 150, 150, 300).v7[size_t(c)];
        auto second_half = intensities_v7_v9(counts, 300, 150, 300).v7[size_t(c)];
        CHECK(whole == doctest::Approx((first + second_half) / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("empty market days: zero slots except the clock") {
    FeatureConfig cfg;
    std::vector<lob::BookSnapshot> snaps(46800);
    for (size_t i = 0; i < snaps.size(); ++i) snaps[i].second = uint32_t(i + 1);
    auto frames = assemble(snaps, {}, cfg);
    REQUIRE(frames.size() == 46800);  // two days
    for (const auto& fr : frames) {
        double nonclock = 0.0;
        for (int k = 0; k < kNumSlots - 1; ++k) nonclock += std::fabs(fr.v[size_t(k)]);
        REQUIRE(nonclock == 0.0);
        int64_t in_day = (fr.second - 1) % 23400 + 1;
        REQUIRE(fr.v[kV10Offset] == double((34200 + in_day) / 3600));
    }
}

TEST_CASE("misaligned snapshot stream is rejected") {
    FeatureConfig cfg;
    FrameAssembler fa(cfg);
    lob::BookSnapshot s;
    s.second = 2;  // expected 1
    try {
        fa.push_snapshot(s);
        FAIL("expected StreamMisalignment");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::StreamMisalignment);
    }
}

TEST_CASE("feature file round trip") {
    Rng rng(12);
    auto events = testsupport::random_events(rng, 2000, 120'000'000'000);
    auto frames = assemble(lob::replay(events, 120), events, FeatureConfig{});
    std::string path = "test_features_roundtrip.bin";
    write_features(path, frames);
    FeatureReader r(path);
    CHECK(r.n_frames() == frames.size());
    CHECK(r.names() == slot_names());
    auto back = read_features(path);
    REQUIRE(back.size() == frames.size());
    for (size_t i = 0; i < frames.size(); ++i) {
        CHECK(back[i].second == frames[i].second);
        CHECK(back[i].v == frames[i].v);
    }
    std::remove(path.c_str());
}
