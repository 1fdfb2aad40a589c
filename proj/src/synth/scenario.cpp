#include "jumpcast/synth/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "jumpcast/common/error.hpp"
#include "jumpcast/lob/event_io.hpp"

namespace jumpcast::synth {

using lob::Action;
using lob::OrderEvent;
using lob::Side;

namespace {

constexpr int64_t kNs = 1'000'000'000;
constexpr uint64_t kInjectorIdBase = uint64_t{1} << 40;

// Order registry shared by the flow generator and the signal injector:
// price-sorted FIFO queues per side plus O(1) random access to live ids.
class BookRegistry {
public:
    struct Ord {
        Side side;
        int64_t price;
        int64_t remaining;
    };

    void add(uint64_t id, Side side, int64_t price, int64_t qty) {
        orders_.emplace(id, Ord{side, price, qty});
        queue(side)[price].push_back(id);
        volume(side)[price] += qty;
        idx_[id] = live_.size();
        live_.push_back(id);
        last_best_[side == Side::Ask] = best_price(side);
    }

    // Returns true when the order is fully removed.
    bool reduce(uint64_t id, int64_t qty) {
        auto it = orders_.find(id);
        Ord& o = it->second;
        o.remaining -= qty;
        auto& vol = volume(o.side)[o.price];
        vol -= qty;
        if (vol == 0) volume(o.side).erase(o.price);
        if (o.remaining == 0) {
            size_t pos = idx_[id];
            live_[pos] = live_.back();
            idx_[live_[pos]] = pos;
            live_.pop_back();
            idx_.erase(id);
            orders_.erase(it);
            return true;
        }
        return false;
    }

    bool alive(uint64_t id) const { return orders_.count(id) > 0; }
    const Ord* find(uint64_t id) const {
        auto it = orders_.find(id);
        return it == orders_.end() ? nullptr : &it->second;
    }

    uint64_t random_live(Rng& rng) const { return live_.empty() ? 0 : live_[rng.uniform_int(live_.size())]; }
    size_t live_count() const { return live_.size(); }

    // Oldest order at the best price, skipping retired queue entries.
    // Best means lowest ask, highest bid.
    uint64_t best_order(Side side) {
        auto& q = queue(side);
        while (!q.empty()) {
            auto it = side == Side::Ask ? q.begin() : std::prev(q.end());
            auto& dq = it->second;
            while (!dq.empty()) {
                uint64_t id = dq.front();
                const Ord* o = find(id);
                if (o && o->price == it->first && o->side == side) return id;
                dq.pop_front();
            }
            q.erase(it);
        }
        return 0;
    }

    int64_t best_price(Side side) {
        uint64_t id = best_order(side);
        return id == 0 ? 0 : find(id)->price;
    }

    // Total resting volume within the n best price levels.
    int64_t visible_volume(Side side, int n_levels) const {
        const auto& vol = side == Side::Ask ? ask_volume_ : bid_volume_;
        int64_t sum = 0;
        int taken = 0;
        if (side == Side::Ask) {
            for (auto it = vol.begin(); it != vol.end() && taken < n_levels; ++it, ++taken) sum += it->second;
        } else {
            for (auto it = vol.rbegin(); it != vol.rend() && taken < n_levels; ++it, ++taken) sum += it->second;
        }
        return sum;
    }

    // Live ids at the n best levels, best price first, FIFO within a level.
    std::vector<uint64_t> top_orders(Side side, int n_levels) {
        std::vector<uint64_t> out;
        auto& q = queue(side);
        int taken = 0;
        auto scan = [&](auto begin, auto end) {
            for (auto it = begin; it != end && taken < n_levels; ++it) {
                bool any = false;
                for (uint64_t id : it->second) {
                    const Ord* o = find(id);
                    if (o && o->price == it->first && o->side == side) {
                        out.push_back(id);
                        any = true;
                    }
                }
                if (any) ++taken;
            }
        };
        if (side == Side::Ask)
            scan(q.begin(), q.end());
        else
            scan(q.rbegin(), q.rend());
        return out;
    }

    // Price of the most recent best level seen on a side; survives emptying.
    int64_t last_best(Side side) const { return last_best_[side == Side::Ask]; }
    void note_best(Side side) {
        int64_t id = 0;
        auto& vol = side == Side::Ask ? ask_volume_ : bid_volume_;
        if (!vol.empty()) id = side == Side::Ask ? vol.begin()->first : vol.rbegin()->first;
        if (id != 0) last_best_[side == Side::Ask] = id;
    }

    std::map<int64_t, std::deque<uint64_t>>& queue(Side side) { return side == Side::Ask ? asks_ : bids_; }
    std::map<int64_t, int64_t>& volume(Side side) { return side == Side::Ask ? ask_volume_ : bid_volume_; }

private:
    std::unordered_map<uint64_t, Ord> orders_;
    std::unordered_map<uint64_t, size_t> idx_;
    std::vector<uint64_t> live_;
    std::map<int64_t, std::deque<uint64_t>> asks_;
    std::map<int64_t, std::deque<uint64_t>> bids_;
    std::map<int64_t, int64_t> ask_volume_;
    std::map<int64_t, int64_t> bid_volume_;
    int64_t last_best_[2] = {0, 0};
};

int ladder_level(Rng& rng) {
    // geometric-ish preference for levels near the mid
    for (int l = 0; l < 9; ++l)
        if (rng.uniform() < 0.3) return l;
    return 9;
}

} // namespace

std::vector<double> PricePath::minute_marks() const {
    std::vector<double> out;
    if (mid.empty()) return out;
    int64_t last = static_cast<int64_t>(mid.size()) - 1;
    out.reserve(static_cast<size_t>(last / 60));
    for (int64_t s = 60; s <= last; s += 60) out.push_back(mid[static_cast<size_t>(s)]);
    return out;
}

PricePath gen_price_path(const ScenarioConfig& cfg) {
    if (cfg.days <= 0 || cfg.seconds_per_day % 60 != 0)
        fail(Errc::BadConfig, "scenario needs positive days and whole minutes per day");
    Rng path_rng = Rng(cfg.seed).child("price-path");
    Rng jump_rng = Rng(cfg.seed).child("jump-times");

    const int64_t total = cfg.total_seconds();
    const int64_t mpd = cfg.minutes_per_day();
    const double sigma_sec = cfg.sigma_per_minute / std::sqrt(60.0);

    PricePath path;
    path.mid.assign(static_cast<size_t>(total) + 1, 0.0);

    // plant jumps per day, skipping warmup days and each day's first minute
    std::set<int64_t> used_minutes;
    for (int d = cfg.warmup_days; d < cfg.days; ++d) {
        uint64_t count = jump_rng.poisson(cfg.jump_intensity_per_day);
        for (uint64_t k = 0; k < count; ++k) {
            int64_t minute = 0;
            for (int attempt = 0; attempt < 64; ++attempt) {
                minute = static_cast<int64_t>(d) * mpd + 1 + static_cast<int64_t>(jump_rng.uniform_int(static_cast<uint64_t>(mpd - 1)));
                if (!used_minutes.count(minute)) break;
            }
            if (used_minutes.count(minute)) continue;
            used_minutes.insert(minute);
            JumpTruth truth;
            truth.minute_index = minute;
            truth.second = 60 * minute + 1 + static_cast<int64_t>(jump_rng.uniform_int(60));
            truth.direction = jump_rng.bernoulli(0.5) ? 1 : -1;
            truth.size_sigma = cfg.jump_size_sigma;
            path.jumps.push_back(truth);
        }
    }
    std::sort(path.jumps.begin(), path.jumps.end(),
              [](const JumpTruth& a, const JumpTruth& b) { return a.second < b.second; });

    std::unordered_map<int64_t, double> jump_at;
    for (const auto& j : path.jumps) jump_at[j.second] = j.direction * j.size_sigma * cfg.sigma_per_minute;

    double logp = std::log(static_cast<double>(cfg.start_price_ticks));
    path.mid[0] = std::exp(logp);
    for (int64_t s = 1; s <= total; ++s) {
        logp += sigma_sec * path_rng.normal();
        auto it = jump_at.find(s);
        if (it != jump_at.end()) logp += it->second;
        path.mid[static_cast<size_t>(s)] = std::exp(logp);
    }
    return path;
}

void gen_order_flow(const PricePath& path, const ScenarioConfig& cfg, const EventSink& sink) {
    const int64_t total = cfg.total_seconds();
    if (static_cast<int64_t>(path.mid.size()) != total + 1)
        fail(Errc::InvariantViolation, "price path does not match the scenario length");

    Rng rng = Rng(cfg.seed).child("order-flow");
    BookRegistry reg;
    uint64_t next_id = 1;

    const double add_rate = cfg.orders_per_minute / 60.0;
    const double exe_rate = cfg.trades_per_minute / 60.0;
    const double cxl_rate = cfg.cancels_per_minute / 60.0;
    const int64_t prune_width = 13;
    // housekeeping cancels borrow from the drawn cancel budget across seconds
    uint64_t cancel_debt = 0;

    for (int64_t s = 1; s <= total; ++s) {
        int64_t seq = 0;
        auto stamp = [&]() { return (s - 1) * kNs + (++seq); };
        const double mid = path.mid[static_cast<size_t>(s)];
        const int64_t base_bid = static_cast<int64_t>(std::floor(mid));
        const int64_t base_ask = base_bid + 1;

        auto emit_add = [&](Side side, int64_t price, int64_t qty) {
            OrderEvent ev{stamp(), next_id++, side, Action::Add, price, qty};
            reg.add(ev.order_id, side, price, qty);
            sink(ev);
        };
        auto emit_remove = [&](uint64_t id, Action act, int64_t qty) {
            const auto* o = reg.find(id);
            OrderEvent ev{stamp(), id, o->side, act, 0, qty};
            reg.reduce(id, qty);
            sink(ev);
        };

        const bool any_flow = cfg.orders_per_minute > 0.0;
        if (s == 1 && any_flow) {
            // opening book: three orders on each of the ten ladder levels
            for (int l = 0; l < 10; ++l) {
                for (int k = 0; k < 3; ++k) {
                    emit_add(Side::Ask, base_ask + l, 60 + static_cast<int64_t>(rng.uniform_int(80)));
                    emit_add(Side::Bid, base_bid - l, 60 + static_cast<int64_t>(rng.uniform_int(80)));
                }
            }
        }

        // cancel orders stranded on the wrong side of the new mid, then prune
        // the far tails so the book width stays bounded
        int64_t housekeeping = 0;
        auto sweep = [&](Side side) {
            auto& vol = reg.volume(side);
            while (!vol.empty()) {
                int64_t price = side == Side::Ask ? vol.begin()->first : vol.rbegin()->first;
                bool crossed = side == Side::Ask ? price < base_ask : price > base_bid;
                bool far = side == Side::Ask ? price > base_ask + prune_width : price < base_bid - prune_width;
                if (!crossed && !far) break;
                uint64_t id = 0;
                auto& q = reg.queue(side)[price];
                while (!q.empty()) {
                    uint64_t cand = q.front();
                    const auto* o = reg.find(cand);
                    if (o && o->price == price && o->side == side) {
                        id = cand;
                        break;
                    }
                    q.pop_front();
                }
                if (id == 0)
                    fail(Errc::InvariantViolation, "registry volume map out of sync with queues");
                emit_remove(id, Action::Cancel, reg.find(id)->remaining);
                ++housekeeping;
            }
        };
        // prune the far tail from the worst price inward
        auto prune_far = [&](Side side) {
            auto& vol = reg.volume(side);
            while (!vol.empty()) {
                int64_t worst = side == Side::Ask ? vol.rbegin()->first : vol.begin()->first;
                bool far = side == Side::Ask ? worst > base_ask + prune_width : worst < base_bid - prune_width;
                if (!far) break;
                auto& q = reg.queue(side)[worst];
                bool removed = false;
                while (!q.empty()) {
                    uint64_t cand = q.front();
                    const auto* o = reg.find(cand);
                    if (o && o->price == worst && o->side == side) {
                        emit_remove(cand, Action::Cancel, o->remaining);
                        ++housekeeping;
                        removed = true;
                        break;
                    }
                    q.pop_front();
                }
                if (!removed) reg.queue(side).erase(worst);
            }
        };
        sweep(Side::Ask);
        sweep(Side::Bid);
        prune_far(Side::Ask);
        prune_far(Side::Bid);

        uint64_t n_add = rng.poisson(add_rate);
        uint64_t n_exe = rng.poisson(exe_rate);
        uint64_t n_cxl_drawn = rng.poisson(cxl_rate);
        cancel_debt += static_cast<uint64_t>(housekeeping);
        uint64_t settled = std::min(cancel_debt, n_cxl_drawn);
        cancel_debt -= settled;
        uint64_t n_cxl = n_cxl_drawn - settled;

        for (uint64_t k = 0; k < n_add; ++k) {
            Side side = rng.bernoulli(0.5) ? Side::Ask : Side::Bid;
            int l = ladder_level(rng);
            int64_t price = side == Side::Ask ? base_ask + l : base_bid - l;
            emit_add(side, price, 10 + static_cast<int64_t>(rng.uniform_int(190)));
        }
        for (uint64_t k = 0; k < n_cxl; ++k) {
            uint64_t id = reg.random_live(rng);
            if (id == 0) break;
            int64_t remaining = reg.find(id)->remaining;
            int64_t qty = rng.bernoulli(0.7) ? remaining : 1 + static_cast<int64_t>(rng.uniform_int(static_cast<uint64_t>(remaining)));
            emit_remove(id, Action::Cancel, qty);
        }
        for (uint64_t k = 0; k < n_exe; ++k) {
            Side side = rng.bernoulli(0.5) ? Side::Ask : Side::Bid;
            uint64_t id = reg.best_order(side);
            if (id == 0) id = reg.best_order(lob::other(side));
            if (id == 0) break;
            int64_t remaining = reg.find(id)->remaining;
            int64_t qty = std::min<int64_t>(remaining, 1 + static_cast<int64_t>(rng.uniform_int(50)));
            emit_remove(id, Action::Execute, qty);
        }

        // neither side may close a second empty: the sampling clock reads mid
        if (any_flow && reg.visible_volume(Side::Ask, 10) == 0) emit_add(Side::Ask, base_ask, 100);
        if (any_flow && reg.visible_volume(Side::Bid, 10) == 0) emit_add(Side::Bid, base_bid, 100);
    }
}

// ---------------------------------------------------------------------------
// Liquidity signal injection
// ---------------------------------------------------------------------------

struct LiquiditySignalInjector::Impl {
    struct PendingAct {
        int64_t ts;
        int type;  // 0 withdraw, 1 replenish, 2 boundary guard, 3 hold
        size_t window;
    };
    struct Window {
        int64_t start_ns;
        int64_t end_ns;
        bool ask;
        bool bid;
        int64_t baseline[2] = {0, 0};  // visible volume before the withdrawal, [bid, ask]
        int64_t ceiling[2] = {0, 0};   // residual visible volume to hold
    };

    ScenarioConfig cfg;
    EventSink sink;
    Rng rng;
    BookRegistry reg;
    std::vector<Window> windows;
    std::vector<PendingAct> acts;
    size_t next_act = 0;
    std::unordered_set<uint64_t> dropped;
    uint64_t next_id = kInjectorIdBase;
    int64_t last_ts = 0;

    Impl(const std::vector<JumpTruth>& jumps, const ScenarioConfig& c, EventSink s)
        : cfg(c), sink(std::move(s)), rng(Rng(c.seed).child("signal")) {
        if (cfg.withdraw_fraction < 0.0 || cfg.withdraw_fraction > 1.0)
            fail(Errc::BadConfig, "withdraw fraction must lie in [0,1]");
        if (cfg.withdraw_fraction == 0.0) return;
        for (const auto& j : jumps) {
            Window w;
            w.end_ns = j.second * kNs;
            w.start_ns = w.end_ns - cfg.signal_lead_seconds * kNs;
            w.ask = cfg.symmetric_signal || j.direction > 0;
            w.bid = cfg.symmetric_signal || j.direction < 0;
            size_t wi = windows.size();
            windows.push_back(w);
            acts.push_back({w.start_ns, 0, wi});
            // re-trim the withdrawn side every second so arrivals and deeper
            // levels surfacing into view cannot refill it inside the window
            for (int64_t s = w.start_ns / kNs + 1; s < j.second; ++s) acts.push_back({s * kNs - 1, 3, wi});
            // keep both sides quotable at every sampling boundary the window
            // spans, and replenish once the jump minute has closed
            int64_t first_mark = ((w.start_ns / kNs) / 60 + 1) * 60;
            int64_t last_mark = ((j.second + 59) / 60) * 60;
            for (int64_t mark = first_mark; mark <= last_mark; mark += 60) acts.push_back({mark * kNs, 2, wi});
            int64_t replenish_ts = ((j.minute_index + 1) * 60) * kNs + 1000;
            acts.push_back({replenish_ts, 1, wi});
        }
        std::sort(acts.begin(), acts.end(), [](const PendingAct& a, const PendingAct& b) {
            if (a.ts != b.ts) return a.ts < b.ts;
            return a.type < b.type;
        });
    }

    void emit(OrderEvent ev) {
        ev.timestamp_ns = std::max(ev.timestamp_ns, last_ts);
        last_ts = ev.timestamp_ns;
        sink(ev);
    }

    void inject_add(Side side, int64_t price, int64_t qty, int64_t ts) {
        OrderEvent ev{ts, next_id++, side, Action::Add, price, qty};
        reg.add(ev.order_id, side, price, qty);
        emit(ev);
    }

    // Cancel top orders until the side's visible volume is at most `ceiling`,
    // always leaving one lot so the side stays quotable.
    int64_t trim_side(Side side, int64_t ceiling, int64_t ts) {
        int64_t removed = 0;
        while (true) {
            int64_t vis = reg.visible_volume(side, 10);
            if (vis <= ceiling || vis <= 1) break;
            bool progressed = false;
            for (uint64_t id : reg.top_orders(side, 10)) {
                const auto* o = reg.find(id);
                if (!o) continue;
                int64_t qty = std::min(o->remaining, vis - ceiling);
                if (vis - qty < 1) qty = vis - 1;
                if (qty <= 0) break;
                OrderEvent ev{ts, id, side, Action::Cancel, 0, qty};
                reg.reduce(id, qty);
                emit(ev);
                removed += qty;
                vis -= qty;
                progressed = true;
                if (vis <= ceiling || vis <= 1) break;
            }
            if (!progressed) break;
        }
        return removed;
    }

    void withdraw(Window& w, int64_t ts) {
        for (Side side : {Side::Ask, Side::Bid}) {
            if ((side == Side::Ask && !w.ask) || (side == Side::Bid && !w.bid)) continue;
            int64_t visible = reg.visible_volume(side, 10);
            int64_t keep = visible - static_cast<int64_t>(std::floor(cfg.withdraw_fraction * double(visible)));
            if (keep < 1) keep = 1;
            w.baseline[side == Side::Ask] = visible;
            w.ceiling[side == Side::Ask] = keep;
            trim_side(side, keep, ts);
        }
    }

    void hold(Window& w, int64_t ts) {
        for (Side side : {Side::Ask, Side::Bid}) {
            if ((side == Side::Ask && !w.ask) || (side == Side::Bid && !w.bid)) continue;
            trim_side(side, w.ceiling[side == Side::Ask], ts);
        }
    }

    // Anchor price for injected liquidity: the side's own best if present,
    // otherwise its last seen best, clamped to stay uncrossed.
    int64_t anchor_price(Side side) {
        int64_t base = reg.best_price(side);
        if (base == 0) base = reg.last_best(side);
        int64_t opp = reg.best_price(lob::other(side));
        if (opp == 0) opp = reg.last_best(lob::other(side));
        if (base == 0 && opp == 0) return 0;
        if (base == 0) base = side == Side::Ask ? opp + 1 : opp - 1;
        if (opp != 0) {
            if (side == Side::Ask && base <= opp) base = opp + 1;
            if (side == Side::Bid && base >= opp) base = opp - 1;
        }
        return base;
    }

    // Restore the withdrawn side back to its pre-window depth.
    void replenish(Window& w, int64_t ts) {
        for (Side side : {Side::Ask, Side::Bid}) {
            if ((side == Side::Ask && !w.ask) || (side == Side::Bid && !w.bid)) continue;
            int64_t base = anchor_price(side);
            if (base == 0) continue;
            int64_t todo = w.baseline[side == Side::Ask] - reg.visible_volume(side, 10);
            int level = 0;
            while (todo > 0) {
                int64_t qty = std::min<int64_t>(todo, 120);
                int64_t price = side == Side::Ask ? base + (level % 10) : base - (level % 10);
                inject_add(side, price, qty, ts);
                todo -= qty;
                ++level;
            }
        }
    }

    void guard(int64_t ts) {
        for (Side side : {Side::Ask, Side::Bid}) {
            if (reg.visible_volume(side, 10) > 0) continue;
            int64_t anchor = anchor_price(side);
            if (anchor == 0) continue;
            inject_add(side, anchor, 50, ts);
        }
    }

    // Injected resting orders can be overtaken when the generator's mid
    // drifts through them; cancel them the moment the book would cross.
    void resolve_cross(int64_t ts) {
        while (true) {
            uint64_t a = reg.best_order(Side::Ask);
            uint64_t b = reg.best_order(Side::Bid);
            if (a == 0 || b == 0) return;
            int64_t pa = reg.find(a)->price;
            int64_t pb = reg.find(b)->price;
            if (pa > pb) return;
            uint64_t victim = a >= kInjectorIdBase ? a : b;
            if (victim < kInjectorIdBase)
                fail(Errc::InvariantViolation, "source stream crossed without injected orders");
            OrderEvent ev{ts, victim, reg.find(victim)->side, Action::Cancel, 0, reg.find(victim)->remaining};
            reg.reduce(victim, ev.quantity);
            emit(ev);
        }
    }

    void run_acts_until(int64_t ts) {
        while (next_act < acts.size() && acts[next_act].ts <= ts) {
            PendingAct act = acts[next_act++];
            Window& w = windows[act.window];
            if (act.type == 0)
                withdraw(w, act.ts);
            else if (act.type == 1)
                replenish(w, act.ts);
            else if (act.type == 3)
                hold(w, act.ts);
            else
                guard(act.ts);
        }
    }

    // Windows are sorted by start and share one duration, so the active set
    // is a contiguous range tracked with two cursors.
    size_t win_lo = 0;
    bool in_active_window(Side side, int64_t ts) {
        while (win_lo < windows.size() && windows[win_lo].end_ns <= ts) ++win_lo;
        for (size_t i = win_lo; i < windows.size() && windows[i].start_ns <= ts; ++i) {
            if (ts >= windows[i].end_ns) continue;
            if (side == Side::Ask ? windows[i].ask : windows[i].bid) return true;
        }
        return false;
    }

    void push(const OrderEvent& ev) {
        run_acts_until(ev.timestamp_ns);
        if (ev.action == Action::Add) {
            if (cfg.withdraw_fraction > 0.0 && in_active_window(ev.side, ev.timestamp_ns) &&
                rng.bernoulli(cfg.withdraw_fraction)) {
                dropped.insert(ev.order_id);
                return;
            }
            reg.add(ev.order_id, ev.side, ev.price, ev.quantity);
            emit(ev);
            resolve_cross(ev.timestamp_ns);
            return;
        }
        if (dropped.count(ev.order_id)) return;
        if (!reg.alive(ev.order_id)) return;  // removed by an injected cancel
        const auto* o = reg.find(ev.order_id);
        // injected partial cancels shrink orders; trim removals to fit
        OrderEvent out = ev;
        out.quantity = std::min(ev.quantity, o->remaining);
        reg.note_best(ev.side);
        reg.reduce(out.order_id, out.quantity);
        emit(out);
    }

    void finish() {
        if (!acts.empty()) run_acts_until(acts.back().ts);
    }
};

LiquiditySignalInjector::LiquiditySignalInjector(const std::vector<JumpTruth>& jumps, const ScenarioConfig& cfg,
                                                 EventSink sink)
    : impl_(new Impl(jumps, cfg, std::move(sink))) {}

LiquiditySignalInjector::~LiquiditySignalInjector() { delete impl_; }

void LiquiditySignalInjector::push(const lob::OrderEvent& ev) { impl_->push(ev); }

void LiquiditySignalInjector::finish() { impl_->finish(); }

std::vector<JumpTruth> generate_scenario(const ScenarioConfig& cfg, const std::string& events_path,
                                         const std::string& truth_path) {
    PricePath path = gen_price_path(cfg);
    lob::EventWriter writer(events_path, cfg.tick_size);
    {
        LiquiditySignalInjector inject(path.jumps, cfg, [&](const OrderEvent& ev) { writer.write(ev); });
        gen_order_flow(path, cfg, [&](const OrderEvent& ev) { inject.push(ev); });
        inject.finish();
    }
    writer.close();
    write_truth(truth_path, path.jumps);
    return path.jumps;
}

void write_truth(const std::string& path, const std::vector<JumpTruth>& jumps) {
    FILE* f = std::fopen(path.c_str(), "w");
    if (!f) fail(Errc::BadFile, "cannot open for writing: " + path);
    std::fprintf(f, "day,minute,direction,size\n");
    for (const auto& j : jumps)
        std::fprintf(f, "%lld,%lld,%s,%.10g\n", static_cast<long long>(j.minute_index / 390),
                     static_cast<long long>(j.minute_index), j.direction > 0 ? "up" : "down", j.size_sigma);
    std::fclose(f);
}

std::vector<JumpTruth> read_truth(const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "r");
    if (!f) fail(Errc::BadFile, "cannot open for reading: " + path);
    char line[128];
    if (!std::fgets(line, sizeof(line), f)) {
        std::fclose(f);
        fail(Errc::BadFile, "empty truth file: " + path);
    }
    std::vector<JumpTruth> out;
    while (std::fgets(line, sizeof(line), f)) {
        long long day, minute;
        char dir[8];
        double size;
        if (std::sscanf(line, "%lld,%lld,%7[a-z],%lf", &day, &minute, dir, &size) != 4) {
            std::fclose(f);
            fail(Errc::BadFile, "malformed truth line in " + path);
        }
        JumpTruth t;
        t.minute_index = minute;
        t.second = 60 * minute + 1;  // exact second is not exported
        t.direction = std::strcmp(dir, "up") == 0 ? 1 : -1;
        t.size_sigma = size;
        out.push_back(t);
    }
    std::fclose(f);
    return out;
}

std::vector<lob::OrderEvent> gen_order_flow_vec(const PricePath& path, const ScenarioConfig& cfg) {
    std::vector<OrderEvent> out;
    gen_order_flow(path, cfg, [&](const OrderEvent& ev) { out.push_back(ev); });
    return out;
}

std::vector<lob::OrderEvent> inject_liquidity_signal(const std::vector<lob::OrderEvent>& events,
                                                     const std::vector<JumpTruth>& jumps,
                                                     const ScenarioConfig& cfg) {
    std::vector<OrderEvent> out;
    LiquiditySignalInjector inject(jumps, cfg, [&](const OrderEvent& ev) { out.push_back(ev); });
    for (const auto& ev : events) inject.push(ev);
    inject.finish();
    return out;
}

} // namespace jumpcast::synth
