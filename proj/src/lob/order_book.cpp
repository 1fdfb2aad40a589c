#include "jumpcast/lob/order_book.hpp"

namespace jumpcast::lob {

void check_snapshot(const BookSnapshot& s) {
    auto check_side = [](const std::array<Level, kSnapshotLevels>& lv, bool ascending, const char* name) {
        bool seen_zero = false;
        for (int i = 0; i < kSnapshotLevels; ++i) {
            if (lv[i].price == 0) {
                if (lv[i].volume != 0) fail(Errc::InvariantViolation, std::string(name) + ": zero price with volume");
                seen_zero = true;
                continue;
            }
            if (seen_zero) fail(Errc::InvariantViolation, std::string(name) + ": gap before populated level");
            if (lv[i].volume <= 0) fail(Errc::InvariantViolation, std::string(name) + ": nonpositive volume");
            if (i > 0 && lv[i - 1].price != 0) {
                bool ok = ascending ? lv[i].price > lv[i - 1].price : lv[i].price < lv[i - 1].price;
                if (!ok) fail(Errc::InvariantViolation, std::string(name) + ": levels out of order");
            }
        }
    };
    check_side(s.asks, true, "asks");
    check_side(s.bids, false, "bids");
    if (s.asks[0].price != 0 && s.bids[0].price != 0 && s.asks[0].price <= s.bids[0].price)
        fail(Errc::InvariantViolation, "crossed book at second " + std::to_string(s.second));
}

void OrderBook::apply(const OrderEvent& ev) {
    if (ev.quantity <= 0) fail(Errc::InvariantViolation, "event quantity must be positive");
    switch (ev.action) {
        case Action::Add: {
            auto [it, inserted] = orders_.try_emplace(ev.order_id, LiveOrder{ev.side, ev.price, ev.quantity});
            if (!inserted) fail(Errc::InvariantViolation, "duplicate order id " + std::to_string(ev.order_id));
            if (ev.side == Side::Bid)
                bids_[ev.price] += ev.quantity;
            else
                asks_[ev.price] += ev.quantity;
            break;
        }
        case Action::Cancel:
            reduce(ev.order_id, ev.quantity, "cancel");
            break;
        case Action::Execute:
            reduce(ev.order_id, ev.quantity, "execute");
            break;
    }
}

void OrderBook::reduce(uint64_t id, int64_t qty, const char* what) {
    auto it = orders_.find(id);
    if (it == orders_.end())
        fail(Errc::UnknownOrderId, std::string(what) + " of unknown order " + std::to_string(id));
    LiveOrder& o = it->second;
    if (qty > o.remaining)
        fail(Errc::OverRemoval, std::string(what) + " of " + std::to_string(qty) + " exceeds remaining " +
                                    std::to_string(o.remaining) + " for order " + std::to_string(id));
    o.remaining -= qty;
    if (o.side == Side::Bid) {
        auto lv = bids_.find(o.price);
        lv->second -= qty;
        if (lv->second == 0) bids_.erase(lv);
    } else {
        auto lv = asks_.find(o.price);
        lv->second -= qty;
        if (lv->second == 0) asks_.erase(lv);
    }
    if (o.remaining == 0) orders_.erase(it);
}

const OrderBook::LiveOrder* OrderBook::find(uint64_t order_id) const {
    auto it = orders_.find(order_id);
    return it == orders_.end() ? nullptr : &it->second;
}

BookSnapshot OrderBook::snapshot(uint32_t second, int n_levels) const {
    if (n_levels < 1 || n_levels > kSnapshotLevels)
        fail(Errc::InvariantViolation, "snapshot depth must be between 1 and 10");
    BookSnapshot s;
    s.second = second;
    int i = 0;
    for (const auto& [price, vol] : asks_) {
        if (i >= n_levels) break;
        s.asks[i++] = Level{price, vol};
    }
    i = 0;
    for (const auto& [price, vol] : bids_) {
        if (i >= n_levels) break;
        s.bids[i++] = Level{price, vol};
    }
    if (s.asks[0].price != 0 && s.bids[0].price != 0 && s.asks[0].price <= s.bids[0].price)
        fail(Errc::InvariantViolation, "crossed book at second " + std::to_string(second));
    return s;
}

} // namespace jumpcast::lob
