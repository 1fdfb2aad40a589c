#include "jumpcast/feat/slots.hpp"

#include <unordered_map>

namespace jumpcast::feat {

namespace {

std::vector<std::string> build_names() {
    std::vector<std::string> n;
    n.reserve(kNumSlots);
    for (int i = 1; i <= 10; ++i) {
        n.push_back("v1.p_ask_" + std::to_string(i));
        n.push_back("v1.v_ask_" + std::to_string(i));
        n.push_back("v1.p_bid_" + std::to_string(i));
        n.push_back("v1.v_bid_" + std::to_string(i));
    }
    for (int i = 1; i <= 10; ++i) {
        n.push_back("v2.spread_" + std::to_string(i));
        n.push_back("v2.mid_" + std::to_string(i));
    }
    for (int i = 1; i <= 9; ++i) {
        n.push_back("v3.dp_ask_" + std::to_string(i));
        n.push_back("v3.dp_bid_" + std::to_string(i));
    }
    n.push_back("v4.mean_p_ask");
    n.push_back("v4.mean_p_bid");
    n.push_back("v4.mean_v_ask");
    n.push_back("v4.mean_v_bid");
    n.push_back("v5.acc_price_diff");
    n.push_back("v5.acc_volume_diff");
    for (int i = 1; i <= 10; ++i) {
        n.push_back("v6.d_p_ask_" + std::to_string(i));
        n.push_back("v6.d_v_ask_" + std::to_string(i));
        n.push_back("v6.d_p_bid_" + std::to_string(i));
        n.push_back("v6.d_v_bid_" + std::to_string(i));
    }
    n.push_back("v7.lambda_la");
    n.push_back("v7.lambda_lb");
    n.push_back("v7.lambda_ma");
    n.push_back("v7.lambda_mb");
    n.push_back("v7.lambda_ca");
    n.push_back("v7.lambda_cb");
    n.push_back("v8.rel_la");
    n.push_back("v8.rel_lb");
    n.push_back("v8.rel_ma");
    n.push_back("v8.rel_mb");
    n.push_back("v9.d_lambda_ma");
    n.push_back("v9.d_lambda_lb");
    n.push_back("v9.d_lambda_mb");
    n.push_back("v9.d_lambda_la");
    n.push_back("v10.hour");
    return n;
}

} // namespace

const std::vector<std::string>& slot_names() {
    static const std::vector<std::string> names = build_names();
    return names;
}

int slot_index(const std::string& name) {
    static const std::unordered_map<std::string, int> index = [] {
        std::unordered_map<std::string, int> m;
        const auto& names = slot_names();
        for (int i = 0; i < static_cast<int>(names.size()); ++i) m[names[i]] = i;
        return m;
    }();
    auto it = index.find(name);
    return it == index.end() ? -1 : it->second;
}

bool is_ask_volume_slot(int index) {
    if (index >= kV1Offset && index < kV2Offset) return (index - kV1Offset) % 4 == 1;
    if (index >= kV6Offset && index < kV7Offset) return (index - kV6Offset) % 4 == 1;
    return index == kV4Offset + 2;
}

} // namespace jumpcast::feat
