#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace jumpcast::feat {

// Fixed 139-slot feature vector layout, one frame per second.
//
//   v1   40  ten-level book: (p_ask, v_ask, p_bid, v_bid) per level
//   v2   20  per-level spread and mid-price
//   v3   18  absolute price steps between adjacent levels, per side
//   v4    4  means: ask prices, bid prices, ask volumes, bid volumes
//   v5    2  mean price difference, mean volume difference across levels
//   v6   40  time derivative of each v1 slot over the short window
//   v7    6  event intensities: la, lb, ma, mb, ca, cb (events/sec)
//   v8    4  short-window rate above long-window rate, for la, lb, ma, mb
//   v9    4  intensity accelerations, ordered ma, lb, mb, la
//   v10   1  wall-clock hour
inline constexpr int kNumSlots = 139;

inline constexpr int kV1Offset = 0;
inline constexpr int kV2Offset = 40;
inline constexpr int kV3Offset = 60;
inline constexpr int kV4Offset = 78;
inline constexpr int kV5Offset = 82;
inline constexpr int kV6Offset = 84;
inline constexpr int kV7Offset = 124;
inline constexpr int kV8Offset = 130;
inline constexpr int kV9Offset = 134;
inline constexpr int kV10Offset = 138;

// Event classes used by the intensity slots.
enum class EventClass : int {
    LimitAsk = 0,   // la: ask add
    LimitBid = 1,   // lb: bid add
    MarketAsk = 2,  // ma: execution against a resting ask
    MarketBid = 3,  // mb: execution against a resting bid
    CancelAsk = 4,  // ca
    CancelBid = 5,  // cb
};
inline constexpr int kNumEventClasses = 6;

// v9 keeps the published ordering rather than the v7 one.
inline constexpr std::array<int, 4> kAccelClasses = {2, 1, 3, 0};  // ma, lb, mb, la

const std::vector<std::string>& slot_names();
int slot_index(const std::string& name);  // -1 when unknown

struct FeatureFrame {
    int64_t second = 0;
    std::array<double, kNumSlots> v{};
};

// Slot families used by reporting; "ask volume" covers the raw v1 volumes,
// their derivatives and the mean ask volume.
bool is_ask_volume_slot(int index);

} // namespace jumpcast::feat
