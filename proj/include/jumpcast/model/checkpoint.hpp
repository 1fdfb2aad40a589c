#pragma once

#include <string>

#include "jumpcast/model/network.hpp"

namespace jumpcast::model {

// Weight checkpoint: magic, format version, architecture hash, then one
// record per parameter tensor (name, shape, 64-bit data). Loading verifies
// the architecture hash against the network's spec.
void save_checkpoint(const std::string& path, Network& net);
void load_checkpoint(const std::string& path, Network& net);

} // namespace jumpcast::model
