#pragma once

#include "jumpcast/model/spec.hpp"

namespace jumpcast::model {

// The five architectures. Output heads are logits; sigmoid/softmax is
// applied by predict and the training loss.

// flatten -> dense 40 leaky relu -> dense 40 leaky relu -> dense 1
ModelSpec build_mlp(int features = 139, int steps = 120);

// raw ten-level book columns only: conv2d 16x(4,40) -> conv1d 16x4 ->
// maxpool 2 -> conv1d 32x3 -> conv1d 32x3 -> maxpool 2 -> dense 32 -> dense 1
ModelSpec build_cnn(int steps = 120);

// lstm 40 (final state) -> dense 40 leaky relu -> dense 1
ModelSpec build_lstm(int features = 139, int steps = 120);

// feature attention -> conv1d 32x5 -> maxpool 2 -> lstm 40 relu hidden with
// 0.5 dropout on input and recurrent connections -> dense 40 -> dense 1
ModelSpec build_cnn_lstm_attention(int features = 139, int steps = 120);

// the attention stack fed only the time-of-day column
ModelSpec build_v10_baseline(int steps = 120, int v10_column = 138);

// swap the head for a three-neuron softmax block
ModelSpec three_class_variant(ModelSpec spec);

ModelSpec build_architecture(const std::string& name, int dataset_features = 139, int steps = 120);

} // namespace jumpcast::model
