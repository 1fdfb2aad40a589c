#pragma once

#include <vector>

#include "jumpcast/data/dataset.hpp"
#include "jumpcast/model/network.hpp"

namespace jumpcast::model {

struct TrainConfig {
    int max_epochs = 100;
    int batch_size = 64;
    int patience = 10;          // early stopping on validation loss
    double min_delta = 1e-3;    // an epoch counts as an improvement only past this
    double learning_rate = 1e-3;
    uint64_t seed = 1;
    bool curriculum = true;     // rolling day windows during training
    int curriculum_days = 50;
    double positive_weight = 0.0;  // 0: balance classes from the train split
    int workers = 2;
};

struct EpochStats {
    int epoch = 0;
    double train_loss = 0.0;
    double val_loss = 0.0;
};

struct TrainResult {
    std::vector<EpochStats> history;
    int best_epoch = -1;
    double best_val_loss = 0.0;
};

// Trains in place and leaves the network holding the parameters with the
// best validation loss. Deterministic for a fixed config and seed.
TrainResult train(Network& net, const std::vector<data::Sample>& samples, const std::vector<size_t>& train_idx,
                  const std::vector<size_t>& val_idx, const TrainConfig& cfg);

// Weighted mean loss over a sample set without touching gradients.
double evaluate_loss(Network& net, const std::vector<data::Sample>& samples, const std::vector<size_t>& idx,
                     const std::vector<double>& class_weights, int workers);

// Per-class loss weights: all ones when positive_weight is given (binary
// puts it on class 1); otherwise inverse-frequency balancing.
std::vector<double> class_weights(const std::vector<data::Sample>& samples, const std::vector<size_t>& idx,
                                  int n_classes, double positive_weight);

} // namespace jumpcast::model
