#pragma once

#include <vector>

namespace jumpcast::nn {

// Binary cross-entropy on a probability; predictions are clamped to
// [1e-12, 1 - 1e-12] before the logs.
double bce_loss(double y_true, double y_pred);
double bce_grad(double y_true, double y_pred);  // dL/dp after clamping

// Categorical cross-entropy against a one-hot target.
double categorical_ce(const std::vector<double>& probs, int true_class);

// Fused sigmoid + BCE head: loss and dL/dlogit, stable at saturation.
struct HeadResult {
    double loss;
    std::vector<double> dlogits;
    std::vector<double> probs;
};
HeadResult sigmoid_bce_head(double logit, double y_true, double weight);
HeadResult softmax_ce_head(const std::vector<double>& logits, int true_class, double weight);

} // namespace jumpcast::nn
