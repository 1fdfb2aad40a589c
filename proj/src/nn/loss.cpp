#include "jumpcast/nn/loss.hpp"

#include <algorithm>
#include <cmath>

#include "jumpcast/common/error.hpp"
#include "jumpcast/nn/layers.hpp"

namespace jumpcast::nn {

namespace {
constexpr double kClamp = 1e-12;

double clamp_p(double p) { return std::min(1.0 - kClamp, std::max(kClamp, p)); }
} // namespace

double bce_loss(double y_true, double y_pred) {
    double p = clamp_p(y_pred);
    return -(y_true * std::log(p) + (1.0 - y_true) * std::log(1.0 - p));
}

double bce_grad(double y_true, double y_pred) {
    double p = clamp_p(y_pred);
    return -y_true / p + (1.0 - y_true) / (1.0 - p);
}

double categorical_ce(const std::vector<double>& probs, int true_class) {
    if (true_class < 0 || size_t(true_class) >= probs.size())
        fail(Errc::ShapeMismatch, "target class out of range");
    return -std::log(clamp_p(probs[size_t(true_class)]));
}

HeadResult sigmoid_bce_head(double logit, double y_true, double weight) {
    HeadResult out;
    double p = sigmoid(logit);
    out.probs = {p};
    out.loss = weight * bce_loss(y_true, p);
    out.dlogits = {weight * (p - y_true)};
    return out;
}

HeadResult softmax_ce_head(const std::vector<double>& logits, int true_class, double weight) {
    HeadResult out;
    out.probs = softmax(logits);
    out.loss = weight * categorical_ce(out.probs, true_class);
    out.dlogits.resize(logits.size());
    for (size_t i = 0; i < logits.size(); ++i)
        out.dlogits[i] = weight * (out.probs[i] - (int(i) == true_class ? 1.0 : 0.0));
    return out;
}

} // namespace jumpcast::nn
