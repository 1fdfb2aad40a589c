#pragma once

#include <vector>

#include "jumpcast/nn/layers.hpp"

namespace jumpcast::nn {

// Adam with bias-corrected first and second moments. Moment buffers mirror
// the parameter list handed to the first step.
class Adam {
public:
    explicit Adam(double lr = 1e-3, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
        : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

    void step(const std::vector<ParamRef>& params);

    int64_t steps_taken() const { return t_; }
    double learning_rate() const { return lr_; }

private:
    double lr_, beta1_, beta2_, eps_;
    int64_t t_ = 0;
    std::vector<std::vector<double>> m_, v_;
};

} // namespace jumpcast::nn
