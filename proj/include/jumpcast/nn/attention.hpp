#pragma once

#include "jumpcast/nn/layers.hpp"

namespace jumpcast::nn {

// Feature attention over a (T, F) input. Each feature's time series is
// scored through a shared dense over the time axis with tanh, the scores are
// softmaxed into one weight per feature, and the weight is broadcast across
// all time steps and multiplied into the input:
//   s_f = sum_t u_t X[t,f] + b,  alpha = softmax(tanh(s)),  Y = X * alpha.
class FeatureAttention : public Layer {
public:
    explicit FeatureAttention(int steps);

    std::string kind() const override { return "feature_attention"; }
    std::vector<int> out_shape(const std::vector<int>& in) const override;
    void init(Rng& rng) override;
    void forward(const Tensor& x, Tensor& y, bool, Rng*) override;
    void backward(const Tensor& dy, Tensor& dx) override;
    std::vector<ParamRef> params() override;

    // alpha from the most recent forward pass
    const std::vector<double>& weights() const { return alpha_; }

private:
    int steps_;
    Tensor u_, b_, du_, db_;
    Tensor x_;
    std::vector<double> m_;
    std::vector<double> alpha_;
};

} // namespace jumpcast::nn
