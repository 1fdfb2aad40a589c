#pragma once

#include "jumpcast/nn/layers.hpp"

namespace jumpcast::nn {

// Gated recurrence with input, forget and output gates. Gates are sigmoid,
// the cell candidate is tanh, and the cell-output squash is configurable
// (tanh for the standard stack, relu where the architecture asks for relu
// hidden units). Optional variational dropout applies one mask per sequence
// to the inputs and another to the recurrent connections. Emits the final
// hidden state, or the full (T, units) sequence when return_sequence is set.
class Lstm : public Layer {
public:
    Lstm(int in_ch, int units, Act hidden_act = Act::Tanh, bool return_sequence = false, double dropout = 0.0,
         double recurrent_dropout = 0.0);

    std::string kind() const override { return "lstm"; }
    std::vector<int> out_shape(const std::vector<int>& in) const override;
    void init(Rng& rng) override;
    void forward(const Tensor& x, Tensor& y, bool training, Rng* drop_rng) override;
    void backward(const Tensor& dy, Tensor& dx) override;
    std::vector<ParamRef> params() override;

private:
    int cin_, units_;
    Act hidden_act_;
    bool return_seq_;
    double dropout_, recurrent_dropout_;

    Tensor wx_, wh_, b_;     // wx: 4U x C, wh: 4U x U, b: 4U (gate order i,f,g,o)
    Tensor dwx_, dwh_, db_;

    // per-sequence caches
    int steps_ = 0;
    std::vector<double> xs_;       // T x C, post input-mask
    std::vector<double> hs_;       // (T+1) x U, post recurrent-mask at use sites applies mask_h
    std::vector<double> cs_;       // (T+1) x U
    std::vector<double> gates_;    // T x 4U post-activation
    std::vector<double> acts_;     // T x U, hidden_act(c_t)
    std::vector<double> mask_x_, mask_h_;
};

} // namespace jumpcast::nn
