#pragma once

#include <memory>
#include <span>
#include <vector>

#include "jumpcast/model/spec.hpp"
#include "jumpcast/nn/attention.hpp"
#include "jumpcast/nn/layers.hpp"

namespace jumpcast::model {

// A ModelSpec instantiated into layers. Single-sample forward/backward with
// per-layer caching; outputs are raw logits, the heads live in predict and
// the training loss.
class Network {
public:
    static Network build(const ModelSpec& spec, uint64_t seed);

    const ModelSpec& spec() const { return spec_; }
    int n_outputs() const { return spec_.outputs; }

    // sample: steps x dataset_features float32 row-major
    std::vector<double> logits(const float* sample, int steps, int dataset_features, bool training,
                               Rng* drop_rng);
    std::vector<double> predict_probs(const float* sample, int steps, int dataset_features);
    double predict(const float* sample, int steps, int dataset_features);  // binary probability
    static int classify(double p) { return p >= 0.5 ? 1 : 0; }

    // Backward from dL/dlogits; call right after logits(...).
    void backward(const std::vector<double>& dlogits);

    std::vector<nn::ParamRef> params();
    void zero_grads();
    void scale_grads(double c);
    int64_t n_params();

    std::vector<double> flat_params();
    void set_flat_params(std::span<const double> flat);
    void add_grads_from(Network& other);  // accumulate other's grads into ours

    // attention weights from the most recent forward
    const std::vector<double>& attention_weights() const;
    bool has_attention() const { return attention_ != nullptr; }

    Network clone_structure(uint64_t seed = 0) const;  // same spec, fresh buffers

private:
    ModelSpec spec_;
    std::vector<std::unique_ptr<nn::Layer>> layers_;
    nn::FeatureAttention* attention_ = nullptr;
    std::vector<nn::Tensor> acts_;  // layer outputs, cached for backward
    nn::Tensor input_;
};

} // namespace jumpcast::model
