#include "jumpcast/model/network.hpp"

#include "jumpcast/nn/loss.hpp"
#include "jumpcast/nn/lstm.hpp"

namespace jumpcast::model {

using nn::Act;
using nn::Tensor;

namespace {

Act parse_act(const std::string& name) {
    if (name == "identity") return Act::Identity;
    if (name == "relu") return Act::ReLU;
    if (name == "leaky_relu") return Act::LeakyReLU;
    if (name == "sigmoid") return Act::Sigmoid;
    if (name == "tanh") return Act::Tanh;
    fail(Errc::BadConfig, "unknown activation: " + name);
}

std::unique_ptr<nn::Layer> make_layer(const LayerSpec& ls) {
    const std::string& t = ls.type;
    if (t == "flatten") return std::make_unique<nn::Flatten>();
    if (t == "squeeze") return std::make_unique<nn::SqueezeMid>();
    if (t == "dense")
        return std::make_unique<nn::Dense>(int(ls.get_int("in")), int(ls.get_int("out")),
                                           parse_act(ls.get_str("activation", "identity")),
                                           ls.get_real("slope", 0.01));
    if (t == "conv1d")
        return std::make_unique<nn::Conv1d>(int(ls.get_int("in")), int(ls.get_int("filters")),
                                            int(ls.get_int("kernel")),
                                            parse_act(ls.get_str("activation", "leaky_relu")),
                                            ls.get_real("slope", 0.01));
    if (t == "conv2d")
        return std::make_unique<nn::Conv2d>(int(ls.get_int("kernel_h")), int(ls.get_int("kernel_w")),
                                            int(ls.get_int("filters")),
                                            parse_act(ls.get_str("activation", "leaky_relu")),
                                            ls.get_real("slope", 0.01));
    if (t == "maxpool") return std::make_unique<nn::MaxPool1d>(int(ls.get_int("size")));
    if (t == "dropout") return std::make_unique<nn::Dropout>(ls.get_real("p"));
    if (t == "lstm")
        return std::make_unique<nn::Lstm>(int(ls.get_int("in")), int(ls.get_int("units")),
                                          parse_act(ls.get_str("hidden_activation", "tanh")),
                                          ls.get_int("sequence", 0) != 0, ls.get_real("p", 0.0),
                                          ls.get_real("recurrent_p", 0.0));
    if (t == "feature_attention") return std::make_unique<nn::FeatureAttention>(int(ls.get_int("steps")));
    fail(Errc::BadConfig, "unknown layer type: " + t);
}

} // namespace

Network Network::build(const ModelSpec& spec, uint64_t seed) {
    Network net;
    net.spec_ = spec;
    std::vector<int> shape{spec.steps, spec.features};
    Rng master(seed);
    int idx = 0;
    for (const auto& ls : spec.layers) {
        auto layer = make_layer(ls);
        shape = layer->out_shape(shape);  // validates the chain as it goes
        Rng layer_rng = master.child("layer-" + std::to_string(idx));
        layer->init(layer_rng);
        if (auto* att = dynamic_cast<nn::FeatureAttention*>(layer.get())) net.attention_ = att;
        net.layers_.push_back(std::move(layer));
        ++idx;
    }
    if (shape != std::vector<int>{spec.outputs})
        fail(Errc::ShapeMismatch, "architecture ends with shape " + nn::shape_str(shape) + ", expected (" +
                                      std::to_string(spec.outputs) + ")");
    net.acts_.resize(net.layers_.size());
    return net;
}

std::vector<double> Network::logits(const float* sample, int steps, int dataset_features, bool training,
                                    Rng* drop_rng) {
    if (steps != spec_.steps) fail(Errc::ShapeMismatch, "sample steps do not match the model");
    input_ = Tensor({spec_.steps, spec_.features});
    if (spec_.input_columns.empty()) {
        if (dataset_features < spec_.features)
            fail(Errc::ShapeMismatch, "sample has fewer feature columns than the model expects");
        for (int t = 0; t < steps; ++t)
            for (int f = 0; f < spec_.features; ++f)
                input_.v[size_t(t) * spec_.features + f] = double(sample[size_t(t) * dataset_features + f]);
    } else {
        for (int f = 0; f < int(spec_.input_columns.size()); ++f)
            if (spec_.input_columns[size_t(f)] >= dataset_features)
                fail(Errc::ShapeMismatch, "input column beyond the sample width");
        for (int t = 0; t < steps; ++t)
            for (int f = 0; f < spec_.features; ++f)
                input_.v[size_t(t) * spec_.features + f] =
                    double(sample[size_t(t) * dataset_features + spec_.input_columns[size_t(f)]]);
    }
    const Tensor* cur = &input_;
    for (size_t i = 0; i < layers_.size(); ++i) {
        layers_[i]->forward(*cur, acts_[i], training, drop_rng);
        cur = &acts_[i];
    }
    acts_.back().check_finite("network forward");
    return acts_.back().v;
}

std::vector<double> Network::predict_probs(const float* sample, int steps, int dataset_features) {
    auto z = logits(sample, steps, dataset_features, false, nullptr);
    if (spec_.outputs == 1) return {nn::sigmoid(z[0])};
    return nn::softmax(z);
}

double Network::predict(const float* sample, int steps, int dataset_features) {
    if (spec_.outputs != 1) fail(Errc::UnsupportedArchitecture, "binary predict on a multi-class head");
    return predict_probs(sample, steps, dataset_features)[0];
}

void Network::backward(const std::vector<double>& dlogits) {
    if (int(dlogits.size()) != spec_.outputs) fail(Errc::ShapeMismatch, "head gradient width mismatch");
    Tensor grad({spec_.outputs});
    grad.v = dlogits;
    Tensor dx;
    for (size_t i = layers_.size(); i-- > 0;) {
        layers_[i]->backward(grad, dx);
        grad = std::move(dx);
        dx = Tensor();
    }
}

std::vector<nn::ParamRef> Network::params() {
    std::vector<nn::ParamRef> out;
    for (size_t i = 0; i < layers_.size(); ++i) {
        for (auto& p : layers_[i]->params()) {
            p.name = "layer" + std::to_string(i + 1) + "." + layers_[i]->kind() + "." + p.name;
            out.push_back(p);
        }
    }
    return out;
}

void Network::zero_grads() {
    for (auto& l : layers_) l->zero_grad();
}

void Network::scale_grads(double c) {
    for (auto& p : params())
        for (auto& g : p.grad->v) g *= c;
}

int64_t Network::n_params() {
    int64_t n = 0;
    for (auto& p : params()) n += p.value->numel();
    return n;
}

std::vector<double> Network::flat_params() {
    std::vector<double> out;
    for (auto& p : params()) out.insert(out.end(), p.value->v.begin(), p.value->v.end());
    return out;
}

void Network::set_flat_params(std::span<const double> flat) {
    size_t off = 0;
    for (auto& p : params()) {
        if (off + p.value->v.size() > flat.size()) fail(Errc::ShapeMismatch, "flat parameter vector too short");
        std::copy(flat.begin() + off, flat.begin() + off + p.value->v.size(), p.value->v.begin());
        off += p.value->v.size();
    }
    if (off != flat.size()) fail(Errc::ShapeMismatch, "flat parameter vector too long");
}

void Network::add_grads_from(Network& other) {
    auto mine = params();
    auto theirs = other.params();
    if (mine.size() != theirs.size()) fail(Errc::ShapeMismatch, "gradient reduction across unlike networks");
    for (size_t i = 0; i < mine.size(); ++i) {
        auto& dst = mine[i].grad->v;
        const auto& src = theirs[i].grad->v;
        for (size_t k = 0; k < dst.size(); ++k) dst[k] += src[k];
    }
}

const std::vector<double>& Network::attention_weights() const {
    if (!attention_) fail(Errc::UnsupportedArchitecture, "this architecture has no attention layer");
    return attention_->weights();
}

Network Network::clone_structure(uint64_t seed) const { return build(spec_, seed); }

} // namespace jumpcast::model
