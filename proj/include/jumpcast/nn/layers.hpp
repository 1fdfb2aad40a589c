#pragma once

#include <memory>
#include <string>
#include <vector>

#include "jumpcast/common/rng.hpp"
#include "jumpcast/nn/tensor.hpp"

namespace jumpcast::nn {

enum class Act { Identity, ReLU, LeakyReLU, Sigmoid, Tanh };

double apply_act(Act a, double z, double leaky_slope);
double act_deriv(Act a, double z, double y, double leaky_slope);

double sigmoid(double x);
double relu(double x);
double leaky_relu(double x, double slope);

// Numerically stable softmax (max subtraction); output sums to one.
std::vector<double> softmax(const std::vector<double>& z);
// dL/dz given y = softmax(z) and dL/dy.
std::vector<double> softmax_backward(const std::vector<double>& y, const std::vector<double>& dy);

struct ParamRef {
    std::string name;
    Tensor* value;
    Tensor* grad;
};

// Single-sample layer with cached forward state for the following backward.
class Layer {
public:
    virtual ~Layer() = default;
    virtual std::string kind() const = 0;
    virtual std::vector<int> out_shape(const std::vector<int>& in) const = 0;
    virtual void init(Rng&) {}
    virtual void forward(const Tensor& x, Tensor& y, bool training, Rng* drop_rng) = 0;
    virtual void backward(const Tensor& dy, Tensor& dx) = 0;
    virtual std::vector<ParamRef> params() { return {}; }
    void zero_grad() {
        for (auto& p : params()) p.grad->zero();
    }
};

class Flatten : public Layer {
public:
    std::string kind() const override { return "flatten"; }
    std::vector<int> out_shape(const std::vector<int>& in) const override { return {int(Tensor::numel_of(in))}; }
    void forward(const Tensor& x, Tensor& y, bool, Rng*) override;
    void backward(const Tensor& dy, Tensor& dx) override;

private:
    std::vector<int> in_shape_;
};

// Drops a singleton middle dimension: (T, 1, C) -> (T, C).
class SqueezeMid : public Layer {
public:
    std::string kind() const override { return "squeeze"; }
    std::vector<int> out_shape(const std::vector<int>& in) const override;
    void forward(const Tensor& x, Tensor& y, bool, Rng*) override;
    void backward(const Tensor& dy, Tensor& dx) override;

private:
    std::vector<int> in_shape_;
};

class Dense : public Layer {
public:
    Dense(int in, int out, Act act, double leaky_slope = 0.01);
    std::string kind() const override { return "dense"; }
    std::vector<int> out_shape(const std::vector<int>& in) const override;
    void init(Rng& rng) override;
    void forward(const Tensor& x, Tensor& y, bool, Rng*) override;
    void backward(const Tensor& dy, Tensor& dx) override;
    std::vector<ParamRef> params() override;

    int in_dim() const { return in_; }
    int out_dim() const { return out_; }

private:
    int in_, out_;
    Act act_;
    double slope_;
    Tensor w_, b_, dw_, db_;
    Tensor x_, z_, y_;
};

class Conv1d : public Layer {
public:
    Conv1d(int in_ch, int out_ch, int k, Act act, double leaky_slope = 0.01);
    std::string kind() const override { return "conv1d"; }
    std::vector<int> out_shape(const std::vector<int>& in) const override;
    void init(Rng& rng) override;
    void forward(const Tensor& x, Tensor& y, bool, Rng*) override;
    void backward(const Tensor& dy, Tensor& dx) override;
    std::vector<ParamRef> params() override;

private:
    int cin_, cout_, k_;
    Act act_;
    double slope_;
    Tensor w_, b_, dw_, db_;  // w: k x cin x cout
    Tensor x_, z_, y_;
};

// Two-dimensional valid convolution over a single-channel (T, W) input.
class Conv2d : public Layer {
public:
    Conv2d(int kh, int kw, int out_ch, Act act, double leaky_slope = 0.01);
    std::string kind() const override { return "conv2d"; }
    std::vector<int> out_shape(const std::vector<int>& in) const override;
    void init(Rng& rng) override;
    void forward(const Tensor& x, Tensor& y, bool, Rng*) override;
    void backward(const Tensor& dy, Tensor& dx) override;
    std::vector<ParamRef> params() override;

private:
    int kh_, kw_, cout_;
    Act act_;
    double slope_;
    Tensor w_, b_, dw_, db_;  // w: kh x kw x cout
    Tensor x_, z_, y_;
};

// Non-overlapping max pooling along the time axis; the remainder is
// truncated and ties route the gradient to the earliest index.
class MaxPool1d : public Layer {
public:
    explicit MaxPool1d(int size);
    std::string kind() const override { return "maxpool"; }
    std::vector<int> out_shape(const std::vector<int>& in) const override;
    void forward(const Tensor& x, Tensor& y, bool, Rng*) override;
    void backward(const Tensor& dy, Tensor& dx) override;

private:
    int size_;
    std::vector<int> in_shape_;
    std::vector<int> argmax_;
};

// Inverted dropout: training zeroes units with probability p and scales
// survivors by 1/(1-p); evaluation is the identity.
class Dropout : public Layer {
public:
    explicit Dropout(double p);
    std::string kind() const override { return "dropout"; }
    std::vector<int> out_shape(const std::vector<int>& in) const override { return in; }
    void forward(const Tensor& x, Tensor& y, bool training, Rng* drop_rng) override;
    void backward(const Tensor& dy, Tensor& dx) override;

private:
    double p_;
    std::vector<double> mask_;
    std::vector<int> in_shape_;
};

} // namespace jumpcast::nn
