#include "jumpcast/nn/layers.hpp"

#include <algorithm>
#include <cmath>

namespace jumpcast::nn {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double relu(double x) { return x > 0.0 ? x : 0.0; }
double leaky_relu(double x, double slope) { return x > 0.0 ? x : slope * x; }

double apply_act(Act a, double z, double leaky_slope) {
    switch (a) {
        case Act::Identity: return z;
        case Act::ReLU: return relu(z);
        case Act::LeakyReLU: return leaky_relu(z, leaky_slope);
        case Act::Sigmoid: return sigmoid(z);
        case Act::Tanh: return std::tanh(z);
    }
    return z;
}

double act_deriv(Act a, double z, double y, double leaky_slope) {
    switch (a) {
        case Act::Identity: return 1.0;
        case Act::ReLU: return z > 0.0 ? 1.0 : 0.0;
        case Act::LeakyReLU: return z > 0.0 ? 1.0 : leaky_slope;
        case Act::Sigmoid: return y * (1.0 - y);
        case Act::Tanh: return 1.0 - y * y;
    }
    return 1.0;
}

std::vector<double> softmax(const std::vector<double>& z) {
    double zmax = *std::max_element(z.begin(), z.end());
    std::vector<double> y(z.size());
    double sum = 0.0;
    for (size_t i = 0; i < z.size(); ++i) {
        y[i] = std::exp(z[i] - zmax);
        sum += y[i];
    }
    for (auto& v : y) v /= sum;
    return y;
}

std::vector<double> softmax_backward(const std::vector<double>& y, const std::vector<double>& dy) {
    if (y.size() != dy.size()) fail(Errc::ShapeMismatch, "softmax backward size mismatch");
    double inner = 0.0;
    for (size_t i = 0; i < y.size(); ++i) inner += y[i] * dy[i];
    std::vector<double> dz(y.size());
    for (size_t i = 0; i < y.size(); ++i) dz[i] = y[i] * (dy[i] - inner);
    return dz;
}

namespace {

void glorot_uniform(Tensor& w, int fan_in, int fan_out, Rng& rng) {
    double limit = std::sqrt(6.0 / double(fan_in + fan_out));
    for (auto& x : w.v) x = rng.uniform(-limit, limit);
}

} // namespace

// --------------------------------------------------------------------------
// Flatten / SqueezeMid

void Flatten::forward(const Tensor& x, Tensor& y, bool, Rng*) {
    in_shape_ = x.shape;
    y = x;
    y.reshape({int(x.numel())});
}

void Flatten::backward(const Tensor& dy, Tensor& dx) {
    dx = dy;
    dx.reshape(in_shape_);
}

std::vector<int> SqueezeMid::out_shape(const std::vector<int>& in) const {
    if (in.size() != 3 || in[1] != 1) fail(Errc::ShapeMismatch, "squeeze expects (T, 1, C)");
    return {in[0], in[2]};
}

void SqueezeMid::forward(const Tensor& x, Tensor& y, bool, Rng*) {
    in_shape_ = x.shape;
    y = x;
    y.reshape(out_shape(x.shape));
}

void SqueezeMid::backward(const Tensor& dy, Tensor& dx) {
    dx = dy;
    dx.reshape(in_shape_);
}

// --------------------------------------------------------------------------
// Dense

Dense::Dense(int in, int out, Act act, double leaky_slope)
    : in_(in), out_(out), act_(act), slope_(leaky_slope), w_({out, in}), b_({out}), dw_({out, in}), db_({out}) {}

std::vector<int> Dense::out_shape(const std::vector<int>& in) const {
    if (Tensor::numel_of(in) != in_) fail(Errc::ShapeMismatch, "dense input size mismatch");
    return {out_};
}

void Dense::init(Rng& rng) { glorot_uniform(w_, in_, out_, rng); b_.zero(); }

void Dense::forward(const Tensor& x, Tensor& y, bool, Rng*) {
    if (x.numel() != in_) fail(Errc::ShapeMismatch, "dense forward input size mismatch");
    x_ = x;
    z_ = Tensor({out_});
    for (int o = 0; o < out_; ++o) {
        const double* wrow = w_.v.data() + size_t(o) * in_;
        double acc = b_.v[size_t(o)];
        for (int i = 0; i < in_; ++i) acc += wrow[i] * x.v[size_t(i)];
        z_.v[size_t(o)] = acc;
    }
    y = Tensor({out_});
    for (int o = 0; o < out_; ++o) y.v[size_t(o)] = apply_act(act_, z_.v[size_t(o)], slope_);
    y_ = y;
}

void Dense::backward(const Tensor& dy, Tensor& dx) {
    if (dy.numel() != out_) fail(Errc::ShapeMismatch, "dense backward size mismatch");
    std::vector<double> dz(static_cast<size_t>(out_));
    for (int o = 0; o < out_; ++o)
        dz[size_t(o)] = dy.v[size_t(o)] * act_deriv(act_, z_.v[size_t(o)], y_.v[size_t(o)], slope_);
    for (int o = 0; o < out_; ++o) {
        double* dwrow = dw_.v.data() + size_t(o) * in_;
        const double g = dz[size_t(o)];
        const double* xv = x_.v.data();
        for (int i = 0; i < in_; ++i) dwrow[i] += g * xv[i];
        db_.v[size_t(o)] += g;
    }
    dx = Tensor(x_.shape);
    for (int o = 0; o < out_; ++o) {
        const double* wrow = w_.v.data() + size_t(o) * in_;
        const double g = dz[size_t(o)];
        for (int i = 0; i < in_; ++i) dx.v[size_t(i)] += wrow[i] * g;
    }
}

std::vector<ParamRef> Dense::params() {
    return {{"w", &w_, &dw_}, {"b", &b_, &db_}};
}

// --------------------------------------------------------------------------
// Conv1d

Conv1d::Conv1d(int in_ch, int out_ch, int k, Act act, double leaky_slope)
    : cin_(in_ch),
      cout_(out_ch),
      k_(k),
      act_(act),
      slope_(leaky_slope),
      w_({k, in_ch, out_ch}),
      b_({out_ch}),
      dw_({k, in_ch, out_ch}),
      db_({out_ch}) {}

std::vector<int> Conv1d::out_shape(const std::vector<int>& in) const {
    if (in.size() != 2 || in[1] != cin_) fail(Errc::ShapeMismatch, "conv1d expects (T, C_in)");
    if (in[0] < k_) fail(Errc::KernelTooLarge, "conv1d kernel exceeds input length");
    return {in[0] - k_ + 1, cout_};
}

void Conv1d::init(Rng& rng) { glorot_uniform(w_, k_ * cin_, /*fan_out*/ k_ * cout_, rng); b_.zero(); }

void Conv1d::forward(const Tensor& x, Tensor& y, bool, Rng*) {
    auto os = out_shape(x.shape);
    const int T = x.shape[0];
    const int to = os[0];
    x_ = x;
    z_ = Tensor(os);
    for (int t = 0; t < to; ++t) {
        double* zrow = z_.v.data() + size_t(t) * cout_;
        for (int co = 0; co < cout_; ++co) zrow[co] = b_.v[size_t(co)];
        for (int dt = 0; dt < k_; ++dt) {
            const double* xrow = x.v.data() + size_t(t + dt) * cin_;
            const double* wbase = w_.v.data() + size_t(dt) * cin_ * cout_;
            for (int ci = 0; ci < cin_; ++ci) {
                const double xv = xrow[ci];
                if (xv == 0.0) continue;
                const double* wrow = wbase + size_t(ci) * cout_;
                for (int co = 0; co < cout_; ++co) zrow[co] += wrow[co] * xv;
            }
        }
    }
    (void)T;
    y = Tensor(os);
    for (size_t i = 0; i < y.v.size(); ++i) y.v[i] = apply_act(act_, z_.v[i], slope_);
    y_ = y;
}

void Conv1d::backward(const Tensor& dy, Tensor& dx) {
    const int to = z_.shape[0];
    if (dy.shape != z_.shape) fail(Errc::ShapeMismatch, "conv1d backward size mismatch");
    std::vector<double> dz(dy.v.size());
    for (size_t i = 0; i < dz.size(); ++i) dz[i] = dy.v[i] * act_deriv(act_, z_.v[i], y_.v[i], slope_);
    dx = Tensor(x_.shape);
    for (int t = 0; t < to; ++t) {
        const double* dzrow = dz.data() + size_t(t) * cout_;
        for (int co = 0; co < cout_; ++co) db_.v[size_t(co)] += dzrow[co];
        for (int dt = 0; dt < k_; ++dt) {
            const double* xrow = x_.v.data() + size_t(t + dt) * cin_;
            double* dxrow = dx.v.data() + size_t(t + dt) * cin_;
            const double* wbase = w_.v.data() + size_t(dt) * cin_ * cout_;
            double* dwbase = dw_.v.data() + size_t(dt) * cin_ * cout_;
            for (int ci = 0; ci < cin_; ++ci) {
                const double xv = xrow[ci];
                const double* wrow = wbase + size_t(ci) * cout_;
                double* dwrow = dwbase + size_t(ci) * cout_;
                double acc = 0.0;
                for (int co = 0; co < cout_; ++co) {
                    dwrow[co] += xv * dzrow[co];
                    acc += wrow[co] * dzrow[co];
                }
                dxrow[ci] += acc;
            }
        }
    }
}

std::vector<ParamRef> Conv1d::params() {
    return {{"w", &w_, &dw_}, {"b", &b_, &db_}};
}

// --------------------------------------------------------------------------
// Conv2d

Conv2d::Conv2d(int kh, int kw, int out_ch, Act act, double leaky_slope)
    : kh_(kh),
      kw_(kw),
      cout_(out_ch),
      act_(act),
      slope_(leaky_slope),
      w_({kh, kw, out_ch}),
      b_({out_ch}),
      dw_({kh, kw, out_ch}),
      db_({out_ch}) {}

std::vector<int> Conv2d::out_shape(const std::vector<int>& in) const {
    if (in.size() != 2) fail(Errc::ShapeMismatch, "conv2d expects a single-channel (T, W) input");
    if (in[0] < kh_ || in[1] < kw_) fail(Errc::KernelTooLarge, "conv2d kernel exceeds input");
    return {in[0] - kh_ + 1, in[1] - kw_ + 1, cout_};
}

void Conv2d::init(Rng& rng) { glorot_uniform(w_, kh_ * kw_, kh_ * kw_ * cout_, rng); b_.zero(); }

void Conv2d::forward(const Tensor& x, Tensor& y, bool, Rng*) {
    auto os = out_shape(x.shape);
    const int W = x.shape[1];
    const int to = os[0], wo = os[1];
    x_ = x;
    z_ = Tensor(os);
    for (int t = 0; t < to; ++t) {
        for (int u = 0; u < wo; ++u) {
            double* zrow = z_.v.data() + (size_t(t) * wo + u) * cout_;
            for (int co = 0; co < cout_; ++co) zrow[co] = b_.v[size_t(co)];
            for (int dh = 0; dh < kh_; ++dh) {
                const double* xrow = x.v.data() + size_t(t + dh) * W + u;
                const double* wbase = w_.v.data() + size_t(dh) * kw_ * cout_;
                for (int dw = 0; dw < kw_; ++dw) {
                    const double xv = xrow[dw];
                    if (xv == 0.0) continue;
                    const double* wrow = wbase + size_t(dw) * cout_;
                    for (int co = 0; co < cout_; ++co) zrow[co] += wrow[co] * xv;
                }
            }
        }
    }
    y = Tensor(os);
    for (size_t i = 0; i < y.v.size(); ++i) y.v[i] = apply_act(act_, z_.v[i], slope_);
    y_ = y;
}

void Conv2d::backward(const Tensor& dy, Tensor& dx) {
    if (dy.shape != z_.shape) fail(Errc::ShapeMismatch, "conv2d backward size mismatch");
    const int W = x_.shape[1];
    const int to = z_.shape[0], wo = z_.shape[1];
    std::vector<double> dz(dy.v.size());
    for (size_t i = 0; i < dz.size(); ++i) dz[i] = dy.v[i] * act_deriv(act_, z_.v[i], y_.v[i], slope_);
    dx = Tensor(x_.shape);
    for (int t = 0; t < to; ++t) {
        for (int u = 0; u < wo; ++u) {
            const double* dzrow = dz.data() + (size_t(t) * wo + u) * cout_;
            for (int co = 0; co < cout_; ++co) db_.v[size_t(co)] += dzrow[co];
            for (int dh = 0; dh < kh_; ++dh) {
                const double* xrow = x_.v.data() + size_t(t + dh) * W + u;
                double* dxrow = dx.v.data() + size_t(t + dh) * W + u;
                const double* wbase = w_.v.data() + size_t(dh) * kw_ * cout_;
                double* dwbase = dw_.v.data() + size_t(dh) * kw_ * cout_;
                for (int dw = 0; dw < kw_; ++dw) {
                    const double xv = xrow[dw];
                    const double* wrow = wbase + size_t(dw) * cout_;
                    double* dwrow = dwbase + size_t(dw) * cout_;
                    double acc = 0.0;
                    for (int co = 0; co < cout_; ++co) {
                        dwrow[co] += xv * dzrow[co];
                        acc += wrow[co] * dzrow[co];
                    }
                    dxrow[dw] += acc;
                }
            }
        }
    }
}

std::vector<ParamRef> Conv2d::params() {
    return {{"w", &w_, &dw_}, {"b", &b_, &db_}};
}

// --------------------------------------------------------------------------
// MaxPool1d

MaxPool1d::MaxPool1d(int size) : size_(size) {
    if (size < 1) fail(Errc::ShapeMismatch, "pool size must be positive");
}

std::vector<int> MaxPool1d::out_shape(const std::vector<int>& in) const {
    if (in.size() != 2) fail(Errc::ShapeMismatch, "maxpool expects (T, C)");
    if (in[0] < size_) fail(Errc::ShapeMismatch, "maxpool window exceeds input length");
    return {in[0] / size_, in[1]};
}

void MaxPool1d::forward(const Tensor& x, Tensor& y, bool, Rng*) {
    auto os = out_shape(x.shape);
    const int C = x.shape[1];
    in_shape_ = x.shape;
    y = Tensor(os);
    argmax_.assign(y.v.size(), 0);
    for (int t = 0; t < os[0]; ++t) {
        for (int c = 0; c < C; ++c) {
            int best = t * size_;
            double bv = x.v[size_t(best) * C + c];
            for (int k = 1; k < size_; ++k) {
                int idx = t * size_ + k;
                double v = x.v[size_t(idx) * C + c];
                if (v > bv) {
                    bv = v;
                    best = idx;
                }
            }
            y.v[size_t(t) * C + c] = bv;
            argmax_[size_t(t) * C + c] = best;
        }
    }
}

void MaxPool1d::backward(const Tensor& dy, Tensor& dx) {
    const int C = in_shape_[1];
    dx = Tensor(in_shape_);
    for (size_t i = 0; i < dy.v.size(); ++i) {
        int c = int(i % size_t(C));
        dx.v[size_t(argmax_[i]) * C + c] += dy.v[i];
    }
}

// --------------------------------------------------------------------------
// Dropout

Dropout::Dropout(double p) : p_(p) {
    if (p < 0.0 || p >= 1.0) fail(Errc::BadConfig, "dropout probability must lie in [0, 1)");
}

void Dropout::forward(const Tensor& x, Tensor& y, bool training, Rng* drop_rng) {
    in_shape_ = x.shape;
    y = x;
    if (!training || p_ == 0.0 || drop_rng == nullptr) {
        mask_.assign(x.v.size(), 1.0);
        return;
    }
    mask_.resize(x.v.size());
    const double scale = 1.0 / (1.0 - p_);
    for (size_t i = 0; i < x.v.size(); ++i) {
        mask_[i] = drop_rng->bernoulli(p_) ? 0.0 : scale;
        y.v[i] = x.v[i] * mask_[i];
    }
}

void Dropout::backward(const Tensor& dy, Tensor& dx) {
    dx = dy;
    for (size_t i = 0; i < dx.v.size(); ++i) dx.v[i] *= mask_[i];
}

} // namespace jumpcast::nn
