#include "jumpcast/nn/attention.hpp"

#include <cmath>

namespace jumpcast::nn {

FeatureAttention::FeatureAttention(int steps)
    : steps_(steps), u_({steps}), b_({1}), du_({steps}), db_({1}) {}

std::vector<int> FeatureAttention::out_shape(const std::vector<int>& in) const {
    if (in.size() != 2 || in[0] != steps_) fail(Errc::ShapeMismatch, "feature attention expects (T, F)");
    return in;
}

void FeatureAttention::init(Rng& rng) {
    double limit = std::sqrt(6.0 / double(steps_ + 1));
    for (auto& v : u_.v) v = rng.uniform(-limit, limit);
    b_.zero();
}

void FeatureAttention::forward(const Tensor& x, Tensor& y, bool, Rng*) {
    out_shape(x.shape);
    const int T = x.shape[0];
    const int F = x.shape[1];
    x_ = x;
    std::vector<double> scores(size_t(F), b_.v[0]);
    for (int t = 0; t < T; ++t) {
        const double ut = u_.v[size_t(t)];
        const double* xrow = x.v.data() + size_t(t) * F;
        for (int f = 0; f < F; ++f) scores[size_t(f)] += ut * xrow[f];
    }
    m_.resize(size_t(F));
    for (int f = 0; f < F; ++f) m_[size_t(f)] = std::tanh(scores[size_t(f)]);
    alpha_ = softmax(m_);
    y = Tensor(x.shape);
    for (int t = 0; t < T; ++t) {
        const double* xrow = x.v.data() + size_t(t) * F;
        double* yrow = y.v.data() + size_t(t) * F;
        for (int f = 0; f < F; ++f) yrow[f] = xrow[f] * alpha_[size_t(f)];
    }
}

void FeatureAttention::backward(const Tensor& dy, Tensor& dx) {
    if (dy.shape != x_.shape) fail(Errc::ShapeMismatch, "feature attention backward mismatch");
    const int T = x_.shape[0];
    const int F = x_.shape[1];

    // direct path plus the score path through alpha(X)
    std::vector<double> dalpha(size_t(F), 0.0);
    dx = Tensor(x_.shape);
    for (int t = 0; t < T; ++t) {
        const double* xrow = x_.v.data() + size_t(t) * F;
        const double* dyrow = dy.v.data() + size_t(t) * F;
        double* dxrow = dx.v.data() + size_t(t) * F;
        for (int f = 0; f < F; ++f) {
            dxrow[f] = dyrow[f] * alpha_[size_t(f)];
            dalpha[size_t(f)] += dyrow[f] * xrow[f];
        }
    }
    std::vector<double> dm = softmax_backward(alpha_, dalpha);
    std::vector<double> ds(static_cast<size_t>(F));
    for (int f = 0; f < F; ++f) ds[size_t(f)] = dm[size_t(f)] * (1.0 - m_[size_t(f)] * m_[size_t(f)]);

    double dbias = 0.0;
    for (int f = 0; f < F; ++f) dbias += ds[size_t(f)];
    db_.v[0] += dbias;
    for (int t = 0; t < T; ++t) {
        const double* xrow = x_.v.data() + size_t(t) * F;
        double* dxrow = dx.v.data() + size_t(t) * F;
        const double ut = u_.v[size_t(t)];
        double du_t = 0.0;
        for (int f = 0; f < F; ++f) {
            du_t += ds[size_t(f)] * xrow[f];
            dxrow[f] += ut * ds[size_t(f)];
        }
        du_.v[size_t(t)] += du_t;
    }
}

std::vector<ParamRef> FeatureAttention::params() {
    return {{"u", &u_, &du_}, {"b", &b_, &db_}};
}

} // namespace jumpcast::nn
