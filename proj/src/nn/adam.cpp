#include "jumpcast/nn/adam.hpp"

#include <cmath>

namespace jumpcast::nn {

void Adam::step(const std::vector<ParamRef>& params) {
    if (m_.empty()) {
        for (const auto& p : params) {
            m_.emplace_back(p.value->v.size(), 0.0);
            v_.emplace_back(p.value->v.size(), 0.0);
        }
    }
    if (m_.size() != params.size()) fail(Errc::ShapeMismatch, "optimizer state does not match parameter list");
    ++t_;
    const double bc1 = 1.0 - std::pow(beta1_, double(t_));
    const double bc2 = 1.0 - std::pow(beta2_, double(t_));
    for (size_t k = 0; k < params.size(); ++k) {
        auto& value = params[k].value->v;
        const auto& grad = params[k].grad->v;
        if (value.size() != grad.size() || value.size() != m_[k].size())
            fail(Errc::ShapeMismatch, "parameter/gradient shape mismatch in adam step");
        auto& m = m_[k];
        auto& v = v_[k];
        for (size_t i = 0; i < value.size(); ++i) {
            const double g = grad[i];
            m[i] = beta1_ * m[i] + (1.0 - beta1_) * g;
            v[i] = beta2_ * v[i] + (1.0 - beta2_) * g * g;
            const double mhat = m[i] / bc1;
            const double vhat = v[i] / bc2;
            value[i] -= lr_ * mhat / (std::sqrt(vhat) + eps_);
        }
    }
}

} // namespace jumpcast::nn
