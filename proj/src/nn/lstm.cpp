#include "jumpcast/nn/lstm.hpp"

#include <cmath>

namespace jumpcast::nn {

namespace {
constexpr int kGateI = 0;
constexpr int kGateF = 1;
constexpr int kGateG = 2;
constexpr int kGateO = 3;
} // namespace

Lstm::Lstm(int in_ch, int units, Act hidden_act, bool return_sequence, double dropout, double recurrent_dropout)
    : cin_(in_ch),
      units_(units),
      hidden_act_(hidden_act),
      return_seq_(return_sequence),
      dropout_(dropout),
      recurrent_dropout_(recurrent_dropout),
      wx_({4 * units, in_ch}),
      wh_({4 * units, units}),
      b_({4 * units}),
      dwx_({4 * units, in_ch}),
      dwh_({4 * units, units}),
      db_({4 * units}) {
    if (dropout < 0.0 || dropout >= 1.0 || recurrent_dropout < 0.0 || recurrent_dropout >= 1.0)
        fail(Errc::BadConfig, "lstm dropout probabilities must lie in [0, 1)");
}

std::vector<int> Lstm::out_shape(const std::vector<int>& in) const {
    if (in.size() != 2 || in[1] != cin_) fail(Errc::ShapeMismatch, "lstm expects (T, C_in)");
    if (in[0] < 1) fail(Errc::ShapeMismatch, "lstm needs at least one step");
    return return_seq_ ? std::vector<int>{in[0], units_} : std::vector<int>{units_};
}

void Lstm::init(Rng& rng) {
    double limit_x = std::sqrt(6.0 / double(cin_ + units_));
    for (auto& v : wx_.v) v = rng.uniform(-limit_x, limit_x);
    double limit_h = std::sqrt(6.0 / double(units_ + units_));
    for (auto& v : wh_.v) v = rng.uniform(-limit_h, limit_h);
    b_.zero();
    // forget-gate bias starts open
    for (int u = 0; u < units_; ++u) b_.v[size_t(kGateF * units_ + u)] = 1.0;
}

void Lstm::forward(const Tensor& x, Tensor& y, bool training, Rng* drop_rng) {
    out_shape(x.shape);
    const int T = x.shape[0];
    const int U = units_;
    steps_ = T;

    mask_x_.assign(size_t(cin_), 1.0);
    mask_h_.assign(size_t(U), 1.0);
    if (training && drop_rng != nullptr) {
        if (dropout_ > 0.0) {
            const double scale = 1.0 / (1.0 - dropout_);
            for (auto& m : mask_x_) m = drop_rng->bernoulli(dropout_) ? 0.0 : scale;
        }
        if (recurrent_dropout_ > 0.0) {
            const double scale = 1.0 / (1.0 - recurrent_dropout_);
            for (auto& m : mask_h_) m = drop_rng->bernoulli(recurrent_dropout_) ? 0.0 : scale;
        }
    }

    xs_.assign(size_t(T) * cin_, 0.0);
    hs_.assign(size_t(T + 1) * U, 0.0);
    cs_.assign(size_t(T + 1) * U, 0.0);
    gates_.assign(size_t(T) * 4 * U, 0.0);
    acts_.assign(size_t(T) * U, 0.0);

    std::vector<double> hdrop(static_cast<size_t>(U));
    for (int t = 0; t < T; ++t) {
        double* xt = xs_.data() + size_t(t) * cin_;
        for (int c = 0; c < cin_; ++c) xt[c] = x.v[size_t(t) * cin_ + c] * mask_x_[size_t(c)];
        const double* hprev = hs_.data() + size_t(t) * U;
        for (int u = 0; u < U; ++u) hdrop[size_t(u)] = hprev[u] * mask_h_[size_t(u)];

        double* gt = gates_.data() + size_t(t) * 4 * U;
        for (int r = 0; r < 4 * U; ++r) {
            const double* wxr = wx_.v.data() + size_t(r) * cin_;
            double acc = b_.v[size_t(r)];
            for (int c = 0; c < cin_; ++c) acc += wxr[c] * xt[c];
            const double* whr = wh_.v.data() + size_t(r) * U;
            for (int u = 0; u < U; ++u) acc += whr[u] * hdrop[size_t(u)];
            gt[r] = acc;
        }
        const double* cprev = cs_.data() + size_t(t) * U;
        double* ct = cs_.data() + size_t(t + 1) * U;
        double* ht = hs_.data() + size_t(t + 1) * U;
        double* at = acts_.data() + size_t(t) * U;
        for (int u = 0; u < U; ++u) {
            double i = sigmoid(gt[kGateI * U + u]);
            double f = sigmoid(gt[kGateF * U + u]);
            double g = std::tanh(gt[kGateG * U + u]);
            double o = sigmoid(gt[kGateO * U + u]);
            gt[kGateI * U + u] = i;
            gt[kGateF * U + u] = f;
            gt[kGateG * U + u] = g;
            gt[kGateO * U + u] = o;
            ct[u] = f * cprev[u] + i * g;
            at[u] = apply_act(hidden_act_, ct[u], 0.01);
            ht[u] = o * at[u];
        }
    }

    if (return_seq_) {
        y = Tensor({T, U});
        std::copy(hs_.begin() + U, hs_.end(), y.v.begin());
    } else {
        y = Tensor({U});
        std::copy(hs_.begin() + size_t(T) * U, hs_.end(), y.v.begin());
    }
}

void Lstm::backward(const Tensor& dy, Tensor& dx) {
    const int T = steps_;
    const int U = units_;
    if (return_seq_) {
        if (dy.shape != std::vector<int>{T, U}) fail(Errc::ShapeMismatch, "lstm backward sequence mismatch");
    } else if (dy.numel() != U) {
        fail(Errc::ShapeMismatch, "lstm backward state mismatch");
    }

    dx = Tensor({T, cin_});
    std::vector<double> dh(size_t(U), 0.0);
    std::vector<double> dc(size_t(U), 0.0);
    std::vector<double> dz(static_cast<size_t>(4 * U));
    std::vector<double> hdrop(static_cast<size_t>(U));

    for (int t = T - 1; t >= 0; --t) {
        const double* gt = gates_.data() + size_t(t) * 4 * U;
        const double* cprev = cs_.data() + size_t(t) * U;
        const double* ct = cs_.data() + size_t(t + 1) * U;
        const double* at = acts_.data() + size_t(t) * U;
        const double* hprev = hs_.data() + size_t(t) * U;
        const double* xt = xs_.data() + size_t(t) * cin_;

        if (return_seq_) {
            for (int u = 0; u < U; ++u) dh[size_t(u)] += dy.v[size_t(t) * U + u];
        } else if (t == T - 1) {
            for (int u = 0; u < U; ++u) dh[size_t(u)] += dy.v[size_t(u)];
        }

        for (int u = 0; u < U; ++u) {
            double i = gt[kGateI * U + u];
            double f = gt[kGateF * U + u];
            double g = gt[kGateG * U + u];
            double o = gt[kGateO * U + u];
            double dho = dh[size_t(u)];
            double d_o = dho * at[u];
            double d_c = dc[size_t(u)] + dho * o * act_deriv(hidden_act_, ct[u], at[u], 0.01);
            double d_i = d_c * g;
            double d_f = d_c * cprev[u];
            double d_g = d_c * i;
            dc[size_t(u)] = d_c * f;
            dz[size_t(kGateI * U + u)] = d_i * i * (1.0 - i);
            dz[size_t(kGateF * U + u)] = d_f * f * (1.0 - f);
            dz[size_t(kGateG * U + u)] = d_g * (1.0 - g * g);
            dz[size_t(kGateO * U + u)] = d_o * o * (1.0 - o);
        }

        for (int u = 0; u < U; ++u) hdrop[size_t(u)] = hprev[u] * mask_h_[size_t(u)];
        std::fill(dh.begin(), dh.end(), 0.0);
        double* dxt = dx.v.data() + size_t(t) * cin_;
        for (int r = 0; r < 4 * U; ++r) {
            const double gz = dz[size_t(r)];
            if (gz == 0.0) continue;
            double* dwxr = dwx_.v.data() + size_t(r) * cin_;
            const double* wxr = wx_.v.data() + size_t(r) * cin_;
            for (int c = 0; c < cin_; ++c) {
                dwxr[c] += gz * xt[c];
                dxt[c] += wxr[c] * gz;
            }
            double* dwhr = dwh_.v.data() + size_t(r) * U;
            const double* whr = wh_.v.data() + size_t(r) * U;
            for (int u = 0; u < U; ++u) {
                dwhr[u] += gz * hdrop[size_t(u)];
                dh[size_t(u)] += whr[u] * gz * mask_h_[size_t(u)];
            }
            db_.v[size_t(r)] += gz;
        }
        // undo the input mask on dx
        for (int c = 0; c < cin_; ++c) dxt[c] *= mask_x_[size_t(c)];
    }
}

std::vector<ParamRef> Lstm::params() {
    return {{"wx", &wx_, &dwx_}, {"wh", &wh_, &dwh_}, {"b", &b_, &db_}};
}

} // namespace jumpcast::nn
