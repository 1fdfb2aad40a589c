#pragma once

#include <cmath>
#include <functional>
#include <span>

namespace jumpcast::nn {

// Central finite differences against an analytic gradient. The loss functor
// re-evaluates the full forward pass after each coordinate nudge. Relative
// error is |a - n| / max(1, |a|, |n|), so near-zero gradients are measured
// absolutely.
inline double gradcheck_max_rel_error(const std::function<double()>& loss, std::span<double> x,
                                      std::span<const double> analytic, double eps = 1e-5) {
    double worst = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double keep = x[i];
        x[i] = keep + eps;
        const double up = loss();
        x[i] = keep - eps;
        const double dn = loss();
        x[i] = keep;
        const double numeric = (up - dn) / (2.0 * eps);
        const double a = analytic[i];
        const double err = std::fabs(a - numeric) / std::max({1.0, std::fabs(a), std::fabs(numeric)});
        if (err > worst) worst = err;
    }
    return worst;
}

} // namespace jumpcast::nn
