#include "jumpcast/nn/tensor.hpp"

#include <cmath>

namespace jumpcast::nn {

void Tensor::check_finite(const char* what) const {
    for (double x : v)
        if (!std::isfinite(x)) fail(Errc::DivergenceDetected, std::string(what) + " produced a non-finite value");
}

std::string shape_str(const std::vector<int>& s) {
    std::string out = "(";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + ")";
}

} // namespace jumpcast::nn
