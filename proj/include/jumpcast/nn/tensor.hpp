#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jumpcast/common/error.hpp"

namespace jumpcast::nn {

// Dense row-major tensor of doubles. Training math is 64-bit throughout;
// float32 only appears in dataset storage.
struct Tensor {
    std::vector<int> shape;
    std::vector<double> v;

    Tensor() = default;
    explicit Tensor(std::vector<int> s) : shape(std::move(s)) { v.assign(size_t(numel_of(shape)), 0.0); }

    static int64_t numel_of(const std::vector<int>& s) {
        int64_t n = 1;
        for (int d : s) {
            if (d <= 0) fail(Errc::ShapeMismatch, "nonpositive tensor dimension");
            n *= d;
        }
        return n;
    }

    int64_t numel() const { return int64_t(v.size()); }

    void zero() { std::fill(v.begin(), v.end(), 0.0); }

    void reshape(std::vector<int> s) {
        if (numel_of(s) != numel()) fail(Errc::ShapeMismatch, "reshape changes element count");
        shape = std::move(s);
    }

    void require_shape(const std::vector<int>& s, const char* what) const {
        if (shape != s) fail(Errc::ShapeMismatch, std::string(what) + ": unexpected input shape");
    }

    // hard finiteness gate: any NaN/Inf in an op output is a bug
    void check_finite(const char* what) const;
};

std::string shape_str(const std::vector<int>& s);

} // namespace jumpcast::nn
