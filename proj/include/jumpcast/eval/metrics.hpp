#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jumpcast/common/rng.hpp"

namespace jumpcast::eval {

struct ConfusionMatrix {
    int64_t tp = 0;
    int64_t fp = 0;
    int64_t fn = 0;
    int64_t tn = 0;

    int64_t total() const { return tp + fp + fn + tn; }
};

ConfusionMatrix confusion(const std::vector<int>& predictions, const std::vector<int>& labels);

// Zero-denominator cases report 0 with the degenerate flag set.
struct EvalReport {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double kappa = 0.0;
    bool degenerate_pr = false;     // tp+fp or tp+fn was zero
    bool degenerate_kappa = false;  // chance agreement hit 1
    ConfusionMatrix cm;
};

void precision_recall_f1(const ConfusionMatrix& cm, EvalReport& out);
double cohen_kappa(const ConfusionMatrix& cm, bool* degenerate = nullptr);
EvalReport evaluate(const ConfusionMatrix& cm);

// Fair-coin classifier simulated over the exact evaluation path; reported
// precision/recall/kappa are means over the trials and f1 is the harmonic
// mean of the reported precision and recall.
EvalReport random_baseline(const std::vector<int>& labels, uint64_t seed, int trials = 1000);

} // namespace jumpcast::eval
