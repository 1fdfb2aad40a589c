#include "jumpcast/eval/metrics.hpp"

#include "jumpcast/common/error.hpp"

namespace jumpcast::eval {

ConfusionMatrix confusion(const std::vector<int>& predictions, const std::vector<int>& labels) {
    if (predictions.size() != labels.size())
        fail(Errc::LengthMismatch, "predictions and labels differ in length");
    ConfusionMatrix cm;
    for (size_t i = 0; i < labels.size(); ++i) {
        bool truth = labels[i] != 0;
        bool pred = predictions[i] != 0;
        if (truth && pred)
            ++cm.tp;
        else if (!truth && pred)
            ++cm.fp;
        else if (truth && !pred)
            ++cm.fn;
        else
            ++cm.tn;
    }
    return cm;
}

void precision_recall_f1(const ConfusionMatrix& cm, EvalReport& out) {
    bool no_pred_pos = cm.tp + cm.fp == 0;
    bool no_true_pos = cm.tp + cm.fn == 0;
    out.degenerate_pr = no_pred_pos || no_true_pos;
    out.precision = no_pred_pos ? 0.0 : double(cm.tp) / double(cm.tp + cm.fp);
    out.recall = no_true_pos ? 0.0 : double(cm.tp) / double(cm.tp + cm.fn);
    out.f1 = out.precision + out.recall > 0.0 ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
                                              : 0.0;
}

double cohen_kappa(const ConfusionMatrix& cm, bool* degenerate) {
    if (cm.total() <= 0) fail(Errc::InvariantViolation, "kappa of an empty confusion matrix");
    const double n = double(cm.total());
    const double po = double(cm.tp + cm.tn) / n;
    const double pc =
        (double(cm.tp + cm.fp) * double(cm.tp + cm.fn) + double(cm.fn + cm.tn) * double(cm.fp + cm.tn)) / (n * n);
    if (degenerate) *degenerate = false;
    if (pc >= 1.0) {
        if (degenerate) *degenerate = true;
        return 0.0;
    }
    return (po - pc) / (1.0 - pc);
}

EvalReport evaluate(const ConfusionMatrix& cm) {
    EvalReport out;
    out.cm = cm;
    precision_recall_f1(cm, out);
    out.kappa = cohen_kappa(cm, &out.degenerate_kappa);
    return out;
}

EvalReport random_baseline(const std::vector<int>& labels, uint64_t seed, int trials) {
    if (labels.empty()) fail(Errc::LengthMismatch, "random baseline needs labels");
    Rng rng = Rng(seed).child("random-baseline");
    double sum_p = 0, sum_r = 0, sum_k = 0;
    ConfusionMatrix accum;
    std::vector<int> preds(labels.size());
    for (int t = 0; t < trials; ++t) {
        for (auto& p : preds) p = rng.bernoulli(0.5) ? 1 : 0;
        ConfusionMatrix cm = confusion(preds, labels);
        EvalReport r = evaluate(cm);
        sum_p += r.precision;
        sum_r += r.recall;
        sum_k += r.kappa;
        accum.tp += cm.tp;
        accum.fp += cm.fp;
        accum.fn += cm.fn;
        accum.tn += cm.tn;
    }
    EvalReport out;
    out.cm = accum;
    out.precision = sum_p / trials;
    out.recall = sum_r / trials;
    out.f1 = out.precision + out.recall > 0.0 ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
                                              : 0.0;
    out.kappa = sum_k / trials;
    return out;
}

} // namespace jumpcast::eval
