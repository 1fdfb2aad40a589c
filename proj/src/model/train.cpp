#include "jumpcast/model/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "jumpcast/nn/adam.hpp"
#include "jumpcast/nn/loss.hpp"

namespace jumpcast::model {

namespace {

struct LossGrad {
    double loss_sum = 0.0;
    double weight_sum = 0.0;
};

nn::HeadResult head_for(Network& net, const std::vector<double>& z, uint8_t label,
                        const std::vector<double>& weights) {
    if (net.n_outputs() == 1) return nn::sigmoid_bce_head(z[0], double(label), weights[label]);
    return nn::softmax_ce_head(z, int(label), weights[label]);
}

// Process one slice of a batch on one network replica.
LossGrad run_slice(Network& net, const std::vector<data::Sample>& samples, const std::vector<size_t>& order,
                   size_t begin, size_t end, const std::vector<double>& weights, uint64_t drop_seed,
                   bool training) {
    LossGrad out;
    const int steps = net.spec().steps;
    for (size_t k = begin; k < end; ++k) {
        const data::Sample& s = samples[order[k]];
        const int fdim = int(s.matrix.size()) / steps;
        Rng drop = Rng(drop_seed).child(k);
        auto z = net.logits(s.matrix.data(), steps, fdim, training, training ? &drop : nullptr);
        auto head = head_for(net, z, s.label, weights);
        out.loss_sum += head.loss;
        out.weight_sum += weights[s.label];
        if (training) net.backward(head.dlogits);
    }
    return out;
}

} // namespace

std::vector<double> class_weights(const std::vector<data::Sample>& samples, const std::vector<size_t>& idx,
                                  int n_classes, double positive_weight) {
    std::vector<double> w(size_t(n_classes), 1.0);
    if (positive_weight > 0.0) {
        if (n_classes == 2) w[1] = positive_weight;
        return w;
    }
    std::vector<int64_t> counts(size_t(n_classes), 0);
    for (size_t i : idx) counts[samples[i].label] += 1;
    int64_t total = int64_t(idx.size());
    for (int c = 0; c < n_classes; ++c) {
        if (counts[size_t(c)] > 0)
            w[size_t(c)] = double(total) / (double(n_classes) * double(counts[size_t(c)]));
    }
    return w;
}

double evaluate_loss(Network& net, const std::vector<data::Sample>& samples, const std::vector<size_t>& idx,
                     const std::vector<double>& weights, int workers) {
    if (idx.empty()) return 0.0;
    workers = std::max(1, workers);
    if (workers == 1) {
        auto r = run_slice(net, samples, idx, 0, idx.size(), weights, 0, false);
        return r.loss_sum / r.weight_sum;
    }
    std::vector<Network> replicas;
    replicas.reserve(size_t(workers));
    auto flat = net.flat_params();
    for (int w = 0; w < workers; ++w) {
        replicas.push_back(net.clone_structure());
        replicas.back().set_flat_params(flat);
    }
    std::vector<LossGrad> results(static_cast<size_t>(workers));
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) {
        size_t begin = idx.size() * size_t(w) / size_t(workers);
        size_t end = idx.size() * size_t(w + 1) / size_t(workers);
        threads.emplace_back([&, w, begin, end]() {
            results[size_t(w)] = run_slice(replicas[size_t(w)], samples, idx, begin, end, weights, 0, false);
        });
    }
    for (auto& t : threads) t.join();
    LossGrad total;
    for (const auto& r : results) {
        total.loss_sum += r.loss_sum;
        total.weight_sum += r.weight_sum;
    }
    return total.loss_sum / total.weight_sum;
}

TrainResult train(Network& net, const std::vector<data::Sample>& samples, const std::vector<size_t>& train_idx,
                  const std::vector<size_t>& val_idx, const TrainConfig& cfg) {
    if (train_idx.empty()) fail(Errc::BadConfig, "empty training set");
    const int n_classes = net.n_outputs() == 1 ? 2 : net.n_outputs();
    const auto weights = class_weights(samples, train_idx, n_classes, cfg.positive_weight);
    const int workers = std::max(1, cfg.workers);

    // curriculum: advance a rolling day window across epochs, then hold the
    // newest window
    uint32_t day_lo = UINT32_MAX, day_hi = 0;
    for (size_t i : train_idx) {
        day_lo = std::min(day_lo, samples[i].day);
        day_hi = std::max(day_hi, samples[i].day);
    }
    int total_days = int(day_hi - day_lo + 1);
    int n_windows = 1;
    if (cfg.curriculum && total_days > cfg.curriculum_days)
        n_windows = (total_days + cfg.curriculum_days - 1) / cfg.curriculum_days;

    std::vector<Network> replicas;
    if (workers > 1) {
        replicas.reserve(size_t(workers));
        for (int w = 0; w < workers; ++w) replicas.push_back(net.clone_structure());
    }

    nn::Adam opt(cfg.learning_rate);
    TrainResult result;
    std::vector<double> best_params = net.flat_params();
    double best_val = std::numeric_limits<double>::infinity();
    int since_best = 0;

    for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        // epoch sample pool per curriculum window
        std::vector<size_t> pool;
        if (n_windows == 1) {
            pool = train_idx;
        } else {
            int win = std::min(epoch, n_windows - 1);
            uint32_t w_lo = day_lo + uint32_t(win * cfg.curriculum_days);
            uint32_t w_hi = std::min(day_hi, w_lo + uint32_t(cfg.curriculum_days) - 1);
            for (size_t i : train_idx)
                if (samples[i].day >= w_lo && samples[i].day <= w_hi) pool.push_back(i);
            if (pool.empty()) pool = train_idx;
        }

        Rng shuffle_rng = Rng(cfg.seed).child(uint64_t(epoch) + 1'000'000);
        for (size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[shuffle_rng.uniform_int(i)]);

        double epoch_loss = 0.0, epoch_weight = 0.0;
        for (size_t start = 0; start < pool.size(); start += size_t(cfg.batch_size)) {
            size_t stop = std::min(pool.size(), start + size_t(cfg.batch_size));
            uint64_t drop_seed = Rng(cfg.seed).child(uint64_t(epoch) * 2654435761u + start).next_u64();
            LossGrad batch;
            if (workers == 1) {
                net.zero_grads();
                batch = run_slice(net, samples, pool, start, stop, weights, drop_seed, true);
            } else {
                auto flat = net.flat_params();
                std::vector<LossGrad> results(static_cast<size_t>(workers));
                std::vector<std::thread> threads;
                for (int w = 0; w < workers; ++w) {
                    size_t begin = start + (stop - start) * size_t(w) / size_t(workers);
                    size_t end = start + (stop - start) * size_t(w + 1) / size_t(workers);
                    threads.emplace_back([&, w, begin, end]() {
                        replicas[size_t(w)].set_flat_params(flat);
                        replicas[size_t(w)].zero_grads();
                        results[size_t(w)] =
                            run_slice(replicas[size_t(w)], samples, pool, begin, end, weights, drop_seed, true);
                    });
                }
                for (auto& t : threads) t.join();
                net.zero_grads();
                for (int w = 0; w < workers; ++w) {
                    net.add_grads_from(replicas[size_t(w)]);
                    batch.loss_sum += results[size_t(w)].loss_sum;
                    batch.weight_sum += results[size_t(w)].weight_sum;
                }
            }
            if (!std::isfinite(batch.loss_sum)) fail(Errc::DivergenceDetected, "non-finite training loss");
            net.scale_grads(1.0 / batch.weight_sum);
            opt.step(net.params());
            epoch_loss += batch.loss_sum;
            epoch_weight += batch.weight_sum;
        }

        double val_loss = evaluate_loss(net, samples, val_idx, weights, workers);
        if (!std::isfinite(val_loss)) fail(Errc::DivergenceDetected, "non-finite validation loss");
        EpochStats stats;
        stats.epoch = epoch;
        stats.train_loss = epoch_weight > 0 ? epoch_loss / epoch_weight : 0.0;
        stats.val_loss = val_loss;
        result.history.push_back(stats);

        if (val_idx.empty() || val_loss < best_val - cfg.min_delta) {
            best_val = val_loss;
            best_params = net.flat_params();
            result.best_epoch = epoch;
            since_best = 0;
        } else if (++since_best >= cfg.patience) {
            break;
        }
    }

    net.set_flat_params(best_params);
    result.best_val_loss = best_val;
    return result;
}

} // namespace jumpcast::model
