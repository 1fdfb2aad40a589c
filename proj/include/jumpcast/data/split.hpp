#pragma once

#include <cstdint>
#include <vector>

#include "jumpcast/data/dataset.hpp"

namespace jumpcast::data {

// Rolling day-based splits. Day ranges are in labeled-day space: labeled day
// 1 is the first stream day with detectable labels (stream day skip_days,
// counting from zero).
struct SplitPlan {
    struct Entry {
        int train_first = 1;
        int train_last = 0;
        int test_first = 0;
        int test_last = 0;
    };
    std::vector<Entry> entries;
    double validation_fraction = 0.15;
    int skip_days = 2;
    uint64_t seed = 1;

    // The published seven-set layout: train 1..50k, test 50k+1..50k+10.
    static SplitPlan table2(int sets = 7, int span = 50, int test_days = 10);
    // One entry covering n_labeled_days with the tail held out.
    static SplitPlan single(int n_labeled_days, int test_days);
};

struct SplitResult {
    std::vector<size_t> train;
    std::vector<size_t> validation;
    std::vector<size_t> test;
};

// Assigns sample indices for one plan entry. Variants of a base sample are
// kept together: the validation block is chosen over whole base minutes.
SplitResult split(const std::vector<Sample>& samples, const SplitPlan& plan, size_t entry_index);

} // namespace jumpcast::data
