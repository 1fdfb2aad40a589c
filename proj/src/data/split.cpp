#include "jumpcast/data/split.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "jumpcast/common/error.hpp"

namespace jumpcast::data {

SplitPlan SplitPlan::table2(int sets, int span, int test_days) {
    SplitPlan plan;
    for (int k = 1; k <= sets; ++k) {
        Entry e;
        e.train_first = 1;
        e.train_last = span * k;
        e.test_first = span * k + 1;
        e.test_last = span * k + test_days;
        plan.entries.push_back(e);
    }
    return plan;
}

SplitPlan SplitPlan::single(int n_labeled_days, int test_days) {
    if (n_labeled_days <= test_days) fail(Errc::BadConfig, "not enough days for a train/test split");
    SplitPlan plan;
    Entry e;
    e.train_first = 1;
    e.train_last = n_labeled_days - test_days;
    e.test_first = e.train_last + 1;
    e.test_last = n_labeled_days;
    plan.entries.push_back(e);
    return plan;
}

SplitResult split(const std::vector<Sample>& samples, const SplitPlan& plan, size_t entry_index) {
    if (entry_index >= plan.entries.size()) fail(Errc::MissingCell, "no such split entry");
    const auto& e = plan.entries[entry_index];
    if (e.train_last < e.train_first || e.test_last < e.test_first || e.test_first <= e.train_last)
        fail(Errc::OverlapViolation, "train and test day ranges must be ordered and disjoint");

    SplitResult out;
    // collect train samples per labeled day, grouped by base minute
    std::map<int, std::map<int64_t, std::vector<size_t>>> train_days;
    for (size_t i = 0; i < samples.size(); ++i) {
        const Sample& s = samples[i];
        int labeled_day = int(s.day) - plan.skip_days + 1;
        if (labeled_day >= e.train_first && labeled_day <= e.train_last) {
            train_days[labeled_day][s.end_minute].push_back(i);
        } else if (labeled_day >= e.test_first && labeled_day <= e.test_last) {
            out.test.push_back(i);
        }
    }

    // contiguous per-day validation blocks over base minutes, seeded
    for (auto& [day, bases] : train_days) {
        std::vector<int64_t> minutes;
        minutes.reserve(bases.size());
        for (const auto& [minute, idx] : bases) minutes.push_back(minute);
        size_t n = minutes.size();
        size_t block = size_t(std::llround(plan.validation_fraction * double(n)));
        if (plan.validation_fraction > 0.0 && block == 0 && n > 0) block = 1;
        Rng rng = Rng(plan.seed).child(uint64_t(entry_index) * 100003 + uint64_t(day));
        size_t start = block >= n ? 0 : rng.uniform_int(n - block + 1);
        std::set<int64_t> val_minutes(minutes.begin() + start, minutes.begin() + std::min(n, start + block));
        for (const auto& [minute, idx] : bases) {
            auto& dst = val_minutes.count(minute) ? out.validation : out.train;
            for (size_t i : idx) dst.push_back(i);
        }
    }
    return out;
}

} // namespace jumpcast::data
