#pragma once

#include <map>
#include <string>
#include <vector>

#include "jumpcast/eval/metrics.hpp"

namespace jumpcast::eval {

// Per-set, per-stock report grid. Row and column averages are means of the
// individually computed cell scores, so they generally differ from scores
// pooled across all samples.
class ReportGrid {
public:
    void add_cell(int set, const std::string& stock, const std::string& model, const EvalReport& report);

    bool empty() const { return cells_.empty(); }
    const EvalReport& cell(int set, const std::string& stock, const std::string& model) const;

    // f1 grid for one model: rows = sets, columns = stocks, plus averages.
    std::string render_table(const std::string& model) const;
    // all cells: set,stock,model,precision,recall,f1,kappa,tp,fp,fn,tn,flags
    std::string render_csv() const;

    void save_csv(const std::string& path) const;
    void save_table(const std::string& path, const std::vector<std::string>& models) const;

    std::vector<int> sets() const;
    std::vector<std::string> stocks() const;
    std::vector<std::string> models() const;

    // mean over every cell of one model
    EvalReport average(const std::string& model) const;

private:
    struct Key {
        int set;
        std::string stock;
        std::string model;
        bool operator<(const Key& o) const {
            if (set != o.set) return set < o.set;
            if (stock != o.stock) return stock < o.stock;
            return model < o.model;
        }
    };
    std::map<Key, EvalReport> cells_;
};

} // namespace jumpcast::eval
