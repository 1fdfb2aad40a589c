#include "jumpcast/eval/grid.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "jumpcast/common/error.hpp"

namespace jumpcast::eval {

void ReportGrid::add_cell(int set, const std::string& stock, const std::string& model, const EvalReport& report) {
    cells_[Key{set, stock, model}] = report;
}

const EvalReport& ReportGrid::cell(int set, const std::string& stock, const std::string& model) const {
    auto it = cells_.find(Key{set, stock, model});
    if (it == cells_.end())
        fail(Errc::MissingCell, "no cell for set " + std::to_string(set) + ", stock " + stock + ", model " + model);
    return it->second;
}

std::vector<int> ReportGrid::sets() const {
    std::set<int> s;
    for (const auto& [k, v] : cells_) s.insert(k.set);
    return {s.begin(), s.end()};
}

std::vector<std::string> ReportGrid::stocks() const {
    std::set<std::string> s;
    for (const auto& [k, v] : cells_) s.insert(k.stock);
    return {s.begin(), s.end()};
}

std::vector<std::string> ReportGrid::models() const {
    std::set<std::string> s;
    for (const auto& [k, v] : cells_) s.insert(k.model);
    return {s.begin(), s.end()};
}

EvalReport ReportGrid::average(const std::string& model) const {
    EvalReport avg;
    int64_t n = 0;
    for (const auto& [k, v] : cells_) {
        if (k.model != model) continue;
        avg.precision += v.precision;
        avg.recall += v.recall;
        avg.f1 += v.f1;
        avg.kappa += v.kappa;
        ++n;
    }
    if (n == 0) fail(Errc::MissingCell, "no cells for model " + model);
    avg.precision /= double(n);
    avg.recall /= double(n);
    avg.f1 /= double(n);
    avg.kappa /= double(n);
    return avg;
}

std::string ReportGrid::render_table(const std::string& model) const {
    auto row_sets = sets();
    auto col_stocks = stocks();
    std::ostringstream os;
    os << "F1 by set and stock - " << model << "\n";
    os << "set      ";
    for (const auto& s : col_stocks) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%8s", s.c_str());
        os << buf;
    }
    os << "     avg\n";
    std::vector<double> col_sum(col_stocks.size(), 0.0);
    std::vector<int> col_n(col_stocks.size(), 0);
    for (int set : row_sets) {
        char head[16];
        std::snprintf(head, sizeof(head), "%-9d", set);
        os << head;
        double row_sum = 0;
        int row_n = 0;
        for (size_t c = 0; c < col_stocks.size(); ++c) {
            auto it = cells_.find(Key{set, col_stocks[c], model});
            if (it == cells_.end())
                fail(Errc::MissingCell, "grid is missing set " + std::to_string(set) + " / " + col_stocks[c]);
            char buf[16];
            std::snprintf(buf, sizeof(buf), "%8.2f", it->second.f1);
            os << buf;
            row_sum += it->second.f1;
            ++row_n;
            col_sum[c] += it->second.f1;
            ++col_n[c];
        }
        char avg[16];
        std::snprintf(avg, sizeof(avg), "%8.2f", row_sum / row_n);
        os << avg << "\n";
    }
    os << "avg      ";
    double all = 0;
    int all_n = 0;
    for (size_t c = 0; c < col_stocks.size(); ++c) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%8.2f", col_sum[c] / col_n[c]);
        os << buf;
        all += col_sum[c];
        all_n += col_n[c];
    }
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%8.2f", all / all_n);
    os << buf << "\n";
    return os.str();
}

std::string ReportGrid::render_csv() const {
    std::ostringstream os;
    os << "set,stock,model,precision,recall,f1,kappa,tp,fp,fn,tn,flags\n";
    for (const auto& [k, v] : cells_) {
        os << k.set << "," << k.stock << "," << k.model << ",";
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.6f,%.6f,", v.precision, v.recall, v.f1, v.kappa);
        os << buf;
        os << v.cm.tp << "," << v.cm.fp << "," << v.cm.fn << "," << v.cm.tn << ",";
        std::string flags;
        if (v.degenerate_pr) flags += "degenerate_pr;";
        if (v.degenerate_kappa) flags += "degenerate_kappa;";
        os << flags << "\n";
    }
    return os.str();
}

void ReportGrid::save_csv(const std::string& path) const {
    std::ofstream os(path);
    if (!os) fail(Errc::BadFile, "cannot open for writing: " + path);
    os << render_csv();
}

void ReportGrid::save_table(const std::string& path, const std::vector<std::string>& models) const {
    std::ofstream os(path);
    if (!os) fail(Errc::BadFile, "cannot open for writing: " + path);
    for (const auto& m : models) os << render_table(m) << "\n";
}

} // namespace jumpcast::eval
