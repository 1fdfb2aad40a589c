#include "jumpcast/data/dataset_io.hpp"

#include "jumpcast/common/error.hpp"

namespace jumpcast::data {

DatasetWriter::DatasetWriter(const std::string& path, uint32_t n_samples, uint32_t features, uint8_t n_classes)
    : path_(path), declared_(n_samples), features_(features) {
    f_ = std::fopen(path.c_str(), "wb");
    if (!f_) fail(Errc::BadFile, "cannot open for writing: " + path);
    uint32_t steps = kWindowSteps;
    std::fwrite(&n_samples, 4, 1, f_);
    std::fwrite(&steps, 4, 1, f_);
    std::fwrite(&features, 4, 1, f_);
    std::fwrite(&n_classes, 1, 1, f_);
}

DatasetWriter::~DatasetWriter() {
    if (f_) std::fclose(f_);
}

void DatasetWriter::write(const Sample& s) {
    if (s.matrix.size() != size_t(kWindowSteps) * features_)
        fail(Errc::ShapeMismatch, "sample matrix does not match dataset features");
    std::fwrite(s.matrix.data(), 4, s.matrix.size(), f_);
    std::fwrite(&s.label, 1, 1, f_);
    std::fwrite(&s.stock, 4, 1, f_);
    std::fwrite(&s.day, 4, 1, f_);
    std::fwrite(&s.end_minute, 8, 1, f_);
    std::fwrite(&s.shift_seconds, 4, 1, f_);
    std::fwrite(&s.end_second, 8, 1, f_);
    ++written_;
}

void DatasetWriter::close() {
    if (!f_) return;
    std::fclose(f_);
    f_ = nullptr;
    if (written_ != declared_)
        fail(Errc::BadFile, path_ + ": wrote " + std::to_string(written_) + " samples, declared " +
                                std::to_string(declared_));
}

DatasetReader::DatasetReader(const std::string& path) : path_(path) {
    f_ = std::fopen(path.c_str(), "rb");
    if (!f_) fail(Errc::BadFile, "cannot open for reading: " + path);
    bool ok = std::fread(&header_.n_samples, 4, 1, f_) == 1 && std::fread(&header_.steps, 4, 1, f_) == 1 &&
              std::fread(&header_.features, 4, 1, f_) == 1 && std::fread(&header_.n_classes, 1, 1, f_) == 1;
    if (!ok) fail(Errc::BadFile, path + ": truncated dataset header");
    if (header_.steps != kWindowSteps) fail(Errc::BadFile, path + ": unexpected window length");
}

DatasetReader::~DatasetReader() {
    if (f_) std::fclose(f_);
}

bool DatasetReader::next(Sample& s) {
    if (read_ >= header_.n_samples) return false;
    s.matrix.resize(size_t(header_.steps) * header_.features);
    bool ok = std::fread(s.matrix.data(), 4, s.matrix.size(), f_) == s.matrix.size() &&
              std::fread(&s.label, 1, 1, f_) == 1 && std::fread(&s.stock, 4, 1, f_) == 1 &&
              std::fread(&s.day, 4, 1, f_) == 1 && std::fread(&s.end_minute, 8, 1, f_) == 1 &&
              std::fread(&s.shift_seconds, 4, 1, f_) == 1 && std::fread(&s.end_second, 8, 1, f_) == 1;
    if (!ok) fail(Errc::BadFile, path_ + ": truncated sample record");
    ++read_;
    return true;
}

void write_dataset(const std::string& path, const std::vector<Sample>& samples, uint32_t features,
                   uint8_t n_classes) {
    DatasetWriter w(path, uint32_t(samples.size()), features, n_classes);
    for (const auto& s : samples) w.write(s);
    w.close();
}

std::vector<Sample> read_dataset(const std::string& path, DatasetHeader* header) {
    DatasetReader r(path);
    if (header) *header = r.header();
    std::vector<Sample> out;
    out.reserve(r.header().n_samples);
    Sample s;
    while (r.next(s)) out.push_back(s);
    return out;
}

} // namespace jumpcast::data
