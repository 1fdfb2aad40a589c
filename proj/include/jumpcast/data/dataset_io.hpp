#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "jumpcast/data/dataset.hpp"

namespace jumpcast::data {

// Dataset file, binary little-endian.
// Header: u32 n_samples, u32 T, u32 F, u8 n_classes.
// Per sample: T*F float32 row-major, u8 label, then the metadata record
// (u32 stock, u32 day, i64 end_minute, i32 shift_seconds, i64 end_second).

struct DatasetHeader {
    uint32_t n_samples = 0;
    uint32_t steps = kWindowSteps;
    uint32_t features = 0;
    uint8_t n_classes = 2;
};

class DatasetWriter {
public:
    DatasetWriter(const std::string& path, uint32_t n_samples, uint32_t features, uint8_t n_classes);
    ~DatasetWriter();

    void write(const Sample& s);
    void close();

private:
    FILE* f_ = nullptr;
    std::string path_;
    uint32_t declared_;
    uint32_t features_;
    uint32_t written_ = 0;
};

class DatasetReader {
public:
    explicit DatasetReader(const std::string& path);
    ~DatasetReader();

    const DatasetHeader& header() const { return header_; }
    bool next(Sample& s);

private:
    FILE* f_ = nullptr;
    std::string path_;
    DatasetHeader header_;
    uint32_t read_ = 0;
};

void write_dataset(const std::string& path, const std::vector<Sample>& samples, uint32_t features,
                   uint8_t n_classes);
std::vector<Sample> read_dataset(const std::string& path, DatasetHeader* header = nullptr);

} // namespace jumpcast::data
