#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "jumpcast/feat/slots.hpp"

namespace jumpcast::feat {

// Feature file: binary little-endian. Header: u32 n_frames, u32 n_slots,
// then n_slots names (u16 length + bytes). Body: n_frames rows of n_slots
// 64-bit floats, row-major. Frame i holds wall second i + 1.

class FeatureWriter {
public:
    FeatureWriter(const std::string& path, uint32_t n_frames);
    ~FeatureWriter();

    void write(const FeatureFrame& frame);
    void close();  // throws unless exactly n_frames were written

private:
    FILE* f_ = nullptr;
    std::string path_;
    uint32_t declared_;
    uint32_t written_ = 0;
};

class FeatureReader {
public:
    explicit FeatureReader(const std::string& path);
    ~FeatureReader();

    uint32_t n_frames() const { return n_frames_; }
    const std::vector<std::string>& names() const { return names_; }

    bool next(FeatureFrame& frame);

private:
    FILE* f_ = nullptr;
    std::string path_;
    uint32_t n_frames_ = 0;
    uint32_t read_ = 0;
    std::vector<std::string> names_;
};

void write_features(const std::string& path, const std::vector<FeatureFrame>& frames);
std::vector<FeatureFrame> read_features(const std::string& path);

} // namespace jumpcast::feat
