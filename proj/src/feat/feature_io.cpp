#include "jumpcast/feat/feature_io.hpp"

#include <cstring>

#include "jumpcast/common/error.hpp"

namespace jumpcast::feat {

namespace {

void put_u32(FILE* f, uint32_t v) { std::fwrite(&v, 4, 1, f); }

uint32_t get_u32(FILE* f, const std::string& path) {
    uint32_t v;
    if (std::fread(&v, 4, 1, f) != 1) fail(Errc::BadFile, path + ": truncated header");
    return v;
}

} // namespace

FeatureWriter::FeatureWriter(const std::string& path, uint32_t n_frames) : path_(path), declared_(n_frames) {
    f_ = std::fopen(path.c_str(), "wb");
    if (!f_) fail(Errc::BadFile, "cannot open for writing: " + path);
    put_u32(f_, n_frames);
    put_u32(f_, static_cast<uint32_t>(kNumSlots));
    for (const auto& name : slot_names()) {
        uint16_t len = static_cast<uint16_t>(name.size());
        std::fwrite(&len, 2, 1, f_);
        std::fwrite(name.data(), 1, name.size(), f_);
    }
}

FeatureWriter::~FeatureWriter() {
    if (f_) std::fclose(f_);
}

void FeatureWriter::write(const FeatureFrame& frame) {
    std::fwrite(frame.v.data(), sizeof(double), frame.v.size(), f_);
    ++written_;
}

void FeatureWriter::close() {
    if (!f_) return;
    std::fclose(f_);
    f_ = nullptr;
    if (written_ != declared_)
        fail(Errc::BadFile, path_ + ": wrote " + std::to_string(written_) + " frames, declared " +
                                std::to_string(declared_));
}

FeatureReader::FeatureReader(const std::string& path) : path_(path) {
    f_ = std::fopen(path.c_str(), "rb");
    if (!f_) fail(Errc::BadFile, "cannot open for reading: " + path);
    n_frames_ = get_u32(f_, path_);
    uint32_t n_slots = get_u32(f_, path_);
    if (n_slots != static_cast<uint32_t>(kNumSlots))
        fail(Errc::BadFile, path_ + ": unexpected slot count " + std::to_string(n_slots));
    names_.reserve(n_slots);
    for (uint32_t i = 0; i < n_slots; ++i) {
        uint16_t len;
        if (std::fread(&len, 2, 1, f_) != 1) fail(Errc::BadFile, path_ + ": truncated name table");
        std::string name(len, '\0');
        if (len > 0 && std::fread(name.data(), 1, len, f_) != len)
            fail(Errc::BadFile, path_ + ": truncated name table");
        names_.push_back(std::move(name));
    }
}

FeatureReader::~FeatureReader() {
    if (f_) std::fclose(f_);
}

bool FeatureReader::next(FeatureFrame& frame) {
    if (read_ >= n_frames_) return false;
    if (std::fread(frame.v.data(), sizeof(double), frame.v.size(), f_) != frame.v.size())
        fail(Errc::BadFile, path_ + ": truncated frame " + std::to_string(read_));
    frame.second = static_cast<int64_t>(read_) + 1;
    ++read_;
    return true;
}

void write_features(const std::string& path, const std::vector<FeatureFrame>& frames) {
    FeatureWriter w(path, static_cast<uint32_t>(frames.size()));
    for (const auto& fr : frames) w.write(fr);
    w.close();
}

std::vector<FeatureFrame> read_features(const std::string& path) {
    FeatureReader r(path);
    std::vector<FeatureFrame> out;
    out.reserve(r.n_frames());
    FeatureFrame fr;
    while (r.next(fr)) out.push_back(fr);
    return out;
}

} // namespace jumpcast::feat
