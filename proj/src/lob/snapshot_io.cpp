#include "jumpcast/lob/snapshot_io.hpp"

#include <cstdio>
#include <cstring>

#include "jumpcast/common/error.hpp"

namespace jumpcast::lob {

namespace {

constexpr size_t kRecordBytes = 4 + 2 * kSnapshotLevels * 16;

void pack(const BookSnapshot& s, unsigned char* buf) {
    std::memcpy(buf, &s.second, 4);
    size_t off = 4;
    for (const auto& lv : s.asks) {
        std::memcpy(buf + off, &lv.price, 8);
        std::memcpy(buf + off + 8, &lv.volume, 8);
        off += 16;
    }
    for (const auto& lv : s.bids) {
        std::memcpy(buf + off, &lv.price, 8);
        std::memcpy(buf + off + 8, &lv.volume, 8);
        off += 16;
    }
}

void unpack(const unsigned char* buf, BookSnapshot& s) {
    std::memcpy(&s.second, buf, 4);
    size_t off = 4;
    for (auto& lv : s.asks) {
        std::memcpy(&lv.price, buf + off, 8);
        std::memcpy(&lv.volume, buf + off + 8, 8);
        off += 16;
    }
    for (auto& lv : s.bids) {
        std::memcpy(&lv.price, buf + off, 8);
        std::memcpy(&lv.volume, buf + off + 8, 8);
        off += 16;
    }
}

} // namespace

struct SnapshotWriter::Impl {
    FILE* f = nullptr;
};

SnapshotWriter::SnapshotWriter(const std::string& path) : impl_(new Impl) {
    impl_->f = std::fopen(path.c_str(), "wb");
    if (!impl_->f) fail(Errc::BadFile, "cannot open for writing: " + path);
}

SnapshotWriter::~SnapshotWriter() {
    close();
    delete impl_;
}

void SnapshotWriter::write(const BookSnapshot& s) {
    unsigned char buf[kRecordBytes];
    pack(s, buf);
    std::fwrite(buf, 1, kRecordBytes, impl_->f);
}

void SnapshotWriter::close() {
    if (impl_->f) {
        std::fclose(impl_->f);
        impl_->f = nullptr;
    }
}

struct SnapshotReader::Impl {
    FILE* f = nullptr;
    std::string path;
};

SnapshotReader::SnapshotReader(const std::string& path) : impl_(new Impl) {
    impl_->f = std::fopen(path.c_str(), "rb");
    impl_->path = path;
    if (!impl_->f) fail(Errc::BadFile, "cannot open for reading: " + path);
}

SnapshotReader::~SnapshotReader() {
    if (impl_->f) std::fclose(impl_->f);
    delete impl_;
}

bool SnapshotReader::next(BookSnapshot& s) {
    unsigned char buf[kRecordBytes];
    size_t n = std::fread(buf, 1, kRecordBytes, impl_->f);
    if (n == 0) return false;
    if (n != kRecordBytes) fail(Errc::BadFile, impl_->path + ": truncated snapshot record");
    unpack(buf, s);
    return true;
}

void write_snapshots(const std::string& path, const std::vector<BookSnapshot>& snaps) {
    SnapshotWriter w(path);
    for (const auto& s : snaps) w.write(s);
}

std::vector<BookSnapshot> read_snapshots(const std::string& path) {
    SnapshotReader r(path);
    std::vector<BookSnapshot> out;
    BookSnapshot s;
    while (r.next(s)) out.push_back(s);
    return out;
}

} // namespace jumpcast::lob
