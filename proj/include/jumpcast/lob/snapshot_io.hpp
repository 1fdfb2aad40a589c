#pragma once

#include <string>
#include <vector>

#include "jumpcast/lob/types.hpp"

namespace jumpcast::lob {

// Snapshot stream: binary, little-endian. Per record: u32 second, then ten
// (i64 price, i64 volume) pairs for asks followed by ten for bids. No header;
// readers run to end of file.

class SnapshotWriter {
public:
    explicit SnapshotWriter(const std::string& path);
    ~SnapshotWriter();

    void write(const BookSnapshot& s);
    void close();

private:
    struct Impl;
    Impl* impl_;
};

class SnapshotReader {
public:
    explicit SnapshotReader(const std::string& path);
    ~SnapshotReader();

    bool next(BookSnapshot& s);

private:
    struct Impl;
    Impl* impl_;
};

void write_snapshots(const std::string& path, const std::vector<BookSnapshot>& snaps);
std::vector<BookSnapshot> read_snapshots(const std::string& path);

} // namespace jumpcast::lob
