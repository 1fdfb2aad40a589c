#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "jumpcast/common/error.hpp"

namespace jumpcast {

// File formats are little-endian; raw writes below assume a matching host.
static_assert(std::endian::native == std::endian::little,
              "binio assumes a little-endian host");

template <typename T>
void write_le(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_le(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) fail(Errc::BadFile, "unexpected end of file");
    return v;
}

inline void write_bytes(std::ostream& os, const void* p, size_t n) {
    os.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(n));
}

inline void read_bytes(std::istream& is, void* p, size_t n) {
    is.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(n));
    if (!is) fail(Errc::BadFile, "unexpected end of file");
}

inline void write_string(std::ostream& os, const std::string& s) {
    write_le<uint16_t>(os, static_cast<uint16_t>(s.size()));
    write_bytes(os, s.data(), s.size());
}

inline std::string read_string(std::istream& is) {
    auto n = read_le<uint16_t>(is);
    std::string s(n, '\0');
    if (n > 0) read_bytes(is, s.data(), n);
    return s;
}

inline std::ofstream open_out(const std::string& path, bool binary = true) {
    std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
    if (!os) fail(Errc::BadFile, "cannot open for writing: " + path);
    return os;
}

inline std::ifstream open_in(const std::string& path, bool binary = true) {
    std::ifstream is(path, binary ? std::ios::binary : std::ios::in);
    if (!is) fail(Errc::BadFile, "cannot open for reading: " + path);
    return is;
}

// FNV-1a, used for config and architecture hashes.
inline uint64_t fnv1a(std::string_view s, uint64_t h = 1469598103934665603ull) {
    for (char c : s) {
        h ^= static_cast<uint8_t>(c);
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace jumpcast
