#include "jumpcast/model/checkpoint.hpp"

#include <cstdio>
#include <cstring>

#include "jumpcast/common/error.hpp"

namespace jumpcast::model {

namespace {
constexpr char kMagic[4] = {'J', 'C', 'K', 'P'};
constexpr uint32_t kVersion = 1;
} // namespace

void save_checkpoint(const std::string& path, Network& net) {
    FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) fail(Errc::BadFile, "cannot open for writing: " + path);
    std::fwrite(kMagic, 1, 4, f);
    std::fwrite(&kVersion, 4, 1, f);
    uint64_t hash = net.spec().hash();
    std::fwrite(&hash, 8, 1, f);
    auto params = net.params();
    uint32_t n = uint32_t(params.size());
    std::fwrite(&n, 4, 1, f);
    for (auto& p : params) {
        uint16_t len = uint16_t(p.name.size());
        std::fwrite(&len, 2, 1, f);
        std::fwrite(p.name.data(), 1, len, f);
        uint32_t ndim = uint32_t(p.value->shape.size());
        std::fwrite(&ndim, 4, 1, f);
        for (int d : p.value->shape) {
            int64_t dim = d;
            std::fwrite(&dim, 8, 1, f);
        }
        std::fwrite(p.value->v.data(), 8, p.value->v.size(), f);
    }
    std::fclose(f);
}

void load_checkpoint(const std::string& path, Network& net) {
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) fail(Errc::BadFile, "cannot open for reading: " + path);
    auto bail = [&](const std::string& msg) {
        std::fclose(f);
        fail(Errc::BadFile, path + ": " + msg);
    };
    char magic[4];
    uint32_t version = 0;
    uint64_t hash = 0;
    uint32_t n = 0;
    if (std::fread(magic, 1, 4, f) != 4 || std::memcmp(magic, kMagic, 4) != 0) bail("not a checkpoint file");
    if (std::fread(&version, 4, 1, f) != 1 || version != kVersion) bail("unsupported checkpoint version");
    if (std::fread(&hash, 8, 1, f) != 1) bail("truncated header");
    if (hash != net.spec().hash()) bail("architecture hash does not match the model spec");
    if (std::fread(&n, 4, 1, f) != 1) bail("truncated header");
    auto params = net.params();
    if (n != params.size()) bail("parameter count mismatch");
    for (auto& p : params) {
        uint16_t len = 0;
        if (std::fread(&len, 2, 1, f) != 1) bail("truncated record");
        std::string name(len, '\0');
        if (len && std::fread(name.data(), 1, len, f) != len) bail("truncated record");
        if (name != p.name) bail("parameter order mismatch at " + name);
        uint32_t ndim = 0;
        if (std::fread(&ndim, 4, 1, f) != 1) bail("truncated record");
        if (ndim != p.value->shape.size()) bail("rank mismatch at " + name);
        for (int d : p.value->shape) {
            int64_t dim = 0;
            if (std::fread(&dim, 8, 1, f) != 1) bail("truncated record");
            if (dim != d) bail("shape mismatch at " + name);
        }
        if (std::fread(p.value->v.data(), 8, p.value->v.size(), f) != p.value->v.size())
            bail("truncated data at " + name);
    }
    std::fclose(f);
}

} // namespace jumpcast::model
