#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace jumpcast {

// Plain-text configuration: "[section]" headers and "key = value" lines.
// '#' starts a comment. Keys are addressed as "section.key".
class Config {
public:
    Config() = default;

    static Config parse(const std::string& text);
    static Config load(const std::string& path);

    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    std::string get_str(const std::string& key, const std::string& def) const;
    int64_t get_int(const std::string& key, int64_t def) const;
    double get_real(const std::string& key, double def) const;
    bool get_bool(const std::string& key, bool def) const;
    std::vector<double> get_list(const std::string& key, const std::vector<double>& def) const;

    std::string require_str(const std::string& key) const;

    // full keys beginning with the prefix, in sorted order
    std::vector<std::string> keys_with_prefix(const std::string& prefix) const;

    void set(const std::string& key, const std::string& value);
    void set_int(const std::string& key, int64_t value);
    void set_real(const std::string& key, double value);

    // Canonical serialization (sorted keys); also the input to hash().
    std::string serialize() const;
    uint64_t hash() const;

private:
    std::map<std::string, std::string> kv_;
};

} // namespace jumpcast
