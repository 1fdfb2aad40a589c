#include "jumpcast/common/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "jumpcast/common/binio.hpp"
#include "jumpcast/common/error.hpp"

namespace jumpcast {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(Errc::BadConfig, "unterminated section at line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) fail(Errc::BadConfig, "expected key = value at line " + std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(Errc::BadConfig, "empty key at line " + std::to_string(lineno));
        cfg.kv_[section.empty() ? key : section + "." + key] = value;
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) fail(Errc::BadFile, "cannot open config: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse(ss.str());
}

std::string Config::get_str(const std::string& key, const std::string& def) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? def : it->second;
}

int64_t Config::get_int(const std::string& key, int64_t def) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    try {
        return std::stoll(it->second);
    } catch (...) {
        fail(Errc::BadConfig, "not an integer: " + key + " = " + it->second);
    }
}

double Config::get_real(const std::string& key, double def) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    try {
        return std::stod(it->second);
    } catch (...) {
        fail(Errc::BadConfig, "not a number: " + key + " = " + it->second);
    }
}

bool Config::get_bool(const std::string& key, bool def) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    const std::string& v = it->second;
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    fail(Errc::BadConfig, "not a boolean: " + key + " = " + v);
}

std::vector<double> Config::get_list(const std::string& key, const std::vector<double>& def) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    std::vector<double> out;
    std::istringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            fail(Errc::BadConfig, "bad list entry in " + key + ": " + tok);
        }
    }
    return out;
}

std::string Config::require_str(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) fail(Errc::BadConfig, "missing required key: " + key);
    return it->second;
}

std::vector<std::string> Config::keys_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (auto it = kv_.lower_bound(prefix); it != kv_.end(); ++it) {
        if (it->first.compare(0, prefix.size(), prefix) != 0) break;
        out.push_back(it->first);
    }
    return out;
}

void Config::set(const std::string& key, const std::string& value) { kv_[key] = value; }

void Config::set_int(const std::string& key, int64_t value) { kv_[key] = std::to_string(value); }

void Config::set_real(const std::string& key, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    kv_[key] = buf;
}

std::string Config::serialize() const {
    std::string cur_section;
    std::ostringstream os;
    for (const auto& [key, value] : kv_) {
        size_t dot = key.find('.');
        std::string section = dot == std::string::npos ? "" : key.substr(0, dot);
        std::string name = dot == std::string::npos ? key : key.substr(dot + 1);
        if (section != cur_section) {
            os << "[" << section << "]\n";
            cur_section = section;
        }
        os << name << " = " << value << "\n";
    }
    return os.str();
}

uint64_t Config::hash() const { return fnv1a(serialize()); }

} // namespace jumpcast
