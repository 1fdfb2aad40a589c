#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace jumpcast::model {

struct LayerSpec {
    std::string type;
    std::map<std::string, std::string> attrs;

    int64_t get_int(const std::string& key, int64_t def = 0) const;
    double get_real(const std::string& key, double def = 0.0) const;
    std::string get_str(const std::string& key, const std::string& def = "") const;
    void set_int(const std::string& key, int64_t v) { attrs[key] = std::to_string(v); }
    void set_real(const std::string& key, double v);
    void set_str(const std::string& key, const std::string& v) { attrs[key] = v; }
};

// Architecture description: input geometry, the dataset columns consumed,
// the layer stack, and the output head width. Serializes to key = value
// sections, one per layer, and is hashed for checkpoint compatibility.
struct ModelSpec {
    std::string architecture;
    int steps = 120;
    int features = 139;              // columns after slicing
    std::vector<int> input_columns;  // empty: first `features` dataset columns
    int outputs = 1;                 // 1 = sigmoid binary head, 3 = softmax head
    std::vector<LayerSpec> layers;

    std::string serialize() const;
    static ModelSpec parse(const std::string& text);
    uint64_t hash() const;

    void save(const std::string& path) const;
    static ModelSpec load(const std::string& path);
};

} // namespace jumpcast::model
