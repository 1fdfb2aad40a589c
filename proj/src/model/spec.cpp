#include "jumpcast/model/spec.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "jumpcast/common/binio.hpp"
#include "jumpcast/common/config.hpp"
#include "jumpcast/common/error.hpp"

namespace jumpcast::model {

int64_t LayerSpec::get_int(const std::string& key, int64_t def) const {
    auto it = attrs.find(key);
    return it == attrs.end() ? def : std::stoll(it->second);
}

double LayerSpec::get_real(const std::string& key, double def) const {
    auto it = attrs.find(key);
    return it == attrs.end() ? def : std::stod(it->second);
}

std::string LayerSpec::get_str(const std::string& key, const std::string& def) const {
    auto it = attrs.find(key);
    return it == attrs.end() ? def : it->second;
}

void LayerSpec::set_real(const std::string& key, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    attrs[key] = buf;
}

std::string ModelSpec::serialize() const {
    std::ostringstream os;
    os << "[model]\n";
    os << "architecture = " << architecture << "\n";
    os << "steps = " << steps << "\n";
    os << "features = " << features << "\n";
    os << "outputs = " << outputs << "\n";
    os << "input_columns = ";
    if (input_columns.empty()) {
        os << "all";
    } else {
        for (size_t i = 0; i < input_columns.size(); ++i) {
            if (i) os << ",";
            os << input_columns[i];
        }
    }
    os << "\n";
    for (size_t i = 0; i < layers.size(); ++i) {
        os << "\n[layer." << (i + 1) << "]\n";
        os << "type = " << layers[i].type << "\n";
        for (const auto& [k, v] : layers[i].attrs) os << k << " = " << v << "\n";
    }
    return os.str();
}

ModelSpec ModelSpec::parse(const std::string& text) {
    ModelSpec spec;
    Config cfg = Config::parse(text);
    spec.architecture = cfg.require_str("model.architecture");
    spec.steps = int(cfg.get_int("model.steps", 120));
    spec.features = int(cfg.get_int("model.features", 139));
    spec.outputs = int(cfg.get_int("model.outputs", 1));
    std::string cols = cfg.get_str("model.input_columns", "all");
    if (cols != "all") {
        std::istringstream ss(cols);
        std::string tok;
        while (std::getline(ss, tok, ',')) spec.input_columns.push_back(std::stoi(tok));
    }
    for (int i = 1;; ++i) {
        std::string section = "layer." + std::to_string(i) + ".";
        if (!cfg.has(section + "type")) break;
        LayerSpec layer;
        layer.type = cfg.require_str(section + "type");
        for (const auto& full : cfg.keys_with_prefix(section)) {
            std::string key = full.substr(section.size());
            if (key != "type") layer.attrs[key] = cfg.get_str(full, "");
        }
        spec.layers.push_back(layer);
    }
    if (spec.layers.empty()) fail(Errc::BadConfig, "model spec has no layers");
    return spec;
}

uint64_t ModelSpec::hash() const { return fnv1a(serialize()); }

void ModelSpec::save(const std::string& path) const {
    std::ofstream os(path);
    if (!os) fail(Errc::BadFile, "cannot open for writing: " + path);
    os << serialize();
}

ModelSpec ModelSpec::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) fail(Errc::BadFile, "cannot open for reading: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse(ss.str());
}

} // namespace jumpcast::model
