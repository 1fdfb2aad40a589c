#include "jumpcast/model/builders.hpp"

#include <numeric>

#include "jumpcast/common/error.hpp"

namespace jumpcast::model {

namespace {

LayerSpec dense(int in, int out, const std::string& act) {
    LayerSpec l;
    l.type = "dense";
    l.set_int("in", in);
    l.set_int("out", out);
    l.set_str("activation", act);
    return l;
}

LayerSpec conv1d(int in, int filters, int kernel) {
    LayerSpec l;
    l.type = "conv1d";
    l.set_int("in", in);
    l.set_int("filters", filters);
    l.set_int("kernel", kernel);
    l.set_str("activation", "leaky_relu");
    return l;
}

LayerSpec maxpool(int size) {
    LayerSpec l;
    l.type = "maxpool";
    l.set_int("size", size);
    return l;
}

LayerSpec plain(const std::string& type) {
    LayerSpec l;
    l.type = type;
    return l;
}

} // namespace

ModelSpec build_mlp(int features, int steps) {
    ModelSpec spec;
    spec.architecture = "mlp";
    spec.steps = steps;
    spec.features = features;
    spec.layers.push_back(plain("flatten"));
    spec.layers.push_back(dense(steps * features, 40, "leaky_relu"));
    spec.layers.push_back(dense(40, 40, "leaky_relu"));
    spec.layers.push_back(dense(40, 1, "identity"));
    return spec;
}

ModelSpec build_cnn(int steps) {
    ModelSpec spec;
    spec.architecture = "cnn";
    spec.steps = steps;
    spec.features = 40;
    spec.input_columns.resize(40);
    std::iota(spec.input_columns.begin(), spec.input_columns.end(), 0);

    LayerSpec c2;
    c2.type = "conv2d";
    c2.set_int("kernel_h", 4);
    c2.set_int("kernel_w", 40);
    c2.set_int("filters", 16);
    c2.set_str("activation", "leaky_relu");
    spec.layers.push_back(c2);                    // (T-3, 1, 16)
    spec.layers.push_back(plain("squeeze"));      // (T-3, 16)
    spec.layers.push_back(conv1d(16, 16, 4));     // (T-6, 16)
    spec.layers.push_back(maxpool(2));
    spec.layers.push_back(conv1d(16, 32, 3));
    spec.layers.push_back(conv1d(32, 32, 3));
    spec.layers.push_back(maxpool(2));
    spec.layers.push_back(plain("flatten"));
    int flat = ((((steps - 3 - 3) / 2) - 2 - 2) / 2) * 32;
    spec.layers.push_back(dense(flat, 32, "leaky_relu"));
    spec.layers.push_back(dense(32, 1, "identity"));
    return spec;
}

ModelSpec build_lstm(int features, int steps) {
    ModelSpec spec;
    spec.architecture = "lstm";
    spec.steps = steps;
    spec.features = features;
    LayerSpec l;
    l.type = "lstm";
    l.set_int("in", features);
    l.set_int("units", 40);
    l.set_str("hidden_activation", "tanh");
    spec.layers.push_back(l);
    spec.layers.push_back(dense(40, 40, "leaky_relu"));
    spec.layers.push_back(dense(40, 1, "identity"));
    return spec;
}

namespace {

ModelSpec attention_stack(const std::string& name, int features, int steps) {
    ModelSpec spec;
    spec.architecture = name;
    spec.steps = steps;
    spec.features = features;
    LayerSpec att;
    att.type = "feature_attention";
    att.set_int("steps", steps);
    spec.layers.push_back(att);
    spec.layers.push_back(conv1d(features, 32, 5));  // (T-4, 32)
    spec.layers.push_back(maxpool(2));               // ((T-4)/2, 32)
    LayerSpec l;
    l.type = "lstm";
    l.set_int("in", 32);
    l.set_int("units", 40);
    l.set_str("hidden_activation", "relu");
    l.set_real("p", 0.5);
    l.set_real("recurrent_p", 0.5);
    spec.layers.push_back(l);
    spec.layers.push_back(dense(40, 40, "leaky_relu"));
    spec.layers.push_back(dense(40, 1, "identity"));
    return spec;
}

} // namespace

ModelSpec build_cnn_lstm_attention(int features, int steps) {
    return attention_stack("cnn_lstm_attention", features, steps);
}

ModelSpec build_v10_baseline(int steps, int v10_column) {
    ModelSpec spec = attention_stack("cnn_lstm_v10", 1, steps);
    spec.input_columns = {v10_column};
    return spec;
}

ModelSpec three_class_variant(ModelSpec spec) {
    if (spec.layers.empty() || spec.layers.back().type != "dense")
        fail(Errc::UnsupportedArchitecture, "three-class variant needs a dense head");
    spec.layers.back().set_int("out", 3);
    spec.outputs = 3;
    spec.architecture += "_3c";
    return spec;
}

ModelSpec build_architecture(const std::string& name, int dataset_features, int steps) {
    if (name == "mlp") return build_mlp(dataset_features, steps);
    if (name == "cnn") return build_cnn(steps);
    if (name == "lstm") return build_lstm(dataset_features, steps);
    if (name == "cnn_lstm_attention") return build_cnn_lstm_attention(dataset_features, steps);
    if (name == "cnn_lstm_v10") return build_v10_baseline(steps, dataset_features - 1);
    fail(Errc::UnsupportedArchitecture, "unknown architecture: " + name);
}

} // namespace jumpcast::model
