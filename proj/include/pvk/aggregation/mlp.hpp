#ifndef PVK_AGGREGATION_MLP_HPP
#define PVK_AGGREGATION_MLP_HPP

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "pvk/core/rng.hpp"
#include "pvk/core/types.hpp"

namespace pvk {

enum class Activation { relu, none };

struct DenseLayer {
    std::size_t in = 0, out = 0;
    std::vector<double> weights;  // out x in, row-major
    std::vector<double> bias;     // out
};

// Dense-layer stack. Activation after every layer except optionally the last.
struct MlpSpec {
    std::vector<DenseLayer> layers;
    Activation activation = Activation::relu;
    bool activate_last = false;

    std::size_t input_dim() const { return layers.empty() ? 0 : layers.front().in; }
    std::size_t output_dim() const { return layers.empty() ? 0 : layers.back().out; }

    void validate() const {
        for (std::size_t l = 0; l < layers.size(); ++l) {
            const DenseLayer& layer = layers[l];
            if (layer.weights.size() != layer.in * layer.out || layer.bias.size() != layer.out)
                throw config_error("MlpSpec: layer " + std::to_string(l) + " shape mismatch");
            if (l > 0 && layers[l - 1].out != layer.in)
                throw config_error("MlpSpec: layer dims do not chain at layer " + std::to_string(l));
        }
    }

    std::vector<double> forward(const std::vector<double>& input) const {
        if (input.size() != input_dim())
            throw config_error("MlpSpec: input dim " + std::to_string(input.size()) + " != " +
                               std::to_string(input_dim()));
        std::vector<double> x = input;
        for (std::size_t l = 0; l < layers.size(); ++l) {
            const DenseLayer& layer = layers[l];
            std::vector<double> y(layer.out);
            for (std::size_t o = 0; o < layer.out; ++o) {
                double acc = layer.bias[o];
                const double* w = layer.weights.data() + o * layer.in;
                for (std::size_t i = 0; i < layer.in; ++i) acc += w[i] * x[i];
                y[o] = acc;
            }
            const bool act = (l + 1 < layers.size()) || activate_last;
            if (act && activation == Activation::relu)
                for (double& v : y) v = std::max(v, 0.0);
            x = std::move(y);
        }
        return x;
    }

    // Identity map: one layer, unit diagonal, zero bias, no activation.
    static MlpSpec identity(std::size_t dim) {
        MlpSpec m;
        m.activation = Activation::none;
        DenseLayer layer;
        layer.in = layer.out = dim;
        layer.weights.assign(dim * dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) layer.weights[i * dim + i] = 1.0;
        layer.bias.assign(dim, 0.0);
        m.layers.push_back(std::move(layer));
        return m;
    }

    static MlpSpec random(const std::vector<std::size_t>& dims, Rng& rng,
                          Activation act = Activation::relu) {
        if (dims.size() < 2) throw argument_error("MlpSpec::random: need at least two dims");
        MlpSpec m;
        m.activation = act;
        for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
            DenseLayer layer;
            layer.in = dims[l];
            layer.out = dims[l + 1];
            const double scale = 1.0 / std::sqrt(double(layer.in));
            layer.weights.resize(layer.in * layer.out);
            for (double& w : layer.weights) w = rng.uniform(-scale, scale);
            layer.bias.resize(layer.out);
            for (double& b : layer.bias) b = rng.uniform(-0.1, 0.1);
            m.layers.push_back(std::move(layer));
        }
        return m;
    }
};

inline void to_json(nlohmann::json& j, const MlpSpec& m) {
    j = nlohmann::json::object();
    j["activation"] = m.activation == Activation::relu ? "relu" : "none";
    j["activate_last"] = m.activate_last;
    j["layers"] = nlohmann::json::array();
    for (const DenseLayer& layer : m.layers)
        j["layers"].push_back({{"in", layer.in}, {"out", layer.out}, {"weights", layer.weights},
                               {"bias", layer.bias}});
}

inline void from_json(const nlohmann::json& j, MlpSpec& m) {
    const std::string act = j.at("activation").get<std::string>();
    if (act == "relu")
        m.activation = Activation::relu;
    else if (act == "none")
        m.activation = Activation::none;
    else
        throw config_error("MlpSpec: unknown activation " + act);
    m.activate_last = j.value("activate_last", false);
    m.layers.clear();
    for (const auto& jl : j.at("layers")) {
        DenseLayer layer;
        layer.in = jl.at("in").get<std::size_t>();
        layer.out = jl.at("out").get<std::size_t>();
        layer.weights = jl.at("weights").get<std::vector<double>>();
        layer.bias = jl.at("bias").get<std::vector<double>>();
        m.layers.push_back(std::move(layer));
    }
    m.validate();
}

}  // namespace pvk

#endif
