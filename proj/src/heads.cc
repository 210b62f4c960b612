// Copyright 2026 The HQC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hqc/heads.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hqc {

namespace {

constexpr double kProbabilitySlack = 1e-9;

std::vector<double> tanh_layer(const DenseLayer &layer, std::span<const double> x) {
    auto a = layer.affine(x);
    for (double &v : a) {
        v = std::tanh(v);
    }
    return a;
}

void check_shape(const DenseLayer &layer, int in, int out, const char *name) {
    if (layer.in != in || layer.out != out || layer.weight.size() != static_cast<std::size_t>(in) * out ||
        layer.bias.size() != static_cast<std::size_t>(out)) {
        throw std::invalid_argument(std::string(name) + " layer must be " + std::to_string(out) + "x" +
                                    std::to_string(in));
    }
    for (double v : layer.weight) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument(std::string(name) + " layer has a non-finite weight");
        }
    }
    for (double v : layer.bias) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument(std::string(name) + " layer has a non-finite bias");
        }
    }
}

}  // namespace

DenseLayer::DenseLayer(int in_dim, int out_dim)
    : in(in_dim),
      out(out_dim),
      weight(static_cast<std::size_t>(in_dim) * out_dim, 0.0),
      bias(static_cast<std::size_t>(out_dim), 0.0) {
}

std::vector<double> DenseLayer::affine(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != in) {
        throw std::invalid_argument("dense layer expects " + std::to_string(in) + " inputs, got " +
                                    std::to_string(x.size()));
    }
    std::vector<double> y(bias);
    for (int r = 0; r < out; r++) {
        for (int c = 0; c < in; c++) {
            y[r] += w(r, c) * x[c];
        }
    }
    return y;
}

void DenseLayer::glorot_init(std::mt19937_64 &rng) {
    const double limit = std::sqrt(6.0 / (in + out));
    std::uniform_real_distribution<double> dist(-limit, limit);
    for (double &v : weight) {
        v = dist(rng);
    }
    std::fill(bias.begin(), bias.end(), 0.0);
}

HeadParams HeadParams::zeros(const HeadConfig &config) {
    if (config.num_classes < 1 || config.expansion < 1) {
        throw std::invalid_argument("class count and expansion factor must be positive");
    }
    const int m = config.num_classes;
    const int mk = m * config.expansion;
    HeadParams p;
    p.config = config;
    p.retained = DenseLayer(m, m);
    if (config.recycle) {
        p.disc_project = DenseLayer(m, m);
        p.disc_expand = DenseLayer(m, mk);
        p.disc_recover = DenseLayer(mk, m);
    }
    if (config.final_layer) {
        p.final = DenseLayer(m, m);
    }
    return p;
}

HeadParams HeadParams::glorot(const HeadConfig &config, std::mt19937_64 &rng) {
    HeadParams p = zeros(config);
    for (DenseLayer *layer : p.layers()) {
        layer->glorot_init(rng);
    }
    return p;
}

void HeadParams::validate() const {
    const int m = config.num_classes;
    const int mk = m * config.expansion;
    check_shape(retained, m, m, "retained");
    if (config.recycle) {
        check_shape(disc_project, m, m, "discarded projection");
        check_shape(disc_expand, m, mk, "discarded expansion");
        check_shape(disc_recover, mk, m, "discarded recovery");
    } else if (!disc_project.empty() || !disc_expand.empty() || !disc_recover.empty()) {
        throw std::invalid_argument("baseline heads must not carry a discarded branch");
    }
    if (config.final_layer) {
        check_shape(final, m, m, "final");
    } else if (!final.empty()) {
        throw std::invalid_argument("final layer present but disabled");
    }
}

std::vector<DenseLayer *> HeadParams::layers() {
    std::vector<DenseLayer *> out{&retained};
    if (config.recycle) {
        out.insert(out.end(), {&disc_project, &disc_expand, &disc_recover});
    }
    if (config.final_layer) {
        out.push_back(&final);
    }
    return out;
}

std::vector<const DenseLayer *> HeadParams::layers() const {
    auto mut = const_cast<HeadParams *>(this)->layers();
    return {mut.begin(), mut.end()};
}

std::size_t HeadParams::parameter_count() const {
    std::size_t n = 0;
    for (const auto *layer : layers()) {
        n += layer->parameter_count();
    }
    return n;
}

std::vector<double> HeadParams::flatten() const {
    std::vector<double> flat;
    flat.reserve(parameter_count());
    for (const auto *layer : layers()) {
        flat.insert(flat.end(), layer->weight.begin(), layer->weight.end());
        flat.insert(flat.end(), layer->bias.begin(), layer->bias.end());
    }
    return flat;
}

void HeadParams::assign(std::span<const double> flat) {
    if (flat.size() != parameter_count()) {
        throw std::invalid_argument("expected " + std::to_string(parameter_count()) + " head parameters, got " +
                                    std::to_string(flat.size()));
    }
    std::size_t at = 0;
    for (DenseLayer *layer : layers()) {
        std::copy_n(flat.begin() + at, layer->weight.size(), layer->weight.begin());
        at += layer->weight.size();
        std::copy_n(flat.begin() + at, layer->bias.size(), layer->bias.begin());
        at += layer->bias.size();
    }
}

std::vector<double> rescale(std::span<const double> probabilities) {
    std::vector<double> out(probabilities.size());
    for (std::size_t i = 0; i < probabilities.size(); i++) {
        double p = probabilities[i];
        if (!(p >= -kProbabilitySlack && p <= 1.0 + kProbabilitySlack)) {
            throw std::invalid_argument("probability " + std::to_string(p) + " outside [0, 1]");
        }
        p = std::clamp(p, 0.0, 1.0);
        out[i] = 4.0 * p - 2.0;
    }
    return out;
}

std::vector<double> inverse_rescale(std::span<const double> scaled) {
    std::vector<double> out(scaled.size());
    for (std::size_t i = 0; i < scaled.size(); i++) {
        out[i] = (scaled[i] + 2.0) / 4.0;
    }
    return out;
}

std::vector<double> retained_head(std::span<const double> x, const HeadParams &params) {
    return tanh_layer(params.retained, x);
}

std::vector<double> discarded_head(std::span<const double> x, const HeadParams &params) {
    if (!params.config.recycle) {
        throw std::invalid_argument("baseline heads have no discarded branch");
    }
    const auto y = tanh_layer(params.disc_project, x);
    const auto h = tanh_layer(params.disc_expand, y);
    return tanh_layer(params.disc_recover, h);
}

std::vector<double> fuse(std::span<const double> y_ret, std::span<const double> y_disc) {
    if (y_ret.size() != y_disc.size()) {
        throw std::invalid_argument("fusion inputs differ in length");
    }
    std::vector<double> z(y_ret.size());
    for (std::size_t i = 0; i < z.size(); i++) {
        z[i] = y_ret[i] * y_disc[i];
    }
    return z;
}

std::vector<double> softmax(std::span<const double> z) {
    if (z.empty()) {
        throw std::invalid_argument("softmax of an empty vector");
    }
    const double top = *std::max_element(z.begin(), z.end());
    std::vector<double> out(z.size());
    double sum = 0;
    for (std::size_t i = 0; i < z.size(); i++) {
        out[i] = std::exp(z[i] - top);
        sum += out[i];
    }
    for (double &v : out) {
        v /= sum;
    }
    return out;
}

double loss(std::span<const double> z, int label) {
    if (label < 0 || label >= static_cast<int>(z.size())) {
        throw std::invalid_argument("label " + std::to_string(label) + " out of range");
    }
    // log-sum-exp form keeps the tail accurate when the label dominates.
    const double top = *std::max_element(z.begin(), z.end());
    double sum = 0;
    for (double v : z) {
        sum += std::exp(v - top);
    }
    return top + std::log(sum) - z[label];
}

int predict(std::span<const double> z) {
    if (z.empty()) {
        throw std::invalid_argument("predict on an empty vector");
    }
    return static_cast<int>(std::max_element(z.begin(), z.end()) - z.begin());
}

HeadTrace run_heads(std::span<const double> retained, std::span<const double> discarded, const HeadParams &params) {
    HeadTrace t;
    t.x_ret = rescale(retained);
    t.y_ret = retained_head(t.x_ret, params);
    if (params.config.recycle) {
        t.x_disc = rescale(discarded);
        t.y_proj = tanh_layer(params.disc_project, t.x_disc);
        t.h = tanh_layer(params.disc_expand, t.y_proj);
        t.y_disc = tanh_layer(params.disc_recover, t.h);
        t.fused = fuse(t.y_ret, t.y_disc);
    } else {
        t.fused = t.y_ret;
    }
    t.logits = params.config.final_layer ? params.final.affine(t.fused) : t.fused;
    return t;
}

}  // namespace hqc
