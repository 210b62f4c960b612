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

#ifndef HQC_HEADS_H
#define HQC_HEADS_H

#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace hqc {

/// Fully connected layer, weights stored row-major as out x in.
struct DenseLayer {
    int in = 0;
    int out = 0;
    std::vector<double> weight;
    std::vector<double> bias;

    DenseLayer() = default;
    DenseLayer(int in_dim, int out_dim);

    double &w(int row, int col) { return weight[static_cast<std::size_t>(row) * in + col]; }
    double w(int row, int col) const { return weight[static_cast<std::size_t>(row) * in + col]; }
    std::size_t parameter_count() const { return weight.size() + bias.size(); }
    bool empty() const { return out == 0; }

    /// W x + b.
    std::vector<double> affine(std::span<const double> x) const;
    /// Glorot-uniform weights, zero biases.
    void glorot_init(std::mt19937_64 &rng);
};

struct HeadConfig {
    int num_classes = 4;
    /// Width multiplier of the discarded head's hidden layer.
    int expansion = 2;
    /// Linear m x m layer on top of the fused vector.
    bool final_layer = false;
    /// false drops the discarded branch entirely (baseline model).
    bool recycle = true;
};

/// Classical parameters. Layers that the configuration disables are empty.
struct HeadParams {
    HeadConfig config;
    DenseLayer retained;      // m x m
    DenseLayer disc_project;  // m x m
    DenseLayer disc_expand;   // mk x m
    DenseLayer disc_recover;  // m x mk
    DenseLayer final;         // m x m

    /// All-zero parameters with the shapes implied by `config`.
    static HeadParams zeros(const HeadConfig &config);
    static HeadParams glorot(const HeadConfig &config, std::mt19937_64 &rng);

    void validate() const;

    /// Active layers in canonical order: retained, projection, expansion,
    /// recovery, final.
    std::vector<DenseLayer *> layers();
    std::vector<const DenseLayer *> layers() const;

    std::size_t parameter_count() const;
    /// Layer by layer, weights then biases.
    std::vector<double> flatten() const;
    void assign(std::span<const double> flat);
};

/// p -> 4p - 2. Entries must lie in [0, 1]; round-off excursions up to 1e-9
/// are clamped.
std::vector<double> rescale(std::span<const double> probabilities);
/// (s + 2) / 4.
std::vector<double> inverse_rescale(std::span<const double> scaled);

std::vector<double> retained_head(std::span<const double> x, const HeadParams &params);
std::vector<double> discarded_head(std::span<const double> x, const HeadParams &params);

/// Element-wise product.
std::vector<double> fuse(std::span<const double> y_ret, std::span<const double> y_disc);

std::vector<double> softmax(std::span<const double> z);
/// Cross-entropy of softmax(z) against `label`.
double loss(std::span<const double> z, int label);
/// Arg max; ties go to the lowest index.
int predict(std::span<const double> z);

/// Every intermediate of the classical forward pass, kept for backprop.
struct HeadTrace {
    std::vector<double> x_ret;
    std::vector<double> x_disc;
    std::vector<double> y_ret;
    std::vector<double> y_proj;
    std::vector<double> h;
    std::vector<double> y_disc;
    std::vector<double> fused;
    std::vector<double> logits;
};

/// Rescales both probability vectors and runs the heads. In baseline mode
/// `discarded` is ignored and the fused vector is y_ret.
HeadTrace run_heads(std::span<const double> retained, std::span<const double> discarded, const HeadParams &params);

}  // namespace hqc

#endif  // HQC_HEADS_H
