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

#include "hqc/model.h"

#include <numbers>
#include <stdexcept>
#include <string>

namespace hqc {

ModelParams ModelParams::init(const HeadConfig &config, std::mt19937_64 &rng) {
    ModelParams p;
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    for (double &v : p.quantum.values()) {
        v = angle(rng);
    }
    p.heads = HeadParams::glorot(config, rng);
    return p;
}

std::vector<double> ModelParams::flatten() const {
    std::vector<double> flat(quantum.values().begin(), quantum.values().end());
    const auto h = heads.flatten();
    flat.insert(flat.end(), h.begin(), h.end());
    return flat;
}

void ModelParams::assign(std::span<const double> flat) {
    if (flat.size() != parameter_count()) {
        throw std::invalid_argument("expected " + std::to_string(parameter_count()) + " parameters, got " +
                                    std::to_string(flat.size()));
    }
    std::copy_n(flat.begin(), kQuantumParams, quantum.values().begin());
    heads.assign(flat.subspan(kQuantumParams));
}

std::size_t expected_parameter_count(const HeadConfig &config) {
    const std::size_t m = config.num_classes;
    const std::size_t k = config.expansion;
    std::size_t n = kQuantumParams + m * m + m;
    if (config.recycle) {
        // projection m(m+1), expansion mk(m+1), recovery m(mk+1)
        n += m * (m + 1) + m * k * (m + 1) + m * (m * k + 1);
    }
    if (config.final_layer) {
        n += m * m + m;
    }
    return n;
}

ModelOutput model_forward(const StateVector &input, const ModelParams &params, const CircuitLayout &layout) {
    ModelOutput out;
    const Readout readout = params.heads.config.recycle ? Readout::Full : Readout::RetainedOnly;
    out.features = forward(input, params.quantum, layout, readout);
    out.trace = run_heads(out.features.retained, out.features.discarded, params.heads);
    return out;
}

double model_loss(const StateVector &input, const ModelParams &params, const CircuitLayout &layout, int label) {
    return loss(model_forward(input, params, layout).trace.logits, label);
}

}  // namespace hqc
