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

#ifndef HQC_MODEL_H
#define HQC_MODEL_H

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "hqc/heads.h"
#include "hqc/qcnn.h"
#include "hqc/sim.h"

namespace hqc {

/// Quantum angles plus classical heads: the full trainable state.
struct ModelParams {
    QcnnParams quantum;
    HeadParams heads;

    /// Angles uniform in [-pi, pi], Glorot heads, zero biases.
    static ModelParams init(const HeadConfig &config, std::mt19937_64 &rng);

    std::size_t parameter_count() const { return kQuantumParams + heads.parameter_count(); }
    /// Quantum angles first, then heads.
    std::vector<double> flatten() const;
    void assign(std::span<const double> flat);
};

/// Closed-form total parameter count: 94 circuit angles, 20 retained-head
/// weights, 24 + 36 k discarded-head weights when recycling, 20 for the
/// optional final layer.
std::size_t expected_parameter_count(const HeadConfig &config);

struct ModelOutput {
    QuantumFeatures features;
    HeadTrace trace;
};

/// embed -> backbone -> rescale -> heads -> fuse. Baseline models never read
/// the discarded wires.
ModelOutput model_forward(const StateVector &input, const ModelParams &params, const CircuitLayout &layout);

double model_loss(const StateVector &input, const ModelParams &params, const CircuitLayout &layout, int label);

}  // namespace hqc

#endif  // HQC_MODEL_H
