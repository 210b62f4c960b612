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

#ifndef HQC_GRAD_H
#define HQC_GRAD_H

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "hqc/heads.h"
#include "hqc/model.h"
#include "hqc/qcnn.h"

namespace hqc {

/// Gradients of the classical part for one sample.
struct ClassicalGrad {
    double loss = 0;
    /// Same shapes as the parameters they differentiate.
    HeadParams heads;
    /// dL/d(4p - 2) for the retained and discarded vectors.
    std::array<double, kFeatureWidth> d_retained_scaled{};
    std::array<double, kFeatureWidth> d_discarded_scaled{};
};

/// Exact backprop through loss, optional final layer, Hadamard fusion and
/// the tanh heads, starting from measured probabilities.
ClassicalGrad backward_classical(const QuantumFeatures &features, const HeadParams &params, int label);

/// dL/dp for every readout probability, to be pushed through the circuit.
using FeatureGrad = QuantumFeatures;

/// Parameter-shift gradient of sum_j upstream_j * feature_j with respect to
/// the 94 circuit angles. Rotation angles (RX/RY/RZ and the three angles of
/// U3) use the two-term rule with shifts of +-pi/2; controlled rotations use
/// the four-term rule with shifts +-pi/2, +-3pi/2. A shared angle is shifted
/// one gate instance at a time and the contributions are summed.
/// Discarded wires are only read when some discarded upstream entry is
/// non-zero.
std::array<double, kQuantumParams> quantum_grad(const StateVector &input, const QcnnParams &params,
                                                const CircuitLayout &layout, const FeatureGrad &upstream);

/// Number of circuit executions quantum_grad performs for one sample.
std::size_t shift_evaluation_count(const CircuitLayout &layout);

/// Full gradient of one sample's loss, flattened like ModelParams::flatten.
struct SampleGrad {
    double loss = 0;
    int prediction = 0;
    std::vector<double> grad;
};

SampleGrad sample_gradient(const StateVector &input, const ModelParams &params, const CircuitLayout &layout,
                           int label);

/// Central difference [f(x + eps e_i) - f(x - eps e_i)] / (2 eps).
double finite_diff(const std::function<double(std::span<const double>)> &fn, std::span<const double> params,
                   std::size_t index, double eps);

}  // namespace hqc

#endif  // HQC_GRAD_H
