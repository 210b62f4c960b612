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

#include "hqc/encoding.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hqc {

std::string encoder_name(Encoder e) {
    return e == Encoder::Amplitude ? "amplitude" : "angle";
}

Encoder parse_encoder(const std::string &name) {
    if (name == "amplitude") {
        return Encoder::Amplitude;
    }
    if (name == "angle") {
        return Encoder::Angle;
    }
    throw std::invalid_argument("unknown encoder '" + name + "'");
}

FeatureVector::FeatureVector(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
            throw std::invalid_argument("feature values must be finite and in [0, 1]");
        }
    }
}

StateVector amplitude_embed(std::span<const double> features) {
    if (features.size() != kAmplitudeDim) {
        throw std::invalid_argument("amplitude embedding needs 256 features, got " +
                                    std::to_string(features.size()));
    }
    // Scale by the max entry first so the squared sum cannot overflow.
    double scale = 0;
    for (double v : features) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("non-finite feature");
        }
        scale = std::max(scale, std::abs(v));
    }
    if (scale == 0) {
        throw std::invalid_argument("cannot amplitude-embed the zero vector");
    }
    double sum = 0;
    for (double v : features) {
        sum += (v / scale) * (v / scale);
    }
    const double norm = scale * std::sqrt(sum);
    std::vector<Amplitude> amps(features.size());
    for (std::size_t i = 0; i < features.size(); i++) {
        amps[i] = features[i] / norm;
    }
    return StateVector::from_amplitudes(std::move(amps));
}

StateVector angle_embed(std::span<const double> features) {
    if (features.size() != kAngleDim) {
        throw std::invalid_argument("angle embedding needs 8 features, got " + std::to_string(features.size()));
    }
    StateVector state = StateVector::zero(kEncodingQubits);
    for (int q = 0; q < kAngleDim; q++) {
        const double x = features[q];
        if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
            throw std::invalid_argument("angle embedding features must lie in [0, 1]");
        }
        state.apply(Gate::ry(q, std::numbers::pi * x));
        state.apply(Gate::rz(q, std::numbers::pi * (2 * x - 1)));
    }
    return state;
}

Encoder select_encoder(int dim) {
    if (dim == kAmplitudeDim) {
        return Encoder::Amplitude;
    }
    if (dim == kAngleDim) {
        return Encoder::Angle;
    }
    throw std::invalid_argument("unsupported feature dimension " + std::to_string(dim) + " (expected 8 or 256)");
}

StateVector embed(const FeatureVector &features) {
    return select_encoder(features.dim()) == Encoder::Amplitude ? amplitude_embed(features.values())
                                                                 : angle_embed(features.values());
}

}  // namespace hqc
