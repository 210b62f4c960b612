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

#ifndef HQC_ENCODING_H
#define HQC_ENCODING_H

#include <span>
#include <string>
#include <vector>

#include "hqc/sim.h"

namespace hqc {

constexpr int kEncodingQubits = 8;
constexpr int kAmplitudeDim = 256;
constexpr int kAngleDim = 8;

enum class Encoder { Amplitude, Angle };

std::string encoder_name(Encoder e);
Encoder parse_encoder(const std::string &name);

/// Min-max normalized image features. Values are finite and lie in [0, 1].
class FeatureVector {
   public:
    FeatureVector() = default;
    explicit FeatureVector(std::vector<double> values);

    std::span<const double> values() const { return values_; }
    int dim() const { return static_cast<int>(values_.size()); }
    double operator[](std::size_t i) const { return values_[i]; }

   private:
    std::vector<double> values_;
};

/// Amplitude embedding: the 256 features divided by their L2 norm become the
/// amplitudes of an 8-qubit register. Any finite, non-zero input is accepted,
/// so the embedding is invariant to positive rescaling of the input.
StateVector amplitude_embed(std::span<const double> features);

/// Angle embedding: qubit i is prepared as RZ(pi (2 x_i - 1)) RY(pi x_i) |0>.
StateVector angle_embed(std::span<const double> features);

/// Amplitude for dim > 8, angle for dim == 8. Other dims are rejected.
Encoder select_encoder(int dim);

/// Embeds with the encoder chosen by select_encoder.
StateVector embed(const FeatureVector &features);

}  // namespace hqc

#endif  // HQC_ENCODING_H
