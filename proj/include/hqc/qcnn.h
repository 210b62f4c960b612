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

#ifndef HQC_QCNN_H
#define HQC_QCNN_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hqc/sim.h"

namespace hqc {

constexpr int kConvLayers = 6;
constexpr int kConvAngles = 15;
constexpr int kPoolLayers = 2;
constexpr int kPoolAngles = 2;
constexpr int kQuantumParams = kConvLayers * kConvAngles + kPoolLayers * kPoolAngles;
constexpr int kFeatureWidth = 4;

/// Angles of the 15-parameter two-qubit convolution template, in the order
/// (theta1, phi2, lambda3, theta4, phi5, lambda6, theta7, theta8, theta9,
///  theta10, phi11, lambda12, theta13, phi14, lambda15).
struct ConvParams {
    std::array<double, kConvAngles> angles{};
};

/// (phi1, phi2) of the CRZ-CRX pooling gate.
struct PoolParams {
    std::array<double, kPoolAngles> angles{};
};

/// All 94 trainable circuit angles in one flat array: conv layer l angle j
/// lives at 15 l + j, pool layer l angle j at 90 + 2 l + j.
class QcnnParams {
   public:
    struct Slot {
        bool pool;
        int layer;
        int index;
    };

    static constexpr int conv_id(int layer, int index) { return layer * kConvAngles + index; }
    static constexpr int pool_id(int layer, int index) {
        return kConvLayers * kConvAngles + layer * kPoolAngles + index;
    }
    static Slot slot(int id);

    ConvParams conv(int layer) const;
    PoolParams pool(int layer) const;
    void set_conv(int layer, const ConvParams &p);
    void set_pool(int layer, const PoolParams &p);

    std::span<double, kQuantumParams> values() { return values_; }
    std::span<const double, kQuantumParams> values() const { return values_; }
    double &operator[](int id) { return values_[id]; }
    double operator[](int id) const { return values_[id]; }

   private:
    std::array<double, kQuantumParams> values_{};
};

enum class Pairing { Brick, Aligned };
enum class KeepRule { Lower, Upper };

struct WirePair {
    int first;
    int second;
};

struct PoolPair {
    int control;  // survives
    int target;   // leaves the data path
};

struct LayoutOptions {
    /// Brick: the second conv layer of a block is shifted by one wire
    /// (circularly). Aligned: both conv layers use the same pairs.
    Pairing pairing = Pairing::Brick;
    /// Which wire of each pooling pair survives.
    KeepRule keep = KeepRule::Lower;
    /// Explicit survivors of the second pooling layer, in readout order
    /// (first wire = most significant bit of the retained distribution).
    std::optional<std::array<int, 2>> retained;
};

std::string pairing_name(Pairing p);
Pairing parse_pairing(const std::string &name);
std::string keep_rule_name(KeepRule k);
KeepRule parse_keep_rule(const std::string &name);

/// Wire assignment of the three-block backbone on 8 qubits:
/// (QC1, QC2, pool) on 8 wires, (QC3, QC4, pool) on 4, (QC5, QC6) on 2.
struct CircuitLayout {
    int num_qubits = 8;
    std::array<std::vector<WirePair>, kConvLayers> conv_pairs;
    std::array<std::vector<PoolPair>, kPoolLayers> pool_pairs;
    std::array<int, 2> retained_wires{};
    std::array<int, 4> discarded_wires{};
    LayoutOptions options;

    static CircuitLayout build(const LayoutOptions &options = {});

    /// Throws std::invalid_argument on any structural violation.
    void validate() const;
    /// Number of conv template instances over all layers.
    int conv_instances() const;
    /// Number of pooling gate instances over both layers.
    int pool_instances() const;
};

/// Retained: joint distribution of the two retained wires. Discarded: P(|1>)
/// of each wire dropped by the first pooling layer.
struct QuantumFeatures {
    std::array<double, kFeatureWidth> retained{};
    std::array<double, kFeatureWidth> discarded{};
};

enum class Readout { Full, RetainedOnly };

/// One gate of the compiled circuit together with the flat parameter ids
/// feeding its angle slots (-1 for slots that are not trainable).
struct CircuitOp {
    Gate gate;
    std::array<int, 3> param_ids{-1, -1, -1};
};

struct Circuit {
    std::vector<CircuitOp> ops;
    /// Index one past the last op of the first pooling layer.
    std::size_t pool1_end = 0;
};

void append_conv_ops(std::vector<CircuitOp> &ops, WirePair pair, int layer, const QcnnParams &params);
void append_pool_ops(std::vector<CircuitOp> &ops, PoolPair pair, int layer, const QcnnParams &params);

Circuit compile_circuit(const QcnnParams &params, const CircuitLayout &layout);

/// Applies `ops` in order.
void run_ops(StateVector &state, std::span<const CircuitOp> ops);

void apply_conv_unitary(StateVector &state, WirePair pair, const ConvParams &params);
void apply_pool_unitary(StateVector &state, PoolPair pair, const PoolParams &params);

QuantumFeatures read_features(const StateVector &state, const CircuitLayout &layout,
                              Readout readout = Readout::Full);

/// Runs the backbone on `input` and reads out both feature vectors (or only
/// the retained one).
QuantumFeatures forward(const StateVector &input, const QcnnParams &params, const CircuitLayout &layout,
                        Readout readout = Readout::Full);

/// Excitation probabilities of the discarded wires read immediately after the
/// first pooling layer.
std::array<double, kFeatureWidth> discarded_after_pooling(const StateVector &input, const QcnnParams &params,
                                                          const CircuitLayout &layout);

/// Process-wide count of discarded-wire readouts performed by read_features.
std::uint64_t discarded_readout_count();

}  // namespace hqc

#endif  // HQC_QCNN_H
