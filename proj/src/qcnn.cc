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

#include "hqc/qcnn.h"

#include <algorithm>
#include <atomic>
#include <set>
#include <stdexcept>

namespace hqc {

namespace {

std::atomic<std::uint64_t> g_discarded_readouts{0};

std::string pair_str(int a, int b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

std::vector<WirePair> first_layer_pairs(const std::vector<int> &live) {
    std::vector<WirePair> pairs;
    for (std::size_t i = 0; i + 1 < live.size(); i += 2) {
        pairs.push_back({live[i], live[i + 1]});
    }
    return pairs;
}

std::vector<WirePair> brick_pairs(const std::vector<int> &live) {
    std::vector<WirePair> pairs;
    const std::size_t n = live.size();
    for (std::size_t i = 1; i < n; i += 2) {
        pairs.push_back({live[i], live[(i + 1) % n]});
    }
    return pairs;
}

void check_layer_wires(const std::vector<int> &wires, const std::set<int> &live, const std::string &what) {
    std::set<int> seen;
    for (int w : wires) {
        if (!live.count(w)) {
            throw std::invalid_argument(what + " touches wire " + std::to_string(w) + " which is not live");
        }
        if (!seen.insert(w).second) {
            throw std::invalid_argument(what + " uses wire " + std::to_string(w) + " twice");
        }
    }
}

}  // namespace

QcnnParams::Slot QcnnParams::slot(int id) {
    if (id < 0 || id >= kQuantumParams) {
        throw std::out_of_range("quantum parameter id " + std::to_string(id));
    }
    if (id < kConvLayers * kConvAngles) {
        return {false, id / kConvAngles, id % kConvAngles};
    }
    const int rel = id - kConvLayers * kConvAngles;
    return {true, rel / kPoolAngles, rel % kPoolAngles};
}

ConvParams QcnnParams::conv(int layer) const {
    ConvParams p;
    std::copy_n(values_.begin() + conv_id(layer, 0), kConvAngles, p.angles.begin());
    return p;
}

PoolParams QcnnParams::pool(int layer) const {
    PoolParams p;
    std::copy_n(values_.begin() + pool_id(layer, 0), kPoolAngles, p.angles.begin());
    return p;
}

void QcnnParams::set_conv(int layer, const ConvParams &p) {
    std::copy(p.angles.begin(), p.angles.end(), values_.begin() + conv_id(layer, 0));
}

void QcnnParams::set_pool(int layer, const PoolParams &p) {
    std::copy(p.angles.begin(), p.angles.end(), values_.begin() + pool_id(layer, 0));
}

std::string pairing_name(Pairing p) {
    return p == Pairing::Brick ? "brick" : "aligned";
}

Pairing parse_pairing(const std::string &name) {
    if (name == "brick") {
        return Pairing::Brick;
    }
    if (name == "aligned") {
        return Pairing::Aligned;
    }
    throw std::invalid_argument("unknown pairing '" + name + "' (expected brick|aligned)");
}

std::string keep_rule_name(KeepRule k) {
    return k == KeepRule::Lower ? "lower" : "upper";
}

KeepRule parse_keep_rule(const std::string &name) {
    if (name == "lower") {
        return KeepRule::Lower;
    }
    if (name == "upper") {
        return KeepRule::Upper;
    }
    throw std::invalid_argument("unknown keep rule '" + name + "' (expected lower|upper)");
}

CircuitLayout CircuitLayout::build(const LayoutOptions &options) {
    CircuitLayout layout;
    layout.options = options;
    std::vector<int> live{0, 1, 2, 3, 4, 5, 6, 7};
    for (int block = 0; block < 3; block++) {
        layout.conv_pairs[2 * block] = first_layer_pairs(live);
        layout.conv_pairs[2 * block + 1] =
            options.pairing == Pairing::Brick ? brick_pairs(live) : first_layer_pairs(live);
        if (block == 2) {
            break;
        }
        std::vector<PoolPair> pool;
        std::vector<int> survivors;
        for (std::size_t i = 0; i + 1 < live.size(); i += 2) {
            const int lo = live[i];
            const int hi = live[i + 1];
            bool keep_lo = options.keep == KeepRule::Lower;
            if (block == 1 && options.retained) {
                const auto &r = *options.retained;
                const bool has_lo = r[0] == lo || r[1] == lo;
                const bool has_hi = r[0] == hi || r[1] == hi;
                if (has_lo == has_hi) {
                    throw std::invalid_argument("retained wires " + pair_str(r[0], r[1]) +
                                                " must take exactly one wire of pooling pair " + pair_str(lo, hi));
                }
                keep_lo = has_lo;
            }
            pool.push_back(keep_lo ? PoolPair{lo, hi} : PoolPair{hi, lo});
            survivors.push_back(keep_lo ? lo : hi);
        }
        if (block == 0) {
            for (std::size_t j = 0; j < pool.size(); j++) {
                layout.discarded_wires[j] = pool[j].target;
            }
        }
        layout.pool_pairs[block] = std::move(pool);
        live = std::move(survivors);
    }
    if (options.retained) {
        layout.retained_wires = *options.retained;
    } else {
        layout.retained_wires = {live[0], live[1]};
    }
    layout.validate();
    return layout;
}

void CircuitLayout::validate() const {
    if (num_qubits != 8) {
        throw std::invalid_argument("the backbone is defined on 8 qubits");
    }
    std::set<int> live{0, 1, 2, 3, 4, 5, 6, 7};
    for (int block = 0; block < 3; block++) {
        for (int k = 0; k < 2; k++) {
            const int layer = 2 * block + k;
            std::vector<int> wires;
            for (const auto &p : conv_pairs[layer]) {
                if (p.first == p.second) {
                    throw std::invalid_argument("conv pair on a single wire");
                }
                wires.push_back(p.first);
                wires.push_back(p.second);
            }
            if (conv_pairs[layer].empty()) {
                throw std::invalid_argument("conv layer " + std::to_string(layer + 1) + " has no pairs");
            }
            check_layer_wires(wires, live, "conv layer " + std::to_string(layer + 1));
        }
        if (block == 2) {
            break;
        }
        const auto &pool = pool_pairs[block];
        if (pool.size() * 2 != live.size()) {
            throw std::invalid_argument("pooling layer " + std::to_string(block + 1) + " must halve " +
                                        std::to_string(live.size()) + " live wires");
        }
        std::vector<int> wires;
        for (const auto &p : pool) {
            wires.push_back(p.control);
            wires.push_back(p.target);
        }
        check_layer_wires(wires, live, "pooling layer " + std::to_string(block + 1));
        for (const auto &p : pool) {
            live.erase(p.target);
        }
        if (block == 0) {
            std::set<int> targets;
            for (const auto &p : pool) {
                targets.insert(p.target);
            }
            std::set<int> disc(discarded_wires.begin(), discarded_wires.end());
            if (disc != targets) {
                throw std::invalid_argument("discarded wires must be exactly the first pooling targets");
            }
        }
    }
    if (live.size() != 2 || !live.count(retained_wires[0]) || !live.count(retained_wires[1]) ||
        retained_wires[0] == retained_wires[1]) {
        throw std::invalid_argument("retained wires must be the two survivors of the second pooling layer");
    }
}

int CircuitLayout::conv_instances() const {
    int n = 0;
    for (const auto &layer : conv_pairs) {
        n += static_cast<int>(layer.size());
    }
    return n;
}

int CircuitLayout::pool_instances() const {
    return static_cast<int>(pool_pairs[0].size() + pool_pairs[1].size());
}

void append_conv_ops(std::vector<CircuitOp> &ops, WirePair pair, int layer, const QcnnParams &params) {
    const int a = pair.first;
    const int b = pair.second;
    auto id = [layer](int j) { return QcnnParams::conv_id(layer, j); };
    auto u3 = [&](int wire, int j) {
        ops.push_back({Gate::u3(wire, params[id(j)], params[id(j + 1)], params[id(j + 2)]),
                       {id(j), id(j + 1), id(j + 2)}});
    };
    u3(a, 0);
    u3(b, 3);
    ops.push_back({Gate::cnot(a, b)});
    ops.push_back({Gate::ry(a, params[id(6)]), {id(6), -1, -1}});
    ops.push_back({Gate::rz(b, params[id(7)]), {id(7), -1, -1}});
    ops.push_back({Gate::cnot(b, a)});
    ops.push_back({Gate::ry(a, params[id(8)]), {id(8), -1, -1}});
    ops.push_back({Gate::cnot(a, b)});
    u3(a, 9);
    u3(b, 12);
}

void append_pool_ops(std::vector<CircuitOp> &ops, PoolPair pair, int layer, const QcnnParams &params) {
    const int first = QcnnParams::pool_id(layer, 0);
    ops.push_back({Gate::crz(pair.control, pair.target, params[first]), {first, -1, -1}});
    ops.push_back({Gate::crx(pair.control, pair.target, params[first + 1]), {first + 1, -1, -1}});
}

Circuit compile_circuit(const QcnnParams &params, const CircuitLayout &layout) {
    Circuit circuit;
    for (int block = 0; block < 3; block++) {
        for (int k = 0; k < 2; k++) {
            const int layer = 2 * block + k;
            for (const auto &pair : layout.conv_pairs[layer]) {
                append_conv_ops(circuit.ops, pair, layer, params);
            }
        }
        if (block < 2) {
            for (const auto &pair : layout.pool_pairs[block]) {
                append_pool_ops(circuit.ops, pair, block, params);
            }
            if (block == 0) {
                circuit.pool1_end = circuit.ops.size();
            }
        }
    }
    return circuit;
}

void run_ops(StateVector &state, std::span<const CircuitOp> ops) {
    for (const auto &op : ops) {
        state.apply(op.gate);
    }
}

void apply_conv_unitary(StateVector &state, WirePair pair, const ConvParams &params) {
    QcnnParams tmp;
    tmp.set_conv(0, params);
    std::vector<CircuitOp> ops;
    append_conv_ops(ops, pair, 0, tmp);
    run_ops(state, ops);
}

void apply_pool_unitary(StateVector &state, PoolPair pair, const PoolParams &params) {
    QcnnParams tmp;
    tmp.set_pool(0, params);
    std::vector<CircuitOp> ops;
    append_pool_ops(ops, pair, 0, tmp);
    run_ops(state, ops);
}

QuantumFeatures read_features(const StateVector &state, const CircuitLayout &layout, Readout readout) {
    QuantumFeatures f;
    const auto joint = joint_probabilities(state, layout.retained_wires);
    std::copy(joint.begin(), joint.end(), f.retained.begin());
    if (readout == Readout::Full) {
        g_discarded_readouts.fetch_add(1, std::memory_order_relaxed);
        const auto disc = excitation_probabilities(state, layout.discarded_wires);
        std::copy(disc.begin(), disc.end(), f.discarded.begin());
    }
    return f;
}

QuantumFeatures forward(const StateVector &input, const QcnnParams &params, const CircuitLayout &layout,
                        Readout readout) {
    if (input.num_qubits() != layout.num_qubits) {
        throw std::invalid_argument("input state has " + std::to_string(input.num_qubits()) +
                                    " qubits, layout expects " + std::to_string(layout.num_qubits));
    }
    const Circuit circuit = compile_circuit(params, layout);
    StateVector state = input;
    run_ops(state, circuit.ops);
    return read_features(state, layout, readout);
}

std::array<double, kFeatureWidth> discarded_after_pooling(const StateVector &input, const QcnnParams &params,
                                                          const CircuitLayout &layout) {
    const Circuit circuit = compile_circuit(params, layout);
    StateVector state = input;
    run_ops(state, std::span(circuit.ops).first(circuit.pool1_end));
    const auto disc = excitation_probabilities(state, layout.discarded_wires);
    std::array<double, kFeatureWidth> out{};
    std::copy(disc.begin(), disc.end(), out.begin());
    return out;
}

std::uint64_t discarded_readout_count() {
    return g_discarded_readouts.load(std::memory_order_relaxed);
}

}  // namespace hqc
