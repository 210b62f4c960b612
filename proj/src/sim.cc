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

#include "hqc/sim.h"

#include <cmath>
#include <stdexcept>

namespace hqc {

namespace {

constexpr Amplitude kI{0.0, 1.0};

void check_wire(int wire, int num_qubits) {
    if (wire < 0 || wire >= num_qubits) {
        throw std::invalid_argument("wire " + std::to_string(wire) + " out of range for " +
                                    std::to_string(num_qubits) + " qubits");
    }
}

void check_wire_list(std::span<const int> wires, int num_qubits) {
    for (std::size_t i = 0; i < wires.size(); i++) {
        check_wire(wires[i], num_qubits);
        for (std::size_t j = 0; j < i; j++) {
            if (wires[i] == wires[j]) {
                throw std::invalid_argument("duplicate wire " + std::to_string(wires[i]));
            }
        }
    }
}

}  // namespace

int Gate::arity() const {
    switch (kind) {
        case GateKind::CNOT:
        case GateKind::CRX:
        case GateKind::CRZ:
            return 2;
        default:
            return 1;
    }
}

int Gate::num_angles() const {
    switch (kind) {
        case GateKind::CNOT:
            return 0;
        case GateKind::U3:
            return 3;
        default:
            return 1;
    }
}

Gate Gate::inverse() const {
    Gate g = *this;
    switch (kind) {
        case GateKind::CNOT:
            break;
        case GateKind::U3:
            g.angles = {-angles[0], -angles[2], -angles[1]};
            break;
        default:
            g.angles[0] = -angles[0];
            break;
    }
    return g;
}

std::string gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::RX:
            return "RX";
        case GateKind::RY:
            return "RY";
        case GateKind::RZ:
            return "RZ";
        case GateKind::U3:
            return "U3";
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::CRX:
            return "CRX";
        case GateKind::CRZ:
            return "CRZ";
    }
    return "?";
}

std::array<Amplitude, 4> target_matrix(const Gate &gate) {
    const double half = gate.angles[0] / 2;
    const double c = std::cos(half);
    const double s = std::sin(half);
    switch (gate.kind) {
        case GateKind::RX:
        case GateKind::CRX:
            return {c, -kI * s, -kI * s, c};
        case GateKind::RY:
            return {c, -s, s, c};
        case GateKind::RZ:
        case GateKind::CRZ:
            return {std::exp(-kI * half), 0.0, 0.0, std::exp(kI * half)};
        case GateKind::U3: {
            const double phi = gate.angles[1];
            const double lambda = gate.angles[2];
            return {c * std::exp(-kI * ((phi + lambda) / 2)), -s * std::exp(-kI * ((phi - lambda) / 2)),
                    s * std::exp(kI * ((phi - lambda) / 2)), c * std::exp(kI * ((phi + lambda) / 2))};
        }
        case GateKind::CNOT:
            return {0.0, 1.0, 1.0, 0.0};
    }
    throw std::logic_error("unknown gate kind");
}

void validate_gate(const Gate &gate, int num_qubits) {
    check_wire(gate.wires[0], num_qubits);
    if (gate.arity() == 2) {
        check_wire(gate.wires[1], num_qubits);
        if (gate.wires[0] == gate.wires[1]) {
            throw std::invalid_argument(gate_name(gate.kind) + " needs two distinct wires");
        }
    }
    for (int k = 0; k < gate.num_angles(); k++) {
        if (!std::isfinite(gate.angles[k])) {
            throw std::invalid_argument(gate_name(gate.kind) + " has a non-finite angle");
        }
    }
}

StateVector StateVector::zero(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count must be in 1.." + std::to_string(kMaxQubits) + ", got " +
                                    std::to_string(num_qubits));
    }
    std::vector<Amplitude> amps(std::size_t{1} << num_qubits);
    amps[0] = 1.0;
    return StateVector(num_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
    int n = 0;
    while (n <= kMaxQubits && (std::size_t{1} << n) < amplitudes.size()) {
        n++;
    }
    if (n < 1 || n > kMaxQubits || (std::size_t{1} << n) != amplitudes.size()) {
        throw std::invalid_argument("amplitude count " + std::to_string(amplitudes.size()) +
                                    " is not 2^n for n in 1..10");
    }
    double norm = 0;
    for (const auto &a : amplitudes) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::invalid_argument("non-finite amplitude");
        }
        norm += std::norm(a);
    }
    if (std::abs(norm - 1.0) > 1e-10) {
        throw std::invalid_argument("amplitudes are not normalized (norm^2 = " + std::to_string(norm) + ")");
    }
    return StateVector(n, std::move(amplitudes));
}

double StateVector::norm_squared() const {
    double total = 0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

void StateVector::apply(const Gate &gate) {
    validate_gate(gate, num_qubits_);
    switch (gate.kind) {
        case GateKind::CNOT:
            apply_cnot(gate.wires[0], gate.wires[1]);
            break;
        case GateKind::CRX:
        case GateKind::CRZ:
            apply_controlled(gate.wires[0], gate.wires[1], target_matrix(gate));
            break;
        default:
            apply_single(gate.wires[0], target_matrix(gate));
            break;
    }
}

void StateVector::apply_single(int target, const std::array<Amplitude, 4> &m) {
    const std::size_t t = wire_mask(target);
    for (std::size_t i = 0; i < amplitudes_.size(); i++) {
        if (i & t) {
            continue;
        }
        const Amplitude a0 = amplitudes_[i];
        const Amplitude a1 = amplitudes_[i | t];
        amplitudes_[i] = m[0] * a0 + m[1] * a1;
        amplitudes_[i | t] = m[2] * a0 + m[3] * a1;
    }
}

void StateVector::apply_controlled(int control, int target, const std::array<Amplitude, 4> &m) {
    const std::size_t c = wire_mask(control);
    const std::size_t t = wire_mask(target);
    for (std::size_t i = 0; i < amplitudes_.size(); i++) {
        if ((i & t) || !(i & c)) {
            continue;
        }
        const Amplitude a0 = amplitudes_[i];
        const Amplitude a1 = amplitudes_[i | t];
        amplitudes_[i] = m[0] * a0 + m[1] * a1;
        amplitudes_[i | t] = m[2] * a0 + m[3] * a1;
    }
}

void StateVector::apply_cnot(int control, int target) {
    const std::size_t c = wire_mask(control);
    const std::size_t t = wire_mask(target);
    for (std::size_t i = 0; i < amplitudes_.size(); i++) {
        if ((i & c) && !(i & t)) {
            std::swap(amplitudes_[i], amplitudes_[i | t]);
        }
    }
}

StateVector init_zero(int num_qubits) {
    return StateVector::zero(num_qubits);
}

StateVector apply_gate(StateVector state, const Gate &gate) {
    state.apply(gate);
    return state;
}

std::vector<double> joint_probabilities(const StateVector &state, std::span<const int> wires) {
    if (wires.empty() || wires.size() > 4) {
        throw std::invalid_argument("joint_probabilities takes 1..4 wires");
    }
    check_wire_list(wires, state.num_qubits());
    std::vector<double> probs(std::size_t{1} << wires.size(), 0.0);
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); i++) {
        std::size_t pattern = 0;
        for (int w : wires) {
            pattern = (pattern << 1) | ((i & state.wire_mask(w)) ? 1 : 0);
        }
        probs[pattern] += std::norm(amps[i]);
    }
    return probs;
}

std::vector<double> excitation_probabilities(const StateVector &state, std::span<const int> wires) {
    check_wire_list(wires, state.num_qubits());
    std::vector<double> probs(wires.size(), 0.0);
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); i++) {
        const double p = std::norm(amps[i]);
        for (std::size_t j = 0; j < wires.size(); j++) {
            if (i & state.wire_mask(wires[j])) {
                probs[j] += p;
            }
        }
    }
    return probs;
}

}  // namespace hqc
