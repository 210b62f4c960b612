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

#ifndef HQC_SIM_H
#define HQC_SIM_H

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hqc {

using Amplitude = std::complex<double>;

constexpr int kMaxQubits = 10;

/// Single- and two-qubit gates used by the network.
///
/// Rotation convention: R_P(theta) = exp(-i theta P / 2).
/// U3(theta, phi, lambda) = RZ(phi) RY(theta) RZ(lambda), i.e. RZ(lambda) acts first.
/// Controlled gates apply their rotation to wires[1] iff wires[0] is |1>.
enum class GateKind { RX, RY, RZ, U3, CNOT, CRX, CRZ };

struct Gate {
    GateKind kind;
    std::array<int, 2> wires{0, 0};
    std::array<double, 3> angles{0, 0, 0};

    static Gate rx(int wire, double theta) { return {GateKind::RX, {wire, wire}, {theta, 0, 0}}; }
    static Gate ry(int wire, double theta) { return {GateKind::RY, {wire, wire}, {theta, 0, 0}}; }
    static Gate rz(int wire, double theta) { return {GateKind::RZ, {wire, wire}, {theta, 0, 0}}; }
    static Gate u3(int wire, double theta, double phi, double lambda) {
        return {GateKind::U3, {wire, wire}, {theta, phi, lambda}};
    }
    static Gate cnot(int control, int target) { return {GateKind::CNOT, {control, target}, {0, 0, 0}}; }
    static Gate crx(int control, int target, double theta) {
        return {GateKind::CRX, {control, target}, {theta, 0, 0}};
    }
    static Gate crz(int control, int target, double theta) {
        return {GateKind::CRZ, {control, target}, {theta, 0, 0}};
    }

    int arity() const;
    int num_angles() const;
    /// Gate with the angles negated (CNOT is returned unchanged). For U3 the
    /// inverse also reverses the RZ order, so phi and lambda swap.
    Gate inverse() const;
};

std::string gate_name(GateKind kind);

/// Row-major 2x2 unitary acting on the target wire of `gate` (for controlled
/// gates: the block applied when the control is set). Not defined for CNOT,
/// which returns Pauli X.
std::array<Amplitude, 4> target_matrix(const Gate &gate);

/// Dense statevector over n qubits. Basis index bit (n - 1 - q) holds qubit q,
/// so qubit 0 is the most significant bit.
class StateVector {
   public:
    /// |0...0> on n qubits.
    static StateVector zero(int num_qubits);
    /// Takes ownership of `amplitudes`; the length must be a power of two
    /// with 1..kMaxQubits qubits and the squared norm must be 1 within 1e-10.
    static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);

    int num_qubits() const { return num_qubits_; }
    std::size_t size() const { return amplitudes_.size(); }
    std::span<const Amplitude> amplitudes() const { return amplitudes_; }
    double norm_squared() const;

    /// Multiplies the state by the gate's unitary in place.
    void apply(const Gate &gate);

    /// Bit mask of qubit `wire` inside a basis index.
    std::size_t wire_mask(int wire) const { return std::size_t{1} << (num_qubits_ - 1 - wire); }

   private:
    StateVector(int num_qubits, std::vector<Amplitude> amplitudes)
        : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

    void apply_single(int target, const std::array<Amplitude, 4> &m);
    void apply_controlled(int control, int target, const std::array<Amplitude, 4> &m);
    void apply_cnot(int control, int target);

    int num_qubits_;
    std::vector<Amplitude> amplitudes_;
};

StateVector init_zero(int num_qubits);
StateVector apply_gate(StateVector state, const Gate &gate);

/// Throws std::invalid_argument if the gate cannot act on `state`.
void validate_gate(const Gate &gate, int num_qubits);

/// Joint distribution of `wires` (at most 4, distinct). Entry b is the
/// probability that wires[0..k) read the bit pattern b, wires[0] being the
/// most significant bit of b.
std::vector<double> joint_probabilities(const StateVector &state, std::span<const int> wires);

/// Per-wire probability of reading |1>.
std::vector<double> excitation_probabilities(const StateVector &state, std::span<const int> wires);

}  // namespace hqc

#endif  // HQC_SIM_H
