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

// Test-only reference implementations. Nothing here calls into the library's
// gate kernels: matrices are built from Pauli algebra and applied as dense
// matrix-vector products.

#ifndef HQC_TESTS_ORACLE_H
#define HQC_TESTS_ORACLE_H

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using C = std::complex<double>;

/// Square complex matrix, row-major.
struct Mat {
    std::size_t dim = 0;
    std::vector<C> a;

    explicit Mat(std::size_t d = 0) : dim(d), a(d * d) {}
    C &operator()(std::size_t r, std::size_t c) { return a[r * dim + c]; }
    C operator()(std::size_t r, std::size_t c) const { return a[r * dim + c]; }

    static Mat identity(std::size_t d) {
        Mat m(d);
        for (std::size_t i = 0; i < d; i++) {
            m(i, i) = 1;
        }
        return m;
    }
};

inline Mat mul(const Mat &x, const Mat &y) {
    Mat out(x.dim);
    for (std::size_t r = 0; r < x.dim; r++) {
        for (std::size_t k = 0; k < x.dim; k++) {
            const C v = x(r, k);
            if (v == C(0)) {
                continue;
            }
            for (std::size_t c = 0; c < x.dim; c++) {
                out(r, c) += v * y(k, c);
            }
        }
    }
    return out;
}

inline Mat dagger(const Mat &x) {
    Mat out(x.dim);
    for (std::size_t r = 0; r < x.dim; r++) {
        for (std::size_t c = 0; c < x.dim; c++) {
            out(c, r) = std::conj(x(r, c));
        }
    }
    return out;
}

/// Kronecker product; `x` acts on the more significant qubits.
inline Mat kron(const Mat &x, const Mat &y) {
    Mat out(x.dim * y.dim);
    for (std::size_t r1 = 0; r1 < x.dim; r1++) {
        for (std::size_t c1 = 0; c1 < x.dim; c1++) {
            for (std::size_t r2 = 0; r2 < y.dim; r2++) {
                for (std::size_t c2 = 0; c2 < y.dim; c2++) {
                    out(r1 * y.dim + r2, c1 * y.dim + c2) = x(r1, c1) * y(r2, c2);
                }
            }
        }
    }
    return out;
}

inline std::vector<C> apply(const Mat &m, const std::vector<C> &v) {
    std::vector<C> out(m.dim);
    for (std::size_t r = 0; r < m.dim; r++) {
        for (std::size_t c = 0; c < m.dim; c++) {
            out[r] += m(r, c) * v[c];
        }
    }
    return out;
}

inline Mat pauli_x() {
    Mat m(2);
    m(0, 1) = 1;
    m(1, 0) = 1;
    return m;
}

inline Mat pauli_y() {
    Mat m(2);
    m(0, 1) = C(0, -1);
    m(1, 0) = C(0, 1);
    return m;
}

inline Mat pauli_z() {
    Mat m(2);
    m(0, 0) = 1;
    m(1, 1) = -1;
    return m;
}

/// exp(-i theta P / 2) = cos(theta/2) I - i sin(theta/2) P.
inline Mat rotation(const Mat &pauli, double theta) {
    Mat m = Mat::identity(2);
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    for (std::size_t i = 0; i < 4; i++) {
        m.a[i] = c * m.a[i] - C(0, 1) * s * pauli.a[i];
    }
    return m;
}

inline Mat rx(double t) { return rotation(pauli_x(), t); }
inline Mat ry(double t) { return rotation(pauli_y(), t); }
inline Mat rz(double t) { return rotation(pauli_z(), t); }

/// RZ(phi) RY(theta) RZ(lambda) as a matrix product.
inline Mat u3(double theta, double phi, double lambda) {
    return mul(rz(phi), mul(ry(theta), rz(lambda)));
}

/// |0><0| (x) I + |1><1| (x) U on (control, target).
inline Mat controlled(const Mat &u) {
    Mat m(4);
    m(0, 0) = 1;
    m(1, 1) = 1;
    for (std::size_t r = 0; r < 2; r++) {
        for (std::size_t c = 0; c < 2; c++) {
            m(2 + r, 2 + c) = u(r, c);
        }
    }
    return m;
}

/// CNOT with the first (more significant) qubit as control.
inline Mat cnot_first_controls() { return controlled(pauli_x()); }

/// CNOT with the second qubit as control.
inline Mat cnot_second_controls() {
    Mat m(4);
    m(0, 0) = 1;  // |00>
    m(3, 1) = 1;  // |01> -> |11>
    m(2, 2) = 1;  // |10>
    m(1, 3) = 1;  // |11> -> |01>
    return m;
}

inline int bit(std::size_t index, int wire, int n) {
    return static_cast<int>((index >> (n - 1 - wire)) & 1);
}

/// Lifts a k-qubit matrix acting on `wires` (wires[0] most significant in
/// the small matrix) to the full n-qubit space, entry by entry.
inline Mat embed(const Mat &small, const std::vector<int> &wires, int n) {
    const std::size_t dim = std::size_t{1} << n;
    Mat out(dim);
    for (std::size_t r = 0; r < dim; r++) {
        for (std::size_t c = 0; c < dim; c++) {
            bool same = true;
            for (int q = 0; q < n && same; q++) {
                bool acted = false;
                for (int w : wires) {
                    acted = acted || w == q;
                }
                if (!acted && bit(r, q, n) != bit(c, q, n)) {
                    same = false;
                }
            }
            if (!same) {
                continue;
            }
            std::size_t sr = 0;
            std::size_t sc = 0;
            for (int w : wires) {
                sr = (sr << 1) | bit(r, w, n);
                sc = (sc << 1) | bit(c, w, n);
            }
            out(r, c) = small(sr, sc);
        }
    }
    return out;
}

/// The 15-angle convolution block as one 4x4 matrix, first wire most
/// significant. Circuit order runs right to left in the product.
inline Mat conv_block(const std::array<double, 15> &p) {
    const Mat first = kron(u3(p[0], p[1], p[2]), u3(p[3], p[4], p[5]));
    const Mat mid1 = kron(ry(p[6]), rz(p[7]));
    const Mat mid2 = kron(ry(p[8]), Mat::identity(2));
    const Mat last = kron(u3(p[9], p[10], p[11]), u3(p[12], p[13], p[14]));
    Mat m = first;
    m = mul(cnot_first_controls(), m);
    m = mul(mid1, m);
    m = mul(cnot_second_controls(), m);
    m = mul(mid2, m);
    m = mul(cnot_first_controls(), m);
    m = mul(last, m);
    return m;
}

/// CRZ(phi1) followed by CRX(phi2), control = first qubit.
inline Mat pool_block(double phi1, double phi2) {
    return mul(controlled(rx(phi2)), controlled(rz(phi1)));
}

/// Probability of each bit pattern of `wires`, by enumeration.
inline std::vector<double> joint_by_enumeration(const std::vector<C> &amps, const std::vector<int> &wires, int n) {
    std::vector<double> out(std::size_t{1} << wires.size(), 0.0);
    for (std::size_t pattern = 0; pattern < out.size(); pattern++) {
        for (std::size_t i = 0; i < amps.size(); i++) {
            bool match = true;
            for (std::size_t k = 0; k < wires.size(); k++) {
                const int want = static_cast<int>((pattern >> (wires.size() - 1 - k)) & 1);
                match = match && bit(i, wires[k], n) == want;
            }
            if (match) {
                out[pattern] += std::norm(amps[i]);
            }
        }
    }
    return out;
}

/// <1|rho_w|1> of the single-wire reduced density matrix, built by tracing
/// the full density matrix over all other wires.
inline double excitation_by_partial_trace(const std::vector<C> &amps, int wire, int n) {
    const std::size_t dim = amps.size();
    std::array<C, 4> rho{};
    for (std::size_t r = 0; r < dim; r++) {
        for (std::size_t c = 0; c < dim; c++) {
            bool rest_equal = true;
            for (int q = 0; q < n; q++) {
                if (q != wire && bit(r, q, n) != bit(c, q, n)) {
                    rest_equal = false;
                    break;
                }
            }
            if (rest_equal) {
                rho[bit(r, wire, n) * 2 + bit(c, wire, n)] += amps[r] * std::conj(amps[c]);
            }
        }
    }
    return rho[3].real();
}

inline std::vector<C> random_state(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<C> v(std::size_t{1} << n);
    double norm = 0;
    for (auto &a : v) {
        a = C(g(rng), g(rng));
        norm += std::norm(a);
    }
    for (auto &a : v) {
        a /= std::sqrt(norm);
    }
    return v;
}


/// Wire pairs of every layer, as plain data.
struct Backbone {
    std::array<std::vector<std::array<int, 2>>, 6> conv;  // (first, second)
    std::array<std::vector<std::array<int, 2>>, 2> pool;  // (control, target)
    std::array<int, 2> retained{};
    std::array<int, 4> discarded{};
};

struct Features {
    std::array<double, 4> retained{};
    std::array<double, 4> discarded{};
};

/// Runs the 8-qubit backbone by multiplying the state with one 256x256
/// matrix per two-qubit block. `params` holds 6 x 15 conv angles followed by
/// 2 x 2 pooling angles.
inline Features backbone_forward(const std::vector<C> &input, const std::vector<double> &params,
                                 const Backbone &net) {
    const int n = 8;
    std::vector<C> psi = input;
    auto conv_layer = [&](int layer) {
        std::array<double, 15> p{};
        for (int j = 0; j < 15; j++) {
            p[j] = params[15 * layer + j];
        }
        const Mat block = conv_block(p);
        for (const auto &pr : net.conv[layer]) {
            psi = oracle::apply(embed(block, {pr[0], pr[1]}, n), psi);
        }
    };
    auto pool_layer = [&](int layer) {
        const Mat block = pool_block(params[90 + 2 * layer], params[91 + 2 * layer]);
        for (const auto &pr : net.pool[layer]) {
            psi = oracle::apply(embed(block, {pr[0], pr[1]}, n), psi);
        }
    };
    conv_layer(0);
    conv_layer(1);
    pool_layer(0);
    conv_layer(2);
    conv_layer(3);
    pool_layer(1);
    conv_layer(4);
    conv_layer(5);

    Features f;
    const auto joint = joint_by_enumeration(psi, {net.retained[0], net.retained[1]}, n);
    for (int i = 0; i < 4; i++) {
        f.retained[i] = joint[i];
        f.discarded[i] = joint_by_enumeration(psi, {net.discarded[i]}, n)[1];
    }
    return f;
}

/// Default layout written out by hand: brick pairing, lower wire of each
/// pooling pair survives.
inline Backbone default_backbone() {
    Backbone b;
    b.conv[0] = {{0, 1}, {2, 3}, {4, 5}, {6, 7}};
    b.conv[1] = {{1, 2}, {3, 4}, {5, 6}, {7, 0}};
    b.pool[0] = {{0, 1}, {2, 3}, {4, 5}, {6, 7}};
    b.conv[2] = {{0, 2}, {4, 6}};
    b.conv[3] = {{2, 4}, {6, 0}};
    b.pool[1] = {{0, 2}, {4, 6}};
    b.conv[4] = {{0, 4}};
    b.conv[5] = {{4, 0}};
    b.retained = {0, 4};
    b.discarded = {1, 3, 5, 7};
    return b;
}

}  // namespace oracle

#endif  // HQC_TESTS_ORACLE_H
