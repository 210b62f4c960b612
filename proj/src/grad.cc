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

#include "hqc/grad.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hqc {

namespace {

struct ShiftTerm {
    double shift;
    double coefficient;
};

constexpr double kHalfPi = std::numbers::pi / 2;

constexpr std::array<ShiftTerm, 2> kTwoTerm{{{kHalfPi, 0.5}, {-kHalfPi, -0.5}}};

// Generator |1><1| (x) P/2 has eigenvalues {0, +-1/2}.
const double kFourTermNear = (std::numbers::sqrt2 + 1) / (4 * std::numbers::sqrt2);
const double kFourTermFar = (std::numbers::sqrt2 - 1) / (4 * std::numbers::sqrt2);
const std::array<ShiftTerm, 4> kFourTerm{{{kHalfPi, kFourTermNear},
                                          {-kHalfPi, -kFourTermNear},
                                          {3 * kHalfPi, -kFourTermFar},
                                          {-3 * kHalfPi, kFourTermFar}}};

bool is_controlled_rotation(GateKind kind) {
    return kind == GateKind::CRX || kind == GateKind::CRZ;
}

/// Backprop through y = tanh(W x + b). Accumulates into `grad`, returns dL/dx.
std::vector<double> tanh_layer_backward(const DenseLayer &layer, std::span<const double> x,
                                        std::span<const double> y, std::span<const double> dy, DenseLayer &grad) {
    std::vector<double> dx(layer.in, 0.0);
    for (int r = 0; r < layer.out; r++) {
        const double da = dy[r] * (1.0 - y[r] * y[r]);
        grad.bias[r] += da;
        for (int c = 0; c < layer.in; c++) {
            grad.w(r, c) += da * x[c];
            dx[c] += layer.w(r, c) * da;
        }
    }
    return dx;
}

double objective(const StateVector &state, const CircuitLayout &layout, const FeatureGrad &upstream, bool read_disc) {
    const auto f = read_features(state, layout, read_disc ? Readout::Full : Readout::RetainedOnly);
    double v = 0;
    for (int j = 0; j < kFeatureWidth; j++) {
        v += upstream.retained[j] * f.retained[j];
        if (read_disc) {
            v += upstream.discarded[j] * f.discarded[j];
        }
    }
    return v;
}

}  // namespace

ClassicalGrad backward_classical(const QuantumFeatures &features, const HeadParams &params, int label) {
    params.validate();
    const HeadTrace t = run_heads(features.retained, features.discarded, params);
    const int m = params.config.num_classes;
    if (label < 0 || label >= m) {
        throw std::invalid_argument("label " + std::to_string(label) + " out of range");
    }

    ClassicalGrad g;
    g.loss = loss(t.logits, label);
    g.heads = HeadParams::zeros(params.config);

    std::vector<double> dlogits = softmax(t.logits);
    dlogits[label] -= 1.0;

    std::vector<double> dfused;
    if (params.config.final_layer) {
        dfused.assign(m, 0.0);
        for (int r = 0; r < m; r++) {
            g.heads.final.bias[r] += dlogits[r];
            for (int c = 0; c < m; c++) {
                g.heads.final.w(r, c) += dlogits[r] * t.fused[c];
                dfused[c] += params.final.w(r, c) * dlogits[r];
            }
        }
    } else {
        dfused = dlogits;
    }

    std::vector<double> dy_ret(m);
    if (params.config.recycle) {
        std::vector<double> dy_disc(m);
        for (int i = 0; i < m; i++) {
            dy_ret[i] = dfused[i] * t.y_disc[i];
            dy_disc[i] = dfused[i] * t.y_ret[i];
        }
        const auto dh = tanh_layer_backward(params.disc_recover, t.h, t.y_disc, dy_disc, g.heads.disc_recover);
        const auto dproj = tanh_layer_backward(params.disc_expand, t.y_proj, t.h, dh, g.heads.disc_expand);
        const auto dx_disc = tanh_layer_backward(params.disc_project, t.x_disc, t.y_proj, dproj, g.heads.disc_project);
        std::copy(dx_disc.begin(), dx_disc.end(), g.d_discarded_scaled.begin());
    } else {
        dy_ret = dfused;
    }
    const auto dx_ret = tanh_layer_backward(params.retained, t.x_ret, t.y_ret, dy_ret, g.heads.retained);
    std::copy(dx_ret.begin(), dx_ret.end(), g.d_retained_scaled.begin());
    return g;
}

std::array<double, kQuantumParams> quantum_grad(const StateVector &input, const QcnnParams &params,
                                                const CircuitLayout &layout, const FeatureGrad &upstream) {
    bool any = false;
    bool read_disc = false;
    for (int j = 0; j < kFeatureWidth; j++) {
        if (!std::isfinite(upstream.retained[j]) || !std::isfinite(upstream.discarded[j])) {
            throw std::invalid_argument("non-finite upstream gradient");
        }
        any = any || upstream.retained[j] != 0 || upstream.discarded[j] != 0;
        read_disc = read_disc || upstream.discarded[j] != 0;
    }
    std::array<double, kQuantumParams> grad{};
    if (!any) {
        return grad;
    }

    const Circuit circuit = compile_circuit(params, layout);
    const std::span<const CircuitOp> ops = circuit.ops;

    // prefix[i] is the state entering op i.
    std::vector<StateVector> prefix;
    prefix.reserve(ops.size());
    StateVector state = input;
    for (const auto &op : ops) {
        prefix.push_back(state);
        state.apply(op.gate);
    }

    for (std::size_t i = 0; i < ops.size(); i++) {
        const CircuitOp &op = ops[i];
        const std::span<const ShiftTerm> rule =
            is_controlled_rotation(op.gate.kind) ? std::span<const ShiftTerm>(kFourTerm) : kTwoTerm;
        for (int slot = 0; slot < op.gate.num_angles(); slot++) {
            const int id = op.param_ids[slot];
            if (id < 0) {
                continue;
            }
            double d = 0;
            for (const auto &term : rule) {
                Gate shifted = op.gate;
                shifted.angles[slot] += term.shift;
                StateVector s = prefix[i];
                s.apply(shifted);
                run_ops(s, ops.subspan(i + 1));
                d += term.coefficient * objective(s, layout, upstream, read_disc);
            }
            grad[id] += d;
        }
    }
    return grad;
}

std::size_t shift_evaluation_count(const CircuitLayout &layout) {
    QcnnParams zero;
    std::size_t n = 0;
    for (const auto &op : compile_circuit(zero, layout).ops) {
        const std::size_t per = is_controlled_rotation(op.gate.kind) ? 4 : 2;
        for (int slot = 0; slot < op.gate.num_angles(); slot++) {
            if (op.param_ids[slot] >= 0) {
                n += per;
            }
        }
    }
    return n;
}

SampleGrad sample_gradient(const StateVector &input, const ModelParams &params, const CircuitLayout &layout,
                           int label) {
    const Readout readout = params.heads.config.recycle ? Readout::Full : Readout::RetainedOnly;
    const QuantumFeatures features = forward(input, params.quantum, layout, readout);
    const ClassicalGrad cg = backward_classical(features, params.heads, label);

    FeatureGrad upstream;
    for (int j = 0; j < kFeatureWidth; j++) {
        // d(4p - 2)/dp = 4
        upstream.retained[j] = 4.0 * cg.d_retained_scaled[j];
        upstream.discarded[j] = 4.0 * cg.d_discarded_scaled[j];
    }
    const auto qg = quantum_grad(input, params.quantum, layout, upstream);

    SampleGrad out;
    out.loss = cg.loss;
    out.prediction = predict(run_heads(features.retained, features.discarded, params.heads).logits);
    out.grad.assign(qg.begin(), qg.end());
    const auto hg = cg.heads.flatten();
    out.grad.insert(out.grad.end(), hg.begin(), hg.end());
    return out;
}

double finite_diff(const std::function<double(std::span<const double>)> &fn, std::span<const double> params,
                   std::size_t index, double eps) {
    if (index >= params.size()) {
        throw std::out_of_range("finite_diff index out of range");
    }
    std::vector<double> x(params.begin(), params.end());
    const double x0 = x[index];
    x[index] = x0 + eps;
    const double up = fn(x);
    x[index] = x0 - eps;
    const double down = fn(x);
    return (up - down) / (2 * eps);
}

}  // namespace hqc
