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

#include "hqc/heads.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "hqc/model.h"

namespace hqc {
namespace {

// Naive y = tanh(W x + b) with W row-major out x in.
std::vector<double> naive_tanh_layer(const DenseLayer &l, const std::vector<double> &x) {
    std::vector<double> y(l.out);
    for (int r = 0; r < l.out; r++) {
        double acc = l.bias[r];
        for (int c = 0; c < l.in; c++) {
            acc += l.weight[r * l.in + c] * x[c];
        }
        y[r] = std::tanh(acc);
    }
    return y;
}

void set_identity(DenseLayer &l) {
    std::fill(l.weight.begin(), l.weight.end(), 0.0);
    for (int i = 0; i < std::min(l.in, l.out); i++) {
        l.w(i, i) = 1.0;
    }
}

std::vector<double> random_vec(std::size_t n, double lo, double hi, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto &x : v) {
        x = u(rng);
    }
    return v;
}

HeadParams random_heads(const HeadConfig &cfg, std::mt19937_64 &rng) {
    auto p = HeadParams::zeros(cfg);
    p.assign(random_vec(p.parameter_count(), -1, 1, rng));
    return p;
}

TEST(Rescale, Examples) {
    EXPECT_EQ(rescale(std::vector<double>{0, 0.5, 1, 0.25}), (std::vector<double>{-2, 0, 2, -1}));
    EXPECT_EQ(rescale(std::vector<double>(4, 0.25)), std::vector<double>(4, -1.0));
    EXPECT_THROW(rescale(std::vector<double>{1.1}), std::invalid_argument);
    EXPECT_THROW(rescale(std::vector<double>{-0.01}), std::invalid_argument);
}

TEST(Rescale, MonotoneAndInvertible) {
    std::mt19937_64 rng(1);
    auto p = random_vec(1000, 0, 1, rng);
    std::sort(p.begin(), p.end());
    const auto s = rescale(p);
    for (std::size_t i = 1; i < s.size(); i++) {
        EXPECT_LE(s[i - 1], s[i]);
    }
    const auto z = random_vec(1000, -2, 2, rng);
    const auto back = rescale(inverse_rescale(z));
    for (std::size_t i = 0; i < z.size(); i++) {
        EXPECT_NEAR(back[i], z[i], 1e-14);
    }
}

TEST(Rescale, VarianceOfUniformIsFourThirds) {
    std::mt19937_64 rng(2);
    const auto s = rescale(random_vec(100000, 0, 1, rng));
    double mean = 0;
    for (double v : s) {
        mean += v;
    }
    mean /= s.size();
    double var = 0;
    for (double v : s) {
        var += (v - mean) * (v - mean);
    }
    var /= s.size() - 1;
    EXPECT_NEAR(var, 4.0 / 3.0, 0.1 * 4.0 / 3.0);
}

TEST(RetainedHead, Examples) {
    HeadConfig cfg;
    auto p = HeadParams::zeros(cfg);
    const std::vector<double> x{2, -2, 0, 1};
    EXPECT_EQ(retained_head(x, p), std::vector<double>(4, 0.0));
    set_identity(p.retained);
    const auto y = retained_head(x, p);
    EXPECT_DOUBLE_EQ(y[0], std::tanh(2.0));
    EXPECT_DOUBLE_EQ(y[1], std::tanh(-2.0));
    EXPECT_DOUBLE_EQ(y[2], 0.0);
    EXPECT_DOUBLE_EQ(y[3], std::tanh(1.0));
}

TEST(RetainedHead, MatchesNaiveOracle) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; trial++) {
        const auto p = random_heads(HeadConfig{}, rng);
        const auto x = random_vec(4, -2, 2, rng);
        const auto got = retained_head(x, p);
        const auto want = naive_tanh_layer(p.retained, x);
        for (int i = 0; i < 4; i++) {
            EXPECT_NEAR(got[i], want[i], 1e-12);
        }
    }
}

TEST(DiscardedHead, Examples) {
    HeadConfig cfg;
    cfg.expansion = 1;
    auto p = HeadParams::zeros(cfg);
    const std::vector<double> x{0.3, -1.2, 2, -0.5};
    EXPECT_EQ(discarded_head(x, p), std::vector<double>(4, 0.0));
    set_identity(p.disc_project);
    set_identity(p.disc_expand);
    set_identity(p.disc_recover);
    const auto y = discarded_head(x, p);
    for (int i = 0; i < 4; i++) {
        EXPECT_NEAR(y[i], std::tanh(std::tanh(std::tanh(x[i]))), 1e-15);
    }
}

TEST(DiscardedHead, MatchesLayerByLayerOracle) {
    std::mt19937_64 rng(4);
    for (int k : {1, 2, 3}) {
        HeadConfig cfg;
        cfg.expansion = k;
        const auto p = random_heads(cfg, rng);
        EXPECT_EQ(p.disc_expand.out, 4 * k);
        const auto x = random_vec(4, -2, 2, rng);
        const auto want = naive_tanh_layer(p.disc_recover, naive_tanh_layer(p.disc_expand, naive_tanh_layer(p.disc_project, x)));
        const auto got = discarded_head(x, p);
        for (int i = 0; i < 4; i++) {
            EXPECT_NEAR(got[i], want[i], 1e-12);
        }
    }
}

TEST(DiscardedHead, BaselineHasNoBranch) {
    HeadConfig cfg;
    cfg.recycle = false;
    EXPECT_THROW(discarded_head(std::vector<double>(4, 0.0), HeadParams::zeros(cfg)), std::invalid_argument);
}

TEST(Fuse, Examples) {
    const std::vector<double> d{0.4, 0.5, -1, 0};
    EXPECT_EQ(fuse(std::vector<double>(4, 1.0), d), d);
    EXPECT_EQ(fuse(d, std::vector<double>(4, 0.0)), std::vector<double>(4, 0.0));
    const auto z = fuse(std::vector<double>{0.5, -0.2, 0.9, 0.1}, d);
    const std::vector<double> want{0.2, -0.1, -0.9, 0};
    for (int i = 0; i < 4; i++) {
        EXPECT_NEAR(z[i], want[i], 1e-15);
    }
    EXPECT_EQ(fuse(d, std::vector<double>{0.5, -0.2, 0.9, 0.1}), z);
    EXPECT_THROW(fuse(d, std::vector<double>(3, 1.0)), std::invalid_argument);
}

TEST(Loss, Examples) {
    for (int label = 0; label < 4; label++) {
        EXPECT_NEAR(loss(std::vector<double>(4, 0.0), label), std::log(4.0), 1e-15);
    }
    // -log(e^10 / (e^10 + 3))
    const double want = std::log1p(3.0 * std::exp(-10.0));
    EXPECT_NEAR(loss(std::vector<double>{10, 0, 0, 0}, 0), want, 1e-15);
    EXPECT_NEAR(want, 1.36e-4, 5e-7);
    EXPECT_THROW(loss(std::vector<double>(4, 0.0), 4), std::invalid_argument);
    EXPECT_THROW(loss(std::vector<double>(4, 0.0), -1), std::invalid_argument);
}

TEST(Loss, ShiftInvariant) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; trial++) {
        auto z = random_vec(4, -3, 3, rng);
        const double a = loss(z, trial % 4);
        for (auto &v : z) {
            v += 17.5;
        }
        EXPECT_NEAR(loss(z, trial % 4), a, 1e-12);
    }
}

TEST(Softmax, SumsToOne) {
    const auto p = softmax(std::vector<double>{1, 2, 3, 4});
    EXPECT_NEAR(p[0] + p[1] + p[2] + p[3], 1.0, 1e-15);
    EXPECT_GT(p[3], p[2]);
}

TEST(Predict, ArgmaxWithLowestIndexTies) {
    EXPECT_EQ(predict(std::vector<double>{0.1, 0.9, 0.2, 0.3}), 1);
    EXPECT_EQ(predict(std::vector<double>{0.5, 0.5, 0, 0}), 0);
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 20; trial++) {
        const auto z = random_vec(4, -1, 1, rng);
        EXPECT_EQ(predict(z), predict(softmax(z)));
    }
}

TEST(HeadParams, CountsAndFlattenRoundTrip) {
    std::mt19937_64 rng(7);
    for (int k : {1, 2, 4}) {
        for (bool final_layer : {false, true}) {
            HeadConfig cfg;
            cfg.expansion = k;
            cfg.final_layer = final_layer;
            const auto p = HeadParams::glorot(cfg, rng);
            // retained 20, project 20, expand 16k+4k, recover 16k+4
            const std::size_t want = 44 + 36 * k + (final_layer ? 20 : 0);
            EXPECT_EQ(p.parameter_count(), want);
            auto q = HeadParams::zeros(cfg);
            q.assign(p.flatten());
            EXPECT_EQ(q.flatten(), p.flatten());
        }
    }
    HeadConfig base;
    base.recycle = false;
    EXPECT_EQ(HeadParams::zeros(base).parameter_count(), 20u);
}

TEST(HeadParams, GlorotBoundsAndZeroBias) {
    std::mt19937_64 rng(8);
    HeadConfig cfg;
    const auto p = HeadParams::glorot(cfg, rng);
    for (const DenseLayer *l : p.layers()) {
        const double limit = std::sqrt(6.0 / (l->in + l->out));
        for (double w : l->weight) {
            EXPECT_LE(std::abs(w), limit);
        }
        for (double b : l->bias) {
            EXPECT_EQ(b, 0.0);
        }
    }
}

TEST(RunHeads, BaselineIgnoresDiscarded) {
    std::mt19937_64 rng(9);
    HeadConfig cfg;
    cfg.recycle = false;
    const auto p = random_heads(cfg, rng);
    const std::vector<double> r{0.1, 0.2, 0.3, 0.4};
    const auto a = run_heads(r, std::vector<double>{0, 0, 0, 0}, p);
    const auto b = run_heads(r, std::vector<double>{1, 1, 1, 1}, p);
    EXPECT_EQ(a.logits, b.logits);
    EXPECT_EQ(a.logits, a.y_ret);
}

TEST(RunHeads, ComposesStages) {
    std::mt19937_64 rng(10);
    HeadConfig cfg;
    cfg.final_layer = true;
    const auto p = random_heads(cfg, rng);
    const std::vector<double> r{0.1, 0.2, 0.3, 0.4};
    const std::vector<double> d{0.9, 0.05, 0.5, 0.0};
    const auto t = run_heads(r, d, p);
    const auto fused = fuse(retained_head(rescale(r), p), discarded_head(rescale(d), p));
    for (int i = 0; i < 4; i++) {
        double z = p.final.bias[i];
        for (int c = 0; c < 4; c++) {
            z += p.final.w(i, c) * fused[c];
        }
        EXPECT_NEAR(t.logits[i], z, 1e-14);
    }
}

TEST(Model, ClosedFormParameterCount) {
    for (int k : {1, 2, 3}) {
        HeadConfig cfg;
        cfg.expansion = k;
        EXPECT_EQ(expected_parameter_count(cfg), std::size_t(138 + 36 * k));
        std::mt19937_64 rng(k);
        EXPECT_EQ(ModelParams::init(cfg, rng).parameter_count(), std::size_t(138 + 36 * k));
        cfg.final_layer = true;
        EXPECT_EQ(expected_parameter_count(cfg), std::size_t(158 + 36 * k));
        EXPECT_EQ(ModelParams::init(cfg, rng).parameter_count(), std::size_t(158 + 36 * k));
    }
    HeadConfig base;
    base.recycle = false;
    EXPECT_EQ(expected_parameter_count(base), 114u);
}

}  // namespace
}  // namespace hqc
