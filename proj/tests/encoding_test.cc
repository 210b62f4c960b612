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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace hqc {
namespace {

std::vector<double> random_features(int dim, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(dim);
    for (auto &x : v) {
        x = u(rng);
    }
    return v;
}

// Kahan-compensated sum of squares.
double compensated_norm(const std::vector<double> &v) {
    double sum = 0;
    double c = 0;
    for (double x : v) {
        const double y = x * x - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return std::sqrt(sum);
}

TEST(AmplitudeEmbed, OneHotGivesBasisState) {
    std::vector<double> x(256, 0.0);
    x[0] = 1.0;
    const auto s = amplitude_embed(x);
    EXPECT_EQ(s.num_qubits(), 8);
    EXPECT_EQ(s.amplitudes()[0], Amplitude(1.0));
}

TEST(AmplitudeEmbed, UniformVector) {
    const std::vector<double> x(256, 1.0);
    const auto s = amplitude_embed(x);
    for (auto a : s.amplitudes()) {
        EXPECT_NEAR(std::abs(a - Amplitude(1.0 / 16)), 0.0, 1e-15);
    }
}

TEST(AmplitudeEmbed, MatchesIndependentNormalization) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 20; trial++) {
        const auto x = random_features(256, rng);
        const double norm = compensated_norm(x);
        const auto s = amplitude_embed(x);
        for (std::size_t i = 0; i < x.size(); i++) {
            EXPECT_NEAR(s.amplitudes()[i].real(), x[i] / norm, 1e-14);
            EXPECT_EQ(s.amplitudes()[i].imag(), 0.0);
        }
        EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
    }
}

TEST(AmplitudeEmbed, Errors) {
    EXPECT_THROW(amplitude_embed(std::vector<double>(256, 0.0)), std::invalid_argument);
    EXPECT_THROW(amplitude_embed(std::vector<double>(255, 0.5)), std::invalid_argument);
    EXPECT_THROW(amplitude_embed(std::vector<double>(8, 0.5)), std::invalid_argument);
}

TEST(AmplitudeEmbed, ScaleInvariant) {
    std::mt19937_64 rng(2);
    for (double c : {1e-6, 0.3, 7.0, 1e6}) {
        const auto x = random_features(256, rng);
        std::vector<double> cx(x);
        for (auto &v : cx) {
            v *= c;
        }
        const auto a = amplitude_embed(x);
        const auto b = amplitude_embed(cx);
        for (std::size_t i = 0; i < x.size(); i++) {
            EXPECT_NEAR(std::abs(a.amplitudes()[i] - b.amplitudes()[i]), 0.0, 1e-12);
        }
    }
}

TEST(AngleEmbed, HalfGivesUniformDistribution) {
    const auto s = angle_embed(std::vector<double>(8, 0.5));
    for (auto a : s.amplitudes()) {
        EXPECT_NEAR(std::norm(a), 1.0 / 256, 1e-15);
    }
}

TEST(AngleEmbed, ZerosGiveGroundStateUpToPhase) {
    const auto s = angle_embed(std::vector<double>(8, 0.0));
    EXPECT_NEAR(std::norm(s.amplitudes()[0]), 1.0, 1e-15);
}

TEST(AngleEmbed, PerQubitExcitationIsSinSquared) {
    std::mt19937_64 rng(3);
    const std::vector<int> wires{0, 1, 2, 3};
    const std::vector<int> wires2{4, 5, 6, 7};
    for (int trial = 0; trial < 20; trial++) {
        const auto x = random_features(8, rng);
        const auto s = angle_embed(x);
        const auto p1 = excitation_probabilities(s, wires);
        const auto p2 = excitation_probabilities(s, wires2);
        for (int q = 0; q < 4; q++) {
            const double a = std::sin(std::numbers::pi * x[q] / 2);
            const double b = std::sin(std::numbers::pi * x[q + 4] / 2);
            EXPECT_NEAR(p1[q], a * a, 1e-14);
            EXPECT_NEAR(p2[q], b * b, 1e-14);
        }
    }
}

TEST(AngleEmbed, PhaseFollowsAffineMap) {
    // Single excited qubit: amplitude ratio <1|/<0| on wire 0 is
    // tan(pi x / 2) * exp(i pi (2x - 1)).
    const double x0 = 0.3;
    std::vector<double> x(8, 0.0);
    x[0] = x0;
    const auto s = angle_embed(x);
    const Amplitude ratio = s.amplitudes()[128] / s.amplitudes()[0];
    const Amplitude want = std::tan(std::numbers::pi * x0 / 2) *
                           std::exp(Amplitude(0, std::numbers::pi * (2 * x0 - 1)));
    EXPECT_NEAR(std::abs(ratio - want), 0.0, 1e-13);
}

TEST(AngleEmbed, ProductStateFactorizes) {
    std::mt19937_64 rng(4);
    const auto s = angle_embed(random_features(8, rng));
    for (int a = 0; a < 8; a++) {
        for (int b = a + 1; b < 8; b++) {
            const std::vector<int> pair{a, b};
            const auto joint = joint_probabilities(s, pair);
            const auto ea = excitation_probabilities(s, std::vector<int>{a})[0];
            const auto eb = excitation_probabilities(s, std::vector<int>{b})[0];
            EXPECT_NEAR(joint[0], (1 - ea) * (1 - eb), 1e-10);
            EXPECT_NEAR(joint[1], (1 - ea) * eb, 1e-10);
            EXPECT_NEAR(joint[2], ea * (1 - eb), 1e-10);
            EXPECT_NEAR(joint[3], ea * eb, 1e-10);
        }
    }
}

TEST(AngleEmbed, Errors) {
    EXPECT_THROW(angle_embed(std::vector<double>(7, 0.5)), std::invalid_argument);
    std::vector<double> x(8, 0.5);
    x[3] = 1.5;
    EXPECT_THROW(angle_embed(x), std::invalid_argument);
    x[3] = -0.1;
    EXPECT_THROW(angle_embed(x), std::invalid_argument);
}

TEST(SelectEncoder, ByDimension) {
    EXPECT_EQ(select_encoder(256), Encoder::Amplitude);
    EXPECT_EQ(select_encoder(8), Encoder::Angle);
    EXPECT_THROW(select_encoder(13), std::invalid_argument);
}

TEST(Embed, DispatchesAndIsDeterministic) {
    std::mt19937_64 rng(5);
    for (int dim : {8, 256}) {
        const FeatureVector f(random_features(dim, rng));
        const auto a = embed(f);
        const auto b = embed(f);
        ASSERT_EQ(a.size(), 256u);
        for (std::size_t i = 0; i < a.size(); i++) {
            EXPECT_EQ(a.amplitudes()[i], b.amplitudes()[i]);
        }
    }
}

TEST(FeatureVector, RejectsOutOfRange) {
    EXPECT_THROW(FeatureVector({0.1, 1.1}), std::invalid_argument);
    EXPECT_THROW(FeatureVector({std::nan("")}), std::invalid_argument);
    EXPECT_NO_THROW(FeatureVector({0.0, 1.0}));
}

TEST(Encoder, NamesRoundTrip) {
    EXPECT_EQ(parse_encoder(encoder_name(Encoder::Amplitude)), Encoder::Amplitude);
    EXPECT_EQ(parse_encoder(encoder_name(Encoder::Angle)), Encoder::Angle);
    EXPECT_THROW(parse_encoder("basis"), std::invalid_argument);
}

}  // namespace
}  // namespace hqc
