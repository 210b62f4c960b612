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

#ifndef HQC_DATA_H
#define HQC_DATA_H

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hqc/encoding.h"

namespace hqc {

constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;
constexpr int kNumClasses = 4;

/// Grayscale images of a common size with one byte label each.
struct RawDataset {
    int rows = 28;
    int cols = 28;
    std::vector<std::vector<std::uint8_t>> images;
    std::vector<std::uint8_t> labels;
    std::string source;

    std::size_t size() const { return labels.size(); }
    /// Throws if images and labels disagree in count or size.
    void validate() const;
};

struct Sample {
    FeatureVector features;
    int label = 0;
};

RawDataset load_idx(const std::string &images_path, const std::string &labels_path);
void write_idx(const RawDataset &ds, const std::string &images_path, const std::string &labels_path);

/// Rows of "label,p0,...,p783"; an optional header line whose first cell is
/// not numeric is skipped.
RawDataset load_csv(const std::string &path);

/// Keeps only the listed classes and relabels them 0..3 in the given order.
RawDataset filter_split(const RawDataset &ds, const std::array<int, kNumClasses> &classes);

struct PreprocessOptions {
    int resize_rows = 16;
    int resize_cols = 16;
    /// Block-mean grid for the angle encoder.
    int grid_rows = 2;
    int grid_cols = 4;
};

/// Bilinear resampling with half-pixel centers and edge clamping.
std::vector<double> bilinear_resize(std::span<const double> src, int rows, int cols, int out_rows, int out_cols);

/// Means of a grid_rows x grid_cols partition; block edges at floor(i * rows / grid_rows).
std::vector<double> block_means(std::span<const double> src, int rows, int cols, int grid_rows, int grid_cols);

/// (v - min) / (max - min). When max == min the result is all zeros, or all
/// ones if `constant_to_ones` and the constant is non-zero.
std::vector<double> min_max_normalize(std::span<const double> v, bool constant_to_ones);

/// Amplitude: 16x16 bilinear resize, row-major flatten, min-max normalize
/// (constant non-zero images become the all-ones vector; all-zero images are
/// rejected). Angle: 2x4 block means, min-max normalize (constant images
/// become all zeros).
FeatureVector preprocess(std::span<const std::uint8_t> raster, int rows, int cols, Encoder target,
                         const PreprocessOptions &options = {});

std::vector<Sample> preprocess_all(const RawDataset &ds, Encoder target, const PreprocessOptions &options = {});

/// Seeded Fisher-Yates shuffle, then the first round(n * test_fraction)
/// samples become the test set.
std::pair<RawDataset, RawDataset> split_train_test(const RawDataset &ds, double test_fraction, std::uint64_t seed);

/// Seeded permutation of 0..n-1; identical across platforms.
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

/// First `n` samples after a seeded shuffle (all samples if n >= size).
RawDataset take_subset(const RawDataset &ds, std::size_t n, std::uint64_t seed);

/// Four noisy clusters in the 256-dim amplitude feature space. Centers are
/// drawn from `center_seed`, so train and test sets built with the same
/// center seed share them. Labels cycle 0,1,2,3 and entries are clamped to
/// [0, 1].
std::vector<Sample> synthetic_clusters(std::size_t count, std::uint64_t center_seed, std::uint64_t sample_seed,
                                       double noise = 0.05);

}  // namespace hqc

#endif  // HQC_DATA_H
