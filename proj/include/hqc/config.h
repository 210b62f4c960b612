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

#ifndef HQC_CONFIG_H
#define HQC_CONFIG_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>

#include "hqc/heads.h"
#include "hqc/qcnn.h"

namespace hqc {

struct AdamConfig {
    double learning_rate = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

enum class DataSource { Idx, Csv, Synthetic };

/// One experiment. Parsed from `key = value` lines; '#' starts a comment.
struct TrainConfig {
    DataSource source = DataSource::Idx;
    std::string train_images;
    std::string train_labels;
    std::string test_images;
    std::string test_labels;
    std::string train_csv;
    std::string test_csv;
    /// Used to carve a test set when no test files are given.
    double test_fraction = 0.2;
    std::array<int, 4> classes{0, 1, 2, 3};
    /// "amplitude", "angle" or "auto" (amplitude for image rasters).
    std::string encoder = "auto";
    LayoutOptions layout;
    HeadConfig heads;
    AdamConfig adam;
    int batch_size = 16;
    int iterations = 600;
    std::uint64_t seed = 1234;
    std::size_t train_subset = 1000;
    std::size_t test_subset = 500;
    /// Worker threads; 0 means hardware concurrency.
    int threads = 0;
    /// Test accuracy is recorded every this many iterations (and at the end).
    int eval_every = 1;
    /// Progress lines on stderr every this many iterations; 0 disables.
    int log_every = 50;
    std::string out_dir = "out";
    std::size_t synthetic_train = 200;
    std::size_t synthetic_test = 100;
    double synthetic_noise = 0.05;

    /// Throws std::invalid_argument on inconsistent settings.
    void validate() const;
};

/// Parses config text. Relative paths are resolved against `base_dir`.
TrainConfig parse_config(const std::string &text, const std::string &base_dir = "");
TrainConfig load_config(const std::string &path);

std::string data_source_name(DataSource s);

}  // namespace hqc

#endif  // HQC_CONFIG_H
