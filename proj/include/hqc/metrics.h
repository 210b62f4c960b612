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

#ifndef HQC_METRICS_H
#define HQC_METRICS_H

#include <cstddef>
#include <span>
#include <vector>

namespace hqc {

/// Classification summary. confusion[t][p] counts samples of true class t
/// predicted as p. Macro scores average the per-class values; a class with
/// no predictions (or no samples) contributes 0 precision (or recall).
struct Metrics {
    int num_classes = 0;
    std::size_t total = 0;
    std::vector<std::vector<std::size_t>> confusion;
    double accuracy = 0;
    double macro_precision = 0;
    double macro_recall = 0;
    double macro_f1 = 0;

    std::vector<double> per_class_precision() const;
    std::vector<double> per_class_recall() const;
    std::vector<double> per_class_f1() const;
};

Metrics compute_metrics(std::span<const int> predicted, std::span<const int> actual, int num_classes);

}  // namespace hqc

#endif  // HQC_METRICS_H
