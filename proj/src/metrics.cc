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

#include "hqc/metrics.h"

#include <stdexcept>
#include <string>

namespace hqc {

std::vector<double> Metrics::per_class_precision() const {
    std::vector<double> out(num_classes, 0.0);
    for (int p = 0; p < num_classes; p++) {
        std::size_t col = 0;
        for (int t = 0; t < num_classes; t++) {
            col += confusion[t][p];
        }
        out[p] = col ? static_cast<double>(confusion[p][p]) / col : 0.0;
    }
    return out;
}

std::vector<double> Metrics::per_class_recall() const {
    std::vector<double> out(num_classes, 0.0);
    for (int t = 0; t < num_classes; t++) {
        std::size_t row = 0;
        for (int p = 0; p < num_classes; p++) {
            row += confusion[t][p];
        }
        out[t] = row ? static_cast<double>(confusion[t][t]) / row : 0.0;
    }
    return out;
}

std::vector<double> Metrics::per_class_f1() const {
    const auto prec = per_class_precision();
    const auto rec = per_class_recall();
    std::vector<double> out(num_classes, 0.0);
    for (int c = 0; c < num_classes; c++) {
        const double s = prec[c] + rec[c];
        out[c] = s > 0 ? 2 * prec[c] * rec[c] / s : 0.0;
    }
    return out;
}

Metrics compute_metrics(std::span<const int> predicted, std::span<const int> actual, int num_classes) {
    if (predicted.size() != actual.size()) {
        throw std::invalid_argument("prediction and label counts differ");
    }
    if (num_classes < 1) {
        throw std::invalid_argument("need at least one class");
    }
    Metrics m;
    m.num_classes = num_classes;
    m.total = actual.size();
    m.confusion.assign(num_classes, std::vector<std::size_t>(num_classes, 0));
    std::size_t correct = 0;
    for (std::size_t i = 0; i < actual.size(); i++) {
        const int t = actual[i];
        const int p = predicted[i];
        if (t < 0 || t >= num_classes || p < 0 || p >= num_classes) {
            throw std::invalid_argument("class index out of range at sample " + std::to_string(i));
        }
        m.confusion[t][p]++;
        correct += t == p;
    }
    m.accuracy = m.total ? static_cast<double>(correct) / m.total : 0.0;
    const auto prec = m.per_class_precision();
    const auto rec = m.per_class_recall();
    const auto f1 = m.per_class_f1();
    for (int c = 0; c < num_classes; c++) {
        m.macro_precision += prec[c] / num_classes;
        m.macro_recall += rec[c] / num_classes;
        m.macro_f1 += f1[c] / num_classes;
    }
    return m;
}

}  // namespace hqc
