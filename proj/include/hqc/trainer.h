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

#ifndef HQC_TRAINER_H
#define HQC_TRAINER_H

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hqc/config.h"
#include "hqc/data.h"
#include "hqc/metrics.h"
#include "hqc/model.h"

namespace hqc {

/// Adam with bias correction over one flat parameter vector.
class Adam {
   public:
    Adam(AdamConfig config, std::size_t size);
    void step(std::span<double> params, std::span<const double> grad);
    long steps() const { return t_; }

   private:
    AdamConfig config_;
    std::vector<double> m_;
    std::vector<double> v_;
    long t_ = 0;
};

/// Runs fn(0..n-1) on up to `threads` workers (0 = hardware concurrency).
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)> &fn);

struct CurveRecord {
    int iter = 0;
    double train_loss = 0;
    double train_acc = 0;
    /// Absent for iterations skipped by eval_every.
    std::optional<double> test_acc;
};

/// Embedded inputs ready for the backbone.
struct EncodedSet {
    std::vector<StateVector> states;
    std::vector<int> labels;

    std::size_t size() const { return labels.size(); }
};

/// Everything needed to rebuild and run a trained model.
struct Checkpoint {
    ModelParams params;
    LayoutOptions layout;
    Encoder encoder = Encoder::Amplitude;
    std::array<int, 4> classes{0, 1, 2, 3};
};

struct TrainResult {
    Checkpoint checkpoint;
    Metrics test_metrics;
    Metrics train_metrics;
    std::vector<CurveRecord> curves;
};

Encoder resolve_encoder(const TrainConfig &config);

struct SampleSplits {
    std::vector<Sample> train;
    std::vector<Sample> test;
};

/// Loads, filters, splits, subsets and preprocesses the configured data.
SampleSplits load_samples(const TrainConfig &config);
EncodedSet encode_samples(std::span<const Sample> samples, int threads = 1);

std::vector<int> predict_all(const EncodedSet &set, const ModelParams &params, const CircuitLayout &layout,
                             int threads);
Metrics evaluate(const EncodedSet &set, const ModelParams &params, const CircuitLayout &layout, int threads);

/// One line with quantum/head/total parameter counts.
std::string describe_parameter_count(const ModelParams &params);

/// Trains on already-encoded data. The progress callback, if set, receives
/// every curve record as it is produced.
TrainResult train_model(const TrainConfig &config, const EncodedSet &train, const EncodedSet &test,
                        const std::function<void(const CurveRecord &)> &progress = {});

/// Full pipeline: load data per config, train, evaluate.
TrainResult run_train(const TrainConfig &config, const std::function<void(const CurveRecord &)> &progress = {});

/// Evaluates a checkpoint on the test data named by `config`.
Metrics run_eval(const Checkpoint &checkpoint, const TrainConfig &config);

std::string checkpoint_to_json(const Checkpoint &checkpoint);
Checkpoint checkpoint_from_json(const std::string &text);
void save_checkpoint(const Checkpoint &checkpoint, const std::string &path);
Checkpoint load_checkpoint(const std::string &path);

std::string metrics_to_json(const Metrics &test, const Metrics *train, std::size_t parameter_count);
std::string curves_to_csv(std::span<const CurveRecord> curves);
std::string confusion_to_csv(const Metrics &metrics);

/// Writes metrics.json, curves.csv, confusion.csv and checkpoint.json under
/// `dir` (created if needed). Throws on empty metrics.
void emit_outputs(const TrainResult &result, const std::string &dir);

}  // namespace hqc

#endif  // HQC_TRAINER_H
