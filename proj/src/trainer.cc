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

#include "hqc/trainer.h"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hqc/grad.h"
#include "json.hpp"

namespace hqc {

namespace {

using nlohmann::json;

int worker_count(int threads) {
    if (threads > 0) {
        return threads;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

RawDataset load_raw(const TrainConfig &config, bool test) {
    if (config.source == DataSource::Idx) {
        return test ? load_idx(config.test_images, config.test_labels)
                    : load_idx(config.train_images, config.train_labels);
    }
    return load_csv(test ? config.test_csv : config.train_csv);
}

bool has_test_files(const TrainConfig &config) {
    return config.source == DataSource::Idx ? !config.test_images.empty() : !config.test_csv.empty();
}

std::string format_double(double v) {
    std::ostringstream out;
    out << std::setprecision(17) << v;
    return out.str();
}

json layer_to_json(const DenseLayer &layer) {
    return {{"in", layer.in}, {"out", layer.out}, {"weight", layer.weight}, {"bias", layer.bias}};
}

void layer_from_json(const json &j, DenseLayer &layer) {
    const int in = j.at("in").get<int>();
    const int out = j.at("out").get<int>();
    if (in != layer.in || out != layer.out) {
        throw std::runtime_error("checkpoint layer shape mismatch");
    }
    layer.weight = j.at("weight").get<std::vector<double>>();
    layer.bias = j.at("bias").get<std::vector<double>>();
}

}  // namespace

Adam::Adam(AdamConfig config, std::size_t size) : config_(config), m_(size, 0.0), v_(size, 0.0) {
}

void Adam::step(std::span<double> params, std::span<const double> grad) {
    if (params.size() != m_.size() || grad.size() != m_.size()) {
        throw std::invalid_argument("Adam step size mismatch");
    }
    t_++;
    const double c1 = 1.0 - std::pow(config_.beta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(config_.beta2, static_cast<double>(t_));
    for (std::size_t i = 0; i < params.size(); i++) {
        m_[i] = config_.beta1 * m_[i] + (1 - config_.beta1) * grad[i];
        v_[i] = config_.beta2 * v_[i] + (1 - config_.beta2) * grad[i] * grad[i];
        const double m_hat = m_[i] / c1;
        const double v_hat = v_[i] / c2;
        params[i] -= config_.learning_rate * m_hat / (std::sqrt(v_hat) + config_.epsilon);
    }
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)> &fn) {
    const std::size_t workers = std::min<std::size_t>(worker_count(threads), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; i++) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < n && !failed; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                failed = true;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; w++) {
            pool.emplace_back(work);
        }
        work();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

Encoder resolve_encoder(const TrainConfig &config) {
    if (config.encoder == "auto") {
        // Image rasters and synthetic clusters both exceed 8 features.
        return Encoder::Amplitude;
    }
    return parse_encoder(config.encoder);
}

SampleSplits load_samples(const TrainConfig &config) {
    config.validate();
    const Encoder encoder = resolve_encoder(config);
    SampleSplits out;
    if (config.source == DataSource::Synthetic) {
        if (encoder != Encoder::Amplitude) {
            throw std::invalid_argument("synthetic clusters are 256-dim and need amplitude encoding");
        }
        out.train = synthetic_clusters(config.synthetic_train, config.seed, config.seed + 1, config.synthetic_noise);
        out.test = synthetic_clusters(config.synthetic_test, config.seed, config.seed + 2, config.synthetic_noise);
        return out;
    }
    RawDataset train = filter_split(load_raw(config, false), config.classes);
    RawDataset test;
    if (has_test_files(config)) {
        test = filter_split(load_raw(config, true), config.classes);
    } else {
        std::tie(train, test) = split_train_test(train, config.test_fraction, config.seed);
    }
    train = take_subset(train, config.train_subset, config.seed + 1);
    test = take_subset(test, config.test_subset, config.seed + 2);
    if (train.size() == 0 || test.size() == 0) {
        throw std::runtime_error("no samples of classes in the configured split");
    }
    out.train = preprocess_all(train, encoder);
    out.test = preprocess_all(test, encoder);
    return out;
}

EncodedSet encode_samples(std::span<const Sample> samples, int threads) {
    EncodedSet set;
    set.states.resize(samples.size(), StateVector::zero(1));
    set.labels.resize(samples.size());
    parallel_for(samples.size(), threads, [&](std::size_t i) {
        set.states[i] = embed(samples[i].features);
        set.labels[i] = samples[i].label;
    });
    return set;
}

std::vector<int> predict_all(const EncodedSet &set, const ModelParams &params, const CircuitLayout &layout,
                             int threads) {
    std::vector<int> out(set.size());
    parallel_for(set.size(), threads, [&](std::size_t i) {
        out[i] = predict(model_forward(set.states[i], params, layout).trace.logits);
    });
    return out;
}

Metrics evaluate(const EncodedSet &set, const ModelParams &params, const CircuitLayout &layout, int threads) {
    return compute_metrics(predict_all(set, params, layout, threads), set.labels, params.heads.config.num_classes);
}

std::string describe_parameter_count(const ModelParams &params) {
    std::ostringstream out;
    out << "parameters: quantum=" << kQuantumParams << " classical=" << params.heads.parameter_count()
        << " total=" << params.parameter_count();
    return out.str();
}

TrainResult train_model(const TrainConfig &config, const EncodedSet &train, const EncodedSet &test,
                        const std::function<void(const CurveRecord &)> &progress) {
    config.validate();
    if (train.size() == 0) {
        throw std::invalid_argument("empty training set");
    }
    const CircuitLayout layout = CircuitLayout::build(config.layout);
    std::mt19937_64 init_rng(config.seed);

    TrainResult result;
    result.checkpoint.layout = config.layout;
    result.checkpoint.encoder = resolve_encoder(config);
    result.checkpoint.classes = config.classes;
    ModelParams &params = result.checkpoint.params;
    params = ModelParams::init(config.heads, init_rng);

    std::vector<double> flat = params.flatten();
    Adam adam(config.adam, flat.size());
    std::mt19937_64 order_rng(config.seed + 3);
    std::vector<std::size_t> order;
    std::size_t cursor = 0;

    const std::size_t batch = static_cast<std::size_t>(config.batch_size);
    std::vector<SampleGrad> grads(batch);
    std::vector<std::size_t> picks(batch);
    for (int iter = 1; iter <= config.iterations; iter++) {
        for (std::size_t b = 0; b < batch; b++) {
            if (cursor == order.size()) {
                order = seeded_permutation(train.size(), order_rng());
                cursor = 0;
            }
            picks[b] = order[cursor++];
        }
        parallel_for(batch, config.threads, [&](std::size_t b) {
            grads[b] = sample_gradient(train.states[picks[b]], params, layout, train.labels[picks[b]]);
        });

        // Fixed-order reduction keeps runs bitwise reproducible.
        std::vector<double> mean(flat.size(), 0.0);
        double loss_sum = 0;
        int correct = 0;
        for (std::size_t b = 0; b < batch; b++) {
            loss_sum += grads[b].loss;
            correct += grads[b].prediction == train.labels[picks[b]];
            for (std::size_t k = 0; k < mean.size(); k++) {
                mean[k] += grads[b].grad[k];
            }
        }
        for (double &g : mean) {
            g /= static_cast<double>(batch);
        }
        CurveRecord rec;
        rec.iter = iter;
        rec.train_loss = loss_sum / static_cast<double>(batch);
        rec.train_acc = static_cast<double>(correct) / static_cast<double>(batch);
        if (!std::isfinite(rec.train_loss)) {
            throw std::runtime_error("non-finite loss at iteration " + std::to_string(iter));
        }
        for (double g : mean) {
            if (!std::isfinite(g)) {
                throw std::runtime_error("non-finite gradient at iteration " + std::to_string(iter));
            }
        }

        adam.step(flat, mean);
        params.assign(flat);

        if (test.size() > 0 && (iter % config.eval_every == 0 || iter == config.iterations)) {
            rec.test_acc = evaluate(test, params, layout, config.threads).accuracy;
        }
        result.curves.push_back(rec);
        if (progress) {
            progress(rec);
        }
    }

    result.test_metrics = evaluate(test, params, layout, config.threads);
    result.train_metrics = evaluate(train, params, layout, config.threads);
    return result;
}

TrainResult run_train(const TrainConfig &config, const std::function<void(const CurveRecord &)> &progress) {
    const SampleSplits splits = load_samples(config);
    const EncodedSet train = encode_samples(splits.train, config.threads);
    const EncodedSet test = encode_samples(splits.test, config.threads);
    return train_model(config, train, test, progress);
}

Metrics run_eval(const Checkpoint &checkpoint, const TrainConfig &config) {
    TrainConfig cfg = config;
    cfg.encoder = encoder_name(checkpoint.encoder);
    cfg.classes = checkpoint.classes;
    const SampleSplits splits = load_samples(cfg);
    const EncodedSet test = encode_samples(splits.test, cfg.threads);
    const CircuitLayout layout = CircuitLayout::build(checkpoint.layout);
    return evaluate(test, checkpoint.params, layout, cfg.threads);
}

std::string checkpoint_to_json(const Checkpoint &checkpoint) {
    const auto &params = checkpoint.params;
    const CircuitLayout layout = CircuitLayout::build(checkpoint.layout);
    json j;
    j["format"] = "hqc-checkpoint";
    j["version"] = 1;
    j["encoder"] = encoder_name(checkpoint.encoder);
    j["classes"] = checkpoint.classes;
    json lj;
    lj["pairing"] = pairing_name(checkpoint.layout.pairing);
    lj["keep"] = keep_rule_name(checkpoint.layout.keep);
    lj["retained"] = checkpoint.layout.retained ? json(*checkpoint.layout.retained) : json(nullptr);
    lj["retained_wires"] = layout.retained_wires;
    lj["discarded_wires"] = layout.discarded_wires;
    json conv = json::array();
    for (const auto &pairs : layout.conv_pairs) {
        json lp = json::array();
        for (const auto &p : pairs) {
            lp.push_back({p.first, p.second});
        }
        conv.push_back(lp);
    }
    lj["conv_pairs"] = conv;
    json pool = json::array();
    for (const auto &pairs : layout.pool_pairs) {
        json lp = json::array();
        for (const auto &p : pairs) {
            lp.push_back({p.control, p.target});
        }
        pool.push_back(lp);
    }
    lj["pool_pairs"] = pool;
    j["layout"] = lj;
    const HeadConfig &hc = params.heads.config;
    j["heads_config"] = {{"num_classes", hc.num_classes},
                         {"expansion", hc.expansion},
                         {"final_layer", hc.final_layer},
                         {"recycle", hc.recycle}};
    j["quantum"] = std::vector<double>(params.quantum.values().begin(), params.quantum.values().end());
    json heads;
    heads["retained"] = layer_to_json(params.heads.retained);
    if (hc.recycle) {
        heads["disc_project"] = layer_to_json(params.heads.disc_project);
        heads["disc_expand"] = layer_to_json(params.heads.disc_expand);
        heads["disc_recover"] = layer_to_json(params.heads.disc_recover);
    }
    if (hc.final_layer) {
        heads["final"] = layer_to_json(params.heads.final);
    }
    j["heads"] = heads;
    j["parameter_count"] = params.parameter_count();
    return j.dump(2) + "\n";
}

Checkpoint checkpoint_from_json(const std::string &text) {
    const json j = json::parse(text);
    if (j.value("format", "") != "hqc-checkpoint" || j.value("version", 0) != 1) {
        throw std::runtime_error("not an hqc checkpoint (version 1)");
    }
    Checkpoint cp;
    cp.encoder = parse_encoder(j.at("encoder").get<std::string>());
    cp.classes = j.at("classes").get<std::array<int, 4>>();
    const json &lj = j.at("layout");
    cp.layout.pairing = parse_pairing(lj.at("pairing").get<std::string>());
    cp.layout.keep = parse_keep_rule(lj.at("keep").get<std::string>());
    if (!lj.at("retained").is_null()) {
        cp.layout.retained = lj.at("retained").get<std::array<int, 2>>();
    }
    const CircuitLayout layout = CircuitLayout::build(cp.layout);
    if (lj.at("retained_wires").get<std::array<int, 2>>() != layout.retained_wires ||
        lj.at("discarded_wires").get<std::array<int, 4>>() != layout.discarded_wires) {
        throw std::runtime_error("checkpoint layout does not match its options");
    }

    const json &hj = j.at("heads_config");
    HeadConfig hc;
    hc.num_classes = hj.at("num_classes").get<int>();
    hc.expansion = hj.at("expansion").get<int>();
    hc.final_layer = hj.at("final_layer").get<bool>();
    hc.recycle = hj.at("recycle").get<bool>();
    cp.params.heads = HeadParams::zeros(hc);

    const auto quantum = j.at("quantum").get<std::vector<double>>();
    if (quantum.size() != static_cast<std::size_t>(kQuantumParams)) {
        throw std::runtime_error("checkpoint must hold 94 quantum parameters");
    }
    std::copy(quantum.begin(), quantum.end(), cp.params.quantum.values().begin());

    const json &heads = j.at("heads");
    layer_from_json(heads.at("retained"), cp.params.heads.retained);
    if (hc.recycle) {
        layer_from_json(heads.at("disc_project"), cp.params.heads.disc_project);
        layer_from_json(heads.at("disc_expand"), cp.params.heads.disc_expand);
        layer_from_json(heads.at("disc_recover"), cp.params.heads.disc_recover);
    }
    if (hc.final_layer) {
        layer_from_json(heads.at("final"), cp.params.heads.final);
    }
    cp.params.heads.validate();
    return cp;
}

void save_checkpoint(const Checkpoint &checkpoint, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << checkpoint_to_json(checkpoint);
}

Checkpoint load_checkpoint(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open checkpoint " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return checkpoint_from_json(buf.str());
}

std::string metrics_to_json(const Metrics &test, const Metrics *train, std::size_t parameter_count) {
    if (test.total == 0) {
        throw std::invalid_argument("no evaluated samples in metrics");
    }
    json j;
    j["test"] = {{"samples", test.total},
                 {"accuracy", test.accuracy},
                 {"macro_f1", test.macro_f1},
                 {"macro_precision", test.macro_precision},
                 {"macro_recall", test.macro_recall},
                 {"per_class_precision", test.per_class_precision()},
                 {"per_class_recall", test.per_class_recall()},
                 {"per_class_f1", test.per_class_f1()},
                 {"confusion", test.confusion}};
    if (train) {
        j["train"] = {{"samples", train->total},
                      {"accuracy", train->accuracy},
                      {"macro_f1", train->macro_f1},
                      {"macro_precision", train->macro_precision},
                      {"macro_recall", train->macro_recall}};
        j["generalization_gap"] = train->accuracy - test.accuracy;
    }
    j["parameter_count"] = parameter_count;
    return j.dump(2) + "\n";
}

std::string curves_to_csv(std::span<const CurveRecord> curves) {
    std::ostringstream out;
    out << "iter,train_loss,train_acc,test_acc\n";
    for (const auto &r : curves) {
        out << r.iter << ',' << format_double(r.train_loss) << ',' << format_double(r.train_acc) << ',';
        if (r.test_acc) {
            out << format_double(*r.test_acc);
        }
        out << '\n';
    }
    return out.str();
}

std::string confusion_to_csv(const Metrics &metrics) {
    if (metrics.total == 0) {
        throw std::invalid_argument("no evaluated samples in metrics");
    }
    std::ostringstream out;
    out << "true\\pred";
    for (int p = 0; p < metrics.num_classes; p++) {
        out << ',' << p;
    }
    out << '\n';
    for (int t = 0; t < metrics.num_classes; t++) {
        out << t;
        for (int p = 0; p < metrics.num_classes; p++) {
            out << ',' << metrics.confusion[t][p];
        }
        out << '\n';
    }
    return out.str();
}

void emit_outputs(const TrainResult &result, const std::string &dir) {
    // Serialize everything first so a failure leaves no partial output.
    const std::string metrics =
        metrics_to_json(result.test_metrics, &result.train_metrics, result.checkpoint.params.parameter_count());
    const std::string confusion = confusion_to_csv(result.test_metrics);
    const std::string curves = curves_to_csv(result.curves);
    const std::string checkpoint = checkpoint_to_json(result.checkpoint);

    std::filesystem::create_directories(dir);
    auto write = [&](const std::string &name, const std::string &content) {
        std::ofstream out(std::filesystem::path(dir) / name);
        if (!out) {
            throw std::runtime_error("cannot write " + name + " in " + dir);
        }
        out << content;
    };
    write("metrics.json", metrics);
    write("confusion.csv", confusion);
    write("curves.csv", curves);
    write("checkpoint.json", checkpoint);
}

}  // namespace hqc
