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

// Command line front end: train, eval, inspect.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "hqc/grad.h"
#include "hqc/trainer.h"

namespace {

void print_metrics(const char *name, const hqc::Metrics &m) {
    std::cout << std::fixed << std::setprecision(4) << name << ": samples=" << m.total << " accuracy=" << m.accuracy
              << " macro_f1=" << m.macro_f1 << " macro_precision=" << m.macro_precision
              << " macro_recall=" << m.macro_recall << "\n";
}

void print_layout(const hqc::CircuitLayout &layout) {
    for (int l = 0; l < hqc::kConvLayers; l++) {
        std::cout << "  QC" << l + 1 << ":";
        for (const auto &p : layout.conv_pairs[l]) {
            std::cout << " (" << p.first << "," << p.second << ")";
        }
        std::cout << "\n";
        if (l % 2 == 1 && l / 2 < hqc::kPoolLayers) {
            std::cout << "  pool" << l / 2 + 1 << " (control<-target):";
            for (const auto &p : layout.pool_pairs[l / 2]) {
                std::cout << " (" << p.control << "<-" << p.target << ")";
            }
            std::cout << "\n";
        }
    }
    std::cout << "  retained wires: " << layout.retained_wires[0] << "," << layout.retained_wires[1] << "\n";
    std::cout << "  discarded wires:";
    for (int w : layout.discarded_wires) {
        std::cout << " " << w;
    }
    std::cout << "\n";
}

int cmd_train(const std::string &config_path, const std::string &out_override) {
    hqc::TrainConfig config = hqc::load_config(config_path);
    if (!out_override.empty()) {
        config.out_dir = out_override;
    }
    std::mt19937_64 probe_rng(config.seed);
    const auto probe = hqc::ModelParams::init(config.heads, probe_rng);
    std::cout << hqc::describe_parameter_count(probe) << "\n";
    std::cout << "shift evaluations per sample: "
              << hqc::shift_evaluation_count(hqc::CircuitLayout::build(config.layout)) << "\n";

    const int log_every = config.log_every;
    const int iterations = config.iterations;
    const auto result = hqc::run_train(config, [&](const hqc::CurveRecord &r) {
        if (log_every > 0 && (r.iter % log_every == 0 || r.iter == iterations)) {
            std::cerr << "iter " << r.iter << " loss " << r.train_loss << " batch_acc " << r.train_acc;
            if (r.test_acc) {
                std::cerr << " test_acc " << *r.test_acc;
            }
            std::cerr << "\n";
        }
    });
    hqc::emit_outputs(result, config.out_dir);
    print_metrics("train", result.train_metrics);
    print_metrics("test", result.test_metrics);
    std::cout << "outputs written to " << config.out_dir << "\n";
    return 0;
}

int cmd_eval(const std::string &checkpoint_path, const std::string &config_path, const std::string &out_dir) {
    const auto checkpoint = hqc::load_checkpoint(checkpoint_path);
    const auto config = hqc::load_config(config_path);
    const auto metrics = hqc::run_eval(checkpoint, config);
    print_metrics("test", metrics);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream(std::filesystem::path(out_dir) / "metrics.json")
            << hqc::metrics_to_json(metrics, nullptr, checkpoint.params.parameter_count());
        std::ofstream(std::filesystem::path(out_dir) / "confusion.csv") << hqc::confusion_to_csv(metrics);
    }
    return 0;
}

int cmd_inspect(const std::string &checkpoint_path) {
    const auto checkpoint = hqc::load_checkpoint(checkpoint_path);
    const auto &hc = checkpoint.params.heads.config;
    std::cout << hqc::describe_parameter_count(checkpoint.params) << "\n";
    std::cout << "closed form: " << hqc::expected_parameter_count(hc) << "\n";
    std::cout << "encoder: " << hqc::encoder_name(checkpoint.encoder) << "\n";
    std::cout << "classes:";
    for (int c : checkpoint.classes) {
        std::cout << " " << c;
    }
    std::cout << "\nrecycle: " << (hc.recycle ? "on" : "off") << " expansion: " << hc.expansion
              << " final_layer: " << (hc.final_layer ? "on" : "off") << "\n";
    std::cout << "layout (pairing " << hqc::pairing_name(checkpoint.layout.pairing) << ", keep "
              << hqc::keep_rule_name(checkpoint.layout.keep) << "):\n";
    print_layout(hqc::CircuitLayout::build(checkpoint.layout));
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Hybrid QCNN with discarded-qubit recycling"};
    app.require_subcommand(1);

    std::string config_path;
    std::string checkpoint_path;
    std::string out_dir;

    auto *train = app.add_subcommand("train", "train a model and write metrics, curves and a checkpoint");
    train->add_option("--config", config_path, "experiment config")->required()->check(CLI::ExistingFile);
    train->add_option("--out", out_dir, "output directory (overrides the config)");

    auto *eval = app.add_subcommand("eval", "evaluate a checkpoint on the configured test data");
    eval->add_option("--checkpoint", checkpoint_path, "checkpoint.json")->required()->check(CLI::ExistingFile);
    eval->add_option("--config", config_path, "experiment config")->required()->check(CLI::ExistingFile);
    eval->add_option("--out", out_dir, "write metrics.json and confusion.csv here");

    auto *inspect = app.add_subcommand("inspect", "print parameter counts and circuit layout");
    inspect->add_option("--checkpoint", checkpoint_path, "checkpoint.json")->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*train) {
            return cmd_train(config_path, out_dir);
        }
        if (*eval) {
            return cmd_eval(checkpoint_path, config_path, out_dir);
        }
        return cmd_inspect(checkpoint_path);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
