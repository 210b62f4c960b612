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

#include "hqc/config.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace hqc {

namespace {

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<int> parse_int_list(const std::string &value, const std::string &key) {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const std::string t = trim(item);
            out.push_back(std::stoi(t, &used));
            if (used != t.size()) {
                throw std::invalid_argument(t);
            }
        } catch (const std::exception &) {
            throw std::invalid_argument("config key '" + key + "': bad integer list '" + value + "'");
        }
    }
    return out;
}

bool parse_bool(const std::string &value, const std::string &key) {
    if (value == "on" || value == "true" || value == "1" || value == "yes") {
        return true;
    }
    if (value == "off" || value == "false" || value == "0" || value == "no") {
        return false;
    }
    throw std::invalid_argument("config key '" + key + "': expected on|off, got '" + value + "'");
}

template <typename T>
T parse_number(const std::string &value, const std::string &key) {
    std::istringstream in(value);
    T v{};
    in >> v;
    if (in.fail() || !in.eof()) {
        throw std::invalid_argument("config key '" + key + "': bad number '" + value + "'");
    }
    return v;
}

std::string resolve(const std::string &path, const std::string &base_dir) {
    if (path.empty() || base_dir.empty() || std::filesystem::path(path).is_absolute()) {
        return path;
    }
    return (std::filesystem::path(base_dir) / path).lexically_normal().string();
}

}  // namespace

std::string data_source_name(DataSource s) {
    switch (s) {
        case DataSource::Idx:
            return "idx";
        case DataSource::Csv:
            return "csv";
        case DataSource::Synthetic:
            return "synthetic";
    }
    return "?";
}

void TrainConfig::validate() const {
    std::set<int> distinct(classes.begin(), classes.end());
    if (distinct.size() != classes.size()) {
        throw std::invalid_argument("class split needs 4 distinct ids");
    }
    for (int c : classes) {
        if (c < 0 || c > 255) {
            throw std::invalid_argument("class id out of range");
        }
    }
    if (encoder != "auto" && encoder != "amplitude" && encoder != "angle") {
        throw std::invalid_argument("encoder must be amplitude|angle|auto");
    }
    if (heads.num_classes != 4) {
        throw std::invalid_argument("only 4-class splits are supported");
    }
    if (heads.expansion < 1) {
        throw std::invalid_argument("expansion factor must be positive");
    }
    if (batch_size < 1 || iterations < 0 || eval_every < 1 || log_every < 0 || threads < 0) {
        throw std::invalid_argument("batch_size, eval_every must be positive; iterations, threads non-negative");
    }
    if (!(adam.learning_rate > 0) || !(adam.beta1 >= 0 && adam.beta1 < 1) || !(adam.beta2 >= 0 && adam.beta2 < 1) ||
        !(adam.epsilon > 0)) {
        throw std::invalid_argument("invalid optimizer hyperparameters");
    }
    if (!(test_fraction >= 0 && test_fraction < 1)) {
        throw std::invalid_argument("test_fraction must be in [0, 1)");
    }
    switch (source) {
        case DataSource::Idx:
            if (train_images.empty() || train_labels.empty()) {
                throw std::invalid_argument("idx source needs train_images and train_labels");
            }
            if (test_images.empty() != test_labels.empty()) {
                throw std::invalid_argument("test_images and test_labels must be given together");
            }
            break;
        case DataSource::Csv:
            if (train_csv.empty()) {
                throw std::invalid_argument("csv source needs train_csv");
            }
            break;
        case DataSource::Synthetic:
            if (synthetic_train == 0 || synthetic_test == 0) {
                throw std::invalid_argument("synthetic sizes must be positive");
            }
            break;
    }
    if (train_subset == 0 || test_subset == 0) {
        throw std::invalid_argument("subset sizes must be positive");
    }
    // Building the layout checks the wire options.
    CircuitLayout::build(layout);
}

TrainConfig parse_config(const std::string &text, const std::string &base_dir) {
    TrainConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::set<std::string> seen;
    while (std::getline(in, line)) {
        line_no++;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) {
            throw std::invalid_argument("config key '" + key + "' given twice");
        }
        if (key == "dataset") {
            if (value == "idx") {
                cfg.source = DataSource::Idx;
            } else if (value == "csv") {
                cfg.source = DataSource::Csv;
            } else if (value == "synthetic") {
                cfg.source = DataSource::Synthetic;
            } else {
                throw std::invalid_argument("dataset must be idx|csv|synthetic");
            }
        } else if (key == "train_images") {
            cfg.train_images = resolve(value, base_dir);
        } else if (key == "train_labels") {
            cfg.train_labels = resolve(value, base_dir);
        } else if (key == "test_images") {
            cfg.test_images = resolve(value, base_dir);
        } else if (key == "test_labels") {
            cfg.test_labels = resolve(value, base_dir);
        } else if (key == "train_csv") {
            cfg.train_csv = resolve(value, base_dir);
        } else if (key == "test_csv") {
            cfg.test_csv = resolve(value, base_dir);
        } else if (key == "test_fraction") {
            cfg.test_fraction = parse_number<double>(value, key);
        } else if (key == "classes") {
            const auto ids = parse_int_list(value, key);
            if (ids.size() != 4) {
                throw std::invalid_argument("classes needs exactly 4 ids");
            }
            std::copy(ids.begin(), ids.end(), cfg.classes.begin());
        } else if (key == "encoder") {
            cfg.encoder = value;
        } else if (key == "pairing") {
            cfg.layout.pairing = parse_pairing(value);
        } else if (key == "keep") {
            cfg.layout.keep = parse_keep_rule(value);
        } else if (key == "retained_wires") {
            if (value == "auto") {
                cfg.layout.retained.reset();
            } else {
                const auto w = parse_int_list(value, key);
                if (w.size() != 2) {
                    throw std::invalid_argument("retained_wires needs exactly 2 wires");
                }
                cfg.layout.retained = std::array<int, 2>{w[0], w[1]};
            }
        } else if (key == "expansion") {
            cfg.heads.expansion = parse_number<int>(value, key);
        } else if (key == "final_layer") {
            cfg.heads.final_layer = parse_bool(value, key);
        } else if (key == "recycle") {
            cfg.heads.recycle = parse_bool(value, key);
        } else if (key == "learning_rate") {
            cfg.adam.learning_rate = parse_number<double>(value, key);
        } else if (key == "beta1") {
            cfg.adam.beta1 = parse_number<double>(value, key);
        } else if (key == "beta2") {
            cfg.adam.beta2 = parse_number<double>(value, key);
        } else if (key == "epsilon") {
            cfg.adam.epsilon = parse_number<double>(value, key);
        } else if (key == "batch_size") {
            cfg.batch_size = parse_number<int>(value, key);
        } else if (key == "iterations") {
            cfg.iterations = parse_number<int>(value, key);
        } else if (key == "seed") {
            cfg.seed = parse_number<std::uint64_t>(value, key);
        } else if (key == "train_subset") {
            cfg.train_subset = parse_number<std::size_t>(value, key);
        } else if (key == "test_subset") {
            cfg.test_subset = parse_number<std::size_t>(value, key);
        } else if (key == "threads") {
            cfg.threads = parse_number<int>(value, key);
        } else if (key == "eval_every") {
            cfg.eval_every = parse_number<int>(value, key);
        } else if (key == "log_every") {
            cfg.log_every = parse_number<int>(value, key);
        } else if (key == "out") {
            cfg.out_dir = resolve(value, base_dir);
        } else if (key == "synthetic_train") {
            cfg.synthetic_train = parse_number<std::size_t>(value, key);
        } else if (key == "synthetic_test") {
            cfg.synthetic_test = parse_number<std::size_t>(value, key);
        } else if (key == "synthetic_noise") {
            cfg.synthetic_noise = parse_number<double>(value, key);
        } else {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

TrainConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), std::filesystem::path(path).parent_path().string());
}

}  // namespace hqc
