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

#include "hqc/data.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hqc {

namespace {

std::uint32_t read_be32(std::istream &in, const std::string &path) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char *>(b), 4)) {
        throw std::runtime_error(path + ": truncated IDX header");
    }
    return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) | b[3];
}

void write_be32(std::ostream &out, std::uint32_t v) {
    const char b[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16), static_cast<char>(v >> 8),
                       static_cast<char>(v)};
    out.write(b, 4);
}

std::ifstream open_binary(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return in;
}

int parse_int_cell(std::string_view cell, const std::string &where) {
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) {
        cell.remove_prefix(1);
    }
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r')) {
        cell.remove_suffix(1);
    }
    int v = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
        throw std::runtime_error(where + ": non-numeric cell '" + std::string(cell) + "'");
    }
    return v;
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(line.substr(start));
            return cells;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

RawDataset select(const RawDataset &ds, std::span<const std::size_t> indices) {
    RawDataset out;
    out.rows = ds.rows;
    out.cols = ds.cols;
    out.source = ds.source;
    out.images.reserve(indices.size());
    out.labels.reserve(indices.size());
    for (std::size_t i : indices) {
        out.images.push_back(ds.images[i]);
        out.labels.push_back(ds.labels[i]);
    }
    return out;
}

}  // namespace

void RawDataset::validate() const {
    if (images.size() != labels.size()) {
        throw std::runtime_error("dataset has " + std::to_string(images.size()) + " images but " +
                                 std::to_string(labels.size()) + " labels");
    }
    const std::size_t pixels = static_cast<std::size_t>(rows) * cols;
    for (const auto &img : images) {
        if (img.size() != pixels) {
            throw std::runtime_error("image size mismatch in dataset " + source);
        }
    }
}

RawDataset load_idx(const std::string &images_path, const std::string &labels_path) {
    auto img_in = open_binary(images_path);
    if (read_be32(img_in, images_path) != kIdxImagesMagic) {
        throw std::runtime_error(images_path + ": bad IDX image magic");
    }
    const std::uint32_t count = read_be32(img_in, images_path);
    const std::uint32_t rows = read_be32(img_in, images_path);
    const std::uint32_t cols = read_be32(img_in, images_path);
    if (rows == 0 || cols == 0 || rows > 4096 || cols > 4096) {
        throw std::runtime_error(images_path + ": implausible image size");
    }

    auto lab_in = open_binary(labels_path);
    if (read_be32(lab_in, labels_path) != kIdxLabelsMagic) {
        throw std::runtime_error(labels_path + ": bad IDX label magic");
    }
    const std::uint32_t label_count = read_be32(lab_in, labels_path);
    if (label_count != count) {
        throw std::runtime_error("IDX count mismatch: " + std::to_string(count) + " images vs " +
                                 std::to_string(label_count) + " labels");
    }

    RawDataset ds;
    ds.rows = static_cast<int>(rows);
    ds.cols = static_cast<int>(cols);
    ds.source = images_path;
    ds.images.resize(count, std::vector<std::uint8_t>(static_cast<std::size_t>(rows) * cols));
    for (auto &img : ds.images) {
        if (!img_in.read(reinterpret_cast<char *>(img.data()), static_cast<std::streamsize>(img.size()))) {
            throw std::runtime_error(images_path + ": truncated image data");
        }
    }
    ds.labels.resize(count);
    if (!lab_in.read(reinterpret_cast<char *>(ds.labels.data()), count)) {
        throw std::runtime_error(labels_path + ": truncated label data");
    }
    return ds;
}

void write_idx(const RawDataset &ds, const std::string &images_path, const std::string &labels_path) {
    ds.validate();
    std::ofstream img_out(images_path, std::ios::binary);
    std::ofstream lab_out(labels_path, std::ios::binary);
    if (!img_out || !lab_out) {
        throw std::runtime_error("cannot write IDX files " + images_path + ", " + labels_path);
    }
    write_be32(img_out, kIdxImagesMagic);
    write_be32(img_out, static_cast<std::uint32_t>(ds.size()));
    write_be32(img_out, static_cast<std::uint32_t>(ds.rows));
    write_be32(img_out, static_cast<std::uint32_t>(ds.cols));
    for (const auto &img : ds.images) {
        img_out.write(reinterpret_cast<const char *>(img.data()), static_cast<std::streamsize>(img.size()));
    }
    write_be32(lab_out, kIdxLabelsMagic);
    write_be32(lab_out, static_cast<std::uint32_t>(ds.size()));
    lab_out.write(reinterpret_cast<const char *>(ds.labels.data()), static_cast<std::streamsize>(ds.size()));
}

RawDataset load_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    RawDataset ds;
    ds.source = path;
    const std::size_t pixels = static_cast<std::size_t>(ds.rows) * ds.cols;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto cells = split_commas(line);
        const std::string where = path + ":" + std::to_string(line_no);
        if (line_no == 1) {
            int ignored = 0;
            const auto first = cells[0];
            if (std::from_chars(first.data(), first.data() + first.size(), ignored).ec != std::errc()) {
                continue;  // header
            }
        }
        if (cells.size() != pixels + 1) {
            throw std::runtime_error(where + ": expected " + std::to_string(pixels + 1) + " cells, got " +
                                     std::to_string(cells.size()));
        }
        const int label = parse_int_cell(cells[0], where);
        if (label < 0 || label > 255) {
            throw std::runtime_error(where + ": label out of byte range");
        }
        std::vector<std::uint8_t> img(pixels);
        for (std::size_t p = 0; p < pixels; p++) {
            const int v = parse_int_cell(cells[p + 1], where);
            if (v < 0 || v > 255) {
                throw std::runtime_error(where + ": pixel out of byte range");
            }
            img[p] = static_cast<std::uint8_t>(v);
        }
        ds.images.push_back(std::move(img));
        ds.labels.push_back(static_cast<std::uint8_t>(label));
    }
    return ds;
}

RawDataset filter_split(const RawDataset &ds, const std::array<int, kNumClasses> &classes) {
    std::set<int> seen;
    for (int c : classes) {
        if (c < 0 || c > 255) {
            throw std::invalid_argument("class id " + std::to_string(c) + " out of range");
        }
        if (!seen.insert(c).second) {
            throw std::invalid_argument("duplicate class id " + std::to_string(c));
        }
    }
    RawDataset out;
    out.rows = ds.rows;
    out.cols = ds.cols;
    out.source = ds.source;
    for (std::size_t i = 0; i < ds.size(); i++) {
        const auto it = std::find(classes.begin(), classes.end(), ds.labels[i]);
        if (it == classes.end()) {
            continue;
        }
        out.images.push_back(ds.images[i]);
        out.labels.push_back(static_cast<std::uint8_t>(it - classes.begin()));
    }
    return out;
}

std::vector<double> bilinear_resize(std::span<const double> src, int rows, int cols, int out_rows, int out_cols) {
    if (rows <= 0 || cols <= 0 || out_rows <= 0 || out_cols <= 0 ||
        src.size() != static_cast<std::size_t>(rows) * cols) {
        throw std::invalid_argument("bad resize dimensions");
    }
    const double sy = static_cast<double>(rows) / out_rows;
    const double sx = static_cast<double>(cols) / out_cols;
    std::vector<double> out(static_cast<std::size_t>(out_rows) * out_cols);
    for (int oy = 0; oy < out_rows; oy++) {
        const double fy = std::clamp((oy + 0.5) * sy - 0.5, 0.0, rows - 1.0);
        const int y0 = static_cast<int>(fy);
        const int y1 = std::min(y0 + 1, rows - 1);
        const double wy = fy - y0;
        for (int ox = 0; ox < out_cols; ox++) {
            const double fx = std::clamp((ox + 0.5) * sx - 0.5, 0.0, cols - 1.0);
            const int x0 = static_cast<int>(fx);
            const int x1 = std::min(x0 + 1, cols - 1);
            const double wx = fx - x0;
            const double top = src[y0 * cols + x0] * (1 - wx) + src[y0 * cols + x1] * wx;
            const double bottom = src[y1 * cols + x0] * (1 - wx) + src[y1 * cols + x1] * wx;
            out[oy * out_cols + ox] = top * (1 - wy) + bottom * wy;
        }
    }
    return out;
}

std::vector<double> block_means(std::span<const double> src, int rows, int cols, int grid_rows, int grid_cols) {
    if (grid_rows <= 0 || grid_cols <= 0 || grid_rows > rows || grid_cols > cols ||
        src.size() != static_cast<std::size_t>(rows) * cols) {
        throw std::invalid_argument("bad block grid");
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(grid_rows) * grid_cols);
    for (int gy = 0; gy < grid_rows; gy++) {
        const int y_begin = gy * rows / grid_rows;
        const int y_end = (gy + 1) * rows / grid_rows;
        for (int gx = 0; gx < grid_cols; gx++) {
            const int x_begin = gx * cols / grid_cols;
            const int x_end = (gx + 1) * cols / grid_cols;
            double sum = 0;
            for (int y = y_begin; y < y_end; y++) {
                for (int x = x_begin; x < x_end; x++) {
                    sum += src[y * cols + x];
                }
            }
            out.push_back(sum / ((y_end - y_begin) * (x_end - x_begin)));
        }
    }
    return out;
}

std::vector<double> min_max_normalize(std::span<const double> v, bool constant_to_ones) {
    if (v.empty()) {
        throw std::invalid_argument("cannot normalize an empty vector");
    }
    const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    std::vector<double> out(v.size(), 0.0);
    if (hi == lo) {
        if (constant_to_ones && hi != 0) {
            std::fill(out.begin(), out.end(), 1.0);
        }
        return out;
    }
    for (std::size_t i = 0; i < v.size(); i++) {
        out[i] = std::clamp((v[i] - lo) / (hi - lo), 0.0, 1.0);
    }
    return out;
}

FeatureVector preprocess(std::span<const std::uint8_t> raster, int rows, int cols, Encoder target,
                         const PreprocessOptions &options) {
    if (raster.size() != static_cast<std::size_t>(rows) * cols) {
        throw std::invalid_argument("raster does not match its dimensions");
    }
    const std::vector<double> pixels(raster.begin(), raster.end());
    if (target == Encoder::Amplitude) {
        if (std::all_of(pixels.begin(), pixels.end(), [](double p) { return p == 0; })) {
            throw std::invalid_argument("an all-zero image has no amplitude encoding");
        }
        if (options.resize_rows * options.resize_cols != kAmplitudeDim) {
            throw std::invalid_argument("amplitude resize target must have 256 pixels");
        }
        const auto resized = bilinear_resize(pixels, rows, cols, options.resize_rows, options.resize_cols);
        return FeatureVector(min_max_normalize(resized, true));
    }
    if (options.grid_rows * options.grid_cols != kAngleDim) {
        throw std::invalid_argument("angle block grid must have 8 cells");
    }
    const auto blocks = block_means(pixels, rows, cols, options.grid_rows, options.grid_cols);
    return FeatureVector(min_max_normalize(blocks, false));
}

std::vector<Sample> preprocess_all(const RawDataset &ds, Encoder target, const PreprocessOptions &options) {
    ds.validate();
    std::vector<Sample> out;
    out.reserve(ds.size());
    for (std::size_t i = 0; i < ds.size(); i++) {
        if (ds.labels[i] >= kNumClasses) {
            throw std::invalid_argument("sample label " + std::to_string(ds.labels[i]) +
                                        " is not remapped to 0..3; apply filter_split first");
        }
        out.push_back({preprocess(ds.images[i], ds.rows, ds.cols, target, options), ds.labels[i]});
    }
    return out;
}

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; i++) {
        perm[i] = i;
    }
    std::mt19937_64 rng(seed);
    for (std::size_t i = n; i > 1; i--) {
        const std::size_t j = rng() % i;
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

std::pair<RawDataset, RawDataset> split_train_test(const RawDataset &ds, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction >= 0.0 && test_fraction <= 1.0)) {
        throw std::invalid_argument("test fraction must be in [0, 1]");
    }
    ds.validate();
    const auto perm = seeded_permutation(ds.size(), seed);
    const auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(ds.size())));
    const std::span<const std::size_t> all(perm);
    return {select(ds, all.subspan(n_test)), select(ds, all.first(n_test))};
}

RawDataset take_subset(const RawDataset &ds, std::size_t n, std::uint64_t seed) {
    const auto perm = seeded_permutation(ds.size(), seed);
    return select(ds, std::span<const std::size_t>(perm).first(std::min(n, ds.size())));
}

std::vector<Sample> synthetic_clusters(std::size_t count, std::uint64_t center_seed, std::uint64_t sample_seed,
                                       double noise) {
    std::mt19937_64 center_rng(center_seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::array<std::vector<double>, kNumClasses> centers;
    for (auto &c : centers) {
        c.resize(kAmplitudeDim);
        for (double &v : c) {
            v = unit(center_rng);
        }
    }
    std::mt19937_64 rng(sample_seed);
    std::normal_distribution<double> jitter(0.0, noise);
    std::vector<Sample> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; i++) {
        const int label = static_cast<int>(i % kNumClasses);
        std::vector<double> v(kAmplitudeDim);
        for (int d = 0; d < kAmplitudeDim; d++) {
            v[d] = std::clamp(centers[label][d] + jitter(rng), 0.0, 1.0);
        }
        out.push_back({FeatureVector(std::move(v)), label});
    }
    return out;
}

}  // namespace hqc
