// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#include "chromafix/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "chromafix/chart.hpp"
#include "chromafix/image_io.hpp"
#include "chromafix/rng.hpp"

namespace chromafix {

namespace {

constexpr int kGridCols = 6;
constexpr int kGridRows = 4;
constexpr int kMargin = 8;
constexpr int kGutter = 4;

std::string zero_padded(int value) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%03d", value);
    return buf;
}

std::uint16_t to_native(double v, int maxval) {
    const double clamped = std::clamp(v, 0.0, static_cast<double>(maxval));
    return static_cast<std::uint16_t>(std::floor(clamped + 0.5));
}

}  // namespace

DatasetManifest make_synthetic_dataset(const std::filesystem::path& dir,
                                       const SyntheticDatasetOptions& options) {
    if (options.image_count < 1)
        throw std::invalid_argument("synthetic dataset: image_count must be >= 1");
    if (options.bit_depth != 8 && options.bit_depth != 12)
        throw std::invalid_argument("synthetic dataset: bit_depth must be 8 or 12");

    const int patch_w = (options.width - 2 * kMargin - (kGridCols - 1) * kGutter) / kGridCols;
    const int patch_h = (options.height - 2 * kMargin - (kGridRows - 1) * kGutter) / kGridRows;
    if (patch_w < 4 || patch_h < 4)
        throw std::invalid_argument("synthetic dataset: image too small for the chart grid");

    const int maxval = options.bit_depth == 12 ? 4095 : 255;
    const double scale = options.bit_depth == 12 ? 16.0 : 1.0;
    const auto chart = macbeth_chart();

    std::filesystem::create_directories(dir / "images");

    DatasetManifest manifest;
    manifest.base_dir = dir;

    for (int image_index = 0; image_index < options.image_count; ++image_index) {
        CounterRng rng(options.seed, static_cast<std::uint64_t>(image_index));

        // Smooth bilinear gradient between four random corner colors.
        Eigen::Matrix<double, 3, 4> corners;
        for (int corner = 0; corner < 4; ++corner)
            for (int ch = 0; ch < 3; ++ch)
                corners(ch, corner) = rng.uniform(0.15, 0.85) * maxval;

        ImageBuffer img = ImageBuffer::make(options.width, options.height, options.bit_depth);
        for (int y = 0; y < options.height; ++y) {
            const double ty = options.height > 1 ? static_cast<double>(y) / (options.height - 1)
                                                 : 0.0;
            for (int x = 0; x < options.width; ++x) {
                const double tx = options.width > 1 ? static_cast<double>(x) / (options.width - 1)
                                                    : 0.0;
                const RgbF v = (1 - tx) * (1 - ty) * corners.col(0) +
                               tx * (1 - ty) * corners.col(1) +
                               (1 - tx) * ty * corners.col(2) + tx * ty * corners.col(3);
                const std::size_t i = img.index(x, y);
                img.data[i] = to_native(v.x(), maxval);
                img.data[i + 1] = to_native(v.y(), maxval);
                img.data[i + 2] = to_native(v.z(), maxval);
            }
        }

        ManifestEntry entry;
        entry.bit_depth = options.bit_depth;
        for (int p = 0; p < kMacbethPatchCount; ++p) {
            PatchRegion region;
            region.patch_index = p + 1;
            region.x = kMargin + (p % kGridCols) * (patch_w + kGutter);
            region.y = kMargin + (p / kGridCols) * (patch_h + kGutter);
            region.w = patch_w;
            region.h = patch_h;

            Rgb12 fill{};
            std::uint16_t native[3];
            for (int ch = 0; ch < 3; ++ch)
                native[ch] = to_native(
                    chart[p][ch] * scale + rng.normal(0.0, options.patch_noise_sigma), maxval);
            fill = {native[0], native[1], native[2]};
            for (int y = region.y; y < region.y + region.h; ++y)
                for (int x = region.x; x < region.x + region.w; ++x)
                    img.set(x, y, fill);
            entry.patch_regions.push_back(region);
        }

        const std::string stem = zero_padded(image_index);
        entry.image_path = "images/img_" + stem + ".png";
        entry.resolved_path = dir / entry.image_path;
        entry.reference_chart_id = "chart_" + stem;
        save_image(img, entry.resolved_path);

        std::vector<RgbF>& reference = manifest.reference_charts[entry.reference_chart_id];
        for (const PatchRegion& region : entry.patch_regions)
            reference.push_back(extract_patch_color(img, region) / scale);
        manifest.entries.push_back(std::move(entry));
    }

    save_manifest(manifest, dir / "manifest.json");
    return manifest;
}

}  // namespace chromafix
