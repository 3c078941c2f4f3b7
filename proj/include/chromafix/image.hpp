// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#pragma once

#include <cstdint>
#include <vector>

#include "chromafix/color.hpp"

namespace chromafix {

/// Row-major interleaved RGB raster. Channels are stored as 16-bit values;
/// `bit_depth` (8 or 12) tells which range they live in.
struct ImageBuffer {
    int width = 0;
    int height = 0;
    int bit_depth = 8;
    std::vector<std::uint16_t> data;  ///< size == 3 * width * height

    static ImageBuffer make(int width, int height, int bit_depth = 8);

    int max_value() const { return bit_depth == 12 ? 4095 : 255; }
    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }

    bool in_bounds(int x, int y) const {
        return x >= 0 && y >= 0 && x < width && y < height;
    }

    std::size_t index(int x, int y) const {
        return 3 * (static_cast<std::size_t>(y) * width + x);
    }

    /// Pixel in native units (0..255 or 0..4095).
    RgbF at(int x, int y) const {
        const std::size_t i = index(x, y);
        return {static_cast<double>(data[i]), static_cast<double>(data[i + 1]),
                static_cast<double>(data[i + 2])};
    }

    /// Pixel in 8-bit scale; 12-bit data maps through v / 16.
    RgbF at_8bit_scale(int x, int y) const {
        return bit_depth == 12 ? RgbF(at(x, y) / 16.0) : at(x, y);
    }

    void set(int x, int y, const Rgb8& c) {
        const std::size_t i = index(x, y);
        data[i] = c.r;
        data[i + 1] = c.g;
        data[i + 2] = c.b;
    }

    void set(int x, int y, const Rgb12& c) {
        const std::size_t i = index(x, y);
        data[i] = c.r;
        data[i + 1] = c.g;
        data[i + 2] = c.b;
    }

    friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;
};

/// Axis-aligned chart patch location. `patch_index` is 1-based and matches
/// the reference chart ordering.
struct PatchRegion {
    int patch_index = 0;
    int x = 0, y = 0, w = 0, h = 0;
};

/// Cast a 12-bit image to 8 bits by truncation: v8 = floor(v12 / 16).
/// Throws std::invalid_argument on any other input depth.
ImageBuffer quantize_12_to_8(const ImageBuffer& img);

/// Per-channel arithmetic mean over the region, in native units.
/// Throws std::out_of_range when the region leaves the image.
RgbF extract_patch_color(const ImageBuffer& img, const PatchRegion& region);

}  // namespace chromafix
