// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace chromafix {

/// A color as a real-valued (r, g, b) vector in 8-bit scale. Channels may
/// leave [0, 255] during intermediate math; API boundaries require finite
/// components.
using RgbF = Eigen::Vector3d;

/// 8-bit integer color, channels in [0, 255].
struct Rgb8 {
    std::uint8_t r = 0, g = 0, b = 0;

    friend bool operator==(const Rgb8&, const Rgb8&) = default;
};

/// 12-bit integer color, channels in [0, 4095].
struct Rgb12 {
    std::uint16_t r = 0, g = 0, b = 0;

    friend bool operator==(const Rgb12&, const Rgb12&) = default;
};

inline RgbF to_rgbf(const Rgb8& c) {
    return {static_cast<double>(c.r), static_cast<double>(c.g), static_cast<double>(c.b)};
}

inline RgbF to_rgbf(const Rgb12& c) {
    return {static_cast<double>(c.r), static_cast<double>(c.g), static_cast<double>(c.b)};
}

/// Distance between black and white, the largest distance in the 8-bit cube.
inline const double kMaxRgbDistance = 255.0 * std::sqrt(3.0);

/// Euclidean distance in RGB space, in 8-bit units.
inline double rgb_distance(const RgbF& a, const RgbF& b) {
    return (a - b).norm();
}

/// Distance as a percentage of the black-to-white distance.
inline double normalize_distance(double d) {
    return 100.0 * d / kMaxRgbDistance;
}

inline std::uint8_t clamp_channel_to_8bit(double v) {
    if (std::isnan(v))
        throw std::invalid_argument("clamp_to_rgb8: NaN channel");
    const double rounded = std::floor(v + 0.5);  // half-up
    if (rounded < 0.0)
        return 0;
    if (rounded > 255.0)
        return 255;
    return static_cast<std::uint8_t>(rounded);
}

/// Round half-up and clamp each channel into [0, 255]. NaN channels throw.
inline Rgb8 clamp_to_rgb8(const RgbF& c) {
    return {clamp_channel_to_8bit(c.x()), clamp_channel_to_8bit(c.y()),
            clamp_channel_to_8bit(c.z())};
}

/// Paired captured and reference colors for one chart, index-aligned.
struct ChartCorrespondence {
    std::vector<RgbF> source;  ///< captured patch colors
    std::vector<RgbF> target;  ///< reference colors

    int size() const { return static_cast<int>(source.size()); }

    /// Throws std::invalid_argument unless both sides hold N >= 1 finite colors.
    void validate() const;
};

}  // namespace chromafix
