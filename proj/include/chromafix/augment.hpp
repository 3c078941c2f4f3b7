// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <utility>

#include "chromafix/color.hpp"
#include "chromafix/image.hpp"

namespace chromafix {

/// Seeded recipe for generating augmented replicas of a ground-truth image.
struct AugmentSpec {
    std::uint64_t seed = 0;
    int replicas = 1;
    std::pair<double, double> linear_contrast_range{0.6, 1.4};
    std::pair<double, double> gamma_range{0.5, 2.0};
    double crosstalk_strength = 0.15;

    /// Throws ConfigError on inverted ranges or out-of-range strength.
    void validate() const;
};

/// One replica's transformation: linear contrast, gamma, channel cross-talk.
struct AugmentParams {
    double alpha = 1.0;
    double gamma = 1.0;
    Eigen::Matrix3d mix = Eigen::Matrix3d::Identity();  ///< row-stochastic
};

/// Draws the parameters for one replica from a counter-based stream keyed by
/// (spec.seed, replica_index); the result is a pure function of its inputs.
/// Throws std::out_of_range unless 0 <= replica_index < spec.replicas.
AugmentParams draw_params(const AugmentSpec& spec, int replica_index);

/// Applies, per pixel and in this order: linear contrast around 128, gamma on
/// values clamped to [0, 255], channel cross-talk, then clamping to Rgb8.
/// 8-bit input only.
ImageBuffer apply_augment(const AugmentParams& params, const ImageBuffer& img);

/// Test stressor: adds Gaussian channel noise (clamped to [0, 255]) to the
/// source colors, then forces `collapse_pairs` random source pairs equal.
/// Requires collapse_pairs <= N / 2.
ChartCorrespondence degrade_chart(const ChartCorrespondence& corr, int collapse_pairs,
                                  double noise_sigma, std::uint64_t seed);

}  // namespace chromafix
