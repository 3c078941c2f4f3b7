// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "chromafix/color.hpp"
#include "chromafix/image.hpp"
#include "chromafix/model.hpp"

namespace chromafix {

/// Pairwise-distance threshold below which a failed correction counts as
/// ill-conditioned: the distance of two colors one digit apart per channel.
struct FailureThresholds {
    double pairwise_delta = std::sqrt(3.0);
};

/// Per-image, per-method metric bundle.
struct ScoreCard {
    MethodId method = MethodId::None;
    double within_mean = std::numeric_limits<double>::quiet_NaN();
    double within_pct = std::numeric_limits<double>::quiet_NaN();
    double pairwise_min = std::numeric_limits<double>::quiet_NaN();
    double inter_mean = std::numeric_limits<double>::quiet_NaN();
    double inter_pct = std::numeric_limits<double>::quiet_NaN();
    bool failed = false;
    bool ill_conditioned = false;
    double exec_time_ms = std::numeric_limits<double>::quiet_NaN();
};

/// Mean RGB distance between corrected chart colors and their references.
/// Throws std::invalid_argument on length mismatch or empty input.
double within_distance(std::span<const RgbF> corrected, std::span<const RgbF> reference);

/// Minimum RGB distance over all unordered color pairs. Requires N >= 2.
double pairwise_min(std::span<const RgbF> colors);

/// A correction failed when it did not reduce the within-distance below the
/// uncorrected (NONE) one; the comparison is strict.
inline bool is_failed(double within_corrected, double within_none) {
    return within_corrected - within_none > 0.0;
}

/// Failed corrections whose chart colors collapsed to within the pairwise
/// threshold; the criterion is gated on `failed`.
inline bool is_ill_conditioned(bool failed, double pairwise_minimum,
                               const FailureThresholds& thresholds) {
    return failed && pairwise_minimum < thresholds.pairwise_delta;
}

/// Mean RGB distance between corrected and ground-truth pixels outside the
/// union of the mask regions, compared in 8-bit scale. Throws on dimension
/// mismatch or when the mask covers the whole image.
double inter_distance(const ImageBuffer& corrected, const ImageBuffer& ground_truth,
                      std::span<const PatchRegion> chart_mask);

/// Grows each region by `margin` pixels per side, clipped to the image.
std::vector<PatchRegion> dilate_regions(std::span<const PatchRegion> regions, int margin,
                                        int width, int height);

}  // namespace chromafix
