// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#pragma once

#include <cstdint>
#include <filesystem>

#include "chromafix/manifest.hpp"

namespace chromafix {

/// Knobs for the bundled synthetic benchmark dataset.
struct SyntheticDatasetOptions {
    int image_count = 20;
    int width = 192;
    int height = 128;
    int bit_depth = 12;  ///< 8 or 12; 12-bit images are written as 16-bit PNG
    std::uint64_t seed = 1234;
    double patch_noise_sigma = 8.0;  ///< in native units of the chosen depth
};

/// Writes `image_count` ground-truth images (smooth gradient background plus
/// a 24-patch chart) under dir/images/, plus dir/manifest.json. Each image
/// gets its own reference chart holding the patch means extracted from the
/// generated ground truth, expressed in 8-bit scale.
DatasetManifest make_synthetic_dataset(const std::filesystem::path& dir,
                                       const SyntheticDatasetOptions& options = {});

}  // namespace chromafix
