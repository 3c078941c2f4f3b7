// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "chromafix/augment.hpp"
#include "chromafix/image.hpp"
#include "chromafix/metrics.hpp"
#include "chromafix/model.hpp"

namespace chromafix {

struct ManifestEntry {
    std::string image_path;                ///< as written in the manifest
    std::filesystem::path resolved_path;   ///< relative paths resolve against the manifest dir
    int bit_depth = 8;
    std::string reference_chart_id;
    std::vector<PatchRegion> patch_regions;  ///< sorted by patch_index after load
};

/// Ground-truth images, their chart patch coordinates, and the reference
/// chart colors they correct towards.
struct DatasetManifest {
    std::filesystem::path base_dir;
    std::vector<ManifestEntry> entries;
    std::map<std::string, std::vector<RgbF>> reference_charts;
};

/// Loads and eagerly validates a manifest: schema shape, patch counts
/// matching the referenced chart, patch indices forming 1..N, and image
/// paths resolving to existing files. Throws IoError when the file cannot
/// be read and ManifestError (with entry context) on validation failures.
DatasetManifest load_manifest(const std::filesystem::path& path);

/// Writes the manifest as JSON; image paths are stored relative to the
/// output directory when possible.
void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

/// Benchmark run settings, loaded from a JSON config document.
struct RunConfig {
    std::vector<MethodId> methods;
    AugmentSpec augment;
    TpsConfig tps;
    FailureThresholds thresholds;
    int timing_repeats = 3;
    int mask_margin_px = 0;
    std::filesystem::path output_dir;

    /// Throws ConfigError on empty methods or non-positive timing_repeats.
    void validate() const;
};

/// Loads a run config; absent fields keep their defaults. Throws IoError /
/// ConfigError.
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace chromafix
