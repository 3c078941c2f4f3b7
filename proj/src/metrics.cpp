// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#include "chromafix/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace chromafix {

double within_distance(std::span<const RgbF> corrected, std::span<const RgbF> reference) {
    if (corrected.size() != reference.size())
        throw std::invalid_argument("within_distance: length mismatch");
    if (corrected.empty())
        throw std::invalid_argument("within_distance: empty color list");
    double sum = 0.0;
    for (std::size_t i = 0; i < corrected.size(); ++i)
        sum += rgb_distance(corrected[i], reference[i]);
    return sum / static_cast<double>(corrected.size());
}

double pairwise_min(std::span<const RgbF> colors) {
    if (colors.size() < 2)
        throw std::invalid_argument("pairwise_min: needs at least two colors");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < colors.size(); ++i)
        for (std::size_t j = i + 1; j < colors.size(); ++j)
            best = std::min(best, rgb_distance(colors[i], colors[j]));
    return best;
}

std::vector<PatchRegion> dilate_regions(std::span<const PatchRegion> regions, int margin,
                                        int width, int height) {
    std::vector<PatchRegion> out;
    out.reserve(regions.size());
    for (const PatchRegion& region : regions) {
        PatchRegion d = region;
        d.x = std::max(0, region.x - margin);
        d.y = std::max(0, region.y - margin);
        d.w = std::min(width, region.x + region.w + margin) - d.x;
        d.h = std::min(height, region.y + region.h + margin) - d.y;
        out.push_back(d);
    }
    return out;
}

double inter_distance(const ImageBuffer& corrected, const ImageBuffer& ground_truth,
                      std::span<const PatchRegion> chart_mask) {
    if (corrected.width != ground_truth.width || corrected.height != ground_truth.height)
        throw std::invalid_argument("inter_distance: image dimension mismatch");

    std::vector<std::uint8_t> masked(corrected.pixel_count(), 0);
    for (const PatchRegion& region : chart_mask) {
        if (region.w < 1 || region.h < 1 || !corrected.in_bounds(region.x, region.y) ||
            !corrected.in_bounds(region.x + region.w - 1, region.y + region.h - 1))
            throw std::invalid_argument("inter_distance: mask region leaves the image");
        for (int y = region.y; y < region.y + region.h; ++y)
            std::fill_n(masked.begin() + static_cast<std::size_t>(y) * corrected.width + region.x,
                        region.w, std::uint8_t{1});
    }

    double sum = 0.0;
    std::size_t count = 0;
    for (int y = 0; y < corrected.height; ++y) {
        for (int x = 0; x < corrected.width; ++x) {
            if (masked[static_cast<std::size_t>(y) * corrected.width + x])
                continue;
            sum += rgb_distance(corrected.at_8bit_scale(x, y), ground_truth.at_8bit_scale(x, y));
            ++count;
        }
    }
    if (count == 0)
        throw std::invalid_argument("inter_distance: mask covers the entire image");
    return sum / static_cast<double>(count);
}

}  // namespace chromafix
