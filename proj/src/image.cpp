// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#include "chromafix/image.hpp"

#include <stdexcept>

namespace chromafix {

ImageBuffer ImageBuffer::make(int width, int height, int bit_depth) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("ImageBuffer: dimensions must be positive");
    if (bit_depth != 8 && bit_depth != 12)
        throw std::invalid_argument("ImageBuffer: bit depth must be 8 or 12");
    ImageBuffer img;
    img.width = width;
    img.height = height;
    img.bit_depth = bit_depth;
    img.data.assign(3 * img.pixel_count(), 0);
    return img;
}

ImageBuffer quantize_12_to_8(const ImageBuffer& img) {
    if (img.bit_depth != 12)
        throw std::invalid_argument("quantize_12_to_8: input is not 12-bit");
    ImageBuffer out = img;
    out.bit_depth = 8;
    for (auto& v : out.data)
        v = static_cast<std::uint16_t>(v >> 4);  // floor(v / 16)
    return out;
}

RgbF extract_patch_color(const ImageBuffer& img, const PatchRegion& region) {
    if (region.w < 1 || region.h < 1)
        throw std::out_of_range("extract_patch_color: empty region");
    if (!img.in_bounds(region.x, region.y) ||
        !img.in_bounds(region.x + region.w - 1, region.y + region.h - 1))
        throw std::out_of_range("extract_patch_color: region leaves the image");

    RgbF sum = RgbF::Zero();
    for (int y = region.y; y < region.y + region.h; ++y)
        for (int x = region.x; x < region.x + region.w; ++x)
            sum += img.at(x, y);
    return sum / (static_cast<double>(region.w) * region.h);
}

}  // namespace chromafix
