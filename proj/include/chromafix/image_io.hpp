// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#pragma once

#include <filesystem>

#include "chromafix/image.hpp"

namespace chromafix {

/// Reads a PNG image. 8-bit files load as bit_depth 8; 16-bit files are
/// interpreted as left-aligned 12-bit data (v12 = v16 / 16) and load as
/// bit_depth 12. Gray and paletted files expand to RGB; alpha is dropped.
ImageBuffer load_png(const std::filesystem::path& path);

/// Writes 8-bit data as RGB8 PNG and 12-bit data as left-aligned RGB16 PNG
/// (v16 = v12 * 16), so load_png round-trips exactly.
void save_png(const ImageBuffer& img, const std::filesystem::path& path);

/// Binary PPM (P6, maxval 255); 8-bit only.
ImageBuffer load_ppm(const std::filesystem::path& path);
void save_ppm(const ImageBuffer& img, const std::filesystem::path& path);

/// Dispatches on the file extension (.png, .ppm).
ImageBuffer load_image(const std::filesystem::path& path);
void save_image(const ImageBuffer& img, const std::filesystem::path& path);

}  // namespace chromafix
