// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#pragma once

#include <span>

#include "chromafix/color.hpp"

namespace chromafix {

/// Classic 24-patch ColorChecker reference colors in sRGB, 8-bit scale,
/// row-major chart order (dark skin first, black last).
std::span<const RgbF> macbeth_chart();

inline constexpr int kMacbethPatchCount = 24;
inline constexpr int kMacbethWhiteIndex = 19;  ///< 1-based
inline constexpr int kMacbethBlackIndex = 24;  ///< 1-based

}  // namespace chromafix
