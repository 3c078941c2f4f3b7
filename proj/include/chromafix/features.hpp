// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#pragma once

#include <Eigen/Core>

#include <string_view>

#include "chromafix/color.hpp"

namespace chromafix {

/// Feature expansions of an RGB color used by the linear model families.
enum class FeatureKind {
    Aff2,  ///< (r, g, b)
    Aff3,  ///< (1, r, g, b)
    Van0,  ///< degree-2 per-channel powers: (1, r, g, b, r2, g2, b2)
    Van1,  ///< degree 3
    Van2,  ///< degree 4
    Van3,  ///< degree 5
    Che0,  ///< (1, r, g, b, rgb)
    Che1,  ///< (1, r, g, b, rg, rb, gb)
    Che2,  ///< (1, r, g, b, rg, rb, gb, rgb)
    Che3,  ///< (1, r, g, b, rg, rb, gb, r2, g2, b2)
    Fin0,  ///< degree-2 polynomial, no bias
    Fin1,  ///< degree-3 polynomial, no bias
    Fin2,  ///< degree-2 root-polynomial
    Fin3,  ///< degree-3 root-polynomial
};

/// Number of terms K produced by a feature kind.
int feature_count(FeatureKind kind);

/// Writes the expansion of `c` into `out` (length feature_count(kind)).
/// Root terms are computed on channels clamped to non-negative values.
void build_features(FeatureKind kind, const RgbF& c, Eigen::Ref<Eigen::VectorXd> out);

/// Allocating convenience overload.
Eigen::VectorXd build_features(FeatureKind kind, const RgbF& c);

const char* to_string(FeatureKind kind);
FeatureKind feature_kind_from_string(std::string_view name);

}  // namespace chromafix
