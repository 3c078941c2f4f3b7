// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#pragma once

#include <Eigen/Core>

#include <cmath>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "chromafix/color.hpp"
#include "chromafix/features.hpp"
#include "chromafix/image.hpp"

namespace chromafix {

/// Every correction variant in the benchmark catalog, baselines included.
enum class MethodId {
    Perf, None,
    Aff0, Aff1, Aff2, Aff3,
    Van0, Van1, Van2, Van3,
    Che0, Che1, Che2, Che3,
    Fin0, Fin1, Fin2, Fin3,
    Tps0, Tps1, Tps2, Tps3,
};

inline constexpr int kMethodCount = 22;

const char* to_string(MethodId method);
std::optional<MethodId> parse_method(std::string_view name);
const std::vector<MethodId>& all_methods();

enum class RbfKind { Rbf2D, Rbf3D };

const char* to_string(RbfKind kind);

/// r^2 ln r with the removable singularity pinned to 0 at r = 0.
template <typename Scalar>
Scalar rbf_2d(Scalar dist) {
    return dist > Scalar(0) ? dist * dist * std::log(dist) : Scalar(0);
}

/// Identity on the distance.
template <typename Scalar>
Scalar rbf_3d(Scalar dist) {
    return dist;
}

inline double eval_rbf(RbfKind kind, double dist) {
    return kind == RbfKind::Rbf2D ? rbf_2d(dist) : rbf_3d(dist);
}

/// A fitted linear map: output channel = coefficients row * features(c).
struct LinearModel {
    FeatureKind features = FeatureKind::Aff3;
    Eigen::Matrix<double, 3, Eigen::Dynamic> coefficients;  ///< 3 x K
};

/// A fitted thin-plate spline map: affine part plus weighted radial terms
/// centered at the source reference colors.
struct TpsModel {
    Eigen::Matrix<double, 3, Eigen::Dynamic> centers;  ///< 3 x N source colors
    Eigen::Matrix<double, 3, Eigen::Dynamic> weights;  ///< 3 x N
    Eigen::Matrix<double, 3, 4> affine;                ///< [t | A], per-channel rows
    RbfKind rbf = RbfKind::Rbf3D;
    double lambda = 0.0;
};

/// A fitted mapping RGB -> RGB. Monostate body is the identity (PERF/NONE).
struct CorrectionModel {
    MethodId method = MethodId::None;
    std::variant<std::monostate, LinearModel, TpsModel> body;
};

/// Harness-level knobs for method construction.
struct TpsConfig {
    double lambda_small = 1.0;
    double lambda_large = 10.0;
    int white_index = 19;  ///< 1-based patch index of the white reference
    int black_index = 24;  ///< 1-based patch index of the black reference
};

/// Condition estimate above which fits report SingularFitError.
inline constexpr double kSingularConditionLimit = 1e12;

/// White balance (no black index): per-channel gains white_target / white_source.
/// With a black index: the per-channel affine map sending black to black and
/// white to white. Indices are 1-based. Zero (or non-positive) source spans
/// raise SingularFitError.
LinearModel fit_white_balance(const ChartCorrespondence& corr, int white_index,
                              std::optional<int> black_index = std::nullopt);

/// Least-squares fit of the feature expansion to the targets, one output row
/// per channel, via column-equilibrated rank-revealing QR. Raises
/// SingularFitError when N < K or the condition estimate exceeds
/// kSingularConditionLimit.
LinearModel fit_linear(FeatureKind kind, const ChartCorrespondence& corr);

/// Solves, independently per output channel, the augmented system
///
///     [ K + lambda*I   P ] [w]   [v]
///     [ P^T            0 ] [a] = [0]
///
/// with K_ij = rbf(|c_i - c_j|) and P_i = (1, r_i, g_i, b_i). With lambda = 0
/// the model interpolates the correspondence exactly. Duplicate sources at
/// lambda = 0 and coplanar sources make the system singular; those raise
/// SingularFitError carrying the condition estimate.
TpsModel fit_tps(const ChartCorrespondence& corr, RbfKind rbf, double lambda);

/// Applies the fitted mapping to one color; output is unclamped.
RgbF apply_color(const CorrectionModel& model, const RgbF& c);

/// Per-pixel apply_color followed by clamping to the 8-bit cube.
/// Identity methods return a bitwise-identical copy.
ImageBuffer apply_image(const CorrectionModel& model, const ImageBuffer& img);

/// Fits the requested method on the correspondence. PERF and NONE are
/// identities; TPS0 uses the 2D RBF at lambda 0, TPS1..TPS3 the 3D RBF at
/// lambda 0 / lambda_small / lambda_large; AFF0/AFF1 take the white and black
/// indices from `config`.
CorrectionModel make_method(MethodId method, const ChartCorrespondence& corr,
                            const TpsConfig& config = {});

}  // namespace chromafix
