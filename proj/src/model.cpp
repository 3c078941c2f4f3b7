// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#include "chromafix/model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "chromafix/errors.hpp"

namespace chromafix {

const char* to_string(MethodId method) {
    switch (method) {
        case MethodId::Perf: return "PERF";
        case MethodId::None: return "NONE";
        case MethodId::Aff0: return "AFF0";
        case MethodId::Aff1: return "AFF1";
        case MethodId::Aff2: return "AFF2";
        case MethodId::Aff3: return "AFF3";
        case MethodId::Van0: return "VAN0";
        case MethodId::Van1: return "VAN1";
        case MethodId::Van2: return "VAN2";
        case MethodId::Van3: return "VAN3";
        case MethodId::Che0: return "CHE0";
        case MethodId::Che1: return "CHE1";
        case MethodId::Che2: return "CHE2";
        case MethodId::Che3: return "CHE3";
        case MethodId::Fin0: return "FIN0";
        case MethodId::Fin1: return "FIN1";
        case MethodId::Fin2: return "FIN2";
        case MethodId::Fin3: return "FIN3";
        case MethodId::Tps0: return "TPS0";
        case MethodId::Tps1: return "TPS1";
        case MethodId::Tps2: return "TPS2";
        case MethodId::Tps3: return "TPS3";
    }
    return "?";
}

const std::vector<MethodId>& all_methods() {
    static const std::vector<MethodId> methods = {
        MethodId::Perf, MethodId::None, MethodId::Aff0, MethodId::Aff1, MethodId::Aff2,
        MethodId::Aff3, MethodId::Van0, MethodId::Van1, MethodId::Van2, MethodId::Van3,
        MethodId::Che0, MethodId::Che1, MethodId::Che2, MethodId::Che3, MethodId::Fin0,
        MethodId::Fin1, MethodId::Fin2, MethodId::Fin3, MethodId::Tps0, MethodId::Tps1,
        MethodId::Tps2, MethodId::Tps3,
    };
    return methods;
}

std::optional<MethodId> parse_method(std::string_view name) {
    for (MethodId method : all_methods())
        if (name == to_string(method))
            return method;
    return std::nullopt;
}

const char* to_string(RbfKind kind) {
    return kind == RbfKind::Rbf2D ? "rbf2d" : "rbf3d";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::optional<FeatureKind> feature_kind_for(MethodId method) {
    switch (method) {
        case MethodId::Aff2: return FeatureKind::Aff2;
        case MethodId::Aff3: return FeatureKind::Aff3;
        case MethodId::Van0: return FeatureKind::Van0;
        case MethodId::Van1: return FeatureKind::Van1;
        case MethodId::Van2: return FeatureKind::Van2;
        case MethodId::Van3: return FeatureKind::Van3;
        case MethodId::Che0: return FeatureKind::Che0;
        case MethodId::Che1: return FeatureKind::Che1;
        case MethodId::Che2: return FeatureKind::Che2;
        case MethodId::Che3: return FeatureKind::Che3;
        case MethodId::Fin0: return FeatureKind::Fin0;
        case MethodId::Fin1: return FeatureKind::Fin1;
        case MethodId::Fin2: return FeatureKind::Fin2;
        case MethodId::Fin3: return FeatureKind::Fin3;
        default: return std::nullopt;
    }
}

int checked_patch_pos(const ChartCorrespondence& corr, int index_1based, const char* what) {
    if (index_1based < 1 || index_1based > corr.size())
        throw std::invalid_argument(std::string(what) + " patch index out of range");
    return index_1based - 1;
}

RgbF unclamped_apply(const LinearModel& model, const RgbF& c, Eigen::VectorXd& scratch) {
    build_features(model.features, c, scratch);
    return model.coefficients * scratch;
}

RgbF unclamped_apply(const TpsModel& model, const RgbF& c) {
    RgbF out = model.affine.col(0) + model.affine.rightCols<3>() * c;
    const Eigen::Index n = model.centers.cols();
    if (model.rbf == RbfKind::Rbf2D) {
        for (Eigen::Index i = 0; i < n; ++i)
            out += model.weights.col(i) * rbf_2d((c - model.centers.col(i)).norm());
    } else {
        for (Eigen::Index i = 0; i < n; ++i)
            out += model.weights.col(i) * (c - model.centers.col(i)).norm();
    }
    return out;
}

}  // namespace

LinearModel fit_white_balance(const ChartCorrespondence& corr, int white_index,
                              std::optional<int> black_index) {
    corr.validate();
    const int white = checked_patch_pos(corr, white_index, "white");
    const RgbF white_src = corr.source[white];
    const RgbF white_tgt = corr.target[white];

    LinearModel model;
    if (!black_index) {
        for (int ch = 0; ch < 3; ++ch)
            if (!(white_src[ch] > 0.0))
                throw SingularFitError("white balance: non-positive white source channel", kInf);
        model.features = FeatureKind::Aff2;
        model.coefficients = Eigen::Matrix3d(
            (white_tgt.array() / white_src.array()).matrix().asDiagonal());
        return model;
    }

    const int black = checked_patch_pos(corr, *black_index, "black");
    const RgbF black_src = corr.source[black];
    const RgbF black_tgt = corr.target[black];
    const RgbF span = white_src - black_src;
    for (int ch = 0; ch < 3; ++ch)
        if (!(span[ch] > 0.0))
            throw SingularFitError(
                "white balance: non-positive white minus black source channel", kInf);

    const RgbF gain = (white_tgt - black_tgt).array() / span.array();
    const RgbF bias = black_tgt - gain.cwiseProduct(black_src);
    model.features = FeatureKind::Aff3;
    model.coefficients.resize(3, 4);
    model.coefficients.col(0) = bias;
    model.coefficients.rightCols<3>() = Eigen::Matrix3d(gain.asDiagonal());
    return model;
}

LinearModel fit_linear(FeatureKind kind, const ChartCorrespondence& corr) {
    corr.validate();
    const int n = corr.size();
    const int k = feature_count(kind);
    if (n < k)
        throw SingularFitError("linear fit: fewer references than features", kInf);

    Eigen::MatrixXd design(n, k);
    Eigen::MatrixXd targets(n, 3);
    Eigen::VectorXd row(k);
    for (int i = 0; i < n; ++i) {
        build_features(kind, corr.source[i], row);
        design.row(i) = row.transpose();
        targets.row(i) = corr.target[i].transpose();
    }

    // Equilibrate the columns so the condition estimate reflects genuine rank
    // deficiency rather than the wildly different scales of the monomials.
    Eigen::VectorXd scale = design.colwise().norm();
    for (int j = 0; j < k; ++j)
        if (scale[j] == 0.0)
            scale[j] = 1.0;
    const Eigen::MatrixXd scaled = design * scale.cwiseInverse().asDiagonal();

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
    const Eigen::VectorXd r_diag = qr.matrixQR().diagonal().head(k).cwiseAbs();
    const double condition = r_diag[k - 1] > 0.0 ? r_diag[0] / r_diag[k - 1] : kInf;
    if (!(condition < kSingularConditionLimit))
        throw SingularFitError("linear fit: rank-deficient feature matrix (cond ~ " +
                                   std::to_string(condition) + ")",
                               condition);

    const Eigen::MatrixXd solution = scale.cwiseInverse().asDiagonal() * qr.solve(targets);

    LinearModel model;
    model.features = kind;
    model.coefficients = solution.transpose();
    return model;
}

TpsModel fit_tps(const ChartCorrespondence& corr, RbfKind rbf, double lambda) {
    corr.validate();
    if (lambda < 0.0)
        throw std::invalid_argument("fit_tps: lambda must be non-negative");
    const int n = corr.size();
    if (n < 4)
        throw SingularFitError("tps fit: needs at least 4 references", kInf);

    // The kernel block enters in the convention that is positive definite on
    // the side-condition subspace (r^2 ln r already is; the distance kernel
    // needs its sign flipped), so adding lambda smooths monotonically instead
    // of sweeping the system through an eigenvalue crossing. The weights flip
    // back below; the fitted map itself always uses the plain basis.
    const double sign = rbf == RbfKind::Rbf3D ? -1.0 : 1.0;
    Eigen::MatrixXd system = Eigen::MatrixXd::Zero(n + 4, n + 4);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n + 4, 3);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            system(i, j) = sign * eval_rbf(rbf, rgb_distance(corr.source[i], corr.source[j]));
        system(i, i) += lambda;
        system(i, n) = 1.0;
        system(i, n + 1) = corr.source[i].x();
        system(i, n + 2) = corr.source[i].y();
        system(i, n + 3) = corr.source[i].z();
        system.block(n, i, 4, 1) = system.block(i, n, 1, 4).transpose();
        rhs.row(i) = corr.target[i].transpose();
    }

    // Symmetric equilibration: the kernel block scales like rbf(255*sqrt(3))
    // while the polynomial block holds raw channels, and the raw system's
    // condition estimate would reflect that imbalance instead of genuine
    // singularity (duplicate rows survive the scaling untouched).
    const double kernel_scale =
        std::max(1.0, system.topLeftCorner(n, n).cwiseAbs().maxCoeff());
    const double poly_scale =
        std::max(1.0, system.topRightCorner(n, 4).cwiseAbs().maxCoeff());
    Eigen::VectorXd d(n + 4);
    d.head(n).setConstant(1.0 / std::sqrt(kernel_scale));
    d.tail(4).setConstant(std::sqrt(kernel_scale) / poly_scale);
    const Eigen::MatrixXd scaled = d.asDiagonal() * system * d.asDiagonal();

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
    const Eigen::VectorXd r_diag = qr.matrixQR().diagonal().cwiseAbs();
    const double r_min = r_diag[r_diag.size() - 1];
    const double condition = r_min > 0.0 ? r_diag[0] / r_min : kInf;
    if (!(condition < kSingularConditionLimit))
        throw SingularFitError(
            "tps fit: singular system (duplicate or coplanar sources, cond ~ " +
                std::to_string(condition) + ")",
            condition);

    const Eigen::MatrixXd solution = d.asDiagonal() * qr.solve(d.asDiagonal() * rhs);
    if (!solution.allFinite())
        throw SingularFitError("tps fit: non-finite solution", kInf);

    TpsModel model;
    model.rbf = rbf;
    model.lambda = lambda;
    model.centers.resize(3, n);
    for (int i = 0; i < n; ++i)
        model.centers.col(i) = corr.source[i];
    model.weights = sign * solution.topRows(n).transpose();
    model.affine = solution.bottomRows(4).transpose();
    return model;
}

RgbF apply_color(const CorrectionModel& model, const RgbF& c) {
    if (std::holds_alternative<LinearModel>(model.body)) {
        const auto& linear = std::get<LinearModel>(model.body);
        Eigen::VectorXd scratch(feature_count(linear.features));
        return unclamped_apply(linear, c, scratch);
    }
    if (std::holds_alternative<TpsModel>(model.body))
        return unclamped_apply(std::get<TpsModel>(model.body), c);
    return c;
}

ImageBuffer apply_image(const CorrectionModel& model, const ImageBuffer& img) {
    if (img.bit_depth != 8)
        throw std::invalid_argument("apply_image: 8-bit images only");

    if (std::holds_alternative<std::monostate>(model.body))
        return img;

    ImageBuffer out = ImageBuffer::make(img.width, img.height, 8);
    if (std::holds_alternative<LinearModel>(model.body)) {
        const auto& linear = std::get<LinearModel>(model.body);
        Eigen::VectorXd scratch(feature_count(linear.features));
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x)
                out.set(x, y, clamp_to_rgb8(unclamped_apply(linear, img.at(x, y), scratch)));
    } else {
        const auto& tps = std::get<TpsModel>(model.body);
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x)
                out.set(x, y, clamp_to_rgb8(unclamped_apply(tps, img.at(x, y))));
    }
    return out;
}

CorrectionModel make_method(MethodId method, const ChartCorrespondence& corr,
                            const TpsConfig& config) {
    CorrectionModel model;
    model.method = method;
    switch (method) {
        case MethodId::Perf:
        case MethodId::None:
            return model;
        case MethodId::Aff0:
            model.body = fit_white_balance(corr, config.white_index);
            return model;
        case MethodId::Aff1:
            model.body = fit_white_balance(corr, config.white_index, config.black_index);
            return model;
        case MethodId::Tps0:
            model.body = fit_tps(corr, RbfKind::Rbf2D, 0.0);
            return model;
        case MethodId::Tps1:
            model.body = fit_tps(corr, RbfKind::Rbf3D, 0.0);
            return model;
        case MethodId::Tps2:
            model.body = fit_tps(corr, RbfKind::Rbf3D, config.lambda_small);
            return model;
        case MethodId::Tps3:
            model.body = fit_tps(corr, RbfKind::Rbf3D, config.lambda_large);
            return model;
        default:
            model.body = fit_linear(*feature_kind_for(method), corr);
            return model;
    }
}

}  // namespace chromafix
