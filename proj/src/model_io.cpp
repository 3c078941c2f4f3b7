// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#include "chromafix/model_io.hpp"

#include <fstream>
#include <string>
#include <vector>

#include "chromafix/errors.hpp"

namespace chromafix {

namespace {

nlohmann::json matrix_to_json(const Eigen::Ref<const Eigen::MatrixXd>& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& rows, Eigen::Index expect_rows,
                                 Eigen::Index expect_cols) {
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != expect_rows)
        throw ConfigError("model: bad matrix row count");
    Eigen::MatrixXd m(expect_rows, expect_cols >= 0 ? expect_cols : 0);
    for (Eigen::Index i = 0; i < expect_rows; ++i) {
        const auto& row = rows[i];
        if (!row.is_array())
            throw ConfigError("model: matrix row is not an array");
        if (expect_cols < 0 && i == 0)
            m.resize(expect_rows, static_cast<Eigen::Index>(row.size()));
        if (static_cast<Eigen::Index>(row.size()) != m.cols())
            throw ConfigError("model: ragged matrix rows");
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            m(i, j) = row[j].get<double>();
    }
    return m;
}

}  // namespace

nlohmann::json model_to_json(const CorrectionModel& model) {
    nlohmann::json doc;
    doc["method"] = to_string(model.method);
    if (const auto* linear = std::get_if<LinearModel>(&model.body)) {
        doc["kind"] = "linear";
        doc["features"] = to_string(linear->features);
        doc["coefficients"] = matrix_to_json(linear->coefficients);
    } else if (const auto* tps = std::get_if<TpsModel>(&model.body)) {
        doc["kind"] = "tps";
        doc["rbf"] = to_string(tps->rbf);
        doc["lambda"] = tps->lambda;
        doc["centers"] = matrix_to_json(tps->centers);
        doc["weights"] = matrix_to_json(tps->weights);
        doc["affine"] = matrix_to_json(tps->affine);
    } else {
        doc["kind"] = "identity";
    }
    return doc;
}

CorrectionModel model_from_json(const nlohmann::json& doc) {
    CorrectionModel model;
    const auto method = parse_method(doc.at("method").get<std::string>());
    if (!method)
        throw ConfigError("model: unknown method " + doc.at("method").get<std::string>());
    model.method = *method;

    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "identity")
        return model;

    if (kind == "linear") {
        LinearModel linear;
        linear.features = feature_kind_from_string(doc.at("features").get<std::string>());
        linear.coefficients = matrix_from_json(doc.at("coefficients"), 3,
                                               feature_count(linear.features));
        model.body = std::move(linear);
        return model;
    }

    if (kind == "tps") {
        TpsModel tps;
        const std::string rbf = doc.at("rbf").get<std::string>();
        if (rbf == "rbf2d")
            tps.rbf = RbfKind::Rbf2D;
        else if (rbf == "rbf3d")
            tps.rbf = RbfKind::Rbf3D;
        else
            throw ConfigError("model: unknown rbf kind " + rbf);
        tps.lambda = doc.at("lambda").get<double>();
        tps.centers = matrix_from_json(doc.at("centers"), 3, -1);
        tps.weights = matrix_from_json(doc.at("weights"), 3, tps.centers.cols());
        tps.affine = matrix_from_json(doc.at("affine"), 3, 4);
        model.body = std::move(tps);
        return model;
    }

    throw ConfigError("model: unknown model kind " + kind);
}

void save_model(const CorrectionModel& model, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open model file for writing: " + path.string());
    out << model_to_json(model).dump(2) << '\n';
    if (!out)
        throw IoError("failed writing model file: " + path.string());
}

CorrectionModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open model file: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
        return model_from_json(doc);
    } catch (const nlohmann::json::exception& err) {
        throw ConfigError("bad model file " + path.string() + ": " + err.what());
    }
}

}  // namespace chromafix
