// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#pragma once

#include <filesystem>

#include <json.hpp>

#include "chromafix/model.hpp"

namespace chromafix {

/// Model serialization: method id, feature or RBF kind, lambda, and the
/// coefficient matrices as row-major double arrays. Doubles round-trip
/// bit-exactly through the JSON text.
nlohmann::json model_to_json(const CorrectionModel& model);
CorrectionModel model_from_json(const nlohmann::json& doc);

void save_model(const CorrectionModel& model, const std::filesystem::path& path);
CorrectionModel load_model(const std::filesystem::path& path);

}  // namespace chromafix
