// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace chromafix {

/// RFC 4180 quoting: fields holding commas, quotes or newlines get wrapped,
/// embedded quotes doubled.
std::string csv_escape(const std::string& field);

/// Shortest decimal rendering of a double that parses back bit-exactly;
/// NaN prints "nan".
std::string format_double(double v);

/// Parses an RFC 4180 CSV file into rows of fields (header row included).
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);

}  // namespace chromafix
