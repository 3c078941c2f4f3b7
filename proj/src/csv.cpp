// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#include "chromafix/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "chromafix/errors.hpp"

namespace chromafix {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos)
        return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"')
            quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string format_double(double v) {
    if (std::isnan(v))
        return "nan";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open csv file: " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool any_field = false;

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                quoted = true;
                any_field = true;
                break;
            case ',':
                row.push_back(std::move(field));
                field.clear();
                any_field = true;
                break;
            case '\r':
                break;
            case '\n':
                if (any_field || !field.empty() || !row.empty()) {
                    row.push_back(std::move(field));
                    field.clear();
                    rows.push_back(std::move(row));
                    row.clear();
                    any_field = false;
                }
                break;
            default:
                field += c;
                break;
        }
    }
    if (quoted)
        throw IoError("unterminated quoted field in csv file: " + path.string());
    if (any_field || !field.empty() || !row.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace chromafix
