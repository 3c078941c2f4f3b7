// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#include "chromafix/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <string>
#include <system_error>

#include <json.hpp>

#include "chromafix/errors.hpp"

namespace chromafix {

namespace {

constexpr int kManifestSchemaVersion = 1;
constexpr int kConfigSchemaVersion = 1;

nlohmann::json parse_json_file(const std::filesystem::path& path, const char* what) {
    std::ifstream in(path);
    if (!in)
        throw IoError(std::string("cannot open ") + what + " file: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& err) {
        throw ManifestError(std::string("malformed ") + what + " " + path.string() + ": " +
                            err.what());
    }
    return doc;
}

void check_schema_version(const nlohmann::json& doc, int expected, const char* what) {
    if (!doc.contains("schema_version"))
        throw ManifestError(std::string(what) + ": missing schema_version field");
    if (doc.at("schema_version").get<int>() != expected)
        throw ManifestError(std::string(what) + ": unsupported schema_version " +
                            doc.at("schema_version").dump());
}

RgbF rgb_from_json(const nlohmann::json& triple, const std::string& where) {
    if (!triple.is_array() || triple.size() != 3)
        throw ManifestError(where + ": color must be a 3-element array");
    RgbF c(triple[0].get<double>(), triple[1].get<double>(), triple[2].get<double>());
    if (!c.allFinite())
        throw ManifestError(where + ": non-finite color component");
    return c;
}

PatchRegion region_from_json(const nlohmann::json& doc, const std::string& where) {
    PatchRegion region;
    region.patch_index = doc.at("patch_index").get<int>();
    region.x = doc.at("x").get<int>();
    region.y = doc.at("y").get<int>();
    region.w = doc.at("w").get<int>();
    region.h = doc.at("h").get<int>();
    if (region.x < 0 || region.y < 0 || region.w < 1 || region.h < 1)
        throw ManifestError(where + ": patch " + std::to_string(region.patch_index) +
                            " has a degenerate region");
    return region;
}

}  // namespace

DatasetManifest load_manifest(const std::filesystem::path& path) {
    const nlohmann::json doc = parse_json_file(path, "manifest");
    DatasetManifest manifest;
    manifest.base_dir = path.has_parent_path() ? path.parent_path()
                                               : std::filesystem::path(".");
    try {
        check_schema_version(doc, kManifestSchemaVersion, "manifest");

        for (const auto& [id, colors] : doc.at("reference_charts").items()) {
            std::vector<RgbF>& chart = manifest.reference_charts[id];
            for (const auto& triple : colors)
                chart.push_back(rgb_from_json(triple, "chart " + id));
            if (chart.empty())
                throw ManifestError("chart " + id + ": empty color list");
        }

        int index = 0;
        for (const auto& entry_doc : doc.at("entries")) {
            const std::string where = "entry " + std::to_string(index);
            ManifestEntry entry;
            entry.image_path = entry_doc.at("image_path").get<std::string>();
            entry.bit_depth = entry_doc.value("bit_depth", 8);
            entry.reference_chart_id = entry_doc.at("reference_chart_id").get<std::string>();
            if (entry.bit_depth != 8 && entry.bit_depth != 12)
                throw ManifestError(where + ": bit_depth must be 8 or 12, got " +
                                    std::to_string(entry.bit_depth));

            std::filesystem::path image(entry.image_path);
            entry.resolved_path = image.is_absolute() ? image : manifest.base_dir / image;
            if (!std::filesystem::exists(entry.resolved_path))
                throw ManifestError(where + ": image file not found: " +
                                    entry.resolved_path.string());

            const auto chart = manifest.reference_charts.find(entry.reference_chart_id);
            if (chart == manifest.reference_charts.end())
                throw ManifestError(where + ": unknown reference_chart_id \"" +
                                    entry.reference_chart_id + "\"");

            for (const auto& region_doc : entry_doc.at("patch_regions"))
                entry.patch_regions.push_back(region_from_json(region_doc, where));
            if (entry.patch_regions.size() != chart->second.size())
                throw ManifestError(where + ": " + std::to_string(entry.patch_regions.size()) +
                                    " patch regions vs " +
                                    std::to_string(chart->second.size()) + " chart colors");

            std::sort(entry.patch_regions.begin(), entry.patch_regions.end(),
                      [](const PatchRegion& a, const PatchRegion& b) {
                          return a.patch_index < b.patch_index;
                      });
            for (std::size_t i = 0; i < entry.patch_regions.size(); ++i)
                if (entry.patch_regions[i].patch_index != static_cast<int>(i) + 1)
                    throw ManifestError(where + ": patch indices must form 1.." +
                                        std::to_string(entry.patch_regions.size()));

            manifest.entries.push_back(std::move(entry));
            ++index;
        }
        if (manifest.entries.empty())
            throw ManifestError("manifest has no entries");
    } catch (const nlohmann::json::exception& err) {
        throw ManifestError("manifest " + path.string() + ": " + err.what());
    }
    return manifest;
}

void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
    nlohmann::json doc;
    doc["schema_version"] = kManifestSchemaVersion;

    nlohmann::json charts = nlohmann::json::object();
    for (const auto& [id, colors] : manifest.reference_charts) {
        nlohmann::json list = nlohmann::json::array();
        for (const RgbF& c : colors)
            list.push_back({c.x(), c.y(), c.z()});
        charts[id] = std::move(list);
    }
    doc["reference_charts"] = std::move(charts);

    const std::filesystem::path out_dir =
        path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    nlohmann::json entries = nlohmann::json::array();
    for (const ManifestEntry& entry : manifest.entries) {
        nlohmann::json entry_doc;
        std::error_code ec;
        const std::filesystem::path rel =
            std::filesystem::relative(entry.resolved_path, out_dir, ec);
        entry_doc["image_path"] = (ec || rel.empty())
                                      ? entry.resolved_path.generic_string()
                                      : rel.generic_string();
        entry_doc["bit_depth"] = entry.bit_depth;
        entry_doc["reference_chart_id"] = entry.reference_chart_id;
        nlohmann::json regions = nlohmann::json::array();
        for (const PatchRegion& r : entry.patch_regions)
            regions.push_back({{"patch_index", r.patch_index},
                               {"x", r.x},
                               {"y", r.y},
                               {"w", r.w},
                               {"h", r.h}});
        entry_doc["patch_regions"] = std::move(regions);
        entries.push_back(std::move(entry_doc));
    }
    doc["entries"] = std::move(entries);

    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open manifest for writing: " + path.string());
    out << doc.dump(2) << '\n';
    if (!out)
        throw IoError("failed writing manifest: " + path.string());
}

void RunConfig::validate() const {
    if (methods.empty())
        throw ConfigError("config: methods list is empty");
    if (timing_repeats < 1)
        throw ConfigError("config: timing_repeats must be >= 1");
    if (mask_margin_px < 0)
        throw ConfigError("config: mask_margin_px must be >= 0");
    augment.validate();
    if (!(thresholds.pairwise_delta >= 0.0))
        throw ConfigError("config: pairwise_delta must be >= 0");
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& err) {
        throw ConfigError("malformed config " + path.string() + ": " + err.what());
    }

    RunConfig config;
    try {
        if (!doc.contains("schema_version"))
            throw ConfigError("config: missing schema_version field");
        if (doc.at("schema_version").get<int>() != kConfigSchemaVersion)
            throw ConfigError("config: unsupported schema_version " +
                              doc.at("schema_version").dump());

        if (doc.contains("methods")) {
            for (const auto& name : doc.at("methods")) {
                const auto method = parse_method(name.get<std::string>());
                if (!method)
                    throw ConfigError("config: unknown method " + name.get<std::string>());
                config.methods.push_back(*method);
            }
        } else {
            config.methods = all_methods();
        }

        if (doc.contains("augment")) {
            const auto& a = doc.at("augment");
            config.augment.seed = a.value("seed", config.augment.seed);
            config.augment.replicas = a.value("replicas", config.augment.replicas);
            if (a.contains("linear_contrast_range")) {
                config.augment.linear_contrast_range = {
                    a.at("linear_contrast_range").at(0).get<double>(),
                    a.at("linear_contrast_range").at(1).get<double>()};
            }
            if (a.contains("gamma_range")) {
                config.augment.gamma_range = {a.at("gamma_range").at(0).get<double>(),
                                              a.at("gamma_range").at(1).get<double>()};
            }
            config.augment.crosstalk_strength =
                a.value("crosstalk_strength", config.augment.crosstalk_strength);
        }

        if (doc.contains("tps")) {
            const auto& t = doc.at("tps");
            config.tps.lambda_small = t.value("lambda_small", config.tps.lambda_small);
            config.tps.lambda_large = t.value("lambda_large", config.tps.lambda_large);
            config.tps.white_index = t.value("white_index", config.tps.white_index);
            config.tps.black_index = t.value("black_index", config.tps.black_index);
        }

        if (doc.contains("thresholds")) {
            config.thresholds.pairwise_delta =
                doc.at("thresholds").value("pairwise_delta", config.thresholds.pairwise_delta);
        }

        config.timing_repeats = doc.value("timing_repeats", config.timing_repeats);
        config.mask_margin_px = doc.value("mask_margin_px", config.mask_margin_px);
        if (doc.contains("output_dir"))
            config.output_dir = doc.at("output_dir").get<std::string>();
    } catch (const nlohmann::json::exception& err) {
        throw ConfigError("config " + path.string() + ": " + err.what());
    }

    config.validate();
    return config;
}

}  // namespace chromafix
