// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "chromafix/benchmark.hpp"
#include "chromafix/errors.hpp"
#include "chromafix/image_io.hpp"
#include "chromafix/manifest.hpp"
#include "chromafix/model_io.hpp"
#include "chromafix/rng.hpp"
#include "chromafix/synthetic.hpp"

namespace fs = std::filesystem;
using namespace chromafix;

namespace {

std::string replica_name(const fs::path& image_path, int replica) {
    char suffix[16];
    std::snprintf(suffix, sizeof suffix, "_r%02d", replica);
    return image_path.stem().string() + suffix + ".png";
}

int run_augment(const fs::path& manifest_path, const fs::path& config_path,
                const fs::path& out_dir) {
    const DatasetManifest manifest = load_manifest(manifest_path);
    const RunConfig config = load_run_config(config_path);
    fs::create_directories(out_dir / "images");

    DatasetManifest augmented;
    augmented.base_dir = out_dir;
    augmented.reference_charts = manifest.reference_charts;

    for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
        const ManifestEntry& entry = manifest.entries[i];
        ImageBuffer img = load_image(entry.resolved_path);
        if (img.bit_depth == 12)
            img = quantize_12_to_8(img);

        AugmentSpec spec = config.augment;
        spec.seed = mix_key(config.augment.seed, i);
        for (int replica = 0; replica < spec.replicas; ++replica) {
            const ImageBuffer out = apply_augment(draw_params(spec, replica), img);
            ManifestEntry out_entry;
            out_entry.image_path =
                "images/" + replica_name(fs::path(entry.image_path), replica);
            out_entry.resolved_path = out_dir / out_entry.image_path;
            out_entry.bit_depth = 8;
            out_entry.reference_chart_id = entry.reference_chart_id;
            out_entry.patch_regions = entry.patch_regions;
            save_image(out, out_entry.resolved_path);
            augmented.entries.push_back(std::move(out_entry));
        }
    }

    save_manifest(augmented, out_dir / "manifest.json");
    std::cout << "wrote " << augmented.entries.size() << " replicas under " << out_dir.string()
              << "\n";
    return 0;
}

int run_correct(const fs::path& manifest_path, const std::string& method_name,
                const fs::path& image_path, const fs::path& out_path,
                const fs::path& model_path) {
    const auto method = parse_method(method_name);
    if (!method)
        throw ConfigError("unknown method: " + method_name);

    const DatasetManifest manifest = load_manifest(manifest_path);

    // Prefer the entry whose path (or filename) matches the input image;
    // replicas produced elsewhere fall back to the first entry's geometry.
    const ManifestEntry* entry = &manifest.entries.front();
    for (const ManifestEntry& candidate : manifest.entries) {
        if (candidate.image_path == image_path.string() ||
            fs::path(candidate.image_path).filename() == image_path.filename()) {
            entry = &candidate;
            break;
        }
    }

    ImageBuffer img = load_image(image_path);
    if (img.bit_depth == 12)
        img = quantize_12_to_8(img);

    ChartCorrespondence corr;
    for (const PatchRegion& region : entry->patch_regions)
        corr.source.push_back(extract_patch_color(img, region));
    corr.target = manifest.reference_charts.at(entry->reference_chart_id);

    const CorrectionModel model = make_method(*method, corr);
    const ImageBuffer corrected = apply_image(model, img);
    if (out_path.has_parent_path())
        fs::create_directories(out_path.parent_path());
    save_image(corrected, out_path);
    if (!model_path.empty())
        save_model(model, model_path);
    std::cout << "corrected " << image_path.string() << " with " << method_name << " -> "
              << out_path.string() << "\n";
    return 0;
}

int run_report_files(const RunReport& report, const fs::path& out_dir) {
    emit_report(report, out_dir);
    std::printf("%-6s %6s %7s %4s %12s %12s %10s\n", "method", "failed", "illcond", "used",
                "within_med", "inter_med", "t_mean_ms");
    for (const MethodSummary& s : report.summaries)
        std::printf("%-6s %6d %7d %4d %12.4f %12.4f %10.3f\n", to_string(s.method), s.failed,
                    s.ill_conditioned, s.used, s.within_median, s.inter_median, s.time_mean_ms);
    return 0;
}

int run_benchmark_cmd(const fs::path& manifest_path, const fs::path& config_path,
                      const fs::path& out_dir) {
    const DatasetManifest manifest = load_manifest(manifest_path);
    const RunConfig config = load_run_config(config_path);
    const RunReport report = run_benchmark(manifest, config);
    return run_report_files(report, out_dir);
}

int run_report_cmd(const fs::path& scores_path, const fs::path& out_dir) {
    RunReport report;
    report.rows = read_scores_csv(scores_path);
    report.summaries = summarize(report.rows);
    return run_report_files(report, out_dir);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chart-based color correction benchmark"};
    app.require_subcommand(1);

    std::string manifest_path, config_path, out_path, image_path, scores_path;
    std::string method_name, model_path;
    SyntheticDatasetOptions dataset;

    CLI::App* augment = app.add_subcommand("augment", "write augmented replicas + manifest");
    augment->add_option("--manifest", manifest_path, "dataset manifest")->required();
    augment->add_option("--config", config_path, "run config")->required();
    augment->add_option("--out", out_path, "output directory")->required();

    CLI::App* correct = app.add_subcommand("correct", "correct a single image");
    correct->add_option("--manifest", manifest_path, "dataset manifest")->required();
    correct->add_option("--method", method_name, "method name, e.g. TPS2")->required();
    correct->add_option("--image", image_path, "image to correct")->required();
    correct->add_option("--out", out_path, "output image path")->required();
    correct->add_option("--dump-model", model_path, "also write the fitted model as JSON");

    CLI::App* benchmark = app.add_subcommand("benchmark", "run the full benchmark");
    benchmark->add_option("--manifest", manifest_path, "dataset manifest")->required();
    benchmark->add_option("--config", config_path, "run config")->required();
    benchmark->add_option("--out", out_path, "output directory")->required();

    CLI::App* report = app.add_subcommand("report", "recompute aggregates from scores.csv");
    report->add_option("--scores", scores_path, "scores.csv from a prior run")->required();
    report->add_option("--out", out_path, "output directory")->required();

    CLI::App* make = app.add_subcommand("make-dataset", "generate the synthetic dataset");
    make->add_option("--out", out_path, "output directory")->required();
    make->add_option("--images", dataset.image_count, "image count");
    make->add_option("--width", dataset.width, "image width");
    make->add_option("--height", dataset.height, "image height");
    make->add_option("--bit-depth", dataset.bit_depth, "8 or 12");
    make->add_option("--seed", dataset.seed, "generator seed");
    make->add_option("--patch-noise", dataset.patch_noise_sigma, "patch noise sigma");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (augment->parsed())
            return run_augment(manifest_path, config_path, out_path);
        if (correct->parsed())
            return run_correct(manifest_path, method_name, image_path, out_path, model_path);
        if (benchmark->parsed())
            return run_benchmark_cmd(manifest_path, config_path, out_path);
        if (report->parsed())
            return run_report_cmd(scores_path, out_path);
        if (make->parsed()) {
            const DatasetManifest manifest = make_synthetic_dataset(out_path, dataset);
            std::cout << "wrote " << manifest.entries.size() << " images under " << out_path
                      << "\n";
            return 0;
        }
    } catch (const ManifestError& err) {
        std::cerr << "manifest error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 1;
}
