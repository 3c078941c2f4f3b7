// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#include "chromafix/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>

#include <json.hpp>

#include "chromafix/csv.hpp"
#include "chromafix/errors.hpp"
#include "chromafix/image_io.hpp"
#include "chromafix/rng.hpp"

namespace chromafix {

namespace {

struct ImageContext {
    const ManifestEntry* entry = nullptr;
    const std::vector<RgbF>* reference = nullptr;
    ImageBuffer ground_truth;    // native depth as loaded
    ImageBuffer ground_truth_8;  // 8-bit working copy
    std::vector<PatchRegion> mask;
};

struct TaskResult {
    std::vector<ScoreRow> rows;
    std::vector<std::optional<CorrectionModel>> models;  // empty on singular fits
};

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n == 0)
        return std::numeric_limits<double>::quiet_NaN();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double mean_of(const std::vector<double>& values) {
    if (values.empty())
        return std::numeric_limits<double>::quiet_NaN();
    double sum = 0.0;
    for (double v : values)
        sum += v;
    return sum / static_cast<double>(values.size());
}

double stddev_of(const std::vector<double>& values, double mu) {
    if (values.empty())
        return std::numeric_limits<double>::quiet_NaN();
    double sum = 0.0;
    for (double v : values)
        sum += (v - mu) * (v - mu);
    return std::sqrt(sum / static_cast<double>(values.size()));
}

ImageBuffer make_replica(const ImageContext& ctx, const RunConfig& config, int image_index,
                         int replica) {
    // Each image gets its own augmentation stream so adding images never
    // shifts the replicas of the others.
    AugmentSpec spec = config.augment;
    spec.seed = mix_key(config.augment.seed, static_cast<std::uint64_t>(image_index));
    return apply_augment(draw_params(spec, replica), ctx.ground_truth_8);
}

TaskResult score_replica(const ImageContext& ctx, const RunConfig& config, int image_index,
                         int replica) {
    const ImageBuffer replica_img = make_replica(ctx, config, image_index, replica);
    const auto& regions = ctx.entry->patch_regions;
    const std::vector<RgbF>& reference = *ctx.reference;

    std::vector<RgbF> source(regions.size());
    for (std::size_t i = 0; i < regions.size(); ++i)
        source[i] = extract_patch_color(replica_img, regions[i]);
    const double within_none = within_distance(source, reference);

    ChartCorrespondence corr;
    corr.source = source;
    corr.target = reference;

    TaskResult result;
    result.rows.reserve(config.methods.size());
    result.models.reserve(config.methods.size());

    for (MethodId method : config.methods) {
        ScoreRow row;
        row.image_index = image_index;
        row.image_id = ctx.entry->image_path;
        row.replica = replica;
        row.card.method = method;
        std::optional<CorrectionModel> model;

        if (method == MethodId::Perf) {
            model.emplace();
            model->method = method;
            std::vector<RgbF> chart(regions.size());
            for (std::size_t i = 0; i < regions.size(); ++i)
                chart[i] = extract_patch_color(ctx.ground_truth_8, regions[i]);
            row.card.within_mean = within_distance(chart, reference);
            row.card.pairwise_min = pairwise_min(chart);
            row.card.inter_mean = inter_distance(ctx.ground_truth_8, ctx.ground_truth, ctx.mask);
        } else if (method == MethodId::None) {
            model.emplace();
            model->method = method;
            row.card.within_mean = within_none;
            row.card.pairwise_min = pairwise_min(source);
            row.card.inter_mean = inter_distance(replica_img, ctx.ground_truth, ctx.mask);
        } else {
            const auto fit_start = std::chrono::steady_clock::now();
            try {
                model.emplace(make_method(method, corr, config.tps));
            } catch (const SingularFitError&) {
                model.reset();
            }
            row.fit_time_ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - fit_start)
                                  .count();
            if (model) {
                std::vector<RgbF> corrected(source.size());
                std::vector<RgbF> clamped(source.size());
                for (std::size_t i = 0; i < source.size(); ++i) {
                    corrected[i] = apply_color(*model, source[i]);
                    clamped[i] = to_rgbf(clamp_to_rgb8(corrected[i]));
                }
                row.card.within_mean = within_distance(corrected, reference);
                row.card.pairwise_min = pairwise_min(clamped);
                const ImageBuffer corrected_img = apply_image(*model, replica_img);
                row.card.inter_mean =
                    inter_distance(corrected_img, ctx.ground_truth, ctx.mask);
                row.card.failed = is_failed(row.card.within_mean, within_none);
                row.card.ill_conditioned = is_ill_conditioned(
                    row.card.failed, row.card.pairwise_min, config.thresholds);
            } else {
                row.card.failed = true;
                row.card.ill_conditioned = true;
            }
        }

        if (!std::isnan(row.card.within_mean))
            row.card.within_pct = normalize_distance(row.card.within_mean);
        if (!std::isnan(row.card.inter_mean))
            row.card.inter_pct = normalize_distance(row.card.inter_mean);
        result.rows.push_back(std::move(row));
        result.models.push_back(std::move(model));
    }
    return result;
}

}  // namespace

int worker_count() {
    if (const char* env = std::getenv("CHROMAFIX_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && parsed >= 1 && parsed <= 1024)
            return static_cast<int>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

double time_correction(const CorrectionModel& model, const ImageBuffer& img, int repeats) {
    if (repeats < 1)
        throw std::invalid_argument("time_correction: repeats must be >= 1");
    ImageBuffer sink = apply_image(model, img);  // warm-up
    std::vector<double> samples(static_cast<std::size_t>(repeats));
    for (int i = 0; i < repeats; ++i) {
        const auto start = std::chrono::steady_clock::now();
        sink = apply_image(model, img);
        samples[i] = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    }
    volatile std::uint16_t keep = sink.data.empty() ? 0 : sink.data[0];
    (void)keep;
    return median_of(std::move(samples));
}

RunReport run_benchmark(const DatasetManifest& manifest, const RunConfig& config) {
    config.validate();
    if (manifest.entries.empty())
        throw ManifestError("benchmark: manifest has no entries");

    std::vector<ImageContext> contexts(manifest.entries.size());
    for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
        const ManifestEntry& entry = manifest.entries[i];
        const std::string where = "entry " + std::to_string(i) + " (" + entry.image_path + ")";
        ImageContext& ctx = contexts[i];
        ctx.entry = &entry;
        ctx.reference = &manifest.reference_charts.at(entry.reference_chart_id);
        ctx.ground_truth = load_image(entry.resolved_path);
        if (ctx.ground_truth.bit_depth != entry.bit_depth)
            throw ManifestError(where + ": file is " +
                                std::to_string(ctx.ground_truth.bit_depth) +
                                "-bit, manifest says " + std::to_string(entry.bit_depth));
        for (const PatchRegion& region : entry.patch_regions)
            if (region.x + region.w > ctx.ground_truth.width ||
                region.y + region.h > ctx.ground_truth.height)
                throw ManifestError(where + ": patch " + std::to_string(region.patch_index) +
                                    " leaves the image");
        ctx.ground_truth_8 = ctx.ground_truth.bit_depth == 12
                                 ? quantize_12_to_8(ctx.ground_truth)
                                 : ctx.ground_truth;
        ctx.mask = dilate_regions(entry.patch_regions, config.mask_margin_px,
                                  ctx.ground_truth.width, ctx.ground_truth.height);
    }

    const int replicas = config.augment.replicas;
    const int task_count = static_cast<int>(contexts.size()) * replicas;
    std::vector<TaskResult> results(static_cast<std::size_t>(task_count));

    std::atomic<int> next_task{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto worker = [&] {
        for (;;) {
            const int task = next_task.fetch_add(1);
            if (task >= task_count)
                return;
            try {
                results[task] = score_replica(contexts[task / replicas], config,
                                              task / replicas, task % replicas);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
                next_task.store(task_count);
                return;
            }
        }
    };

    const int workers = std::clamp(worker_count(), 1, task_count);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i)
            pool.emplace_back(worker);
        for (std::thread& t : pool)
            t.join();
    }
    if (first_error)
        std::rethrow_exception(first_error);

    RunReport report;
    report.rows.reserve(results.size() * config.methods.size());

    // Timing runs serialized after the pool so medians are free of contention.
    for (int task = 0; task < task_count; ++task) {
        const ImageContext& ctx = contexts[task / replicas];
        TaskResult& result = results[task];
        ImageBuffer replica_img;
        bool have_replica = false;
        for (std::size_t i = 0; i < result.rows.size(); ++i) {
            ScoreRow& row = result.rows[i];
            if (result.models[i]) {
                const bool on_ground_truth = row.card.method == MethodId::Perf;
                if (!on_ground_truth && !have_replica) {
                    replica_img = make_replica(ctx, config, task / replicas, task % replicas);
                    have_replica = true;
                }
                row.card.exec_time_ms =
                    time_correction(*result.models[i],
                                    on_ground_truth ? ctx.ground_truth_8 : replica_img,
                                    config.timing_repeats);
            }
            report.rows.push_back(std::move(row));
        }
    }

    report.summaries = summarize(report.rows);
    return report;
}

std::vector<MethodSummary> summarize(const std::vector<ScoreRow>& rows) {
    std::vector<MethodSummary> summaries;
    std::vector<std::vector<double>> within, inter, times;

    auto slot = [&](MethodId method) -> std::size_t {
        for (std::size_t i = 0; i < summaries.size(); ++i)
            if (summaries[i].method == method)
                return i;
        summaries.push_back(MethodSummary{});
        summaries.back().method = method;
        within.emplace_back();
        inter.emplace_back();
        times.emplace_back();
        return summaries.size() - 1;
    };

    for (const ScoreRow& row : rows) {
        const std::size_t i = slot(row.card.method);
        MethodSummary& s = summaries[i];
        ++s.total;
        if (row.card.failed)
            ++s.failed;
        if (row.card.ill_conditioned)
            ++s.ill_conditioned;
        if (!row.card.failed) {
            ++s.used;
            within[i].push_back(row.card.within_mean);
            if (!std::isnan(row.card.inter_mean))
                inter[i].push_back(row.card.inter_mean);
        }
        if (!std::isnan(row.card.exec_time_ms))
            times[i].push_back(row.card.exec_time_ms);
    }

    for (std::size_t i = 0; i < summaries.size(); ++i) {
        MethodSummary& s = summaries[i];
        s.within_mu = mean_of(within[i]);
        s.within_sigma = stddev_of(within[i], s.within_mu);
        s.within_median = median_of(within[i]);
        s.within_mu_pct = normalize_distance(s.within_mu);
        s.inter_mu = mean_of(inter[i]);
        s.inter_sigma = stddev_of(inter[i], s.inter_mu);
        s.inter_median = median_of(inter[i]);
        s.inter_mu_pct = normalize_distance(s.inter_mu);
        s.time_mean_ms = mean_of(times[i]);
    }
    return summaries;
}

namespace {

constexpr const char* kScoresHeader =
    "image_index,image_id,replica,method,within_mean,within_pct,pairwise_min,"
    "inter_mean,inter_pct,failed,ill_conditioned,fit_time_ms,exec_time_ms";

constexpr const char* kSummaryHeader =
    "method,total,failed,ill_conditioned,used,within_mu,within_sigma,within_median,"
    "within_mu_pct,inter_mu,inter_sigma,inter_median,inter_mu_pct,time_mean_ms";

nlohmann::json summary_to_json(const MethodSummary& s) {
    return {{"method", to_string(s.method)},
            {"total", s.total},
            {"failed", s.failed},
            {"ill_conditioned", s.ill_conditioned},
            {"used", s.used},
            {"within_mu", s.within_mu},
            {"within_sigma", s.within_sigma},
            {"within_median", s.within_median},
            {"within_mu_pct", s.within_mu_pct},
            {"inter_mu", s.inter_mu},
            {"inter_sigma", s.inter_sigma},
            {"inter_median", s.inter_median},
            {"inter_mu_pct", s.inter_mu_pct},
            {"time_mean_ms", s.time_mean_ms}};
}

int parse_int(const std::string& field, const std::filesystem::path& path) {
    int v = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size())
        throw IoError("bad integer \"" + field + "\" in " + path.string());
    return v;
}

double parse_float(const std::string& field, const std::filesystem::path& path) {
    double v = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size())
        throw IoError("bad number \"" + field + "\" in " + path.string());
    return v;
}

}  // namespace

void emit_report(const RunReport& report, const std::filesystem::path& output_dir) {
    std::filesystem::create_directories(output_dir);

    {
        std::ofstream out(output_dir / "scores.csv", std::ios::binary);
        if (!out)
            throw IoError("cannot write " + (output_dir / "scores.csv").string());
        out << kScoresHeader << '\n';
        for (const ScoreRow& row : report.rows) {
            out << row.image_index << ',' << csv_escape(row.image_id) << ',' << row.replica
                << ',' << to_string(row.card.method) << ','
                << format_double(row.card.within_mean) << ','
                << format_double(row.card.within_pct) << ','
                << format_double(row.card.pairwise_min) << ','
                << format_double(row.card.inter_mean) << ','
                << format_double(row.card.inter_pct) << ',' << (row.card.failed ? 1 : 0) << ','
                << (row.card.ill_conditioned ? 1 : 0) << ',' << format_double(row.fit_time_ms)
                << ',' << format_double(row.card.exec_time_ms) << '\n';
        }
        if (!out)
            throw IoError("failed writing " + (output_dir / "scores.csv").string());
    }

    {
        std::ofstream out(output_dir / "summary.csv", std::ios::binary);
        if (!out)
            throw IoError("cannot write " + (output_dir / "summary.csv").string());
        out << kSummaryHeader << '\n';
        for (const MethodSummary& s : report.summaries) {
            out << to_string(s.method) << ',' << s.total << ',' << s.failed << ','
                << s.ill_conditioned << ',' << s.used << ',' << format_double(s.within_mu)
                << ',' << format_double(s.within_sigma) << ','
                << format_double(s.within_median) << ',' << format_double(s.within_mu_pct)
                << ',' << format_double(s.inter_mu) << ',' << format_double(s.inter_sigma)
                << ',' << format_double(s.inter_median) << ','
                << format_double(s.inter_mu_pct) << ',' << format_double(s.time_mean_ms)
                << '\n';
        }
        if (!out)
            throw IoError("failed writing " + (output_dir / "summary.csv").string());
    }

    {
        nlohmann::json doc;
        doc["schema_version"] = 1;
        nlohmann::json methods = nlohmann::json::array();
        for (const MethodSummary& s : report.summaries)
            methods.push_back(summary_to_json(s));
        doc["methods"] = std::move(methods);
        std::ofstream out(output_dir / "summary.json", std::ios::binary);
        if (!out)
            throw IoError("cannot write " + (output_dir / "summary.json").string());
        out << doc.dump(2) << '\n';
        if (!out)
            throw IoError("failed writing " + (output_dir / "summary.json").string());
    }
}

std::vector<ScoreRow> read_scores_csv(const std::filesystem::path& path) {
    const auto rows = read_csv(path);
    if (rows.empty())
        throw IoError("empty scores csv: " + path.string());

    std::vector<std::string> expected;
    {
        std::string header = kScoresHeader;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = header.find(',', start);
            expected.push_back(header.substr(start, comma - start));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
    }
    if (rows.front() != expected)
        throw IoError("unexpected scores csv header in " + path.string());

    std::vector<ScoreRow> parsed;
    parsed.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& fields = rows[r];
        if (fields.size() != expected.size())
            throw IoError("row " + std::to_string(r) + " of " + path.string() + " has " +
                          std::to_string(fields.size()) + " fields");
        ScoreRow row;
        row.image_index = parse_int(fields[0], path);
        row.image_id = fields[1];
        row.replica = parse_int(fields[2], path);
        const auto method = parse_method(fields[3]);
        if (!method)
            throw IoError("unknown method \"" + fields[3] + "\" in " + path.string());
        row.card.method = *method;
        row.card.within_mean = parse_float(fields[4], path);
        row.card.within_pct = parse_float(fields[5], path);
        row.card.pairwise_min = parse_float(fields[6], path);
        row.card.inter_mean = parse_float(fields[7], path);
        row.card.inter_pct = parse_float(fields[8], path);
        row.card.failed = parse_int(fields[9], path) != 0;
        row.card.ill_conditioned = parse_int(fields[10], path) != 0;
        row.fit_time_ms = parse_float(fields[11], path);
        row.card.exec_time_ms = parse_float(fields[12], path);
        parsed.push_back(std::move(row));
    }
    return parsed;
}

}  // namespace chromafix
