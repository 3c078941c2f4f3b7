// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "chromafix/manifest.hpp"
#include "chromafix/metrics.hpp"
#include "chromafix/model.hpp"

namespace chromafix {

/// One (image, replica, method) result row.
struct ScoreRow {
    int image_index = 0;
    std::string image_id;
    int replica = 0;
    ScoreCard card;
    double fit_time_ms = 0.0;
};

/// Per-method aggregate over all rows of a run. Distance statistics cover
/// only non-failed corrections; the counts cover everything.
struct MethodSummary {
    MethodId method = MethodId::None;
    int total = 0;
    int failed = 0;
    int ill_conditioned = 0;
    int used = 0;  ///< rows entering the distance statistics
    double within_mu = 0, within_sigma = 0, within_median = 0, within_mu_pct = 0;
    double inter_mu = 0, inter_sigma = 0, inter_median = 0, inter_mu_pct = 0;
    double time_mean_ms = 0;
};

struct RunReport {
    std::vector<ScoreRow> rows;
    std::vector<MethodSummary> summaries;
};

/// Worker count for the replica pipeline: CHROMAFIX_THREADS when set,
/// otherwise the hardware concurrency.
int worker_count();

/// Runs the full pipeline: per ground-truth image, generate seeded augmented
/// replicas, extract chart colors, fit every configured method, apply it,
/// score it against the reference chart and the ground truth, and time the
/// image correction. Singular fits become failed + ill-conditioned rows
/// instead of aborting. Rows come back in deterministic (image, replica,
/// method) order regardless of the worker count.
RunReport run_benchmark(const DatasetManifest& manifest, const RunConfig& config);

/// Median wall-clock time of apply_image over `repeats` runs after one
/// untimed warm-up, in milliseconds.
double time_correction(const CorrectionModel& model, const ImageBuffer& img, int repeats);

/// Writes scores.csv, summary.csv and summary.json under output_dir.
void emit_report(const RunReport& report, const std::filesystem::path& output_dir);

/// Reads back a scores.csv written by emit_report.
std::vector<ScoreRow> read_scores_csv(const std::filesystem::path& path);

/// Recomputes the per-method aggregates from raw rows; emit_report and the
/// `report` subcommand share this.
std::vector<MethodSummary> summarize(const std::vector<ScoreRow>& rows);

}  // namespace chromafix
