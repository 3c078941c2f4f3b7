// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "chromafix/benchmark.hpp"
#include "chromafix/image_io.hpp"
#include "chromafix/manifest.hpp"
#include "chromafix/model_io.hpp"
#include "support/oracles.hpp"

#ifndef CHROMAFIX_CLI_PATH
#error "CHROMAFIX_CLI_PATH must point at the built binary"
#endif

using namespace chromafix;

namespace {

int run_cli(const std::string& args) {
    const std::string command =
        std::string(CHROMAFIX_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string quoted(const std::filesystem::path& path) {
    return "'" + path.string() + "'";
}

/// End-to-end fixture: dataset, config, benchmark output.
struct CliFixture {
    testsupport::TempDir dir{"cf-cli"};
    std::filesystem::path dataset = dir.path() / "dataset";
    std::filesystem::path config = dir.path() / "config.json";
    std::filesystem::path out = dir.path() / "out";

    CliFixture() {
        REQUIRE(run_cli("make-dataset --out " + quoted(dataset) +
                        " --images 2 --width 96 --height 64 --seed 5") == 0);
        std::ofstream(config) << R"({
            "schema_version": 1,
            "methods": ["PERF", "NONE", "AFF3", "TPS2"],
            "augment": {"seed": 11, "replicas": 2},
            "timing_repeats": 1
        })";
        REQUIRE(run_cli("benchmark --manifest " + quoted(dataset / "manifest.json") +
                        " --config " + quoted(config) + " --out " + quoted(out)) == 0);
    }
};

const CliFixture& cli_fixture() {
    static CliFixture f;
    return f;
}

}  // namespace

TEST_CASE("cli usage and help exit codes") {
    CHECK(run_cli("") == 1);
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("benchmark --help") == 0);
    CHECK(run_cli("no-such-command") == 1);
}

TEST_CASE("make-dataset writes a loadable dataset") {
    const auto& f = cli_fixture();
    const DatasetManifest manifest = load_manifest(f.dataset / "manifest.json");
    CHECK(manifest.entries.size() == 2);
    for (const auto& entry : manifest.entries) {
        CHECK(entry.bit_depth == 12);
        const ImageBuffer img = load_image(entry.resolved_path);
        CHECK(img.width == 96);
        CHECK(img.height == 64);
        CHECK(img.bit_depth == 12);
    }
}

TEST_CASE("benchmark subcommand writes the report files") {
    const auto& f = cli_fixture();
    CHECK(std::filesystem::exists(f.out / "scores.csv"));
    CHECK(std::filesystem::exists(f.out / "summary.csv"));
    CHECK(std::filesystem::exists(f.out / "summary.json"));

    const std::vector<ScoreRow> rows = read_scores_csv(f.out / "scores.csv");
    CHECK(rows.size() == 2 * 2 * 4);
}

TEST_CASE("report subcommand reproduces the benchmark summary byte for byte") {
    const auto& f = cli_fixture();
    const auto report_out = f.dir.path() / "report-out";
    REQUIRE(run_cli("report --scores " + quoted(f.out / "scores.csv") + " --out " +
                    quoted(report_out)) == 0);
    CHECK(slurp(report_out / "summary.csv") == slurp(f.out / "summary.csv"));
    CHECK(slurp(report_out / "summary.json") == slurp(f.out / "summary.json"));
}

TEST_CASE("augment subcommand writes replicas and a derived manifest") {
    const auto& f = cli_fixture();
    const auto aug_out = f.dir.path() / "augmented";
    REQUIRE(run_cli("augment --manifest " + quoted(f.dataset / "manifest.json") + " --config " +
                    quoted(f.config) + " --out " + quoted(aug_out)) == 0);

    const DatasetManifest augmented = load_manifest(aug_out / "manifest.json");
    CHECK(augmented.entries.size() == 4);  // 2 images x 2 replicas
    for (const auto& entry : augmented.entries) {
        CHECK(entry.bit_depth == 8);
        CHECK(load_image(entry.resolved_path).bit_depth == 8);
    }
    CHECK(std::filesystem::exists(aug_out / "images" / "img_000_r00.png"));
    CHECK(std::filesystem::exists(aug_out / "images" / "img_001_r01.png"));
}

TEST_CASE("correct subcommand fixes an image and dumps the model") {
    const auto& f = cli_fixture();
    const DatasetManifest manifest = load_manifest(f.dataset / "manifest.json");
    const auto input = manifest.entries.front().resolved_path;
    const auto corrected_path = f.dir.path() / "corrected.png";
    const auto model_path = f.dir.path() / "model.json";

    REQUIRE(run_cli("correct --manifest " + quoted(f.dataset / "manifest.json") + " --method TPS2" +
                    " --image " + quoted(input) + " --out " + quoted(corrected_path) +
                    " --dump-model " + quoted(model_path)) == 0);

    const ImageBuffer corrected = load_image(corrected_path);
    CHECK(corrected.bit_depth == 8);
    CHECK(corrected.width == 96);
    CHECK(corrected.height == 64);

    const CorrectionModel model = load_model(model_path);
    CHECK(model.method == MethodId::Tps2);
    CHECK(std::holds_alternative<TpsModel>(model.body));
}

TEST_CASE("cli error exit codes distinguish manifest problems") {
    const auto& f = cli_fixture();

    SUBCASE("missing manifest file is an io error") {
        CHECK(run_cli("benchmark --manifest /no/such/manifest.json --config " + quoted(f.config) +
                      " --out /tmp/cf-unused") == 1);
    }
    SUBCASE("invalid manifest contents") {
        testsupport::TempDir dir("cf-cli-badmanifest");
        std::ofstream(dir.path() / "manifest.json") << R"({"schema_version": 99})";
        CHECK(run_cli("benchmark --manifest " + quoted(dir.path() / "manifest.json") +
                      " --config " + quoted(f.config) + " --out /tmp/cf-unused") == 2);
    }
    SUBCASE("malformed config") {
        testsupport::TempDir dir("cf-cli-badconfig");
        std::ofstream(dir.path() / "config.json") << "{";
        CHECK(run_cli("benchmark --manifest " + quoted(f.dataset / "manifest.json") +
                      " --config " + quoted(dir.path() / "config.json") +
                      " --out /tmp/cf-unused") == 1);
    }
    SUBCASE("unknown method in correct") {
        CHECK(run_cli("correct --manifest " + quoted(f.dataset / "manifest.json") +
                      " --method WAT9 --image " +
                      quoted(f.dataset / "images" / "img_000.png") + " --out /tmp/cf-out.png") ==
              1);
    }
}
