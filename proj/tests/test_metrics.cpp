// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#include <doctest.h>

#include <cmath>

#include "chromafix/chart.hpp"
#include "chromafix/metrics.hpp"
#include "chromafix/rng.hpp"

using namespace chromafix;

namespace {

const double kSqrt3 = std::sqrt(3.0);

}  // namespace

TEST_CASE("within_distance means over pairs") {
    const std::vector<RgbF> reference = {{0, 0, 0}, {10, 10, 10}};
    CHECK(within_distance(reference, reference) == 0.0);

    const std::vector<RgbF> corrected = {{1, 1, 1}, {13, 13, 13}};
    CHECK(within_distance(corrected, reference) ==
          doctest::Approx(2.0 * kSqrt3).epsilon(1e-12));

    const std::vector<RgbF> shorter = {{0, 0, 0}};
    CHECK_THROWS_AS(within_distance(shorter, reference), std::invalid_argument);
    CHECK_THROWS_AS(within_distance({}, {}), std::invalid_argument);
}

TEST_CASE("within_distance is permutation invariant when applied to both sides") {
    const std::vector<RgbF> a = {{1, 2, 3}, {40, 50, 60}, {200, 100, 0}};
    const std::vector<RgbF> b = {{0, 0, 0}, {45, 55, 65}, {190, 110, 10}};
    const std::vector<RgbF> a_perm = {a[2], a[0], a[1]};
    const std::vector<RgbF> b_perm = {b[2], b[0], b[1]};
    CHECK(within_distance(a, b) == doctest::Approx(within_distance(a_perm, b_perm)));
}

TEST_CASE("pairwise_min finds the closest pair") {
    const std::vector<RgbF> with_duplicate = {{5, 5, 5}, {100, 0, 0}, {5, 5, 5}};
    CHECK(pairwise_min(with_duplicate) == 0.0);

    const std::vector<RgbF> ladder = {{0, 0, 0}, {1, 1, 1}, {10, 10, 10}};
    CHECK(pairwise_min(ladder) == doctest::Approx(kSqrt3).epsilon(1e-12));

    CHECK_THROWS_AS(pairwise_min(std::vector<RgbF>{{1, 2, 3}}), std::invalid_argument);
}

TEST_CASE("macbeth reference chart has no collapsed pair") {
    CHECK(pairwise_min(macbeth_chart()) > kSqrt3);
}

TEST_CASE("failure criteria") {
    CHECK(!is_failed(5.0, 56.0));
    CHECK(is_failed(60.0, 56.0));
    CHECK(!is_failed(56.0, 56.0));  // strict

    const FailureThresholds thresholds;
    CHECK(is_ill_conditioned(true, 0.5, thresholds));
    CHECK(!is_ill_conditioned(false, 0.0, thresholds));
    CHECK(!is_ill_conditioned(true, 2.0, thresholds));
}

TEST_CASE("inter_distance excludes masked regions") {
    ImageBuffer truth = ImageBuffer::make(8, 4, 8);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 8; ++x)
            truth.set(x, y, Rgb8{100, 110, 120});

    SUBCASE("identical images give zero") {
        CHECK(inter_distance(truth, truth, {}) == 0.0);
    }

    SUBCASE("uniform +1 offset gives sqrt(3)") {
        ImageBuffer corrected = truth;
        for (auto& v : corrected.data)
            ++v;
        CHECK(inter_distance(corrected, truth, {}) == doctest::Approx(kSqrt3).epsilon(1e-12));
    }

    SUBCASE("masked pixels do not contribute") {
        ImageBuffer corrected = truth;
        corrected.set(0, 0, Rgb8{0, 0, 0});  // inside the mask
        const std::vector<PatchRegion> mask = {{1, 0, 0, 2, 2}};
        CHECK(inter_distance(corrected, truth, mask) == 0.0);
    }

    SUBCASE("full mask is an error") {
        const std::vector<PatchRegion> mask = {{1, 0, 0, 8, 4}};
        CHECK_THROWS_AS(inter_distance(truth, truth, mask), std::invalid_argument);
    }

    SUBCASE("dimension mismatch is an error") {
        const ImageBuffer other = ImageBuffer::make(4, 4, 8);
        CHECK_THROWS_AS(inter_distance(other, truth, {}), std::invalid_argument);
    }

    SUBCASE("12-bit ground truth compares at 8-bit scale") {
        ImageBuffer truth12 = ImageBuffer::make(8, 4, 12);
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 8; ++x)
                truth12.set(x, y, Rgb12{1608, 1768, 1928});  // 100.5, 110.5, 120.5
        CHECK(inter_distance(truth, truth12, {}) ==
              doctest::Approx(0.5 * kSqrt3).epsilon(1e-12));
    }
}

TEST_CASE("dilate_regions grows and clips") {
    const std::vector<PatchRegion> regions = {{1, 2, 3, 4, 5}, {2, 0, 0, 2, 2}};
    const auto grown = dilate_regions(regions, 2, 10, 10);
    REQUIRE(grown.size() == 2);
    CHECK(grown[0].x == 0);
    CHECK(grown[0].y == 1);
    CHECK(grown[0].w == 8);   // clipped to the image at x = 10
    CHECK(grown[0].h == 9);
    CHECK(grown[1].x == 0);
    CHECK(grown[1].y == 0);
    CHECK(grown[1].w == 4);
    CHECK(grown[1].h == 4);

    const auto untouched = dilate_regions(regions, 0, 10, 10);
    CHECK(untouched[0].w == 4);
}
