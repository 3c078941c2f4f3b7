// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the chromafix Project.

#include "chromafix/augment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "chromafix/errors.hpp"
#include "chromafix/rng.hpp"

namespace chromafix {

void AugmentSpec::validate() const {
    if (replicas < 1)
        throw ConfigError("augment: replicas must be >= 1");
    if (!(linear_contrast_range.first < linear_contrast_range.second))
        throw ConfigError("augment: linear contrast range must satisfy lo < hi");
    if (!(gamma_range.first < gamma_range.second) || gamma_range.first <= 0.0)
        throw ConfigError("augment: gamma range must satisfy 0 < lo < hi");
    if (crosstalk_strength < 0.0 || crosstalk_strength > 0.5)
        throw ConfigError("augment: crosstalk strength must be in [0, 0.5]");
}

AugmentParams draw_params(const AugmentSpec& spec, int replica_index) {
    spec.validate();
    if (replica_index < 0 || replica_index >= spec.replicas)
        throw std::out_of_range("draw_params: replica index out of range");

    CounterRng rng(spec.seed, static_cast<std::uint64_t>(replica_index));
    AugmentParams params;
    params.alpha = rng.uniform(spec.linear_contrast_range.first, spec.linear_contrast_range.second);
    params.gamma = rng.uniform(spec.gamma_range.first, spec.gamma_range.second);

    Eigen::Matrix3d mix = Eigen::Matrix3d::Identity();
    for (int row = 0; row < 3; ++row)
        for (int col = 0; col < 3; ++col)
            if (row != col)
                mix(row, col) = rng.uniform(0.0, spec.crosstalk_strength);
    for (int row = 0; row < 3; ++row)
        mix.row(row) /= mix.row(row).sum();
    params.mix = mix;
    return params;
}

ImageBuffer apply_augment(const AugmentParams& params, const ImageBuffer& img) {
    if (img.bit_depth != 8)
        throw std::invalid_argument("apply_augment: 8-bit images only");

    const bool unit_gamma = params.gamma == 1.0;
    ImageBuffer out = ImageBuffer::make(img.width, img.height, 8);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            RgbF v = img.at(x, y);
            v = params.alpha * (v.array() - 128.0) + 128.0;
            for (int ch = 0; ch < 3; ++ch) {
                const double clamped = std::clamp(v[ch], 0.0, 255.0);
                v[ch] = unit_gamma ? clamped
                                   : 255.0 * std::pow(clamped / 255.0, params.gamma);
            }
            v = params.mix * v;
            out.set(x, y, clamp_to_rgb8(v));
        }
    }
    return out;
}

ChartCorrespondence degrade_chart(const ChartCorrespondence& corr, int collapse_pairs,
                                  double noise_sigma, std::uint64_t seed) {
    corr.validate();
    const int n = corr.size();
    if (collapse_pairs < 0 || 2 * collapse_pairs > n)
        throw std::invalid_argument("degrade_chart: collapse_pairs must be <= N / 2");

    ChartCorrespondence out = corr;
    CounterRng rng(seed, 0);

    if (noise_sigma > 0.0) {
        for (RgbF& c : out.source)
            for (int ch = 0; ch < 3; ++ch)
                c[ch] = std::clamp(c[ch] + rng.normal(0.0, noise_sigma), 0.0, 255.0);
    }

    if (collapse_pairs > 0) {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        for (int i = n - 1; i > 0; --i)
            std::swap(order[i], order[rng.uniform_int(0, i)]);
        for (int p = 0; p < collapse_pairs; ++p)
            out.source[order[2 * p + 1]] = out.source[order[2 * p]];
    }
    return out;
}

}  // namespace chromafix
