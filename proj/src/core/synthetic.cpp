/*
 * Copyright 2026 The dlacs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "dlacs/synthetic.hpp"

#include "dlacs/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace dlacs {

namespace {

std::vector<double> noise_field(std::uint32_t width, std::uint32_t height, std::mt19937_64& rng,
                                const SynthParams& params)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> field(std::size_t(width) * height, 0.0);
    for (const auto spacing : params.spacings) {
        require(spacing > 0, "octave spacing must be positive");
        const std::size_t gw = width / spacing + 2;
        const std::size_t gh = height / spacing + 2;
        std::vector<double> grid(gw * gh);
        for (auto& g : grid) {
            g = gauss(rng);
        }
        const double weight = std::pow(double(spacing), params.amplitude_exponent);
        for (std::uint32_t y = 0; y < height; ++y) {
            const double gy = (y + 0.5) / spacing;
            const auto y0 = static_cast<std::size_t>(gy);
            double fy = gy - y0;
            fy = fy * fy * (3 - 2 * fy);
            for (std::uint32_t x = 0; x < width; ++x) {
                const double gx = (x + 0.5) / spacing;
                const auto x0 = static_cast<std::size_t>(gx);
                double fx = gx - x0;
                fx = fx * fx * (3 - 2 * fx);
                const double a = grid[y0 * gw + x0];
                const double b = grid[y0 * gw + x0 + 1];
                const double c = grid[(y0 + 1) * gw + x0];
                const double d = grid[(y0 + 1) * gw + x0 + 1];
                const double v = a * (1 - fy) * (1 - fx) + b * (1 - fy) * fx + c * fy * (1 - fx) + d * fy * fx;
                field[std::size_t(y) * width + x] += weight * v;
            }
        }
    }
    return field;
}

std::vector<std::uint8_t> to_samples(const std::vector<double>& field, double lo, double hi, const SynthParams& p)
{
    std::vector<std::uint8_t> out(field.size());
    const double span = hi > lo ? hi - lo : 1.0;
    for (std::size_t i = 0; i < field.size(); ++i) {
        const double v = p.low + (field[i] - lo) / span * (p.high - p.low);
        out[i] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    }
    return out;
}

} // namespace

BayerFrame synthesize_frame(std::uint32_t width, std::uint32_t height, std::uint64_t seed, const SynthParams& params)
{
    require(width > 0 && height > 0, "synthetic frame needs positive dimensions");
    std::mt19937_64 rng(seed);
    const auto field = noise_field(width, height, rng, params);
    const auto [lo, hi] = std::minmax_element(field.begin(), field.end());
    BayerFrame frame(width, height, Pattern::RGGB);
    frame.samples = to_samples(field, *lo, *hi, params);
    return frame;
}

RgbImage synthesize_rgb(std::uint32_t width, std::uint32_t height, std::uint64_t seed, const SynthParams& params)
{
    require(width > 0 && height > 0, "synthetic image needs positive dimensions");
    std::mt19937_64 rng(seed);
    const auto luma = noise_field(width, height, rng, params);
    const auto chroma_a = noise_field(width, height, rng, params);
    const auto chroma_b = noise_field(width, height, rng, params);

    std::array<std::vector<double>, 3> rgb;
    for (auto& p : rgb) {
        p.resize(luma.size());
    }
    for (std::size_t i = 0; i < luma.size(); ++i) {
        rgb[0][i] = luma[i] + 0.35 * chroma_a[i];
        rgb[1][i] = luma[i] - 0.2 * chroma_a[i] - 0.2 * chroma_b[i];
        rgb[2][i] = luma[i] + 0.35 * chroma_b[i];
    }
    // One shared normalization keeps the planes' relative levels.
    double lo = rgb[0][0];
    double hi = rgb[0][0];
    for (const auto& p : rgb) {
        const auto [a, b] = std::minmax_element(p.begin(), p.end());
        lo = std::min(lo, *a);
        hi = std::max(hi, *b);
    }
    RgbImage image(width, height);
    for (int c = 0; c < 3; ++c) {
        image.planes[c] = to_samples(rgb[c], lo, hi, params);
    }
    return image;
}

} // namespace dlacs
