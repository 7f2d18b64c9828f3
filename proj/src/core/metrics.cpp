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
#include "dlacs/metrics.hpp"

#include "dlacs/error.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace dlacs {

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = (0.01 * 255) * (0.01 * 255);
constexpr double kC2 = (0.03 * 255) * (0.03 * 255);

std::array<double, kWindow> gaussian_taps()
{
    std::array<double, kWindow> taps{};
    double sum = 0.0;
    for (int i = 0; i < kWindow; ++i) {
        const double d = i - kWindow / 2;
        taps[i] = std::exp(-d * d / (2 * kSigma * kSigma));
        sum += taps[i];
    }
    for (auto& t : taps) {
        t /= sum;
    }
    return taps;
}

struct SsimSum {
    double total = 0.0;
    std::size_t windows = 0;
};

// Separable Gaussian statistics over valid window positions.
SsimSum ssim_plane(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, std::uint32_t w, std::uint32_t h)
{
    require(w >= kWindow && h >= kWindow, "SSIM needs images of at least 11x11");
    static const auto taps = gaussian_taps();
    const std::uint32_t ow = w - kWindow + 1;
    const std::uint32_t oh = h - kWindow + 1;

    // Horizontal pass: five moment images of size ow x h.
    std::array<std::vector<double>, 5> horiz;
    for (auto& m : horiz) {
        m.assign(std::size_t(ow) * h, 0.0);
    }
    for (std::uint32_t y = 0; y < h; ++y) {
        for (std::uint32_t x = 0; x < ow; ++x) {
            double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
            for (int k = 0; k < kWindow; ++k) {
                const double pa = a[std::size_t(y) * w + x + k];
                const double pb = b[std::size_t(y) * w + x + k];
                sx += taps[k] * pa;
                sy += taps[k] * pb;
                sxx += taps[k] * pa * pa;
                syy += taps[k] * pb * pb;
                sxy += taps[k] * pa * pb;
            }
            const std::size_t i = std::size_t(y) * ow + x;
            horiz[0][i] = sx;
            horiz[1][i] = sy;
            horiz[2][i] = sxx;
            horiz[3][i] = syy;
            horiz[4][i] = sxy;
        }
    }

    SsimSum sum;
    for (std::uint32_t y = 0; y < oh; ++y) {
        for (std::uint32_t x = 0; x < ow; ++x) {
            std::array<double, 5> m{};
            for (int k = 0; k < kWindow; ++k) {
                const std::size_t i = std::size_t(y + k) * ow + x;
                for (int j = 0; j < 5; ++j) {
                    m[j] += taps[k] * horiz[j][i];
                }
            }
            const double mx = m[0];
            const double my = m[1];
            const double vx = m[2] - mx * mx;
            const double vy = m[3] - my * my;
            const double cov = m[4] - mx * my;
            sum.total += ((2 * mx * my + kC1) * (2 * cov + kC2)) / ((mx * mx + my * my + kC1) * (vx + vy + kC2));
            ++sum.windows;
        }
    }
    return sum;
}

void require_same(std::uint32_t wa, std::uint32_t ha, std::uint32_t wb, std::uint32_t hb)
{
    require(wa == wb && ha == hb, "image dimensions differ");
}

} // namespace

bool QualityReport::psnr_infinite() const { return std::isinf(psnr); }

double mse(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b)
{
    require(a.size() == b.size(), "image dimensions differ");
    require(!a.empty(), "empty image");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = double(a[i]) - double(b[i]);
        sum += d * d;
    }
    return sum / double(a.size());
}

double mse(std::span<const double> a, std::span<const double> b)
{
    require(a.size() == b.size(), "array sizes differ");
    require(!a.empty(), "empty array");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum / double(a.size());
}

double psnr_from_mse(double mse, double max_val)
{
    if (mse == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 10.0 * std::log10(max_val * max_val / mse);
}

double psnr(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, double max_val)
{
    return psnr_from_mse(mse(a, b), max_val);
}

double ssim(const BayerFrame& a, const BayerFrame& b)
{
    require_same(a.width, a.height, b.width, b.height);
    const auto s = ssim_plane(a.samples, b.samples, a.width, a.height);
    return s.total / double(s.windows);
}

double ssim(const RgbImage& a, const RgbImage& b)
{
    require_same(a.width, a.height, b.width, b.height);
    SsimSum total;
    for (int c = 0; c < 3; ++c) {
        const auto s = ssim_plane(a.planes[c], b.planes[c], a.width, a.height);
        total.total += s.total;
        total.windows += s.windows;
    }
    return total.total / double(total.windows);
}

QualityReport assess(const BayerFrame& a, const BayerFrame& b)
{
    require_same(a.width, a.height, b.width, b.height);
    QualityReport r;
    r.mse = mse(a.samples, b.samples);
    r.psnr = psnr_from_mse(r.mse);
    r.ssim = ssim(a, b);
    return r;
}

QualityReport assess(const RgbImage& a, const RgbImage& b)
{
    require_same(a.width, a.height, b.width, b.height);
    double sum = 0.0;
    for (int c = 0; c < 3; ++c) {
        sum += mse(a.planes[c], b.planes[c]);
    }
    QualityReport r;
    r.mse = sum / 3.0;
    r.psnr = psnr_from_mse(r.mse);
    r.ssim = ssim(a, b);
    return r;
}

} // namespace dlacs
