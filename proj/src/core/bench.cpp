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
#include "dlacs/bench.hpp"

#include "dlacs/error.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace dlacs {

namespace {

// basis[k][n]: coefficient k = (u, v) row-major, sample n = (y, x) row-major.
struct DctBasis {
    std::array<std::array<double, 64>, 64> basis{};

    DctBasis()
    {
        std::array<std::array<double, 8>, 8> c{};
        for (int k = 0; k < 8; ++k) {
            const double alpha = k == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
            for (int n = 0; n < 8; ++n) {
                c[k][n] = alpha * std::cos((2 * n + 1) * k * std::numbers::pi / 16.0);
            }
        }
        for (int v = 0; v < 8; ++v) {
            for (int u = 0; u < 8; ++u) {
                for (int y = 0; y < 8; ++y) {
                    for (int x = 0; x < 8; ++x) {
                        basis[v * 8 + u][y * 8 + x] = c[v][y] * c[u][x];
                    }
                }
            }
        }
    }
};

const DctBasis& dct_basis()
{
    static const DctBasis b;
    return b;
}

inline void dct_direct(const double* in, double* out, const DctBasis& b)
{
    for (int k = 0; k < 64; ++k) {
        double sum = 0.0;
        for (int n = 0; n < 64; ++n) {
            sum += b.basis[k][n] * in[n];
        }
        out[k] = sum;
    }
}

using Clock = std::chrono::steady_clock;

double elapsed_ns(Clock::time_point start) { return std::chrono::duration<double, std::nano>(Clock::now() - start).count(); }

volatile double g_sink = 0.0;

double run_dct_frame(const BayerFrame& frame)
{
    const auto& b = dct_basis();
    double checksum = 0.0;
    alignas(64) double in[64];
    alignas(64) double out[64];
    for (std::uint32_t by = 0; by + 8 <= frame.height; by += 8) {
        for (std::uint32_t bx = 0; bx + 8 <= frame.width; bx += 8) {
            for (int y = 0; y < 8; ++y) {
                const std::uint8_t* row = frame.samples.data() + std::size_t(by + y) * frame.width + bx;
                for (int x = 0; x < 8; ++x) {
                    in[y * 8 + x] = double(row[x]) - 128.0;
                }
            }
            dct_direct(in, out, b);
            checksum += out[0] + out[63];
        }
    }
    return checksum;
}

double run_dlacs_frame(const BayerFrame& frame, const IntKernel& kernel, std::uint32_t q_scale)
{
    const auto codes = quantize(compress(frame, kernel), q_scale);
    return double(codes.stored.front()) + double(codes.stored.back());
}

Rational chroma_weight(ChromaSampling chroma)
{
    switch (chroma) {
    case ChromaSampling::Yuv444:
        return Rational::make(3, 1);
    case ChromaSampling::Yuv422:
        return Rational::make(2, 1);
    case ChromaSampling::Yuv420:
        return Rational::make(3, 2);
    }
    return Rational::make(3, 1);
}

Rational mul(Rational a, Rational b) { return Rational::make(a.num * b.num, a.den * b.den); }
Rational div(Rational a, Rational b) { return Rational::make(a.num * b.den, a.den * b.num); }

} // namespace

Block8x8 dct8x8(std::span<const double, 64> block)
{
    Block8x8 out{};
    dct_direct(block.data(), out.data(), dct_basis());
    return out;
}

Block8x8 idct8x8(std::span<const double, 64> coeffs)
{
    const auto& b = dct_basis();
    Block8x8 out{};
    for (int n = 0; n < 64; ++n) {
        double sum = 0.0;
        for (int k = 0; k < 64; ++k) {
            sum += b.basis[k][n] * coeffs[k];
        }
        out[n] = sum;
    }
    return out;
}

OpComparison count_ops(std::uint32_t kx, std::uint32_t ky, std::uint32_t count, CompressionMode mode,
                       ChromaSampling chroma)
{
    require(kx > 0 && ky > 0 && count > 0, "op count needs positive dimensions");
    // Samples per pixel the encoder touches: one for a mosaic, three for RGB planes.
    const std::int64_t planes = mode == CompressionMode::Bayer ? 1 : 3;
    OpComparison ops;
    ops.dlacs.multiplies = Rational::make(planes * count, 1);
    ops.dlacs.additions = Rational::make(planes * count, 1);
    ops.dlacs.divisions = Rational::make(planes * count, std::int64_t(kx) * ky);

    const Rational weight = chroma_weight(chroma);
    ops.jpeg_dct.multiplies = mul(Rational::make(64, 1), weight);
    ops.jpeg_dct.additions = mul(Rational::make(64, 1), weight);
    ops.jpeg_dct.divisions = Rational::make(0, 1);
    ops.jpeg_ratio = div(ops.jpeg_dct.multiplies, ops.dlacs.multiplies);
    return ops;
}

double median(std::vector<double> values)
{
    require(!values.empty(), "median of empty sample");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

BenchReport bench_encode_vs_dct(const BayerFrame& frame, std::uint32_t iterations, std::uint32_t mask_size)
{
    require(iterations >= 3, "benchmark needs at least 3 iterations");
    require(mask_size > 0, "mask size must be positive");
    require(frame.width >= std::max(8u, mask_size) && frame.height >= std::max(8u, mask_size),
            "frame smaller than one block");

    // Timing does not depend on mask values; fixed pseudo-random 4-bit masks.
    constexpr std::uint32_t kMasks = 4;
    std::vector<std::int8_t> weights(std::size_t(mask_size) * mask_size * kMasks);
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> pick(-8, 7);
    for (auto& w : weights) {
        w = static_cast<std::int8_t>(pick(rng));
    }
    const IntKernel kernel{mask_size, mask_size, kMasks, weights};

    // Same pixel count for both paths.
    const auto encode_frame = crop_frame(frame, 0, 0, frame.width / mask_size * mask_size,
                                         frame.height / mask_size * mask_size);
    const auto dct_frame = crop_frame(frame, 0, 0, encode_frame.width / 8 * 8, encode_frame.height / 8 * 8);
    const double pixels_dlacs = double(encode_frame.size());
    const double pixels_dct = double(dct_frame.size());

    g_sink = g_sink + run_dlacs_frame(encode_frame, kernel, 256) + run_dct_frame(dct_frame);

    BenchReport report;
    report.iterations = iterations;
    report.width = encode_frame.width;
    report.height = encode_frame.height;
    report.mask_size = mask_size;
    for (std::uint32_t i = 0; i < iterations; ++i) {
        auto start = Clock::now();
        g_sink = g_sink + run_dlacs_frame(encode_frame, kernel, 256);
        report.dlacs_samples.push_back(elapsed_ns(start) / pixels_dlacs);

        start = Clock::now();
        g_sink = g_sink + run_dct_frame(dct_frame);
        report.dct_samples.push_back(elapsed_ns(start) / pixels_dct);
    }
    report.ns_per_pixel_dlacs = median(report.dlacs_samples);
    report.ns_per_pixel_dct = median(report.dct_samples);
    report.ratio = report.ns_per_pixel_dct / report.ns_per_pixel_dlacs;
    return report;
}

std::string BenchReport::to_table() const
{
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(3);
    out << "frame           " << width << "x" << height << ", " << iterations << " iterations, " << threads
        << " thread\n";
    out << "encoder         " << mask_size << "x" << mask_size << "x4 integer masks\n";
    out << "ns/pixel DLACS  " << ns_per_pixel_dlacs << "\n";
    out << "ns/pixel DCT    " << ns_per_pixel_dct << "\n";
    out.precision(2);
    out << "DCT / DLACS     " << ratio << "x\n";
    return out.str();
}

BayerFrame daus_baseline(const BayerFrame& plane, std::uint32_t factor)
{
    require(factor >= 1, "factor must be >= 1");
    require(plane.width % factor == 0 && plane.height % factor == 0, "dimensions must be divisible by the factor");
    if (factor == 1) {
        return plane;
    }
    const std::uint32_t sw = plane.width / factor;
    const std::uint32_t sh = plane.height / factor;
    std::vector<double> small(std::size_t(sw) * sh, 0.0);
    const double area = double(factor) * factor;
    for (std::uint32_t y = 0; y < plane.height; ++y) {
        for (std::uint32_t x = 0; x < plane.width; ++x) {
            small[std::size_t(y / factor) * sw + x / factor] += plane.at(x, y);
        }
    }
    for (auto& v : small) {
        v /= area;
    }

    auto coord = [factor](std::uint32_t i, std::uint32_t n, std::uint32_t& i0, std::uint32_t& i1, double& f) {
        double s = (i + 0.5) / factor - 0.5;
        s = std::clamp(s, 0.0, double(n - 1));
        i0 = static_cast<std::uint32_t>(s);
        i1 = std::min(i0 + 1, n - 1);
        f = s - i0;
    };
    BayerFrame out(plane.width, plane.height, plane.pattern);
    for (std::uint32_t y = 0; y < plane.height; ++y) {
        std::uint32_t y0, y1;
        double fy;
        coord(y, sh, y0, y1, fy);
        for (std::uint32_t x = 0; x < plane.width; ++x) {
            std::uint32_t x0, x1;
            double fx;
            coord(x, sw, x0, x1, fx);
            const double top = small[std::size_t(y0) * sw + x0] * (1 - fx) + small[std::size_t(y0) * sw + x1] * fx;
            const double bot = small[std::size_t(y1) * sw + x0] * (1 - fx) + small[std::size_t(y1) * sw + x1] * fx;
            out.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::round(top * (1 - fy) + bot * fy), 0.0, 255.0));
        }
    }
    return out;
}

RgbImage daus_baseline(const RgbImage& image, std::uint32_t factor)
{
    RgbImage out(image.width, image.height);
    for (int c = 0; c < 3; ++c) {
        out.set_plane(c, daus_baseline(image.plane(c), factor));
    }
    return out;
}

} // namespace dlacs
