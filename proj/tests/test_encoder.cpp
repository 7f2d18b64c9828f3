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
#include "dlacs/encoder.hpp"
#include "dlacs/error.hpp"
#include "dlacs/linear_decoder.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

using namespace dlacs;
using namespace dlacs::testing;

namespace {

struct CountingArith {
    std::uint64_t muls = 0;
    std::uint64_t adds = 0;
    std::uint64_t divs = 0;
    std::int32_t mul(std::int32_t a, std::int32_t b)
    {
        ++muls;
        return a * b;
    }
    std::int32_t add(std::int32_t a, std::int32_t b)
    {
        ++adds;
        return a + b;
    }
    std::int32_t div_round(std::int32_t v, std::int32_t q)
    {
        ++divs;
        return PlainArith::div_round(v, q);
    }
};

// Straight dot product per block, no shared code with the encoder.
std::int64_t block_dot(const BayerFrame& f, const std::vector<std::int8_t>& w, std::uint32_t kx, std::uint32_t ky,
                       std::uint32_t c, std::uint32_t bx, std::uint32_t by)
{
    std::int64_t s = 0;
    for (std::uint32_t v = 0; v < ky; ++v) {
        for (std::uint32_t u = 0; u < kx; ++u) {
            s += std::int64_t(f.at(bx * kx + u, by * ky + v)) * w[(c * ky + v) * kx + u];
        }
    }
    return s;
}

double q_error(const std::vector<std::int32_t>& values, std::uint32_t q)
{
    double e = 0.0;
    for (auto v : values) {
        const double level = std::clamp(std::round(double(v) / q), -128.0, 127.0);
        const double d = level * q - v;
        e += d * d;
    }
    return e / double(values.size());
}

} // namespace

TEST_CASE("unit mask sums the block")
{
    const auto f = frame_from(2, 2, {1, 2, 3, 4});
    const std::vector<std::int8_t> ones{1, 1, 1, 1};
    const auto out = compress(f, IntKernel{2, 2, 1, ones});
    CHECK(out.values == std::vector<std::int32_t>{10});
}

TEST_CASE("two masks on one block")
{
    const auto f = frame_from(2, 2, {1, 2, 3, 4});
    const std::vector<std::int8_t> w{1, 1, 1, 1, -1, 1, -1, 1};
    const auto out = compress(f, IntKernel{2, 2, 2, w});
    CHECK(out.values == std::vector<std::int32_t>{10, 2});
    CHECK(out.blocks_x == 1);
    CHECK(out.blocks_y == 1);
    CHECK(out.count == 2);
}

TEST_CASE("zero masks give zero output")
{
    const auto f = random_frame(32, 16, 9);
    const std::vector<std::int8_t> zeros(8 * 8 * 4, 0);
    const auto out = compress(f, IntKernel{8, 8, 4, zeros});
    CHECK(out.values.size() == 4 * 2 * 4);
    CHECK(std::all_of(out.values.begin(), out.values.end(), [](auto v) { return v == 0; }));
}

TEST_CASE("compress matches the dot-product oracle")
{
    for (std::uint32_t k : {2u, 4u, 8u, 16u, 32u}) {
        for (std::uint32_t ky : {k, k == 2 ? 4u : k / 2}) {
            const auto f = random_frame(k * 3, ky * 2, k + ky);
            const auto w = random_masks(std::size_t(k) * ky * 4, 4, k * 31 + ky);
            const auto out = compress(f, IntKernel{k, ky, 4, w});
            REQUIRE(out.blocks_x == 3);
            REQUIRE(out.blocks_y == 2);
            for (std::uint32_t c = 0; c < 4; ++c) {
                for (std::uint32_t by = 0; by < 2; ++by) {
                    for (std::uint32_t bx = 0; bx < 3; ++bx) {
                        CHECK(out.at(c, by, bx) == block_dot(f, w, k, ky, c, bx, by));
                    }
                }
            }
            // the generic template agrees with whatever fast path compress takes
            PlainArith plain;
            CHECK(compress_with(f, IntKernel{k, ky, 4, w}, plain) == out);
        }
    }
}

TEST_CASE("worst-case accumulator stays exact")
{
    BayerFrame f(32, 32);
    std::fill(f.samples.begin(), f.samples.end(), 255);
    const std::vector<std::int8_t> w(32 * 32, -128);
    const auto out = compress(f, IntKernel{32, 32, 1, w});
    CHECK(out.values[0] == -255 * 32 * 32 * 128);
}

TEST_CASE("compress is linear")
{
    const auto w = random_masks(8 * 8 * 4, 4, 5);
    const IntKernel k{8, 8, 4, w};
    for (int trial = 0; trial < 10; ++trial) {
        auto f1 = random_frame(64, 32, 100 + trial);
        auto f2 = random_frame(64, 32, 200 + trial);
        const int a = 1 + trial % 3;
        BayerFrame mix(64, 32);
        for (std::size_t i = 0; i < mix.size(); ++i) {
            f1.samples[i] = std::uint8_t(f1.samples[i] / 4);
            f2.samples[i] = std::uint8_t(f2.samples[i] / 4);
            mix.samples[i] = std::uint8_t(a * f1.samples[i] + f2.samples[i]);
        }
        const auto c1 = compress(f1, k);
        const auto c2 = compress(f2, k);
        const auto cm = compress(mix, k);
        for (std::size_t i = 0; i < cm.values.size(); ++i) {
            CHECK(cm.values[i] == a * c1.values[i] + c2.values[i]);
        }
    }
}

TEST_CASE("non-divisible frame asks for a crop")
{
    const auto f = random_frame(2048, 3864, 1);
    const auto w = random_masks(16 * 16 * 4, 4, 1);
    CHECK_THROWS_WITH_AS(compress(f, IntKernel{16, 16, 4, w}), doctest::Contains("pad or crop required"), Error);
    CHECK_THROWS_WITH_AS(compress(f, IntKernel{16, 16, 4, w}), doctest::Contains("2048x3856"), Error);
    const std::vector<std::int8_t> short_kernel(10, 1);
    CHECK_THROWS_AS(compress(random_frame(8, 8, 1), IntKernel{8, 8, 1, short_kernel}), Error);
}

TEST_CASE("instrumented encoder counts exactly n_c mul and add per pixel")
{
    for (std::uint32_t k : {8u, 16u, 32u}) {
        const auto f = random_frame(k * 4, k * 2, k);
        const auto w = random_masks(std::size_t(k) * k * 4, 4, k);
        CountingArith arith;
        const auto raw = compress_with(f, IntKernel{k, k, 4, w}, arith);
        quantize_with(raw, 37, arith);
        const auto pixels = f.size();
        CHECK(arith.muls == 4 * pixels);
        CHECK(arith.adds == 4 * pixels);
        CHECK(arith.divs * k * k == 4 * pixels);

        const auto ops = count_ops(k, k, 4, CompressionMode::Bayer).dlacs;
        CHECK(Rational::make(std::int64_t(arith.muls), std::int64_t(pixels)) == ops.multiplies);
        CHECK(Rational::make(std::int64_t(arith.adds), std::int64_t(pixels)) == ops.additions);
        CHECK(Rational::make(std::int64_t(arith.divs), std::int64_t(pixels)) == ops.divisions);
    }
}

TEST_CASE("quantize examples")
{
    CompRaw c{3, 1, 1, {100, -2000, 0}};
    const auto q = quantize(c, 10);
    CHECK(q.stored == std::vector<std::uint8_t>{138, 0, 128});
    CHECK(q.q_scale == 10);

    CompRaw big{2, 1, 1, {5000, -5000}};
    CHECK(quantize(big, 1).stored == std::vector<std::uint8_t>{255, 0});

    CompRaw halves{4, 1, 1, {5, -5, 15, -15}};
    const auto h = quantize(halves, 10);
    CHECK(h.stored == std::vector<std::uint8_t>{129, 127, 130, 126});

    CHECK_THROWS_AS(quantize(c, 0), Error);
}

TEST_CASE("quantize at Q=1 is the identity in range")
{
    CompRaw c{256, 1, 1, {}};
    for (int v = -128; v <= 127; ++v) {
        c.values.push_back(v);
    }
    const auto back = dequantize(quantize(c, 1));
    for (std::size_t i = 0; i < c.values.size(); ++i) {
        CHECK(back.values[i] == double(c.values[i]));
    }
}

TEST_CASE("quantization error is at most Q/2 without clamping")
{
    std::mt19937_64 rng(8);
    for (std::uint32_t q : {1u, 2u, 3u, 10u, 255u, 4096u}) {
        const auto lim = std::int64_t(127.5 * q);
        std::uniform_int_distribution<std::int64_t> pick(-lim, lim);
        CompRaw c{500, 1, 1, {}};
        for (int i = 0; i < 500; ++i) {
            c.values.push_back(std::int32_t(pick(rng)));
        }
        const auto back = dequantize(quantize(c, q));
        for (std::size_t i = 0; i < c.values.size(); ++i) {
            CHECK(std::abs(back.values[i] - c.values[i]) <= q / 2.0);
        }
    }
}

TEST_CASE("quantize agrees with integer rounding at boundaries and extremes")
{
    // half away from zero, clamped, in 64-bit integers
    const auto expect = [](std::int64_t v, std::int64_t q) {
        const std::int64_t m = (2 * (v < 0 ? -v : v) + q) / (2 * q);
        const std::int64_t level = std::clamp<std::int64_t>(v < 0 ? -m : m, -128, 127);
        return std::uint8_t(level + 128);
    };
    std::mt19937_64 rng(81);
    const std::int32_t lo = std::numeric_limits<std::int32_t>::min();
    const std::int32_t hi = std::numeric_limits<std::int32_t>::max();
    for (std::uint32_t q : {1u, 2u, 3u, 7u, 10u, 218u, 4095u, 4096u, 65537u, 0x7FFFFFFFu}) {
        CompRaw c{0, 1, 1, {lo, hi, lo + 1, hi - 1, 0, 1, -1}};
        for (std::int64_t k = -130; k <= 130; ++k) {
            for (std::int64_t d : {-1, 0, 1}) {
                const std::int64_t v = k * std::int64_t(q) + (std::int64_t(q) / 2) * (k < 0 ? -1 : 1) + d;
                if (v >= lo && v <= hi) {
                    c.values.push_back(std::int32_t(v));
                }
            }
        }
        std::uniform_int_distribution<std::int32_t> pick(lo, hi);
        for (int i = 0; i < 2000; ++i) {
            c.values.push_back(pick(rng));
        }
        c.blocks_x = std::uint32_t(c.values.size());
        const auto got = quantize(c, q);
        std::size_t mismatches = 0;
        for (std::size_t i = 0; i < c.values.size(); ++i) {
            mismatches += got.stored[i] != expect(c.values[i], q);
        }
        CHECK_MESSAGE(mismatches == 0, "q=" << q);
    }
}

TEST_CASE("q-scale selection: forced optimum and ties")
{
    CompRaw in_range{256, 1, 1, {}};
    for (int v = -128; v <= 127; ++v) {
        in_range.values.push_back(v);
    }
    CHECK(select_q_scale(std::span<const CompRaw>(&in_range, 1)) == 1);

    CompRaw zeros{16, 1, 1, std::vector<std::int32_t>(16, 0)};
    CHECK(select_q_scale(std::span<const CompRaw>(&zeros, 1)) == 1);

    CHECK_THROWS_AS(select_q_scale(std::span<const CompRaw>()), Error);
    const std::vector<std::uint32_t> no_grid;
    CHECK_THROWS_AS(select_q_scale(std::span<const CompRaw>(&zeros, 1), no_grid), Error);
}

TEST_CASE("q-scale selection matches an exhaustive re-scan")
{
    const auto w = random_masks(8 * 8 * 4, 4, 77);
    const auto raw = compress(random_frame(256, 256, 77), IntKernel{8, 8, 4, w});
    const auto grid = default_q_grid();
    REQUIRE(grid.size() == 4096);
    CHECK(grid.front() == 1);
    CHECK(grid.back() == 4096);
    std::uint32_t best = 0;
    double best_err = std::numeric_limits<double>::infinity();
    for (std::uint32_t q = 1; q <= 4096; ++q) {
        const double e = q_error(raw.values, q);
        if (e < best_err) {
            best_err = e;
            best = q;
        }
    }
    CHECK(select_q_scale(std::span<const CompRaw>(&raw, 1)) == best);
}

TEST_CASE("rgb compression is per plane")
{
    RgbImage gray(768, 512);
    const auto g = random_frame(768, 512, 4, Pattern::Plain);
    for (int c = 0; c < 3; ++c) {
        gray.set_plane(c, g);
    }
    const auto w = random_masks(8 * 8 * 4, 4, 4);
    const auto out = compress_rgb(gray, IntKernel{8, 8, 4, w});
    CHECK(out[0] == out[1]);
    CHECK(out[1] == out[2]);
    CHECK(out[0].blocks_x == 96);
    CHECK(out[0].blocks_y == 64);
    const auto stored = 3 * quantize(out[0], 100).stored.size();
    CHECK(Rational::make(std::int64_t(stored), 3 * 768 * 512) == Rational{1, 16});

    const auto w32 = random_masks(32 * 32 * 4, 4, 4);
    const auto out32 = compress_rgb(gray, IntKernel{32, 32, 4, w32});
    CHECK(Rational::make(std::int64_t(out32[0].values.size()), 768 * 512) == Rational{1, 256});
}

TEST_CASE("closed-form compression ratios")
{
    CHECK(compression_ratio(8, 8, 4, CompressionMode::Bayer) == Rational{1, 48});
    CHECK(compression_ratio(16, 16, 4, CompressionMode::Bayer) == Rational{1, 192});
    CHECK(compression_ratio(32, 32, 4, CompressionMode::Bayer) == Rational{1, 768});
    CHECK(compression_ratio(1, 1, 1, CompressionMode::Rgb) == Rational{1, 1});
    CHECK(compression_ratio(8, 8, 4, CompressionMode::Rgb) == Rational{1, 16});
    CHECK_THROWS_AS(compression_ratio(0, 8, 4, CompressionMode::Rgb), Error);
}
