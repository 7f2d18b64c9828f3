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
#include "dlacs/encoder.hpp"
#include "dlacs/error.hpp"
#include "dlacs/linear_decoder.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace dlacs;
using namespace dlacs::testing;

namespace {

std::vector<double> normals(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) {
        x = g(rng);
    }
    return v;
}

double dot(const std::vector<double>& a, const std::vector<double>& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

} // namespace

TEST_CASE("dequantize examples")
{
    const CompQ q{3, 1, 1, 10, {138, 128, 0}};
    const auto d = dequantize(q);
    CHECK(d.values == std::vector<double>{100.0, 0.0, -1280.0});

    CompRaw multiples{5, 1, 1, {-70, -7, 0, 14, 889}};
    const auto back = dequantize(quantize(multiples, 7));
    for (std::size_t i = 0; i < multiples.values.size(); ++i) {
        CHECK(back.values[i] == double(multiples.values[i]));
    }
}

TEST_CASE("transpose decode broadcasts and scales")
{
    const std::vector<double> ones{1, 1, 1, 1};
    const auto out = transpose_decode(CompReal{1, 1, 1, {1.0}}, RealKernel{2, 2, 1, ones});
    CHECK(out.width == 2);
    CHECK(out.height == 2);
    CHECK(out.values == std::vector<double>{1, 1, 1, 1});

    const auto zero = transpose_decode(CompReal{3, 2, 1, std::vector<double>(6, 0.0)}, RealKernel{2, 2, 1, ones});
    CHECK(zero.values == std::vector<double>(24, 0.0));

    const std::vector<double> s{2.5};
    const auto scaled = transpose_decode(CompReal{3, 1, 1, {1.0, -2.0, 4.0}}, RealKernel{1, 1, 1, s});
    CHECK(scaled.values == std::vector<double>{2.5, -5.0, 10.0});

    CHECK_THROWS_AS(transpose_decode(CompReal{1, 1, 2, {1.0, 2.0}}, RealKernel{2, 2, 1, ones}), Error);
}

TEST_CASE("transpose decode tiles blocks without overlap")
{
    // two masks on 2x2 blocks, 2x1 blocks
    const std::vector<double> d{1, 2, 3, 4, 10, 20, 30, 40};
    const CompReal comp{2, 1, 2, {1.0, 2.0, 0.5, -1.0}}; // [mask][by][bx]
    const auto out = transpose_decode(comp, RealKernel{2, 2, 2, d});
    REQUIRE(out.width == 4);
    REQUIRE(out.height == 2);
    // block 0: 1*[1 2;3 4] + 0.5*[10 20;30 40]; block 1: 2*[1 2;3 4] - [10 20;30 40]
    CHECK(out.values == std::vector<double>{6, 12, -8, -16, 18, 24, -24, -32});
}

TEST_CASE("transpose decode is the adjoint of the blocked sum")
{
    struct Shape {
        std::uint32_t kx, ky, count, bx, by;
    };
    for (auto s : {Shape{2, 2, 1, 3, 2}, Shape{8, 8, 4, 5, 3}, Shape{4, 2, 3, 2, 7}, Shape{16, 16, 4, 2, 2}}) {
        const auto k = normals(std::size_t(s.kx) * s.ky * s.count, s.kx * 100 + s.count);
        const RealKernel kernel{s.kx, s.ky, s.count, k};
        const DecodedFrame f{s.bx * s.kx, s.by * s.ky, normals(std::size_t(s.bx) * s.kx * s.by * s.ky, 5)};
        const CompReal g{s.bx, s.by, s.count, normals(std::size_t(s.bx) * s.by * s.count, 6)};
        const double lhs = dot(compress_float(f, kernel).values, g.values);
        const double rhs = dot(f.values, transpose_decode(g, kernel).values);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(std::abs(lhs), 1.0));
    }
}

TEST_CASE("float blocked sum agrees with the integer encoder")
{
    const auto f = random_frame(24, 16, 12);
    const auto w = random_masks(8 * 8 * 4, 4, 12);
    const std::vector<double> wd(w.begin(), w.end());
    DecodedFrame df{24, 16, std::vector<double>(f.samples.begin(), f.samples.end())};
    const auto real = compress_float(df, RealKernel{8, 8, 4, wd});
    const auto raw = compress(f, IntKernel{8, 8, 4, w});
    for (std::size_t i = 0; i < raw.values.size(); ++i) {
        CHECK(real.values[i] == double(raw.values[i]));
    }
}

TEST_CASE("identity basis reconstructs exactly")
{
    for (std::uint32_t k : {1u, 2u, 4u}) {
        const std::uint32_t n = k * k;
        std::vector<std::int8_t> eye(std::size_t(n) * n, 0);
        std::vector<double> eyed(eye.size(), 0.0);
        for (std::uint32_t c = 0; c < n; ++c) {
            eye[c * n + c] = 1;
            eyed[c * n + c] = 1.0;
        }
        const auto f = random_frame(k * 6, k * 4, k);
        const auto raw = compress(f, IntKernel{k, k, n, eye});
        const CompReal comp{raw.blocks_x, raw.blocks_y, raw.count, {raw.values.begin(), raw.values.end()}};
        const auto out = decode_to_frame(transpose_decode(comp, RealKernel{k, k, n, eyed}));
        CHECK(out == f);
    }
}

TEST_CASE("decode_to_frame clamps and rounds half away")
{
    const DecodedFrame d{5, 1, {255.6, -3.2, 127.5, 0.49, 254.5}};
    const auto f = decode_to_frame(d, Pattern::Plain);
    CHECK(f.samples == std::vector<std::uint8_t>{255, 0, 128, 0, 255});
    CHECK(f.pattern == Pattern::Plain);
}

TEST_CASE("decode_linear runs the full display path")
{
    // 2x2 identity encoder, q 1, scale 1: lossless for samples <= 127
    MaskSet m;
    m.kx = 2;
    m.ky = 2;
    m.count = 4;
    m.encoder = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
    m.decoder = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
    m.q_scale = 1;
    auto f = random_frame(16, 8, 3);
    for (auto& s : f.samples) {
        s = std::uint8_t(s / 2);
    }
    const auto q = quantize(compress(f, m), 1);
    CHECK(decode_linear(q, m) == f);

    // the scale divides the codes back out
    m.encoder = {2, 0, 0, 0, 0, 2, 0, 0, 0, 0, 2, 0, 0, 0, 0, 2};
    m.scale = 2.0f;
    for (auto& s : f.samples) {
        s = std::uint8_t(s / 2);
    }
    CHECK(decode_linear(quantize(compress(f, m), 1), m) == f);

    m.decoder.clear();
    CHECK_THROWS_WITH_AS(decode_linear(q, m), doctest::Contains("decode kernel unavailable"), Error);
}
