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
#include "dlacs/error.hpp"
#include "dlacs/masks.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

using namespace dlacs;

namespace {

// Brute-force reference: mean squared error of the dequantized masks for one scale.
double rescan_error(const std::vector<double>& w, int bits, double sc)
{
    double err = 0.0;
    for (double v : w) {
        const double r = std::clamp(std::round(v * sc), double(mask_min(bits)), double(mask_max(bits)));
        const double d = v - r / sc;
        err += d * d;
    }
    return err / double(w.size());
}

double rescan_best(const std::vector<double>& w, int bits, const std::vector<double>& grid, double& best_err)
{
    double best = grid.front();
    best_err = std::numeric_limits<double>::infinity();
    for (double sc : grid) {
        const double e = rescan_error(w, bits, sc);
        if (e < best_err) {
            best_err = e;
            best = sc;
        }
    }
    return best;
}

MaskSet sample_set(bool with_decoder)
{
    MaskSet m;
    m.encoder = testing::random_masks(m.weight_count(), 4, 17);
    m.scale = 12.5f;
    m.q_scale = 311;
    if (with_decoder) {
        m.decoder.resize(m.weight_count());
        for (std::size_t i = 0; i < m.decoder.size(); ++i) {
            m.decoder[i] = float(std::sin(double(i))) * 0.1f;
        }
    }
    return m;
}

} // namespace

TEST_CASE("bit ranges")
{
    CHECK(mask_min(4) == -8);
    CHECK(mask_max(4) == 7);
    CHECK(mask_min(2) == -2);
    CHECK(mask_max(8) == 127);
}

TEST_CASE("zero weights are degenerate")
{
    const std::vector<double> zeros(64, 0.0);
    const auto r = integerize_masks(zeros, 4);
    CHECK(r.degenerate);
    CHECK(std::all_of(r.values.begin(), r.values.end(), [](std::int8_t v) { return v == 0; }));
    const std::vector<double> grid{0.5, 1.0, 2.0};
    CHECK(integerize_masks(zeros, 4, grid).scale == 0.5);
}

TEST_CASE("single weight is optimal over its grid")
{
    const std::vector<double> w{1.0};
    const auto grid = default_scale_grid(w, 4);
    REQUIRE(grid.size() == 512);
    CHECK(grid.front() == doctest::Approx(0.1));
    CHECK(grid.back() == doctest::Approx(14.0));
    CHECK(std::is_sorted(grid.begin(), grid.end()));
    const auto r = integerize_masks(w, 4, grid);
    CHECK(std::round(r.scale) <= 7);
    const double got = rescan_error(w, 4, r.scale);
    for (double sc : grid) {
        CHECK(got <= rescan_error(w, 4, sc));
    }
}

TEST_CASE("two weights match a re-scan")
{
    const std::vector<double> w{0.5, -0.25};
    const auto grid = default_scale_grid(w, 4);
    double best_err = 0.0;
    const double best = rescan_best(w, 4, grid, best_err);
    const auto r = integerize_masks(w, 4, grid);
    CHECK(r.scale == best);
    CHECK(rescan_error(w, 4, r.scale) == doctest::Approx(best_err).epsilon(1e-12));
    CHECK_FALSE(r.degenerate);
}

TEST_CASE("random weights: range and optimality")
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const int bits = 2 + trial % 7;
        std::normal_distribution<double> normal(0.0, 0.01 + trial * 0.05);
        std::vector<double> w(64 * 4);
        for (auto& v : w) {
            v = normal(rng);
        }
        const auto grid = default_scale_grid(w, bits);
        const auto r = integerize_masks(w, bits, grid);
        for (auto v : r.values) {
            CHECK(v >= mask_min(bits));
            CHECK(v <= mask_max(bits));
        }
        double best_err = 0.0;
        CHECK(r.scale == rescan_best(w, bits, grid, best_err));
        for (std::size_t i = 0; i < w.size(); ++i) {
            CHECK(r.values[i] == std::clamp(std::round(w[i] * r.scale), double(mask_min(bits)), double(mask_max(bits))));
        }
    }
}

TEST_CASE("integerize rejects bad input")
{
    const std::vector<double> w{1.0};
    CHECK_THROWS_AS(integerize_masks(w, 1), Error);
    CHECK_THROWS_AS(integerize_masks(w, 9), Error);
    const std::vector<double> empty_grid;
    CHECK_THROWS_AS(integerize_masks(w, 4, empty_grid), Error);
    const std::vector<double> bad_grid{2.0, 1.0};
    CHECK_THROWS_AS(integerize_masks(w, 4, bad_grid), Error);
}

TEST_CASE("effective encoder is the integer kernel")
{
    const auto m = sample_set(false);
    CHECK(effective_encoder(m) == m.encoder);
    MaskSet zero;
    zero.encoder.assign(zero.weight_count(), 0);
    CHECK(effective_encoder(zero) == std::vector<std::int8_t>(256, 0));
    CHECK(effective_encoder(deserialize_masks(serialize_masks(m))) == m.encoder);
}

TEST_CASE("mask serialization round trips")
{
    for (bool dec : {false, true}) {
        auto m = sample_set(dec);
        if (dec) {
            m.encoder_float.assign(m.weight_count(), 0.25f);
        }
        const auto bytes = serialize_masks(m);
        const auto back = deserialize_masks(bytes);
        CHECK(back == m);
        CHECK(serialize_masks(back) == bytes);
        CHECK(deserialize_masks(serialize_masks(back)) == m);
    }
    MaskSet degenerate;
    degenerate.encoder.assign(degenerate.weight_count(), 0);
    degenerate.degenerate = true;
    CHECK(deserialize_masks(serialize_masks(degenerate)) == degenerate);
}

TEST_CASE("mask deserialization errors")
{
    const auto good = serialize_masks(sample_set(true));

    auto bad_magic = good;
    bad_magic[0] = 'X';
    try {
        deserialize_masks(bad_magic);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Format);
    }

    auto bad_version = good;
    bad_version[6] = 9;
    try {
        deserialize_masks(bad_version);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Unsupported);
    }

    for (std::size_t cut : {std::size_t(0), std::size_t(5), std::size_t(20), good.size() - 1}) {
        const std::vector<std::uint8_t> truncated(good.begin(), good.begin() + std::ptrdiff_t(cut));
        CHECK_THROWS_AS(deserialize_masks(truncated), Error);
    }
    auto trailing = good;
    trailing.push_back(0);
    CHECK_THROWS_AS(deserialize_masks(trailing), Error);
}

TEST_CASE("mask set validation")
{
    auto m = sample_set(false);
    CHECK_NOTHROW(m.validate());
    m.encoder[0] = 8;
    CHECK_THROWS_AS(m.validate(), Error);
    m = sample_set(false);
    m.scale = 0.0f;
    CHECK_THROWS_AS(m.validate(), Error);
    m = sample_set(false);
    m.encoder.pop_back();
    CHECK_THROWS_AS(m.validate(), Error);
}
