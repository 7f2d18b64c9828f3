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
#include "dlacs/container.hpp"
#include "dlacs/error.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cstring>

using namespace dlacs;
using namespace dlacs::testing;

namespace {

Container sample(bool ec, bool rgb, bool decoder)
{
    Container c;
    c.width = 64;
    c.height = 32;
    c.kx = 8;
    c.ky = 8;
    c.count = 4;
    c.bits = 4;
    c.q_scale = 411;
    c.scale = 21.75f;
    c.entropy_coded = ec;
    c.rgb = rgb;
    c.encoder = random_masks(256, 4, 1);
    if (decoder) {
        c.decoder.assign(256, 0.125f);
        c.decoder[3] = -2.5f;
    }
    if (ec) {
        c.payload = {0x10, 0, 0, 0, 0, 0, 0, 0, 1, 2, 3};
    } else {
        c.payload.resize(c.raw_payload_size());
        for (std::size_t i = 0; i < c.payload.size(); ++i) {
            c.payload[i] = std::uint8_t(i * 31);
        }
    }
    return c;
}

} // namespace

TEST_CASE("container header layout")
{
    const auto c = sample(false, false, true);
    const auto bytes = serialize_container(c);
    REQUIRE(bytes.size() > Container::kFixedHeaderSize);
    CHECK(std::memcmp(bytes.data(), "DLACS\0", 6) == 0);
    CHECK(bytes[6] == 1);
    CHECK(bytes[7] == 0x04);
    // width 64, height 32, little endian
    CHECK(bytes[8] == 64);
    CHECK(bytes[9] == 0);
    CHECK(bytes[12] == 32);
    CHECK(bytes[16] == 8);
    CHECK(bytes[18] == 8);
    CHECK(bytes[20] == 4);
    CHECK(bytes[21] == 4);
    // q_scale 411 = 0x019B
    CHECK(bytes[22] == 0x9B);
    CHECK(bytes[23] == 0x01);
    float sc = 0.0f;
    std::memcpy(&sc, bytes.data() + 26, 4);
    CHECK(sc == 21.75f);
    CHECK(std::int8_t(bytes[30]) == c.encoder[0]);

    CHECK(sample(true, true, false).flags() == 0x03);
    CHECK(sample(true, true, true).flags() == 0x07);
}

TEST_CASE("container size formula")
{
    for (bool dec : {false, true}) {
        for (bool rgb : {false, true}) {
            const auto c = sample(false, rgb, dec);
            const std::size_t n = 8 * 8 * 4;
            const std::size_t payload = (64 / 8) * (32 / 8) * 4 * (rgb ? 3 : 1);
            CHECK(c.raw_payload_size() == payload);
            CHECK(serialize_container(c).size() == Container::kFixedHeaderSize + n + (dec ? 4 * n : 0) + 8 + payload);
        }
    }
}

TEST_CASE("container round trips byte-exactly")
{
    for (int mask = 0; mask < 8; ++mask) {
        const auto c = sample(mask & 1, mask & 2, mask & 4);
        const auto bytes = serialize_container(c);
        const auto back = deserialize_container(bytes);
        CHECK(back == c);
        CHECK(serialize_container(back) == bytes);
    }
    const auto m = sample(false, false, true).masks();
    CHECK(m.kx == 8);
    CHECK(m.q_scale == 411);
    CHECK(m.scale == 21.75f);
    CHECK(m.has_decoder());
}

TEST_CASE("container rejects bad input")
{
    const auto good = serialize_container(sample(false, false, true));

    auto version = good;
    version[6] = 2;
    try {
        deserialize_container(version);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Unsupported);
        CHECK(std::string(e.what()).find("version") != std::string::npos);
    }

    auto magic = good;
    magic[1] = 'X';
    CHECK_THROWS_AS(deserialize_container(magic), Error);

    auto flags = good;
    flags[7] |= 0x80;
    CHECK_THROWS_AS(deserialize_container(flags), Error);

    const std::vector<std::uint8_t> truncated(good.begin(), good.end() - 1);
    CHECK_THROWS_WITH_AS(deserialize_container(truncated), doctest::Contains("truncated"), Error);

    auto trailing = good;
    trailing.push_back(0);
    CHECK_THROWS_AS(deserialize_container(trailing), Error);

    const std::vector<std::uint8_t> header_only(good.begin(), good.begin() + 20);
    CHECK_THROWS_AS(deserialize_container(header_only), Error);

    auto c = sample(false, false, false);
    c.payload.pop_back();
    CHECK_THROWS_AS(serialize_container(c), Error);
    c = sample(false, false, false);
    c.width = 60;
    CHECK_THROWS_AS(serialize_container(c), Error);
}
