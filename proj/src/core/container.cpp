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

#include "byte_io.hpp"
#include "dlacs/error.hpp"

#include <algorithm>
#include <string>

namespace dlacs {

namespace {

constexpr std::uint8_t kMagic[6] = {'D', 'L', 'A', 'C', 'S', 0};

enum ContainerFlags : std::uint8_t {
    kEntropyCoded = 1u << 0,
    kRgbPlanes = 1u << 1,
    kDecoderPresent = 1u << 2,
};

void check(const Container& c)
{
    require(c.kx > 0 && c.ky > 0 && c.count > 0, "container: mask dimensions must be positive");
    require(c.bits >= 2 && c.bits <= 8, "container: mask bit depth must be in [2, 8]");
    require(c.width > 0 && c.height > 0, "container: frame dimensions must be positive");
    require(c.width % c.kx == 0 && c.height % c.ky == 0, "container: frame not divisible by block size");
    const std::size_t n = std::size_t(c.kx) * c.ky * c.count;
    require(c.encoder.size() == n, "container: integer mask blob has wrong size");
    require(c.decoder.empty() || c.decoder.size() == n, "container: decode kernel has wrong size");
    require(c.q_scale >= 1, "container: q_scale must be >= 1");
    if (!c.entropy_coded) {
        require(c.payload.size() == c.raw_payload_size(), "container: payload length inconsistent with dimensions");
    } else {
        require(c.payload.size() >= 8, "container: entropy stream missing length");
    }
}

} // namespace

std::uint8_t Container::flags() const
{
    std::uint8_t f = 0;
    if (entropy_coded) {
        f |= kEntropyCoded;
    }
    if (rgb) {
        f |= kRgbPlanes;
    }
    if (!decoder.empty()) {
        f |= kDecoderPresent;
    }
    return f;
}

std::uint64_t Container::raw_payload_size() const
{
    return std::uint64_t(width / kx) * (height / ky) * count * planes();
}

MaskSet Container::masks() const
{
    MaskSet m;
    m.kx = kx;
    m.ky = ky;
    m.count = count;
    m.bits = bits;
    m.encoder = encoder;
    m.scale = scale;
    m.decoder = decoder;
    m.q_scale = q_scale;
    m.degenerate = std::all_of(encoder.begin(), encoder.end(), [](auto v) { return v == 0; });
    return m;
}

std::vector<std::uint8_t> serialize_container(const Container& c)
{
    check(c);
    detail::ByteWriter w;
    w.bytes(kMagic);
    w.u8(Container::kVersion);
    w.u8(c.flags());
    w.u32(c.width);
    w.u32(c.height);
    w.u16(c.kx);
    w.u16(c.ky);
    w.u8(c.count);
    w.u8(c.bits);
    w.u32(c.q_scale);
    w.f32(c.scale);
    for (const auto v : c.encoder) {
        w.u8(static_cast<std::uint8_t>(v));
    }
    for (const float v : c.decoder) {
        w.f32(v);
    }
    w.u64(c.payload.size());
    w.bytes(c.payload);
    return w.take();
}

Container deserialize_container(std::span<const std::uint8_t> bytes)
{
    detail::ByteReader r(bytes, "container");
    const auto magic = r.bytes(sizeof(kMagic));
    if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) {
        fail(ErrorCode::Format, "container: bad magic");
    }
    const auto version = r.u8();
    if (version != Container::kVersion) {
        fail(ErrorCode::Unsupported, "container: unsupported version " + std::to_string(version));
    }
    const auto flags = r.u8();
    if (flags & ~(kEntropyCoded | kRgbPlanes | kDecoderPresent)) {
        fail(ErrorCode::Format, "container: unknown flag bits");
    }
    Container c;
    c.entropy_coded = flags & kEntropyCoded;
    c.rgb = flags & kRgbPlanes;
    c.width = r.u32();
    c.height = r.u32();
    c.kx = r.u16();
    c.ky = r.u16();
    c.count = r.u8();
    c.bits = r.u8();
    c.q_scale = r.u32();
    c.scale = r.f32();
    const std::size_t n = std::size_t(c.kx) * c.ky * c.count;
    for (const auto b : r.bytes(n)) {
        c.encoder.push_back(static_cast<std::int8_t>(b));
    }
    if (flags & kDecoderPresent) {
        c.decoder.resize(n);
        for (auto& v : c.decoder) {
            v = r.f32();
        }
    }
    const auto length = r.u64();
    if (length != r.remaining()) {
        fail(ErrorCode::Format, length > r.remaining() ? "container: truncated payload" : "container: trailing bytes");
    }
    const auto payload = r.bytes(length);
    c.payload.assign(payload.begin(), payload.end());
    try {
        check(c);
    } catch (const Error& e) {
        fail(ErrorCode::Format, e.what());
    }
    return c;
}

} // namespace dlacs
