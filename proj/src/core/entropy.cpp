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
#include "dlacs/entropy.hpp"

#include "byte_io.hpp"
#include "dlacs/error.hpp"

#include <array>

namespace dlacs {

namespace {

constexpr std::uint32_t kTop = 1u << 24;
constexpr std::uint32_t kBottom = 1u << 16;
static_assert(kMaxTotal <= kBottom, "model total must fit the coder's minimum range");

class AdaptiveModel {
public:
    AdaptiveModel() { freq_.fill(1); }

    std::uint32_t total() const { return total_; }
    std::uint32_t freq(std::uint8_t s) const { return freq_[s]; }

    std::uint32_t cumulative(std::uint8_t s) const
    {
        std::uint32_t cum = 0;
        for (int i = 0; i < s; ++i) {
            cum += freq_[i];
        }
        return cum;
    }

    /// Symbol whose cumulative interval contains `target`; sets `cum` to its start.
    std::uint8_t find(std::uint32_t target, std::uint32_t& cum) const
    {
        cum = 0;
        int s = 0;
        while (s < 255 && cum + freq_[s] <= target) {
            cum += freq_[s];
            ++s;
        }
        return static_cast<std::uint8_t>(s);
    }

    void update(std::uint8_t s)
    {
        freq_[s] += kFrequencyIncrement;
        total_ += kFrequencyIncrement;
        if (total_ > kMaxTotal) {
            total_ = 0;
            for (auto& f : freq_) {
                f = (f + 1) / 2;
                total_ += f;
            }
        }
    }

private:
    std::array<std::uint32_t, 256> freq_{};
    std::uint32_t total_ = 256;
};

class RangeEncoder {
public:
    explicit RangeEncoder(std::vector<std::uint8_t>& out) : out_(out) {}

    void encode(std::uint32_t cum, std::uint32_t freq, std::uint32_t total)
    {
        range_ /= total;
        low_ += cum * range_;
        range_ *= freq;
        normalize();
    }

    void flush()
    {
        for (int i = 0; i < 4; ++i) {
            out_.push_back(static_cast<std::uint8_t>(low_ >> 24));
            low_ <<= 8;
        }
    }

private:
    void normalize()
    {
        for (;;) {
            if ((low_ ^ (low_ + range_)) >= kTop) {
                if (range_ >= kBottom) {
                    break;
                }
                range_ = (0u - low_) & (kBottom - 1);
            }
            out_.push_back(static_cast<std::uint8_t>(low_ >> 24));
            low_ <<= 8;
            range_ <<= 8;
        }
    }

    std::vector<std::uint8_t>& out_;
    std::uint32_t low_ = 0;
    std::uint32_t range_ = 0xFFFFFFFFu;
};

class RangeDecoder {
public:
    explicit RangeDecoder(std::span<const std::uint8_t> in) : in_(in)
    {
        for (int i = 0; i < 4; ++i) {
            code_ = (code_ << 8) | next();
        }
    }

    std::uint32_t target(std::uint32_t total)
    {
        range_ /= total;
        const std::uint32_t t = (code_ - low_) / range_;
        if (t >= total) {
            fail(ErrorCode::Format, "corrupt entropy-coded stream");
        }
        return t;
    }

    void consume(std::uint32_t cum, std::uint32_t freq)
    {
        low_ += cum * range_;
        range_ *= freq;
        for (;;) {
            if ((low_ ^ (low_ + range_)) >= kTop) {
                if (range_ >= kBottom) {
                    break;
                }
                range_ = (0u - low_) & (kBottom - 1);
            }
            code_ = (code_ << 8) | next();
            low_ <<= 8;
            range_ <<= 8;
        }
    }

    std::size_t consumed() const { return pos_; }

private:
    std::uint8_t next()
    {
        if (pos_ >= in_.size()) {
            fail(ErrorCode::Format, "unexpected end of stream");
        }
        return in_[pos_++];
    }

    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
    std::uint32_t low_ = 0;
    std::uint32_t range_ = 0xFFFFFFFFu;
    std::uint32_t code_ = 0;
};

} // namespace

EcStream ec_encode(std::span<const std::uint8_t> payload)
{
    EcStream stream;
    stream.original_length = payload.size();
    if (payload.empty()) {
        return stream;
    }
    AdaptiveModel model;
    RangeEncoder coder(stream.coded);
    for (const auto s : payload) {
        coder.encode(model.cumulative(s), model.freq(s), model.total());
        model.update(s);
    }
    coder.flush();
    return stream;
}

std::vector<std::uint8_t> ec_decode(const EcStream& stream)
{
    std::vector<std::uint8_t> out;
    if (stream.original_length == 0) {
        if (!stream.coded.empty()) {
            fail(ErrorCode::Format, "entropy-coded stream has trailing bytes");
        }
        return out;
    }
    // The most probable symbol never exceeds (kMaxTotal - 255) / kMaxTotal,
    // so each one costs at least ~0.0056 bits: a stream cannot carry more than
    // ~1421 symbols per coded byte. Reject impossible lengths before decoding.
    if (stream.original_length / 4096 > stream.coded.size()) {
        fail(ErrorCode::Format, "unexpected end of stream");
    }
    out.reserve(stream.original_length);
    AdaptiveModel model;
    RangeDecoder coder(stream.coded);
    for (std::uint64_t i = 0; i < stream.original_length; ++i) {
        std::uint32_t cum = 0;
        const auto s = model.find(coder.target(model.total()), cum);
        coder.consume(cum, model.freq(s));
        model.update(s);
        out.push_back(s);
    }
    if (coder.consumed() != stream.coded.size()) {
        fail(ErrorCode::Format, "entropy-coded stream has trailing bytes");
    }
    return out;
}

std::vector<std::uint8_t> frame_stream(const EcStream& stream)
{
    detail::ByteWriter w;
    w.u64(stream.original_length);
    w.bytes(stream.coded);
    return w.take();
}

EcStream parse_stream(std::span<const std::uint8_t> framed)
{
    detail::ByteReader r(framed, "entropy stream");
    EcStream stream;
    stream.original_length = r.u64();
    const auto rest = r.bytes(r.remaining());
    stream.coded.assign(rest.begin(), rest.end());
    return stream;
}

} // namespace dlacs
