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
#include "dlacs/frame_io.hpp"

#include "dlacs/error.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <random>
#include <string>

namespace dlacs {

namespace {

struct PnmHeader {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::size_t data_offset = 0;
};

class HeaderReader {
public:
    explicit HeaderReader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

    void skip_space_and_comments()
    {
        while (pos_ < bytes_.size()) {
            if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') {
                    ++pos_;
                }
            } else if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::uint64_t number()
    {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
            fail(ErrorCode::Format, "malformed PNM header");
        }
        std::uint64_t value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 0xFFFFFFFFull) {
                fail(ErrorCode::Format, "malformed PNM header: value out of range");
            }
            ++pos_;
        }
        return value;
    }

    std::size_t& pos() { return pos_; }

private:
    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 0;
};

PnmHeader parse_header(const std::vector<std::uint8_t>& bytes, char kind, std::size_t channels)
{
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != kind) {
        fail(ErrorCode::Format, std::string("malformed header: expected P") + kind);
    }
    HeaderReader reader(bytes);
    reader.pos() = 2;
    PnmHeader header;
    header.width = static_cast<std::uint32_t>(reader.number());
    header.height = static_cast<std::uint32_t>(reader.number());
    const auto maxval = reader.number();
    if (header.width == 0 || header.height == 0) {
        fail(ErrorCode::Format, "malformed header: zero dimension");
    }
    if (maxval != 255) {
        fail(ErrorCode::Unsupported, "unsupported maxval " + std::to_string(maxval));
    }
    auto& pos = reader.pos();
    if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
        fail(ErrorCode::Format, "malformed header: missing separator before samples");
    }
    ++pos;
    header.data_offset = pos;
    const std::size_t need = std::size_t(header.width) * header.height * channels;
    if (bytes.size() - pos < need) {
        fail(ErrorCode::Format, "truncated payload: expected " + std::to_string(need) + " bytes");
    }
    return header;
}

std::vector<std::uint8_t> header_bytes(char kind, std::uint32_t w, std::uint32_t h)
{
    const std::string text = std::string("P") + kind + "\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    return {text.begin(), text.end()};
}

} // namespace

BayerFrame RgbImage::plane(int channel) const
{
    BayerFrame f(width, height, Pattern::Plain);
    f.samples = planes.at(channel);
    return f;
}

void RgbImage::set_plane(int channel, const BayerFrame& frame)
{
    require(frame.width == width && frame.height == height, "plane dimensions differ from image");
    planes.at(channel) = frame.samples;
}

BayerFrame decode_pgm(const std::vector<std::uint8_t>& bytes, Pattern pattern)
{
    const auto header = parse_header(bytes, '5', 1);
    BayerFrame frame(header.width, header.height, pattern);
    std::copy_n(bytes.begin() + header.data_offset, frame.size(), frame.samples.begin());
    return frame;
}

std::vector<std::uint8_t> encode_pgm(const BayerFrame& frame)
{
    auto out = header_bytes('5', frame.width, frame.height);
    out.insert(out.end(), frame.samples.begin(), frame.samples.end());
    return out;
}

RgbImage decode_ppm(const std::vector<std::uint8_t>& bytes)
{
    const auto header = parse_header(bytes, '6', 3);
    RgbImage image(header.width, header.height);
    const std::uint8_t* src = bytes.data() + header.data_offset;
    const std::size_t n = std::size_t(header.width) * header.height;
    for (std::size_t i = 0; i < n; ++i) {
        image.planes[0][i] = src[3 * i];
        image.planes[1][i] = src[3 * i + 1];
        image.planes[2][i] = src[3 * i + 2];
    }
    return image;
}

std::vector<std::uint8_t> encode_ppm(const RgbImage& image)
{
    auto out = header_bytes('6', image.width, image.height);
    const std::size_t n = std::size_t(image.width) * image.height;
    out.reserve(out.size() + 3 * n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(image.planes[0][i]);
        out.push_back(image.planes[1][i]);
        out.push_back(image.planes[2][i]);
    }
    return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorCode::Io, "cannot open " + path.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        fail(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        fail(ErrorCode::Io, "write failed: " + path.string());
    }
}

BayerFrame load_pgm(const std::filesystem::path& path, Pattern pattern) { return decode_pgm(read_file(path), pattern); }

void save_pgm(const BayerFrame& frame, const std::filesystem::path& path) { write_file(path, encode_pgm(frame)); }

RgbImage load_ppm(const std::filesystem::path& path) { return decode_ppm(read_file(path)); }

void save_ppm(const RgbImage& image, const std::filesystem::path& path) { write_file(path, encode_ppm(image)); }

std::vector<std::pair<std::uint32_t, std::uint32_t>> crop_offsets(std::uint32_t width, std::uint32_t height,
                                                                  std::uint32_t crop, std::size_t count,
                                                                  std::uint64_t seed)
{
    require(crop > 0 && crop % 2 == 0, "crop size must be a positive even number");
    require(crop <= width && crop <= height, "crop larger than frame");
    std::mt19937_64 rng(seed);
    // Number of even positions available along each axis.
    std::uniform_int_distribution<std::uint32_t> pick_x(0, (width - crop) / 2);
    std::uniform_int_distribution<std::uint32_t> pick_y(0, (height - crop) / 2);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> offsets;
    offsets.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto x = 2 * pick_x(rng);
        const auto y = 2 * pick_y(rng);
        offsets.emplace_back(x, y);
    }
    return offsets;
}

BayerFrame crop_frame(const BayerFrame& frame, std::uint32_t x, std::uint32_t y, std::uint32_t w, std::uint32_t h)
{
    require(std::uint64_t(x) + w <= frame.width && std::uint64_t(y) + h <= frame.height, "crop window out of bounds");
    BayerFrame out(w, h, frame.pattern);
    for (std::uint32_t row = 0; row < h; ++row) {
        const auto* src = frame.samples.data() + std::size_t(y + row) * frame.width + x;
        std::copy_n(src, w, out.samples.data() + std::size_t(row) * w);
    }
    return out;
}

std::vector<BayerFrame> extract_crops(const BayerFrame& frame, std::uint32_t crop, std::size_t count,
                                      std::uint64_t seed)
{
    std::vector<BayerFrame> crops;
    crops.reserve(count);
    for (const auto& [x, y] : crop_offsets(frame.width, frame.height, crop, count, seed)) {
        crops.push_back(crop_frame(frame, x, y, crop, crop));
    }
    return crops;
}

} // namespace dlacs
