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
#include "dlacs/demosaic.hpp"

#include "dlacs/error.hpp"

namespace dlacs {

namespace {

inline std::int64_t reflect(std::int64_t i, std::int64_t n)
{
    if (i < 0) {
        return -i;
    }
    if (i >= n) {
        return 2 * (n - 1) - i;
    }
    return i;
}

} // namespace

RgbImage demosaic_bilinear(const BayerFrame& frame)
{
    if (frame.pattern != Pattern::RGGB) {
        fail(ErrorCode::InvalidArgument, "demosaic requires an RGGB frame");
    }
    require(frame.width % 2 == 0 && frame.height % 2 == 0 && frame.width > 0 && frame.height > 0,
            "demosaic requires even, non-zero dimensions");

    const std::int64_t w = frame.width;
    const std::int64_t h = frame.height;
    auto px = [&](std::int64_t x, std::int64_t y) -> unsigned {
        return frame.samples[std::size_t(reflect(y, h) * w + reflect(x, w))];
    };
    auto avg2 = [](unsigned a, unsigned b) { return static_cast<std::uint8_t>((a + b + 1) / 2); };
    auto avg4 = [](unsigned a, unsigned b, unsigned c, unsigned d) {
        return static_cast<std::uint8_t>((a + b + c + d + 2) / 4);
    };

    RgbImage out(frame.width, frame.height);
    auto& r = out.planes[0];
    auto& g = out.planes[1];
    auto& b = out.planes[2];
    for (std::int64_t y = 0; y < h; ++y) {
        for (std::int64_t x = 0; x < w; ++x) {
            const std::size_t i = std::size_t(y * w + x);
            const auto self = static_cast<std::uint8_t>(px(x, y));
            const bool even_row = y % 2 == 0;
            const bool even_col = x % 2 == 0;
            const std::uint8_t cross = avg4(px(x - 1, y), px(x + 1, y), px(x, y - 1), px(x, y + 1));
            const std::uint8_t diag = avg4(px(x - 1, y - 1), px(x + 1, y - 1), px(x - 1, y + 1), px(x + 1, y + 1));
            const std::uint8_t horiz = avg2(px(x - 1, y), px(x + 1, y));
            const std::uint8_t vert = avg2(px(x, y - 1), px(x, y + 1));
            if (even_row && even_col) { // red site
                r[i] = self;
                g[i] = cross;
                b[i] = diag;
            } else if (!even_row && !even_col) { // blue site
                r[i] = diag;
                g[i] = cross;
                b[i] = self;
            } else if (even_row) { // green on a red row
                r[i] = horiz;
                g[i] = self;
                b[i] = vert;
            } else { // green on a blue row
                r[i] = vert;
                g[i] = self;
                b[i] = horiz;
            }
        }
    }
    return out;
}

} // namespace dlacs
