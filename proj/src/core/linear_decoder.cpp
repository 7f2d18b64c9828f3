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
#include "dlacs/linear_decoder.hpp"

#include "dlacs/error.hpp"

#include <algorithm>
#include <cmath>

namespace dlacs {

namespace {

void check_kernel(const RealKernel& k, std::uint32_t count)
{
    require(k.kx > 0 && k.ky > 0 && k.count > 0, "empty decode kernel");
    require(k.weights.size() == std::size_t(k.kx) * k.ky * k.count, "decode kernel size mismatch");
    require(k.count == count, "decode kernel mask count does not match codes");
}

} // namespace

CompReal dequantize(const CompQ& comp)
{
    CompReal out{comp.blocks_x, comp.blocks_y, comp.count, {}};
    out.values.resize(comp.stored.size());
    for (std::size_t i = 0; i < comp.stored.size(); ++i) {
        out.values[i] = (double(comp.stored[i]) - 128.0) * comp.q_scale;
    }
    return out;
}

DecodedFrame transpose_decode(const CompReal& comp, const RealKernel& kernel)
{
    check_kernel(kernel, comp.count);
    require(comp.values.size() == std::size_t(comp.blocks_x) * comp.blocks_y * comp.count, "code array size mismatch");
    DecodedFrame out{comp.blocks_x * kernel.kx, comp.blocks_y * kernel.ky, {}};
    out.values.assign(std::size_t(out.width) * out.height, 0.0);
    const std::size_t mask_size = std::size_t(kernel.kx) * kernel.ky;
    const std::size_t plane = std::size_t(comp.blocks_x) * comp.blocks_y;
    for (std::uint32_t by = 0; by < comp.blocks_y; ++by) {
        for (std::uint32_t bx = 0; bx < comp.blocks_x; ++bx) {
            const std::size_t block = std::size_t(by) * comp.blocks_x + bx;
            for (std::uint32_t c = 0; c < comp.count; ++c) {
                const double code = comp.values[c * plane + block];
                if (code == 0.0) {
                    continue;
                }
                const double* mask = kernel.weights.data() + c * mask_size;
                for (std::uint32_t v = 0; v < kernel.ky; ++v) {
                    double* row = out.values.data() + (std::size_t(by) * kernel.ky + v) * out.width +
                                  std::size_t(bx) * kernel.kx;
                    for (std::uint32_t u = 0; u < kernel.kx; ++u) {
                        row[u] += code * mask[std::size_t(v) * kernel.kx + u];
                    }
                }
            }
        }
    }
    return out;
}

CompReal compress_float(const DecodedFrame& frame, const RealKernel& kernel)
{
    check_kernel(kernel, kernel.count);
    require(frame.values.size() == std::size_t(frame.width) * frame.height, "frame size mismatch");
    require(frame.width % kernel.kx == 0 && frame.height % kernel.ky == 0, "pad or crop required");
    CompReal out{frame.width / kernel.kx, frame.height / kernel.ky, kernel.count, {}};
    const std::size_t plane = std::size_t(out.blocks_x) * out.blocks_y;
    out.values.assign(plane * kernel.count, 0.0);
    const std::size_t mask_size = std::size_t(kernel.kx) * kernel.ky;
    for (std::uint32_t by = 0; by < out.blocks_y; ++by) {
        for (std::uint32_t bx = 0; bx < out.blocks_x; ++bx) {
            for (std::uint32_t c = 0; c < kernel.count; ++c) {
                const double* mask = kernel.weights.data() + c * mask_size;
                double sum = 0.0;
                for (std::uint32_t v = 0; v < kernel.ky; ++v) {
                    const double* row = frame.values.data() + (std::size_t(by) * kernel.ky + v) * frame.width +
                                        std::size_t(bx) * kernel.kx;
                    for (std::uint32_t u = 0; u < kernel.kx; ++u) {
                        sum += row[u] * mask[std::size_t(v) * kernel.kx + u];
                    }
                }
                out.values[c * plane + std::size_t(by) * out.blocks_x + bx] = sum;
            }
        }
    }
    return out;
}

BayerFrame decode_to_frame(const DecodedFrame& decoded, Pattern pattern)
{
    BayerFrame frame(decoded.width, decoded.height, pattern);
    for (std::size_t i = 0; i < decoded.values.size(); ++i) {
        frame.samples[i] = static_cast<std::uint8_t>(std::clamp(std::round(decoded.values[i]), 0.0, 255.0));
    }
    return frame;
}

BayerFrame decode_linear(const CompQ& comp, const MaskSet& masks, Pattern pattern)
{
    if (!masks.has_decoder()) {
        fail(ErrorCode::InvalidArgument, "decode kernel unavailable");
    }
    require(comp.count == masks.count, "mask count in codes and mask set differ");
    auto codes = dequantize(comp);
    const double inv_scale = 1.0 / double(masks.scale);
    for (auto& v : codes.values) {
        v *= inv_scale;
    }
    const std::vector<double> weights(masks.decoder.begin(), masks.decoder.end());
    return decode_to_frame(transpose_decode(codes, {masks.kx, masks.ky, masks.count, weights}), pattern);
}

} // namespace dlacs
