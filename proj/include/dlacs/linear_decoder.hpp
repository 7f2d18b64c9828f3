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
#pragma once

#include "dlacs/encoder.hpp"
#include "dlacs/frame_io.hpp"
#include "dlacs/masks.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace dlacs {

/// Real-valued codes, same [mask][block row][block col] layout as CompRaw.
struct CompReal {
    std::uint32_t blocks_x = 0;
    std::uint32_t blocks_y = 0;
    std::uint32_t count = 0;
    std::vector<double> values;
};

/// Real-valued reconstruction before the final clamp/round, row-major.
struct DecodedFrame {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<double> values;
};

struct RealKernel {
    std::uint32_t kx = 0;
    std::uint32_t ky = 0;
    std::uint32_t count = 0;
    std::span<const double> weights; ///< [mask][row][col]
};

/// value = (stored - 128) * q_scale
CompReal dequantize(const CompQ& comp);

/// Each block (by, bx) becomes sum_c comp[c][by][bx] * kernel[c]; blocks tile
/// the output with no overlap (stride equal to the kernel size).
DecodedFrame transpose_decode(const CompReal& comp, const RealKernel& kernel);

/// Blocked mask sums over a real-valued frame; the exact adjoint of transpose_decode.
CompReal compress_float(const DecodedFrame& frame, const RealKernel& kernel);

/// Clamp to [0, 255] and round half away from zero.
BayerFrame decode_to_frame(const DecodedFrame& decoded, Pattern pattern = Pattern::RGGB);

/// Full display-side path for one plane: dequantize, undo the mask scale,
/// transpose-decode with the mask set's decode kernel, clamp and round.
BayerFrame decode_linear(const CompQ& comp, const MaskSet& masks, Pattern pattern = Pattern::RGGB);

} // namespace dlacs
