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

#include "dlacs/frame_io.hpp"

#include <cstdint>
#include <span>

namespace dlacs {

struct QualityReport {
    double mse = 0.0;
    double psnr = 0.0; ///< +infinity when mse == 0
    double ssim = 1.0;

    bool psnr_infinite() const;
};

double mse(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
double mse(std::span<const double> a, std::span<const double> b);

/// 10 log10(max^2 / mse); +infinity for mse == 0.
double psnr_from_mse(double mse, double max_val = 255.0);
double psnr(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, double max_val = 255.0);

/// Mean SSIM over every valid 11x11 Gaussian window (sigma 1.5, K1 0.01,
/// K2 0.03, L 255). Both frames must be at least 11x11.
double ssim(const BayerFrame& a, const BayerFrame& b);
/// RGB: one mean over the windows of all three planes.
double ssim(const RgbImage& a, const RgbImage& b);

QualityReport assess(const BayerFrame& a, const BayerFrame& b);
/// All three planes pooled into single MSE / PSNR / SSIM values.
QualityReport assess(const RgbImage& a, const RgbImage& b);

} // namespace dlacs
