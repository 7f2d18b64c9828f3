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
#include "dlacs/masks.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace dlacs {

/// Flattened blocks, one row of kx*ky samples per block, scaled to [0, 1].
struct BlockSet {
    std::uint32_t kx = 0;
    std::uint32_t ky = 0;
    std::vector<double> data;

    std::size_t dim() const { return std::size_t(kx) * ky; }
    std::size_t size() const { return dim() == 0 ? 0 : data.size() / dim(); }
    std::span<const double> block(std::size_t i) const { return {data.data() + i * dim(), dim()}; }
};

BlockSet collect_blocks(std::span<const BayerFrame> crops, std::uint32_t kx, std::uint32_t ky);

struct TrainConfig {
    double learning_rate = 1e-2;
    std::uint32_t epochs = 200;
    std::uint32_t batch_size = 64;
    std::uint64_t seed = 1;
};

/// Loss trace of a training run. Entry 0 is the loss at initialization,
/// entry e the loss after epoch e. All values are mean squared block
/// reconstruction error in [0, 1] sample units.
struct TrainReport {
    std::vector<double> epoch_mse;
    double final_mse = 0.0;
    double pca_mse = 0.0;

    /// "epoch mse" lines.
    std::string to_log() const;
};

/// Float encoder W and decoder D, both [mask][row][col].
struct LinearAutoencoder {
    std::uint32_t kx = 0;
    std::uint32_t ky = 0;
    std::uint32_t count = 0;
    std::vector<double> encoder;
    std::vector<double> decoder;
};

struct TrainResult {
    LinearAutoencoder model;
    TrainReport report;
};

using EpochCallback = std::function<void(std::uint32_t epoch, double mse)>;

/// mean over blocks of ||x - D^T (W x)||^2
double autoencoder_loss(const BlockSet& blocks, std::span<const double> encoder, std::span<const double> decoder,
                        std::uint32_t count);

/// Loss plus its gradient with respect to both kernels, over all blocks.
double autoencoder_gradient(const BlockSet& blocks, std::span<const double> encoder,
                            std::span<const double> decoder, std::uint32_t count, std::span<double> grad_encoder,
                            std::span<double> grad_decoder);

/// Minibatch SGD on autoencoder_loss. Deterministic for a given cfg.seed.
TrainResult train_linear_autoencoder(const BlockSet& blocks, std::uint32_t count, const TrainConfig& cfg,
                                     const EpochCallback& on_epoch = {});
TrainResult train_linear_autoencoder(std::span<const BayerFrame> crops, std::uint32_t kx, std::uint32_t ky,
                                     std::uint32_t count, const TrainConfig& cfg, const EpochCallback& on_epoch = {});

struct PcaResult {
    std::vector<double> basis; ///< count rows of kx*ky, orthonormal, dominant first
    std::vector<double> eigenvalues; ///< all of them, descending
    double residual_mse = 0.0;
    bool degenerate = false;
};

/// Optimal rank-`count` linear autoencoder from the eigendecomposition of the
/// uncentered block second moment S = mean(x x^T). residual_mse is the sum of
/// the discarded eigenvalues.
PcaResult pca_block_oracle(const BlockSet& blocks, std::uint32_t count);

/// Integerize the trained encoder and bundle the float decode kernel.
MaskSet finalize_mask_set(const LinearAutoencoder& model, int bits);

/// Re-solve the decode kernel by least squares against the integer encoder
/// (frozen at encoder / scale) on the given blocks.
void refit_decoder(const BlockSet& blocks, MaskSet& masks);

/// autoencoder_loss with the integer encoder (divided by its scale) and the
/// mask set's decode kernel.
double integer_encoder_mse(const BlockSet& blocks, const MaskSet& masks);

} // namespace dlacs
