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
#include "dlacs/trainer.hpp"

#include "dlacs/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace dlacs {

namespace {

void check_kernels(const BlockSet& blocks, std::span<const double> w, std::span<const double> d, std::uint32_t count)
{
    require(count > 0, "mask count must be positive");
    require(w.size() == blocks.dim() * count && d.size() == blocks.dim() * count, "kernel size mismatch");
}

// Accumulates the gradient of ||x - D^T W x||^2 for one block; returns the block loss.
double accumulate_block(std::span<const double> x, std::span<const double> w, std::span<const double> d,
                        std::uint32_t count, std::vector<double>& code, std::vector<double>& resid,
                        std::span<double> gw, std::span<double> gd)
{
    const std::size_t dim = x.size();
    for (std::uint32_t c = 0; c < count; ++c) {
        const double* wc = w.data() + c * dim;
        double z = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            z += wc[i] * x[i];
        }
        code[c] = z;
    }
    double loss = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        double rec = 0.0;
        for (std::uint32_t c = 0; c < count; ++c) {
            rec += d[c * dim + i] * code[c];
        }
        resid[i] = x[i] - rec;
        loss += resid[i] * resid[i];
    }
    if (!gw.empty()) {
        for (std::uint32_t c = 0; c < count; ++c) {
            const double* dc = d.data() + c * dim;
            double back = 0.0; // (D r)_c
            for (std::size_t i = 0; i < dim; ++i) {
                back += dc[i] * resid[i];
            }
            double* gwc = gw.data() + c * dim;
            double* gdc = gd.data() + c * dim;
            for (std::size_t i = 0; i < dim; ++i) {
                gwc[i] -= 2.0 * back * x[i];
                gdc[i] -= 2.0 * code[c] * resid[i];
            }
        }
    }
    return loss;
}

Eigen::MatrixXd second_moment(const BlockSet& blocks)
{
    const auto n = static_cast<Eigen::Index>(blocks.size());
    const auto dim = static_cast<Eigen::Index>(blocks.dim());
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> x(blocks.data.data(), n,
                                                                                                 dim);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(dim, dim);
    s.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose());
    s = s.selfadjointView<Eigen::Lower>();
    return s / double(n);
}

} // namespace

BlockSet collect_blocks(std::span<const BayerFrame> crops, std::uint32_t kx, std::uint32_t ky)
{
    require(kx > 0 && ky > 0, "block dimensions must be positive");
    BlockSet set{kx, ky, {}};
    for (const auto& crop : crops) {
        require(crop.width % kx == 0 && crop.height % ky == 0, "crop dimensions must be divisible by block dimensions");
        for (std::uint32_t by = 0; by < crop.height / ky; ++by) {
            for (std::uint32_t bx = 0; bx < crop.width / kx; ++bx) {
                for (std::uint32_t v = 0; v < ky; ++v) {
                    for (std::uint32_t u = 0; u < kx; ++u) {
                        set.data.push_back(crop.at(bx * kx + u, by * ky + v) / 255.0);
                    }
                }
            }
        }
    }
    return set;
}

std::string TrainReport::to_log() const
{
    std::ostringstream out;
    out.precision(10);
    for (std::size_t e = 0; e < epoch_mse.size(); ++e) {
        out << e << ' ' << epoch_mse[e] << '\n';
    }
    return out.str();
}

double autoencoder_loss(const BlockSet& blocks, std::span<const double> encoder, std::span<const double> decoder,
                        std::uint32_t count)
{
    check_kernels(blocks, encoder, decoder, count);
    require(blocks.size() > 0, "no blocks");
    std::vector<double> code(count);
    std::vector<double> resid(blocks.dim());
    double total = 0.0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        total += accumulate_block(blocks.block(b), encoder, decoder, count, code, resid, {}, {});
    }
    return total / double(blocks.size());
}

double autoencoder_gradient(const BlockSet& blocks, std::span<const double> encoder,
                            std::span<const double> decoder, std::uint32_t count, std::span<double> grad_encoder,
                            std::span<double> grad_decoder)
{
    check_kernels(blocks, encoder, decoder, count);
    require(blocks.size() > 0, "no blocks");
    require(grad_encoder.size() == encoder.size() && grad_decoder.size() == decoder.size(), "gradient size mismatch");
    std::fill(grad_encoder.begin(), grad_encoder.end(), 0.0);
    std::fill(grad_decoder.begin(), grad_decoder.end(), 0.0);
    std::vector<double> code(count);
    std::vector<double> resid(blocks.dim());
    double total = 0.0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        total += accumulate_block(blocks.block(b), encoder, decoder, count, code, resid, grad_encoder, grad_decoder);
    }
    const double inv = 1.0 / double(blocks.size());
    for (auto& g : grad_encoder) {
        g *= inv;
    }
    for (auto& g : grad_decoder) {
        g *= inv;
    }
    return total * inv;
}

TrainResult train_linear_autoencoder(const BlockSet& blocks, std::uint32_t count, const TrainConfig& cfg,
                                     const EpochCallback& on_epoch)
{
    require(blocks.size() > 0, "training needs at least one block");
    require(count > 0 && count <= blocks.dim(), "mask count must be in [1, kx*ky]");
    require(cfg.learning_rate > 0.0 && std::isfinite(cfg.learning_rate), "learning rate must be positive");
    require(cfg.epochs >= 1, "epochs must be >= 1");
    require(cfg.batch_size >= 1, "batch size must be >= 1");

    const std::size_t dim = blocks.dim();
    TrainResult result;
    auto& model = result.model;
    model.kx = blocks.kx;
    model.ky = blocks.ky;
    model.count = count;
    model.encoder.resize(count * dim);
    model.decoder.resize(count * dim);

    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> init(0.0, 0.5 / std::sqrt(double(dim)));
    for (auto& v : model.encoder) {
        v = init(rng);
    }
    for (auto& v : model.decoder) {
        v = init(rng);
    }

    auto& trace = result.report.epoch_mse;
    trace.push_back(autoencoder_loss(blocks, model.encoder, model.decoder, count));
    if (on_epoch) {
        on_epoch(0, trace.back());
    }

    std::vector<std::size_t> order(blocks.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> gw(model.encoder.size());
    std::vector<double> gd(model.decoder.size());
    std::vector<double> code(count);
    std::vector<double> resid(dim);

    for (std::uint32_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
            std::fill(gw.begin(), gw.end(), 0.0);
            std::fill(gd.begin(), gd.end(), 0.0);
            for (std::size_t k = start; k < stop; ++k) {
                accumulate_block(blocks.block(order[k]), model.encoder, model.decoder, count, code, resid, gw, gd);
            }
            const double step = cfg.learning_rate / double(stop - start);
            for (std::size_t i = 0; i < gw.size(); ++i) {
                model.encoder[i] -= step * gw[i];
                model.decoder[i] -= step * gd[i];
            }
        }
        trace.push_back(autoencoder_loss(blocks, model.encoder, model.decoder, count));
        if (!std::isfinite(trace.back())) {
            fail(ErrorCode::InvalidArgument, "training diverged; lower the learning rate");
        }
        if (on_epoch) {
            on_epoch(epoch, trace.back());
        }
    }
    result.report.final_mse = trace.back();
    if (blocks.size() >= dim) {
        result.report.pca_mse = pca_block_oracle(blocks, count).residual_mse;
    }
    return result;
}

TrainResult train_linear_autoencoder(std::span<const BayerFrame> crops, std::uint32_t kx, std::uint32_t ky,
                                     std::uint32_t count, const TrainConfig& cfg, const EpochCallback& on_epoch)
{
    require(!crops.empty(), "training needs at least one crop");
    return train_linear_autoencoder(collect_blocks(crops, kx, ky), count, cfg, on_epoch);
}

PcaResult pca_block_oracle(const BlockSet& blocks, std::uint32_t count)
{
    const std::size_t dim = blocks.dim();
    require(count > 0 && count <= dim, "mask count must be in [1, kx*ky]");
    require(blocks.size() >= dim, "PCA oracle needs at least kx*ky blocks");

    PcaResult result;
    result.basis.assign(count * dim, 0.0);
    if (std::all_of(blocks.data.begin(), blocks.data.end(), [](double v) { return v == 0.0; })) {
        result.eigenvalues.assign(dim, 0.0);
        result.degenerate = true;
        return result;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(second_moment(blocks));
    // Eigen returns ascending eigenvalues.
    const auto& values = solver.eigenvalues();
    const auto& vectors = solver.eigenvectors();
    for (std::size_t i = 0; i < dim; ++i) {
        result.eigenvalues.push_back(values(Eigen::Index(dim - 1 - i)));
    }
    for (std::uint32_t c = 0; c < count; ++c) {
        const auto col = Eigen::Index(dim - 1 - c);
        for (std::size_t i = 0; i < dim; ++i) {
            result.basis[c * dim + i] = vectors(Eigen::Index(i), col);
        }
    }
    double residual = 0.0;
    for (std::size_t i = count; i < dim; ++i) {
        residual += std::max(0.0, result.eigenvalues[i]);
    }
    result.residual_mse = residual;
    return result;
}

MaskSet finalize_mask_set(const LinearAutoencoder& model, int bits)
{
    const std::size_t n = std::size_t(model.kx) * model.ky * model.count;
    require(model.encoder.size() == n && model.decoder.size() == n, "model kernel size mismatch");
    require(model.kx <= 0xFFFF && model.ky <= 0xFFFF && model.count <= 0xFF, "mask dimensions out of range");
    const auto integer = integerize_masks(model.encoder, bits);

    MaskSet masks;
    masks.kx = static_cast<std::uint16_t>(model.kx);
    masks.ky = static_cast<std::uint16_t>(model.ky);
    masks.count = static_cast<std::uint8_t>(model.count);
    masks.bits = static_cast<std::uint8_t>(bits);
    masks.encoder = integer.values;
    masks.scale = static_cast<float>(integer.scale);
    masks.degenerate = integer.degenerate;
    masks.encoder_float.assign(model.encoder.begin(), model.encoder.end());
    masks.decoder.assign(model.decoder.begin(), model.decoder.end());
    return masks;
}

void refit_decoder(const BlockSet& blocks, MaskSet& masks)
{
    require(blocks.kx == masks.kx && blocks.ky == masks.ky, "block and mask dimensions differ");
    require(blocks.size() > 0, "no blocks");
    const auto n = static_cast<Eigen::Index>(blocks.size());
    const auto dim = static_cast<Eigen::Index>(blocks.dim());
    const auto count = static_cast<Eigen::Index>(masks.count);

    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> x(blocks.data.data(), n,
                                                                                                 dim);
    Eigen::MatrixXd w(count, dim);
    for (Eigen::Index c = 0; c < count; ++c) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            w(c, i) = masks.encoder[std::size_t(c * dim + i)] / double(masks.scale);
        }
    }
    const Eigen::MatrixXd codes = x * w.transpose(); // n x count
    // Minimum-norm least squares keeps duplicate or zero masks well defined.
    const Eigen::MatrixXd d = codes.completeOrthogonalDecomposition().solve(Eigen::MatrixXd(x)); // count x dim
    masks.decoder.resize(std::size_t(count * dim));
    for (Eigen::Index c = 0; c < count; ++c) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            masks.decoder[std::size_t(c * dim + i)] = static_cast<float>(d(c, i));
        }
    }
}

double integer_encoder_mse(const BlockSet& blocks, const MaskSet& masks)
{
    require(masks.has_decoder(), "decode kernel unavailable");
    std::vector<double> w(masks.encoder.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = masks.encoder[i] / double(masks.scale);
    }
    const std::vector<double> d(masks.decoder.begin(), masks.decoder.end());
    return autoencoder_loss(blocks, w, d, masks.count);
}

} // namespace dlacs
