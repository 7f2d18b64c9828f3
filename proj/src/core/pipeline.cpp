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
#include "dlacs/pipeline.hpp"

#include <Eigen/Dense>

#include "dlacs/demosaic.hpp"
#include "dlacs/encoder.hpp"
#include "dlacs/entropy.hpp"
#include "dlacs/error.hpp"
#include "dlacs/linear_decoder.hpp"

#include <algorithm>

namespace dlacs {

Image load_image(const std::filesystem::path& path)
{
    auto bytes = read_file(path);
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6') {
        return decode_ppm(bytes);
    }
    return decode_pgm(bytes);
}

void save_image(const Image& image, const std::filesystem::path& path)
{
    if (const auto* frame = std::get_if<BayerFrame>(&image)) {
        save_pgm(*frame, path);
    } else {
        save_ppm(std::get<RgbImage>(image), path);
    }
}

namespace {

// W <- S^-1 W and D <- S D with S = (W W^T)^(1/2), so D^T W is unchanged.
// Rank-deficient encoders are left alone.
void orthonormalize_rows(LinearAutoencoder& model)
{
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Index n = model.count;
    const Eigen::Index k = Eigen::Index(model.kx) * model.ky;
    Eigen::Map<RowMajor> w(model.encoder.data(), n, k);
    const Eigen::MatrixXd gram = w * w.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    const auto& ev = es.eigenvalues();
    if (es.info() != Eigen::Success || ev.minCoeff() <= 1e-12 * std::max(1.0, ev.maxCoeff())) {
        return;
    }
    Eigen::Map<RowMajor> d(model.decoder.data(), n, k);
    const RowMajor balanced = es.operatorInverseSqrt() * w;
    const RowMajor matched = es.operatorSqrt() * d;
    w = balanced;
    d = matched;
}

} // namespace

TrainOutcome train_masks(std::span<const BayerFrame> frames, const TrainOptions& options,
                         const EpochCallback& on_epoch)
{
    require(!frames.empty(), "no training frames");
    require(options.crop % options.kx == 0 && options.crop % options.ky == 0,
            "crop size must be divisible by the block size");
    std::vector<BayerFrame> crops;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        auto c = extract_crops(frames[i], options.crop, options.crops_per_frame, options.config.seed + i);
        std::move(c.begin(), c.end(), std::back_inserter(crops));
    }

    const auto blocks = collect_blocks(crops, options.kx, options.ky);
    auto trained = train_linear_autoencoder(blocks, options.count, options.config, on_epoch);

    TrainOutcome outcome;
    outcome.report = std::move(trained.report);
    // Same row space, balanced rows: the decoder is refit below, so this only
    // changes how well 4-bit rounding and the shared q_scale treat each row.
    orthonormalize_rows(trained.model);
    outcome.masks = finalize_mask_set(trained.model, options.bits);
    outcome.integer_mse_before_refit = integer_encoder_mse(blocks, outcome.masks);
    refit_decoder(blocks, outcome.masks);
    outcome.integer_mse = integer_encoder_mse(blocks, outcome.masks);

    std::vector<CompRaw> codes;
    codes.reserve(crops.size());
    for (const auto& crop : crops) {
        codes.push_back(compress(crop, outcome.masks));
    }
    outcome.masks.q_scale = select_q_scale(codes);
    return outcome;
}

std::vector<BayerFrame> load_training_frames(const std::filesystem::path& dir)
{
    if (!std::filesystem::is_directory(dir)) {
        fail(ErrorCode::InvalidArgument, "not a directory: " + dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const auto ext = entry.path().extension();
        if (entry.is_regular_file() && (ext == ".pgm" || ext == ".ppm")) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<BayerFrame> frames;
    for (const auto& f : files) {
        if (f.extension() == ".pgm") {
            frames.push_back(load_pgm(f));
        } else {
            const auto rgb = load_ppm(f);
            for (int c = 0; c < 3; ++c) {
                frames.push_back(rgb.plane(c));
            }
        }
    }
    if (frames.empty()) {
        fail(ErrorCode::InvalidArgument, "no .pgm or .ppm files in " + dir.string());
    }
    return frames;
}

Container compress_image(const Image& image, const MaskSet& masks, const CompressOptions& options)
{
    masks.validate();
    Container c;
    c.kx = masks.kx;
    c.ky = masks.ky;
    c.count = masks.count;
    c.bits = masks.bits;
    c.q_scale = masks.q_scale;
    c.scale = masks.scale;
    c.encoder = masks.encoder;
    if (options.embed_decoder) {
        c.decoder = masks.decoder;
    }

    std::vector<std::uint8_t> raw;
    auto append = [&](const BayerFrame& plane) {
        const auto q = quantize(compress(plane, masks), masks.q_scale);
        raw.insert(raw.end(), q.stored.begin(), q.stored.end());
    };
    if (const auto* frame = std::get_if<BayerFrame>(&image)) {
        c.width = frame->width;
        c.height = frame->height;
        append(*frame);
    } else {
        const auto& rgb = std::get<RgbImage>(image);
        c.width = rgb.width;
        c.height = rgb.height;
        c.rgb = true;
        for (int p = 0; p < 3; ++p) {
            append(rgb.plane(p));
        }
    }
    if (options.entropy_coding) {
        c.entropy_coded = true;
        c.payload = frame_stream(ec_encode(raw));
    } else {
        c.payload = std::move(raw);
    }
    return c;
}

std::vector<std::uint8_t> container_codes(const Container& container)
{
    if (!container.entropy_coded) {
        return container.payload;
    }
    const auto stream = parse_stream(container.payload);
    if (stream.original_length != container.raw_payload_size()) {
        fail(ErrorCode::Format, "container: entropy stream length inconsistent with dimensions");
    }
    return ec_decode(stream);
}

Image decompress_container(const Container& container, const MaskSet* masks, bool demosaic)
{
    MaskSet decode = container.masks();
    if (decode.decoder.empty()) {
        if (masks == nullptr || !masks->has_decoder()) {
            fail(ErrorCode::InvalidArgument, "decode kernel unavailable");
        }
        require(masks->kx == container.kx && masks->ky == container.ky && masks->count == container.count,
                "mask file does not match container geometry");
        decode.decoder = masks->decoder;
    }
    require(!(demosaic && container.rgb), "demosaic applies to mosaic containers only");

    const auto codes = container_codes(container);
    const std::uint32_t bx = container.width / container.kx;
    const std::uint32_t by = container.height / container.ky;
    const std::size_t plane_bytes = std::size_t(bx) * by * container.count;
    auto plane = [&](std::size_t p, Pattern pattern) {
        CompQ q{bx, by, container.count, container.q_scale, {}};
        q.stored.assign(codes.begin() + p * plane_bytes, codes.begin() + (p + 1) * plane_bytes);
        return decode_linear(q, decode, pattern);
    };

    if (!container.rgb) {
        auto frame = plane(0, Pattern::RGGB);
        if (demosaic) {
            return demosaic_bilinear(frame);
        }
        return frame;
    }
    RgbImage rgb(container.width, container.height);
    for (int p = 0; p < 3; ++p) {
        rgb.set_plane(p, plane(p, Pattern::Plain));
    }
    return rgb;
}

QualityReport compare_images(const Image& a, const Image& b, bool rgb)
{
    if (a.index() != b.index()) {
        fail(ErrorCode::InvalidArgument, "cannot compare a mosaic with an RGB image");
    }
    if (const auto* fa = std::get_if<BayerFrame>(&a)) {
        const auto& fb = std::get<BayerFrame>(b);
        require(fa->width == fb.width && fa->height == fb.height, "image dimensions differ");
        if (rgb) {
            return assess(demosaic_bilinear(*fa), demosaic_bilinear(fb));
        }
        return assess(*fa, fb);
    }
    return assess(std::get<RgbImage>(a), std::get<RgbImage>(b));
}

} // namespace dlacs
