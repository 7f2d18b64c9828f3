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
// Command-line front end over the C API.

#include "dlacs/dlacs.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <string>
#include <vector>

namespace {

constexpr int kExitContract = 2;
constexpr int kExitFailure = 1;

struct CommandError {
    dlacs_status status;
    std::string message;
};

void check(dlacs_status status)
{
    if (status != DLACS_OK) {
        throw CommandError{status, dlacs_last_error()};
    }
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using ImagePtr = std::unique_ptr<dlacs_image, Deleter<dlacs_image, dlacs_image_free>>;
using MasksPtr = std::unique_ptr<dlacs_masks, Deleter<dlacs_masks, dlacs_masks_free>>;
using ContainerPtr = std::unique_ptr<dlacs_container, Deleter<dlacs_container, dlacs_container_free>>;
using BufferPtr = std::unique_ptr<dlacs_buffer, Deleter<dlacs_buffer, dlacs_buffer_free>>;

ImagePtr load_image(const std::string& path)
{
    dlacs_image* raw = nullptr;
    check(dlacs_image_load(path.c_str(), &raw));
    return ImagePtr(raw);
}

MasksPtr load_masks(const std::string& path)
{
    dlacs_masks* raw = nullptr;
    check(dlacs_masks_load(path.c_str(), &raw));
    return MasksPtr(raw);
}

std::vector<uint8_t> read_bytes(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CommandError{DLACS_E_IO, "cannot open " + path};
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, const uint8_t* data, size_t size)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out) {
        throw CommandError{DLACS_E_IO, "cannot write " + path};
    }
}

nlohmann::json rational(const dlacs_rational& r)
{
    if (r.den == 1) {
        return r.num;
    }
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

// ---- train ----

struct TrainArgs {
    std::string input;
    std::string out;
    std::string log;
    dlacs_train_params params{};
};

void epoch_to_stream(uint32_t epoch, double mse, void* user)
{
    auto* out = static_cast<std::ostream*>(user);
    *out << epoch << ' ' << mse << '\n';
}

void run_train(const TrainArgs& args)
{
    std::ofstream log_file;
    std::ostream* log = &std::cerr;
    if (!args.log.empty()) {
        log_file.open(args.log);
        if (!log_file) {
            throw CommandError{DLACS_E_IO, "cannot write " + args.log};
        }
        log_file.precision(10);
        log = &log_file;
    }
    dlacs_masks* raw = nullptr;
    dlacs_train_summary summary{};
    check(dlacs_masks_train(args.input.c_str(), &args.params, epoch_to_stream, log, &raw, &summary));
    MasksPtr masks(raw);
    check(dlacs_masks_save(masks.get(), args.out.c_str()));

    const nlohmann::json report = {
        {"masks", args.out},
        {"initial_mse", summary.initial_mse},
        {"final_mse", summary.final_mse},
        {"pca_mse", summary.pca_mse},
        {"integer_mse_before_refit", summary.integer_mse_before_refit},
        {"integer_mse", summary.integer_mse},
        {"q_scale", summary.q_scale},
        {"mask_scale", summary.mask_scale},
        {"degenerate", summary.degenerate != 0},
    };
    std::cout << report.dump(2) << '\n';
}

// ---- compress / decompress ----

struct CompressArgs {
    std::string input;
    std::string masks;
    std::string out;
    bool ec = false;
    bool strip_decoder = false;
};

void run_compress(const CompressArgs& args)
{
    const auto image = load_image(args.input);
    const auto masks = load_masks(args.masks);
    const dlacs_compress_options options{args.ec ? 1 : 0, args.strip_decoder ? 0 : 1};
    dlacs_container* raw = nullptr;
    check(dlacs_compress(image.get(), masks.get(), &options, &raw));
    ContainerPtr container(raw);
    check(dlacs_container_save(container.get(), args.out.c_str()));

    dlacs_container_info info{};
    check(dlacs_container_get_info(container.get(), &info));
    const nlohmann::json report = {
        {"container", args.out},         {"width", info.width},
        {"height", info.height},         {"block", {info.kx, info.ky}},
        {"masks", info.mask_count},      {"q_scale", info.q_scale},
        {"flags", info.flags},           {"payload_bytes", info.payload_size},
        {"raw_payload_bytes", info.raw_payload_size},
    };
    std::cout << report.dump(2) << '\n';
}

struct DecompressArgs {
    std::string input;
    std::string masks;
    std::string out;
    bool demosaic = false;
};

void run_decompress(const DecompressArgs& args)
{
    dlacs_container* raw = nullptr;
    check(dlacs_container_load(args.input.c_str(), &raw));
    ContainerPtr container(raw);
    MasksPtr masks;
    if (!args.masks.empty()) {
        masks = load_masks(args.masks);
    }
    dlacs_image* decoded = nullptr;
    check(dlacs_decompress(container.get(), masks.get(), args.demosaic ? 1 : 0, &decoded));
    ImagePtr image(decoded);
    check(dlacs_image_save(image.get(), args.out.c_str()));
}

// ---- metrics ----

struct MetricsArgs {
    std::string a;
    std::string b;
    bool rgb = false;
};

void run_metrics(const MetricsArgs& args)
{
    const auto a = load_image(args.a);
    const auto b = load_image(args.b);
    dlacs_quality q{};
    check(dlacs_compare(a.get(), b.get(), args.rgb ? 1 : 0, &q));
    nlohmann::json report = {{"mse", q.mse}, {"psnr_infinite", q.psnr_infinite != 0}, {"ssim", q.ssim}};
    report["psnr"] = q.psnr_infinite ? nlohmann::json(nullptr) : nlohmann::json(q.psnr);
    std::cout << report.dump(2) << '\n';
}

// ---- bench ----

struct BenchArgs {
    std::string input;
    uint32_t iterations = 5;
    uint32_t mask_size = 8;
    uint32_t width = 3840;
    uint32_t height = 2048;
    uint64_t seed = 1;
    bool table = false;
};

void run_bench(const BenchArgs& args)
{
    ImagePtr image;
    if (args.input.empty()) {
        dlacs_image* raw = nullptr;
        check(dlacs_image_synthesize(args.width, args.height, 1, args.seed, &raw));
        image.reset(raw);
    } else {
        image = load_image(args.input);
    }
    dlacs_bench_report r{};
    check(dlacs_bench(image.get(), args.iterations, args.mask_size, &r));
    dlacs_op_count ops{};
    check(dlacs_count_ops(args.mask_size, args.mask_size, 4, DLACS_MODE_BAYER, DLACS_CHROMA_444, &ops));

    if (args.table) {
        std::printf("frame           %ux%u, %u iterations, %u thread\n", r.width, r.height, r.iterations, r.threads);
        std::printf("encoder         %ux%ux4 integer masks\n", r.mask_size, r.mask_size);
        std::printf("ns/pixel DLACS  %.3f  (min %.3f, max %.3f)\n", r.ns_per_pixel_dlacs, r.dlacs_min, r.dlacs_max);
        std::printf("ns/pixel DCT    %.3f  (min %.3f, max %.3f)\n", r.ns_per_pixel_dct, r.dct_min, r.dct_max);
        std::printf("DCT / DLACS     %.2fx  (op-count ratio %lld)\n", r.ratio,
                    static_cast<long long>(ops.jpeg_ratio.num / ops.jpeg_ratio.den));
        return;
    }
    const nlohmann::json report = {
        {"ns_per_pixel_dlacs", r.ns_per_pixel_dlacs},
        {"ns_per_pixel_dct", r.ns_per_pixel_dct},
        {"ratio", r.ratio},
        {"iterations", r.iterations},
        {"width", r.width},
        {"height", r.height},
        {"mask_size", r.mask_size},
        {"threads", r.threads},
        {"dlacs_range", {r.dlacs_min, r.dlacs_max}},
        {"dct_range", {r.dct_min, r.dct_max}},
        {"op_count",
         {{"dlacs_multiplies_per_pixel", rational(ops.dlacs_multiplies)},
          {"dlacs_additions_per_pixel", rational(ops.dlacs_additions)},
          {"dlacs_divisions_per_pixel", rational(ops.dlacs_divisions)},
          {"dct_multiplies_per_pixel", rational(ops.dct_multiplies)},
          {"jpeg_ratio", rational(ops.jpeg_ratio)}}},
    };
    std::cout << report.dump(2) << '\n';
}

// ---- ec ----

void run_ec(bool encode, const std::string& in, const std::string& out)
{
    const auto bytes = read_bytes(in);
    dlacs_buffer* raw = nullptr;
    check(encode ? dlacs_ec_encode(bytes.data(), bytes.size(), &raw) : dlacs_ec_decode(bytes.data(), bytes.size(), &raw));
    BufferPtr buffer(raw);
    write_bytes(out, dlacs_buffer_data(buffer.get()), dlacs_buffer_size(buffer.get()));
}

// ---- synth ----

struct SynthArgs {
    std::string out;
    uint32_t width = 512;
    uint32_t height = 512;
    uint32_t channels = 1;
    uint64_t seed = 1;
};

void run_synth(const SynthArgs& args)
{
    dlacs_image* raw = nullptr;
    check(dlacs_image_synthesize(args.width, args.height, args.channels, args.seed, &raw));
    ImagePtr image(raw);
    check(dlacs_image_save(image.get(), args.out.c_str()));
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"dlacs: blind integer-mask block codec"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(dlacs_version()));

    TrainArgs train;
    dlacs_train_params_default(&train.params);
    auto* train_cmd = app.add_subcommand("train", "Learn integer masks and a decode kernel from a directory of frames");
    train_cmd->add_option("-i,--input", train.input, "Directory of .pgm / .ppm training frames")->required();
    train_cmd->add_option("-o,--out", train.out, "Output mask file")->required();
    train_cmd->add_option("--kx", train.params.kx, "Block width")->capture_default_str();
    train_cmd->add_option("--ky", train.params.ky, "Block height")->capture_default_str();
    train_cmd->add_option("--masks", train.params.mask_count, "Number of masks")->capture_default_str();
    train_cmd->add_option("--bits", train.params.bits, "Integer mask bit depth")->capture_default_str();
    train_cmd->add_option("--crop", train.params.crop, "Training crop size")->capture_default_str();
    train_cmd->add_option("--count", train.params.crops_per_frame, "Crops per frame")->capture_default_str();
    train_cmd->add_option("--seed", train.params.seed, "Random seed")->capture_default_str();
    train_cmd->add_option("--epochs", train.params.epochs, "SGD epochs")->capture_default_str();
    train_cmd->add_option("--lr", train.params.learning_rate, "SGD learning rate")->capture_default_str();
    train_cmd->add_option("--batch", train.params.batch_size, "Minibatch size")->capture_default_str();
    train_cmd->add_option("--log", train.log, "Write the 'epoch mse' trace here instead of stderr");

    CompressArgs compress;
    auto* compress_cmd = app.add_subcommand("compress", "Encode a PGM mosaic or PPM image into a container");
    compress_cmd->add_option("input", compress.input, "Input .pgm or .ppm")->required();
    compress_cmd->add_option("-m,--masks", compress.masks, "Mask file from 'train'")->required();
    compress_cmd->add_option("-o,--out", compress.out, "Output container")->required();
    compress_cmd->add_flag("--ec", compress.ec, "Arithmetic-code the payload");
    compress_cmd->add_flag("--strip-decoder", compress.strip_decoder, "Do not embed the decode kernel");

    DecompressArgs decompress;
    auto* decompress_cmd = app.add_subcommand("decompress", "Decode a container to PGM / PPM");
    decompress_cmd->add_option("input", decompress.input, "Container file")->required();
    decompress_cmd->add_option("-o,--out", decompress.out, "Output image")->required();
    decompress_cmd->add_option("-m,--masks", decompress.masks, "Mask file, when the container has no decode kernel");
    decompress_cmd->add_flag("--demosaic", decompress.demosaic, "Write a bilinear-demosaiced PPM");

    MetricsArgs metrics;
    auto* metrics_cmd = app.add_subcommand("metrics", "MSE / PSNR / SSIM between two images, as JSON");
    metrics_cmd->add_option("a", metrics.a)->required();
    metrics_cmd->add_option("b", metrics.b)->required();
    metrics_cmd->add_flag("--rgb", metrics.rgb, "Demosaic mosaics and compare in RGB");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Time the mask encoder against an 8x8 DCT");
    bench_cmd->add_option("input", bench.input, "Frame (.pgm); a seeded synthetic frame when omitted");
    bench_cmd->add_option("-n,--iterations", bench.iterations)->capture_default_str();
    bench_cmd->add_option("--mask-size", bench.mask_size)->capture_default_str();
    bench_cmd->add_option("--width", bench.width, "Synthetic frame width")->capture_default_str();
    bench_cmd->add_option("--height", bench.height, "Synthetic frame height")->capture_default_str();
    bench_cmd->add_option("--seed", bench.seed)->capture_default_str();
    bench_cmd->add_flag("--table", bench.table, "Human-readable table instead of JSON");

    std::string ec_in;
    std::string ec_out;
    auto* ec_cmd = app.add_subcommand("ec", "Entropy-code raw bytes");
    ec_cmd->require_subcommand(1);
    auto* ec_encode_cmd = ec_cmd->add_subcommand("encode", "bytes -> framed stream");
    auto* ec_decode_cmd = ec_cmd->add_subcommand("decode", "framed stream -> bytes");
    for (auto* sub : {ec_encode_cmd, ec_decode_cmd}) {
        sub->add_option("input", ec_in)->required();
        sub->add_option("output", ec_out)->required();
    }

    SynthArgs synth;
    auto* synth_cmd = app.add_subcommand("synth", "Write a seeded smooth-noise test image");
    synth_cmd->add_option("-o,--out", synth.out)->required();
    synth_cmd->add_option("--width", synth.width)->capture_default_str();
    synth_cmd->add_option("--height", synth.height)->capture_default_str();
    synth_cmd->add_option("--channels", synth.channels, "1 (PGM) or 3 (PPM)")->capture_default_str();
    synth_cmd->add_option("--seed", synth.seed)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitContract;
    }

    try {
        if (train_cmd->parsed()) {
            run_train(train);
        } else if (compress_cmd->parsed()) {
            run_compress(compress);
        } else if (decompress_cmd->parsed()) {
            run_decompress(decompress);
        } else if (metrics_cmd->parsed()) {
            run_metrics(metrics);
        } else if (bench_cmd->parsed()) {
            run_bench(bench);
        } else if (ec_cmd->parsed()) {
            run_ec(ec_encode_cmd->parsed(), ec_in, ec_out);
        } else if (synth_cmd->parsed()) {
            run_synth(synth);
        }
    } catch (const CommandError& e) {
        std::cerr << "error: " << e.message << '\n';
        return (e.status == DLACS_E_IO || e.status == DLACS_E_INTERNAL) ? kExitFailure : kExitContract;
    }
    return 0;
}
