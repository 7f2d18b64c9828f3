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
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace dlacs::testing {

inline BayerFrame random_frame(std::uint32_t w, std::uint32_t h, std::uint64_t seed, Pattern p = Pattern::RGGB)
{
    BayerFrame f(w, h, p);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, 255);
    for (auto& s : f.samples) {
        s = static_cast<std::uint8_t>(pick(rng));
    }
    return f;
}

inline BayerFrame frame_from(std::uint32_t w, std::uint32_t h, std::vector<std::uint8_t> samples,
                             Pattern p = Pattern::RGGB)
{
    BayerFrame f(w, h, p);
    f.samples = std::move(samples);
    return f;
}

inline std::vector<std::int8_t> random_masks(std::size_t n, int bits, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(-(1 << (bits - 1)), (1 << (bits - 1)) - 1);
    std::vector<std::int8_t> w(n);
    for (auto& v : w) {
        v = static_cast<std::int8_t>(pick(rng));
    }
    return w;
}

// Per-test scratch directory, removed on scope exit.
class TempDir {
public:
    explicit TempDir(const std::string& tag)
    {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("dlacs-" + tag + "-" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

} // namespace dlacs::testing
