// SPDX-License-Identifier: Apache-2.0
//
// radiomap: communication-metric maps and sparse map reconstruction
// Copyright (C) 2026 The radiomap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "radiomap/grid.hpp"

#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

namespace radiomap::testing
{
    // Fresh directory under the system temp dir, removed on destruction.
    class ScratchDir
    {
    public:
        explicit ScratchDir(const std::string &tag)
        {
            std::random_device rd;
            path_ = std::filesystem::temp_directory_path() /
                    ("radiomap_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
            std::filesystem::create_directories(path_);
        }
        ~ScratchDir()
        {
            std::error_code ec;
            std::filesystem::remove_all(path_, ec);
        }
        ScratchDir(const ScratchDir &) = delete;
        ScratchDir &operator=(const ScratchDir &) = delete;

        const std::filesystem::path &path() const { return path_; }
        std::filesystem::path operator/(const std::string &name) const { return path_ / name; }

    private:
        std::filesystem::path path_;
    };

    inline std::vector<char> read_bytes(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }

    inline MetricMap flat_map(int n = 32, double resolution = 2.0)
    {
        return MetricMap(GridSpec{n, n, resolution}, MetricKind::BuildingHeight, 0.0f);
    }

    // Fills the inclusive cell rectangle with `height`.
    inline void add_block(MetricMap &map, int x0, int y0, int x1, int y1, float height)
    {
        for (int iy = y0; iy <= y1; ++iy)
            for (int ix = x0; ix <= x1; ++ix)
                map.at(ix, iy) = height;
    }
}
