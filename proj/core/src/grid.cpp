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

#include "radiomap/grid.hpp"
#include "radiomap/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

namespace radiomap
{
    namespace
    {
        constexpr char kMagic[] = "\x93NUMPY";
        constexpr std::size_t kMagicLen = 6;
        constexpr std::size_t kHeaderAlign = 16;

        std::uint32_t to_little(std::uint32_t v)
        {
            if constexpr (std::endian::native == std::endian::big)
                return ((v & 0xFFu) << 24) | ((v & 0xFF00u) << 8) | ((v >> 8) & 0xFF00u) | (v >> 24);
            return v;
        }

        bool is_integral(float v) { return std::floor(v) == v; }

        // Extracts the text following 'key': up to the next top-level ',' or '}'.
        std::string dict_value(const std::string &header, const std::string &key)
        {
            auto pos = header.find("'" + key + "'");
            if (pos == std::string::npos)
                throw MalformedFileError("NPY header is missing key '" + key + "'");
            pos = header.find(':', pos);
            if (pos == std::string::npos)
                throw MalformedFileError("NPY header has no value for '" + key + "'");
            ++pos;
            int depth = 0;
            std::string out;
            for (; pos < header.size(); ++pos)
            {
                char c = header[pos];
                if (c == '(')
                    ++depth;
                else if (c == ')')
                    --depth;
                else if ((c == ',' || c == '}') && depth == 0)
                    break;
                out.push_back(c);
            }
            auto first = out.find_first_not_of(" \t");
            auto last = out.find_last_not_of(" \t");
            return first == std::string::npos ? std::string{} : out.substr(first, last - first + 1);
        }

        std::vector<long long> parse_shape(const std::string &text)
        {
            if (text.size() < 2 || text.front() != '(' || text.back() != ')')
                throw MalformedFileError("NPY shape is not a tuple: " + text);
            std::vector<long long> dims;
            std::string token;
            for (std::size_t i = 1; i + 1 <= text.size(); ++i)
            {
                char c = text[i];
                if (c == ',' || c == ')')
                {
                    auto first = token.find_first_not_of(' ');
                    if (first != std::string::npos)
                    {
                        try
                        {
                            dims.push_back(std::stoll(token.substr(first)));
                        }
                        catch (const std::exception &)
                        {
                            throw MalformedFileError("NPY shape entry is not an integer: " + token);
                        }
                    }
                    token.clear();
                }
                else
                    token.push_back(c);
            }
            return dims;
        }
    }

    void GridSpec::validate() const
    {
        if (n_x < 8 || n_y < 8)
            throw std::invalid_argument("grid must be at least 8x8 cells");
        if (!(resolution_m > 0.0) || !std::isfinite(resolution_m))
            throw std::invalid_argument("grid resolution must be positive");
    }

    std::string_view to_string(MetricKind kind)
    {
        switch (kind)
        {
        case MetricKind::BuildingHeight:
            return "B";
        case MetricKind::PathGainIso:
            return "P_iso";
        case MetricKind::PathGainDir:
            return "P_dir";
        case MetricKind::RI:
            return "RI";
        case MetricKind::CQI:
            return "CQI";
        case MetricKind::Throughput:
            return "TP";
        }
        return "?";
    }

    MetricKind metric_kind_from_string(std::string_view name)
    {
        for (auto kind : {MetricKind::BuildingHeight, MetricKind::PathGainIso, MetricKind::PathGainDir, MetricKind::RI,
                          MetricKind::CQI, MetricKind::Throughput})
            if (to_string(kind) == name)
                return kind;
        throw std::invalid_argument("unknown metric kind: " + std::string(name));
    }

    MetricMap::MetricMap(GridSpec spec, MetricKind kind, float fill)
        : spec_(spec), kind_(kind), values_(spec.cell_count(), fill) {}

    MetricMap::MetricMap(GridSpec spec, MetricKind kind, std::vector<float> values, bool sparse)
        : spec_(spec), kind_(kind), values_(std::move(values)), sparse_(sparse)
    {
        if (values_.size() != spec_.cell_count())
            throw std::invalid_argument("metric map value count does not match grid size");
    }

    void MetricMap::validate(double tp_max) const
    {
        auto fail = [&](std::size_t i, const char *what)
        {
            auto c = spec_.cell_of(i);
            throw InvariantError(std::string(to_string(kind_)) + " map: " + what + " at cell (" +
                                 std::to_string(c.ix) + ", " + std::to_string(c.iy) + "), value " +
                                 std::to_string(values_[i]));
        };
        if (kind_ == MetricKind::BuildingHeight && sparse_)
            throw InvariantError("building height maps cannot be sparse");
        for (std::size_t i = 0; i < values_.size(); ++i)
        {
            float v = values_[i];
            if (!std::isfinite(v))
                fail(i, "non-finite value");
            if (is_sentinel(i))
                continue;
            switch (kind_)
            {
            case MetricKind::BuildingHeight:
                if (v < 0.0f)
                    fail(i, "negative height");
                break;
            case MetricKind::PathGainIso:
            case MetricKind::PathGainDir:
                if (v < kPathGainFloorDb || v > kPathGainCeilDb)
                    fail(i, "path gain outside [-160, 0] dB");
                break;
            case MetricKind::RI:
                if (!is_integral(v) || v < 1.0f || v > 4.0f)
                    fail(i, "rank indicator outside {1,2,3,4}");
                break;
            case MetricKind::CQI:
                if (!is_integral(v) || v < 0.0f || v > 15.0f)
                    fail(i, "CQI outside {0..15}");
                break;
            case MetricKind::Throughput:
                if (v < 0.0f || v > tp_max)
                    fail(i, "throughput outside [0, tp_max]");
                break;
            }
        }
    }

    void write_grid(const MetricMap &map, const std::filesystem::path &path)
    {
        const auto &spec = map.spec();
        std::string dict = "{'descr': '<f4', 'fortran_order': False, 'shape': (" + std::to_string(spec.n_y) + ", " +
                           std::to_string(spec.n_x) + "), }";
        std::size_t unpadded = kMagicLen + 2 + 2 + dict.size() + 1;
        std::size_t padding = (kHeaderAlign - unpadded % kHeaderAlign) % kHeaderAlign;
        dict.append(padding, ' ');
        dict.push_back('\n');
        if (dict.size() > 0xFFFF)
            throw FormatError("NPY header too long for version 1.0: " + path.string());

        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open for writing: " + path.string());
        out.write(kMagic, kMagicLen);
        const unsigned char version[2] = {1, 0};
        out.write(reinterpret_cast<const char *>(version), 2);
        const unsigned char header_len[2] = {static_cast<unsigned char>(dict.size() & 0xFF),
                                             static_cast<unsigned char>(dict.size() >> 8)};
        out.write(reinterpret_cast<const char *>(header_len), 2);
        out.write(dict.data(), static_cast<std::streamsize>(dict.size()));

        auto values = map.values();
        if constexpr (std::endian::native == std::endian::little)
        {
            out.write(reinterpret_cast<const char *>(values.data()),
                      static_cast<std::streamsize>(values.size() * sizeof(float)));
        }
        else
        {
            for (float v : values)
            {
                auto word = to_little(std::bit_cast<std::uint32_t>(v));
                out.write(reinterpret_cast<const char *>(&word), sizeof(word));
            }
        }
        out.flush();
        if (!out)
            throw IoError("write failed: " + path.string());
    }

    MetricMap read_grid(const std::filesystem::path &path, MetricKind expected_kind, const ReadOptions &options)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError("cannot open for reading: " + path.string());

        char prefix[10];
        if (!in.read(prefix, sizeof(prefix)))
            throw MalformedFileError("truncated NPY preamble: " + path.string());
        if (std::memcmp(prefix, kMagic, kMagicLen) != 0)
            throw MalformedFileError("bad NPY magic: " + path.string());
        auto major = static_cast<unsigned char>(prefix[6]);
        std::size_t header_len = 0;
        if (major == 1)
        {
            header_len = static_cast<unsigned char>(prefix[8]) | (static_cast<std::size_t>(static_cast<unsigned char>(prefix[9])) << 8);
        }
        else if (major == 2 || major == 3)
        {
            char extra[2];
            if (!in.read(extra, 2))
                throw MalformedFileError("truncated NPY preamble: " + path.string());
            header_len = static_cast<unsigned char>(prefix[8]) |
                         (static_cast<std::size_t>(static_cast<unsigned char>(prefix[9])) << 8) |
                         (static_cast<std::size_t>(static_cast<unsigned char>(extra[0])) << 16) |
                         (static_cast<std::size_t>(static_cast<unsigned char>(extra[1])) << 24);
        }
        else
            throw MalformedFileError("unsupported NPY version " + std::to_string(major) + ": " + path.string());

        std::string header(header_len, '\0');
        if (!in.read(header.data(), static_cast<std::streamsize>(header_len)))
            throw MalformedFileError("truncated NPY header: " + path.string());

        auto descr = dict_value(header, "descr");
        if (descr != "'<f4'" && descr != "'|f4'")
            throw FormatError("unsupported dtype " + descr + " (expected '<f4'): " + path.string());
        if (dict_value(header, "fortran_order") != "False")
            throw FormatError("Fortran-ordered arrays are not supported: " + path.string());
        auto dims = parse_shape(dict_value(header, "shape"));
        if (dims.size() != 2)
            throw FormatError("expected a rank-2 array, got rank " + std::to_string(dims.size()) + ": " + path.string());
        if (dims[0] <= 0 || dims[1] <= 0)
            throw FormatError("empty array shape: " + path.string());

        GridSpec spec{static_cast<int>(dims[1]), static_cast<int>(dims[0]), options.resolution_m};
        std::vector<float> values(spec.cell_count());
        if (!in.read(reinterpret_cast<char *>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(float))))
            throw MalformedFileError("truncated NPY payload: " + path.string());
        if constexpr (std::endian::native == std::endian::big)
            for (auto &v : values)
                v = std::bit_cast<float>(to_little(std::bit_cast<std::uint32_t>(v)));

        bool sparse = expected_kind != MetricKind::BuildingHeight &&
                      std::find(values.begin(), values.end(), kSentinel) != values.end();
        MetricMap map(spec, expected_kind, std::move(values), sparse);
        if (options.validate)
            map.validate(options.tp_max);
        return map;
    }

    double normalize_value(MetricKind kind, double raw, double height_max, double tp_max)
    {
        switch (kind)
        {
        case MetricKind::BuildingHeight:
            return height_max > 0.0 ? raw / height_max : raw;
        case MetricKind::PathGainIso:
        case MetricKind::PathGainDir:
            return (std::clamp(raw, kPathGainFloorDb, kPathGainCeilDb) - kPathGainFloorDb) /
                   (kPathGainCeilDb - kPathGainFloorDb);
        case MetricKind::RI:
            return raw / 4.0;
        case MetricKind::CQI:
            return raw / 15.0;
        case MetricKind::Throughput:
            return raw / tp_max;
        }
        return raw;
    }

    double denormalize_value(MetricKind kind, double normalized, double height_max, double tp_max)
    {
        switch (kind)
        {
        case MetricKind::BuildingHeight:
            return height_max > 0.0 ? normalized * height_max : normalized;
        case MetricKind::PathGainIso:
        case MetricKind::PathGainDir:
            return normalized * (kPathGainCeilDb - kPathGainFloorDb) + kPathGainFloorDb;
        case MetricKind::RI:
            return normalized * 4.0;
        case MetricKind::CQI:
            return normalized * 15.0;
        case MetricKind::Throughput:
            return normalized * tp_max;
        }
        return normalized;
    }

    Tensor3 normalize_stack(std::span<const MetricMap> maps, const NormalizationParams &params)
    {
        if (maps.empty())
            throw std::invalid_argument("normalize_stack: no channels");
        const GridSpec &spec = maps.front().spec();
        for (const auto &m : maps)
            if (!(m.spec() == spec))
                throw std::invalid_argument("normalize_stack: channels have mismatched grid specs");

        double height_max = params.height_max;
        if (height_max <= 0.0)
            for (const auto &m : maps)
                if (m.kind() == MetricKind::BuildingHeight)
                    for (float v : m.values())
                        height_max = std::max(height_max, static_cast<double>(v));

        Tensor3 out;
        out.channels = static_cast<int>(maps.size());
        out.n_y = spec.n_y;
        out.n_x = spec.n_x;
        out.values.resize(maps.size() * spec.cell_count());
        std::size_t offset = 0;
        for (const auto &m : maps)
        {
            for (std::size_t i = 0; i < spec.cell_count(); ++i)
            {
                out.values[offset + i] = m.is_sentinel(i)
                                             ? kSentinel
                                             : static_cast<float>(normalize_value(m.kind(), m[i], height_max, params.tp_max));
            }
            offset += spec.cell_count();
        }
        return out;
    }
}
