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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace radiomap
{
    // Derives an independent stream seed from a base seed and a job key.
    inline std::uint64_t mix_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> key)
    {
        auto splitmix = [](std::uint64_t x)
        {
            x += 0x9E3779B97F4A7C15ull;
            x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
            x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
            return x ^ (x >> 31);
        };
        std::uint64_t h = splitmix(seed);
        for (auto k : key)
            h = splitmix(h ^ splitmix(k));
        return h;
    }

    // mt19937_64 is fully specified by the standard; the std distributions are not, so the
    // conversions below are done by hand to keep outputs identical across standard libraries.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : engine_(seed) {}

        // [0, 1)
        double uniform()
        {
            return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        }

        double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

        // Unbiased integer in [0, n).
        std::uint64_t below(std::uint64_t n)
        {
            if (n <= 1)
                return 0;
            const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
            std::uint64_t x;
            do
                x = engine_();
            while (x >= limit);
            return x % n;
        }

        // Integer in [lo, hi].
        int between(int lo, int hi)
        {
            return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
        }

        bool chance(double p) { return uniform() < p; }

    private:
        std::mt19937_64 engine_;
    };
}
