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

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace radiomap
{
    inline int default_jobs()
    {
        return std::max(1u, std::thread::hardware_concurrency());
    }

    // Calls fn(i) for i in [0, n) on up to `jobs` threads. Each index is handled exactly once, so
    // writes to slot i of a preallocated output are race-free and the result is independent of
    // scheduling. The first exception thrown by any worker is rethrown on the caller's thread.
    template <typename Fn>
    void parallel_for(std::size_t n, int jobs, Fn &&fn)
    {
        if (jobs <= 0)
            jobs = default_jobs();
        const auto workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }

        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        auto worker = [&]
        {
            for (std::size_t i = next++; i < n; i = next++)
            {
                try
                {
                    fn(i);
                }
                catch (...)
                {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next = n;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers - 1);
        for (std::size_t w = 1; w < workers; ++w)
            pool.emplace_back(worker);
        worker();
        for (auto &t : pool)
            t.join();
        if (error)
            std::rethrow_exception(error);
    }
}
