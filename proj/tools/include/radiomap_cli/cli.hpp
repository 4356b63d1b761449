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

#include <iosfwd>
#include <string>
#include <vector>

namespace radiomap::cli
{
    inline constexpr int kExitOk = 0;
    inline constexpr int kExitUsage = 1;
    inline constexpr int kExitRuntime = 2;

    // Runs the radiomap command line. args excludes the program name.
    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

    int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

    // CSV dump of the 256QAM CQI table: index,q,rate_x1024,se
    std::string cqi_table_csv();
}
