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

#include <stdexcept>
#include <string>

namespace radiomap
{
    // Filesystem failure (open, short write, rename). The message carries the path.
    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Bytes on disk do not form a parseable NPY file (bad magic, truncated header or payload).
    class MalformedFileError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Parseable NPY file with an unsupported layout: dtype other than '<f4', Fortran order, rank != 2.
    class FormatError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Values violate the invariants of the metric kind they were declared as.
    class InvariantError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}
