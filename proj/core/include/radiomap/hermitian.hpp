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

#include "radiomap/mimo.hpp"

#include <Eigen/Dense>

namespace radiomap::linkadapt
{
    struct EigenDecomposition
    {
        Eigen::VectorXd values; // descending, clamped at 0
        CMatrix vectors;        // column i belongs to values(i)
        int sweeps = 0;
    };

    // Cyclic complex Jacobi for small Hermitian PSD matrices. Sweeps until the off-diagonal
    // Frobenius mass drops below 1e-12 ||R||_F. Throws std::invalid_argument when R deviates from
    // its adjoint by more than 1e-9 ||R||_F (entrywise max).
    EigenDecomposition eigendecompose_hermitian(const CMatrix &r);
}
