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

#include "radiomap/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace radiomap::linkadapt
{
    namespace
    {
        constexpr int kMaxSweeps = 64;

        double off_diagonal_norm(const CMatrix &a)
        {
            double sum = 0.0;
            for (Eigen::Index j = 0; j < a.cols(); ++j)
                for (Eigen::Index i = 0; i < a.rows(); ++i)
                    if (i != j)
                        sum += std::norm(a(i, j));
            return std::sqrt(sum);
        }
    }

    EigenDecomposition eigendecompose_hermitian(const CMatrix &r)
    {
        if (r.rows() != r.cols())
            throw std::invalid_argument("eigendecompose_hermitian: matrix is not square");
        const Eigen::Index n = r.rows();
        const double norm = r.norm();
        if (!std::isfinite(norm))
            throw std::invalid_argument("eigendecompose_hermitian: non-finite entries");
        if ((r - r.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * norm)
            throw std::invalid_argument("eigendecompose_hermitian: matrix is not Hermitian");

        CMatrix a = 0.5 * (r + r.adjoint());
        CMatrix v = CMatrix::Identity(n, n);
        const double target = 1e-12 * norm;

        int sweeps = 0;
        while (norm > 0.0 && off_diagonal_norm(a) >= target && sweeps < kMaxSweeps)
        {
            ++sweeps;
            for (Eigen::Index p = 0; p < n - 1; ++p)
            {
                for (Eigen::Index q = p + 1; q < n; ++q)
                {
                    const double mag = std::abs(a(p, q));
                    if (mag == 0.0)
                        continue;
                    // Unitary U = diag(1, e^{-j phi}) * [[c, s], [-s, c]] turns the (p, q) block
                    // into a real symmetric one and annihilates its off-diagonal.
                    const Complex phase = a(p, q) / mag;
                    const double app = a(p, p).real(), aqq = a(q, q).real();
                    const double theta = (aqq - app) / (2.0 * mag);
                    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    const double c = 1.0 / std::sqrt(t * t + 1.0);
                    const double s = t * c;

                    const Complex u_pp = c, u_pq = s, u_qp = -s * std::conj(phase), u_qq = c * std::conj(phase);
                    for (Eigen::Index k = 0; k < n; ++k)
                    {
                        // columns: A <- A U
                        Complex akp = a(k, p), akq = a(k, q);
                        a(k, p) = akp * u_pp + akq * u_qp;
                        a(k, q) = akp * u_pq + akq * u_qq;
                        Complex vkp = v(k, p), vkq = v(k, q);
                        v(k, p) = vkp * u_pp + vkq * u_qp;
                        v(k, q) = vkp * u_pq + vkq * u_qq;
                    }
                    for (Eigen::Index k = 0; k < n; ++k)
                    {
                        // rows: A <- U^H A
                        Complex apk = a(p, k), aqk = a(q, k);
                        a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
                        a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
                    }
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    a(p, p) = a(p, p).real();
                    a(q, q) = a(q, q).real();
                }
            }
        }

        std::vector<Eigen::Index> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() > a(y, y).real(); });

        EigenDecomposition out;
        out.values.resize(n);
        out.vectors.resize(n, n);
        out.sweeps = sweeps;
        for (Eigen::Index i = 0; i < n; ++i)
        {
            out.values(i) = std::max(0.0, a(order[i], order[i]).real());
            out.vectors.col(i) = v.col(order[i]);
        }
        return out;
    }
}
