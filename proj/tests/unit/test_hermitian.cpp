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

#include <catch_amalgamated.hpp>

#include "radiomap/hermitian.hpp"

#include <Eigen/Eigenvalues>

#include <random>

using namespace radiomap;
using radiomap::linkadapt::eigendecompose_hermitian;

namespace
{
    CMatrix random_psd(int n, int rank, std::mt19937_64 &gen, double scale = 1.0)
    {
        std::normal_distribution<double> g(0.0, 1.0);
        CMatrix a(n, rank);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < rank; ++j)
                a(i, j) = Complex(g(gen), g(gen));
        return scale * a * a.adjoint();
    }

    double reconstruction_error(const CMatrix &r, const linkadapt::EigenDecomposition &e)
    {
        CMatrix back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
        return (back - r).norm();
    }
}

TEST_CASE("eigendecompose_hermitian - identity")
{
    auto e = eigendecompose_hermitian(CMatrix::Identity(4, 4));
    for (int i = 0; i < 4; ++i)
        CHECK(e.values(i) == Catch::Approx(1.0));
    CHECK((e.vectors.adjoint() * e.vectors - CMatrix::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("eigendecompose_hermitian - diagonal input keeps the standard basis")
{
    CMatrix d = CMatrix::Zero(4, 4);
    d(0, 0) = 1.0;
    d(1, 1) = 3.0;
    d(2, 2) = 4.0;
    d(3, 3) = 2.0;
    auto e = eigendecompose_hermitian(d);
    CHECK(e.values(0) == 4.0);
    CHECK(e.values(1) == 3.0);
    CHECK(e.values(2) == 2.0);
    CHECK(e.values(3) == 1.0);
    const int expected_axis[] = {2, 1, 3, 0};
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(e.vectors(expected_axis[i], i)) == Catch::Approx(1.0));
    CHECK(e.sweeps == 0);
}

TEST_CASE("eigendecompose_hermitian - agrees with Eigen's self-adjoint solver")
{
    std::mt19937_64 gen(21);
    for (int trial = 0; trial < 200; ++trial)
    {
        const int n = 1 + trial % 6;
        const int rank = 1 + trial % n;
        CMatrix r = random_psd(n, rank, gen, trial % 2 ? 1e-12 : 1.0);
        auto e = eigendecompose_hermitian(r);
        Eigen::SelfAdjointEigenSolver<CMatrix> oracle(r);
        const double scale = r.norm();
        for (int i = 0; i < n; ++i)
            REQUIRE(std::abs(e.values(i) - std::max(0.0, oracle.eigenvalues()(n - 1 - i))) <= 1e-10 * scale);
        for (int i = 1; i < n; ++i)
            REQUIRE(e.values(i - 1) >= e.values(i));
        REQUIRE(reconstruction_error(r, e) <= 1e-10 * scale);
        REQUIRE((e.vectors.adjoint() * e.vectors - CMatrix::Identity(n, n)).norm() <= 1e-10);
        REQUIRE(e.sweeps <= 10);
    }
}

TEST_CASE("eigendecompose_hermitian - degenerate and zero input")
{
    auto z = eigendecompose_hermitian(CMatrix::Zero(4, 4));
    CHECK(z.values.isZero());
    CHECK((z.vectors.adjoint() * z.vectors - CMatrix::Identity(4, 4)).norm() < 1e-12);

    // rank one: a single non-zero eigenvalue equal to |v|^2
    CVector v(4);
    v << Complex(1, 2), Complex(0, -1), Complex(3, 0), Complex(-1, 1);
    auto e = eigendecompose_hermitian(v * v.adjoint());
    CHECK(e.values(0) == Catch::Approx(v.squaredNorm()));
    for (int i = 1; i < 4; ++i)
        CHECK(e.values(i) == Catch::Approx(0.0).margin(1e-12 * v.squaredNorm()));
    CHECK(std::abs(e.vectors.col(0).dot(v)) == Catch::Approx(v.norm()));
}

TEST_CASE("eigendecompose_hermitian - rejects non-Hermitian and non-square input")
{
    CMatrix r = CMatrix::Identity(3, 3);
    r(0, 1) = Complex(0.0, 1.0);
    CHECK_THROWS_AS(eigendecompose_hermitian(r), std::invalid_argument);
    CHECK_THROWS_AS(eigendecompose_hermitian(CMatrix::Zero(2, 3)), std::invalid_argument);
}
