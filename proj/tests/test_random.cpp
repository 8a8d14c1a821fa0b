// SPDX-License-Identifier: Apache-2.0
//
// rbf-lab: multi-cell MIMO random beamforming laboratory
// Copyright (C) 2026 The rbf-lab Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rbf/random.hpp"
#include "rbf/validation.hpp"

#include <algorithm>
#include <cmath>

using namespace rbf;

TEST_CASE("same stream reproduces the same draws")
{
    const RngStream rng(42, 7);
    const auto a = sample_cscg_matrix(rng, 1, 1);
    const auto b = sample_cscg_matrix(rng, 1, 1);
    CHECK(a(0, 0) == b(0, 0));

    const auto x = sample_cscg_matrix(rng, 3, 5);
    const auto y = sample_cscg_matrix(rng, 3, 5);
    CHECK(x == y);
}

TEST_CASE("different streams and seeds differ")
{
    const auto a = sample_cscg_matrix(RngStream(42, 0), 2, 2);
    const auto b = sample_cscg_matrix(RngStream(42, 1), 2, 2);
    const auto c = sample_cscg_matrix(RngStream(43, 0), 2, 2);
    CHECK(a != b);
    CHECK(a != c);
}

TEST_CASE("derived streams are deterministic and key-sensitive")
{
    const RngStream root(9);
    CHECK(root.derive({1, 2}) == root.derive({1, 2}));
    CHECK_FALSE(root.derive({1, 2}) == root.derive({2, 1}));
    CHECK_FALSE(root.derive({1}) == root.derive({1, 0}));
    CHECK_FALSE(root.derive({3}) == RngStream(9).derive({4}));
}

TEST_CASE("cscg entries have unit variance split evenly")
{
    const auto h = sample_cscg_matrix(RngStream(1), 1000, 1000);
    const double n = static_cast<double>(h.size());
    const double power = h.cwiseAbs2().sum() / n;
    const double re = h.real().array().square().sum() / n;
    const double mean_re = h.real().sum() / n;
    const double mean_im = h.imag().sum() / n;
    CHECK(power == doctest::Approx(1.0).epsilon(0.01));
    CHECK(re == doctest::Approx(0.5).epsilon(0.01));
    CHECK(std::abs(mean_re) < 0.005);
    CHECK(std::abs(mean_im) < 0.005);
}

TEST_CASE("small matrix has finite entries")
{
    const auto h = sample_cscg_matrix(RngStream(5), 2, 3);
    CHECK(h.rows() == 2);
    CHECK(h.cols() == 3);
    CHECK(h.allFinite());
}

TEST_CASE("invalid dimensions are rejected")
{
    CHECK_THROWS_AS(sample_cscg_matrix(RngStream(5), 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(sample_cscg_matrix(RngStream(5), 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(sample_orthonormal_beams(RngStream(5), 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(sample_orthonormal_beams(RngStream(5), 2, 0), std::invalid_argument);
}

TEST_CASE("beams are orthonormal")
{
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto b = sample_orthonormal_beams(RngStream(s), 4, 4);
        const Eigen::MatrixXcd gram = b.vectors.adjoint() * b.vectors;
        CHECK((gram - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
    }
    const auto partial = sample_orthonormal_beams(RngStream(3), 6, 2);
    CHECK(partial.dimension() == 6);
    CHECK(partial.size() == 2);
    const Eigen::MatrixXcd gram = partial.vectors.adjoint() * partial.vectors;
    CHECK((gram - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("single beam is a unit vector")
{
    const auto b = sample_orthonormal_beams(RngStream(11), 3, 1);
    CHECK(b.size() == 1);
    CHECK(b.beam(0).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("first beam entry power is uniform for two-dimensional beams")
{
    Engine engine = RngStream(77).engine();
    std::vector<double> x;
    for (int i = 0; i < 10000; ++i) {
        const auto b = sample_orthonormal_beams(engine, 2, 2);
        x.push_back(std::norm(b.vectors(0, 0)));
    }
    const auto ks = ks_distance(EmpiricalCdf::from_unsorted(x), [](double s) { return std::clamp(s, 0.0, 1.0); });
    CHECK(ks.pass);
}

TEST_CASE("beams are isotropic")
{
    Engine engine = RngStream(78).engine();
    Eigen::VectorXcd u(3);
    u << cplx(1, 1), cplx(0, -1), cplx(2, 0);
    u.normalize();
    std::vector<double> proj;
    std::vector<double> coord;
    for (int i = 0; i < 10000; ++i) {
        const auto b = sample_orthonormal_beams(engine, 3, 3);
        proj.push_back(std::norm(u.dot(b.beam(0))));
        coord.push_back(std::norm(b.vectors(0, 0)));
    }
    const auto ks = ks_two_sample(EmpiricalCdf::from_unsorted(proj), EmpiricalCdf::from_unsorted(coord));
    CHECK(ks.statistic < 0.02);
}
