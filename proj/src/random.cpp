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

#include "rbf/random.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rbf {

std::uint64_t mix64(std::uint64_t x)
{
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream RngStream::derive(std::initializer_list<std::uint64_t> keys) const
{
    std::uint64_t h = mix64(stream_ ^ 0x5851f42d4c957f2dULL);
    for (std::uint64_t k : keys) {
        h = mix64(h ^ mix64(k));
    }
    return RngStream(seed_, h);
}

Engine RngStream::engine() const
{
    const std::array<std::uint32_t, 4> words{
        static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
        static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    std::seed_seq seq(words.begin(), words.end());
    return Engine(seq);
}

ComplexMatrix sample_cscg_matrix(Engine &engine, Eigen::Index rows, Eigen::Index cols)
{
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("sample_cscg_matrix: dimensions must be positive, got " + std::to_string(rows) +
                                    "x" + std::to_string(cols));
    }
    ComplexMatrix out(rows, cols);
    fill_cscg(engine, out);
    return out;
}

void fill_cscg(Engine &engine, ComplexMatrix &out)
{
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    // column-major fill, so an r x c draw is a prefix of an r x c' draw for c' > c
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
        for (Eigen::Index i = 0; i < out.rows(); ++i) {
            const double re = gauss(engine);
            const double im = gauss(engine);
            out(i, j) = cplx(re, im);
        }
    }
}

ComplexMatrix sample_cscg_matrix(const RngStream &rng, Eigen::Index rows, Eigen::Index cols)
{
    Engine engine = rng.engine();
    return sample_cscg_matrix(engine, rows, cols);
}

BeamSet sample_orthonormal_beams(Engine &engine, Eigen::Index dim, Eigen::Index num_beams)
{
    if (num_beams < 1 || num_beams > dim) {
        throw std::invalid_argument("sample_orthonormal_beams: need 1 <= num_beams <= dim, got num_beams=" +
                                    std::to_string(num_beams) + " dim=" + std::to_string(dim));
    }
    const ComplexMatrix z = sample_cscg_matrix(engine, dim, dim);
    const Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, num_beams);
    const auto &r = qr.matrixQR();
    for (Eigen::Index j = 0; j < num_beams; ++j) {
        const double mag = std::abs(r(j, j));
        const cplx phase = mag > 0.0 ? r(j, j) / mag : cplx(1.0, 0.0);
        q.col(j) *= phase;
    }
    return BeamSet{std::move(q)};
}

BeamSet sample_orthonormal_beams(const RngStream &rng, Eigen::Index dim, Eigen::Index num_beams)
{
    Engine engine = rng.engine();
    return sample_orthonormal_beams(engine, dim, num_beams);
}

} // namespace rbf
