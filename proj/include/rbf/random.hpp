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

#ifndef RBF_RANDOM_HPP
#define RBF_RANDOM_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace rbf {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

using Engine = std::mt19937_64;

// Immutable (seed, stream-id) token. Every draw made from the same token is
// bit-identical; independent sub-streams are obtained with derive().
class RngStream {
public:
    constexpr RngStream() = default;
    constexpr RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) : seed_(seed), stream_(stream_id) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }

    // Child stream keyed by a tuple such as (trial, cell, purpose).
    RngStream derive(std::initializer_list<std::uint64_t> keys) const;

    // Fresh engine positioned at the start of this stream.
    Engine engine() const;

    friend bool operator==(const RngStream &, const RngStream &) = default;

private:
    std::uint64_t seed_ = 0;
    std::uint64_t stream_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

// Purposes used when deriving per-trial streams.
enum class StreamPurpose : std::uint64_t {
    channel = 1,
    beams = 2,
    sinr_sample = 3,
    auxiliary = 4,
};

// rows x cols matrix of i.i.d. CN(0,1) entries (real and imaginary parts each N(0,1/2)).
ComplexMatrix sample_cscg_matrix(Engine &engine, Eigen::Index rows, Eigen::Index cols);
ComplexMatrix sample_cscg_matrix(const RngStream &rng, Eigen::Index rows, Eigen::Index cols);

// In-place variant for hot loops; draws in the same order as sample_cscg_matrix.
void fill_cscg(Engine &engine, ComplexMatrix &out);

// Set of orthonormal beam vectors stored as the columns of a dim x num_beams matrix.
struct BeamSet {
    ComplexMatrix vectors;

    Eigen::Index dimension() const { return vectors.rows(); }
    Eigen::Index size() const { return vectors.cols(); }
    auto beam(Eigen::Index m) const { return vectors.col(m); }
};

// Haar-distributed orthonormal frame: QR of a CSCG square matrix with the
// diagonal of R rotated onto the positive real axis.
BeamSet sample_orthonormal_beams(Engine &engine, Eigen::Index dim, Eigen::Index num_beams);
BeamSet sample_orthonormal_beams(const RngStream &rng, Eigen::Index dim, Eigen::Index num_beams);

} // namespace rbf

#endif // RBF_RANDOM_HPP
