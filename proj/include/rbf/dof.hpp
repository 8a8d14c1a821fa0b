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

#ifndef RBF_DOF_HPP
#define RBF_DOF_HPP

#include "rbf/receivers.hpp"

#include <ostream>
#include <span>
#include <vector>

namespace rbf {

struct DofQuery {
    std::vector<double> alpha; // user density exponent per cell, >= 0
    int num_tx_antennas = 1;
    int num_rx_antennas = 1;
    std::vector<int> beams; // M_c per cell, 0 <= M_c <= N_T
    ReceiverKind kind = ReceiverKind::mmse;
};

struct DofPoint {
    std::vector<double> d;
};

struct OptimalBeams {
    double dof = 0.0;
    int beams = 0;
};

// Antenna count that sets the interference-limited knee: N_R for MMSE, 1 for MF/AS.
int effective_rx(ReceiverKind kind, int nr);

double dof_single_cell(double alpha, int beams, int nr, ReceiverKind kind);

// Closed-form maximiser over M in {1..N_T}. Ties resolve to the smaller M.
OptimalBeams optimal_beams_single_cell(double alpha, int nt, int nr, ReceiverKind kind);
// Exhaustive search over M in {1..N_T}, same tie rule.
OptimalBeams optimal_beams_brute_force(double alpha, int nt, int nr, ReceiverKind kind);

DofPoint dof_multi_cell(const DofQuery &q);

class DofRegion {
public:
    struct Generator {
        std::vector<int> beams;
        DofPoint point;
    };

    DofRegion(int cells, std::vector<Generator> generators);

    int num_cells() const { return cells_; }
    const std::vector<Generator> &generators() const { return generators_; }

    // max over generators of sum_c w_c d_c
    double support(std::span<const double> weights) const;
    // Counter-clockwise hull vertices starting at the lowest-leftmost point. C = 2 only.
    const std::vector<DofPoint> &hull() const;
    // Generators not weakly dominated by another generator.
    std::vector<DofPoint> pareto_front() const;

private:
    int cells_;
    std::vector<Generator> generators_;
    std::vector<DofPoint> hull_;
};

DofRegion dof_region(std::span<const double> alpha, int nt, int nr, ReceiverKind kind);

// Box [0, N_T]^C, spanned by its corners.
DofRegion region_upper_bound(int cells, int nt);

double optimality_threshold(int cells, int nt, int nr, ReceiverKind kind);

// m1..mC,d1..dC per generator
void write_region_csv(std::ostream &out, const DofRegion &region);
// d1,d2 per hull vertex
void write_hull_csv(std::ostream &out, const DofRegion &region);

} // namespace rbf

#endif // RBF_DOF_HPP
