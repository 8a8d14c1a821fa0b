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

#ifndef RBF_SCHEDULER_HPP
#define RBF_SCHEDULER_HPP

#include "rbf/network.hpp"
#include "rbf/receivers.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace rbf {

class SchedulingError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct BeamAssignment {
    int user = 0;
    double sinr = 0.0;
};

struct CellSchedule {
    int cell = 0;
    std::vector<BeamAssignment> beams; // indexed by beam
    double rate = 0.0;                 // sum_m log2(1 + SINR of the selected user), bits/s/Hz
};

struct ScheduleResult {
    std::vector<CellSchedule> cells;

    double total_rate() const;
};

// Max-SINR user per beam; ties go to the lowest user index.
CellSchedule schedule_cell(const SinrTable &table);
ScheduleResult schedule(std::span<const SinrTable> tables);

struct SumRateEstimate {
    std::vector<double> cell_mean;   // bits/s/Hz, per cell
    std::vector<double> cell_stderr; // bits/s/Hz, per cell
    double total_mean = 0.0;
    double total_stderr = 0.0;
    std::int64_t trials = 0;
};

// K_c = Theta(rho^alpha_c) populations: K_c = max(1, floor(a_c rho^alpha_c)).
struct UserScaling {
    std::vector<double> alpha;
    std::vector<double> prefactor;

    static UserScaling uniform(int cells, double alpha, double prefactor = 1.0);
};

int users_for_snr(const UserScaling &scaling, double rho, int c);

// Copy of cfg with total power rho * sigma^2 and, when scaling is given, the
// user populations of users_for_snr.
NetworkConfig config_at_snr(const NetworkConfig &cfg, double rho, const UserScaling *scaling = nullptr);

struct SimulationOptions {
    int threads = 0; // 0: default_threads()
};

// Monte Carlo estimate of the per-cell sum-rate. Trial t draws its channels
// from rng.derive({t}), so every estimate built from the same rng shares its
// fading (common random numbers across receivers, beam counts and user counts).
SumRateEstimate estimate_sum_rate(const NetworkConfig &cfg, ReceiverKind kind, std::int64_t trials,
                                  const RngStream &rng, SimulationOptions opts = {});

// Several receivers evaluated on the same realizations.
std::vector<SumRateEstimate> estimate_sum_rates(const NetworkConfig &cfg, std::span<const ReceiverKind> kinds,
                                                std::int64_t trials, const RngStream &rng,
                                                SimulationOptions opts = {});

struct SweepEstimate {
    std::vector<SumRateEstimate> points;
    Eigen::MatrixXd paired_stderr; // (i, j): standard error of total_i - total_j over common trials
};

// Sum rates of several configs (typically differing only in beam or user
// counts) on common random numbers, with paired standard errors of the
// differences between their totals.
SweepEstimate estimate_sum_rate_sweep(std::span<const NetworkConfig> cfgs, ReceiverKind kind, std::int64_t trials,
                                      const RngStream &rng, SimulationOptions opts = {});

// Single-cell bound on the dirty-paper-coding sum rate,
//   N_T E[log2(1 + eta max_k Tr(H_k^H H_k))],  eta = P_T / (N_T sigma^2),
// with H_k the full N_R x N_T channels (same streams as the RBF estimates).
SumRateEstimate dpc_upper_bound(const NetworkConfig &cfg, std::int64_t trials, const RngStream &rng,
                                SimulationOptions opts = {});

// Scheduled SINR of beam `beam` in cell `cell` for one realization of trial t
// (max over users); exposed for distributional checks.
std::vector<double> scheduled_sinr_samples(const NetworkConfig &cfg, ReceiverKind kind, int cell, int beam,
                                           std::int64_t trials, const RngStream &rng, SimulationOptions opts = {});

} // namespace rbf

#endif // RBF_SCHEDULER_HPP
