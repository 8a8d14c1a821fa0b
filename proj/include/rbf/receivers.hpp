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

#ifndef RBF_RECEIVERS_HPP
#define RBF_RECEIVERS_HPP

#include "rbf/network.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rbf {

enum class ReceiverKind { mmse, mf, as };

inline constexpr std::array<ReceiverKind, 3> kAllReceivers{ReceiverKind::mmse, ReceiverKind::mf, ReceiverKind::as};

std::string_view to_string(ReceiverKind kind);
std::optional<ReceiverKind> parse_receiver(std::string_view name);

// K_c x M_c table of per-(user, beam) SINRs reported to base station c.
struct SinrTable {
    int cell = 0;
    ReceiverKind kind = ReceiverKind::mmse;
    Eigen::MatrixXd values;

    int num_users() const { return static_cast<int>(values.rows()); }
    int num_beams() const { return static_cast<int>(values.cols()); }
};

// Interference-plus-noise covariance W seen by user k of cell c while
// decoding beam m:
//   (P_T/M_c) H~_{k,-m} H~_{k,-m}^H + sum_{l != c} (P_T gamma_{l,c}/M_l) H~_k^{(l,c)} H~_k^{(l,c)H} + sigma^2 I
ComplexMatrix interference_covariance(const ChannelRealization &real, const NetworkConfig &cfg, int c, int k, int m);

double sinr_mmse(const ChannelRealization &real, const NetworkConfig &cfg, int c, int k, int m);
double sinr_mf(const ChannelRealization &real, const NetworkConfig &cfg, int c, int k, int m);
double sinr_as(const ChannelRealization &real, const NetworkConfig &cfg, int c, int k, int m);
double sinr(ReceiverKind kind, const ChannelRealization &real, const NetworkConfig &cfg, int c, int k, int m);

SinrTable sinr_table(const ChannelRealization &real, const NetworkConfig &cfg, int c, ReceiverKind kind);

// Per-user evaluator for the Monte Carlo hot loop. It keeps its scratch
// matrices between calls, so one instance per thread.
class SinrEvaluator {
public:
    SinrEvaluator(const NetworkConfig &cfg, int cell);

    // Writes the SINR of every beam of cell `cell` for one user. Any output
    // span may be empty to skip that receiver; non-empty spans need M_c entries.
    void evaluate(const std::vector<BeamSet> &beams, const UserChannels &user, std::span<double> mmse,
                  std::span<double> mf, std::span<double> as);

    int cell() const { return cell_; }
    int beams() const { return own_beams_; }

private:
    const NetworkConfig *cfg_;
    int cell_;
    int own_beams_;
    int nr_;
    double own_power_;                  // P_T / M_c
    std::vector<double> cross_power_;   // P_T gamma_{l,c} / M_l, 0 for l == c or silent cells
    ComplexMatrix own_effective_;       // N_R x M_c, column m = H^{(c,c)} phi_m
    ComplexMatrix cross_effective_;     // scratch for H^{(l,c)} Phi^{(l)}
    ComplexMatrix base_;                // sigma^2 I + inter-cell part
    ComplexMatrix w_;                   // per-beam covariance
    ComplexVector solved_;
    Eigen::LLT<ComplexMatrix> llt_;
};

} // namespace rbf

#endif // RBF_RECEIVERS_HPP
