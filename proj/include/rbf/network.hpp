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

#ifndef RBF_NETWORK_HPP
#define RBF_NETWORK_HPP

#include "rbf/random.hpp"

#include <json.hpp>

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rbf {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

double db_to_linear(double db);
double linear_to_db(double linear);

struct CellSpec {
    int users = 0; // K_c
    int beams = 0; // M_c; 0 silences the base station
};

// Static description of the C-cell downlink. Powers are linear.
struct NetworkConfig {
    int num_tx_antennas = 1; // N_T
    int num_rx_antennas = 1; // N_R
    std::vector<CellSpec> cells;
    Eigen::MatrixXd cross_gain; // gamma(l, c): power gain from BS l into cell c, unit diagonal
    double total_power = 1.0;   // P_T
    double noise_power = 1.0;   // sigma^2

    int num_cells() const { return static_cast<int>(cells.size()); }
    int beams(int c) const { return cells.at(static_cast<std::size_t>(c)).beams; }
    int users(int c) const { return cells.at(static_cast<std::size_t>(c)).users; }
    int total_beams() const;

    // Throws ConfigError describing the first violated invariant.
    void validate() const;
};

// Single-cell system, unit noise, rho = total_power.
NetworkConfig single_cell_config(int nt, int nr, int users, int beams, double rho);

// Symmetric multi-cell system: every cell has the same users/beams and every
// off-diagonal cross gain equals gamma.
NetworkConfig symmetric_config(int cells, int nt, int nr, int users, int beams, double gamma, double rho);

// Builds a system around one observed cell from its per-beam SNR eta_c and the
// per-beam INRs mu_{l,c} of the other cells (linear). Cross gains that do not
// reach the observed cell are set to zero. Unit noise power.
NetworkConfig observed_cell_config(int observed, double eta, const std::vector<double> &inr_into_observed,
                                   const std::vector<int> &beams, int nt, int nr);

struct DerivedGains {
    double rho = 0.0;                                 // P_T / sigma^2
    std::vector<std::optional<double>> eta;           // per-beam SNR, absent when M_c = 0
    std::vector<std::vector<std::optional<double>>> inr; // inr[l][c], absent when M_l = 0 or l == c

    std::optional<double> per_beam_snr(int c) const { return eta.at(static_cast<std::size_t>(c)); }
    std::optional<double> per_beam_inr(int l, int c) const
    {
        return inr.at(static_cast<std::size_t>(l)).at(static_cast<std::size_t>(c));
    }
};

DerivedGains derive_gains(const NetworkConfig &cfg);

// Channels seen by one user: from_cell[l] is the effective N_R x M_l matrix
// H_k^{(l,c)} (empty when M_l = 0).
struct UserChannels {
    std::vector<ComplexMatrix> from_cell;
};

struct ChannelRealization {
    std::vector<BeamSet> beams;                   // per cell; empty set when M_c = 0
    std::vector<std::vector<UserChannels>> users; // users[c][k]

    const ComplexMatrix &channel(int l, int c, int k) const
    {
        return users.at(static_cast<std::size_t>(c)).at(static_cast<std::size_t>(k)).from_cell.at(
            static_cast<std::size_t>(l));
    }
};

// One i.i.d. draw of every channel matrix and fresh Haar beams per cell.
//
// Channel blocks for the pair (l, c) come from a stream keyed by (l, c); user k
// consumes an N_R x N_T block of it and keeps the first M_l columns. Hence two
// configs that differ only in beam counts or user counts share their
// underlying fading, which is what the common-random-numbers sweeps rely on.
ChannelRealization draw_realization(const NetworkConfig &cfg, const RngStream &rng);

// Sequential source of users for cell c, drawing from the same per-(l, c)
// streams as draw_realization: the k-th call to next() yields user k.
class UserChannelStream {
public:
    UserChannelStream(const NetworkConfig &cfg, int c, const RngStream &rng);

    void next(UserChannels &out);

    // Full N_R x N_T matrices of the most recent user (only cells with M_l > 0
    // are drawn; others stay empty).
    const std::vector<ComplexMatrix> &last_full() const { return full_; }

private:
    const NetworkConfig *cfg_;
    std::vector<Engine> engines_; // one per source cell l
    std::vector<ComplexMatrix> full_;
};

// Beams only (one set per active cell).
std::vector<BeamSet> draw_beams(const NetworkConfig &cfg, const RngStream &rng);

// Channels of `count` users of cell c, continuing the same per-(l, c) streams
// as draw_realization.
std::vector<UserChannels> draw_users(const NetworkConfig &cfg, int c, int count, const RngStream &rng);

// --- config file ------------------------------------------------------------

// Parses the JSON config object (keys: cells, nt, nr, power_db, noise_db,
// cross_gain). Throws ConfigError.
NetworkConfig parse_config(const nlohmann::json &doc);
NetworkConfig load_config_file(const std::string &path, nlohmann::json *raw = nullptr);
nlohmann::json config_to_json(const NetworkConfig &cfg);

} // namespace rbf

#endif // RBF_NETWORK_HPP
