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

#include "rbf/network.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace rbf {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

} // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

int NetworkConfig::total_beams() const
{
    int total = 0;
    for (const auto &cell : cells) {
        total += cell.beams;
    }
    return total;
}

void NetworkConfig::validate() const
{
    if (cells.empty()) {
        throw ConfigError("config: at least one cell is required");
    }
    if (num_tx_antennas < 1 || num_rx_antennas < 1) {
        throw ConfigError("config: nt and nr must be >= 1");
    }
    const int c_count = num_cells();
    for (int c = 0; c < c_count; ++c) {
        const auto &cell = cells[idx(c)];
        if (cell.beams < 0 || cell.beams > num_tx_antennas) {
            throw ConfigError("config: cell " + std::to_string(c) + " needs 0 <= beams <= nt");
        }
        if (cell.users < 0) {
            throw ConfigError("config: cell " + std::to_string(c) + " has a negative user count");
        }
        if (cell.beams > 0 && cell.beams > cell.users) {
            throw ConfigError("config: cell " + std::to_string(c) + " has more beams than users");
        }
    }
    if (cross_gain.rows() != c_count || cross_gain.cols() != c_count) {
        throw ConfigError("config: cross_gain must be " + std::to_string(c_count) + "x" + std::to_string(c_count));
    }
    for (int l = 0; l < c_count; ++l) {
        for (int c = 0; c < c_count; ++c) {
            const double g = cross_gain(l, c);
            if (!std::isfinite(g)) {
                throw ConfigError("config: cross_gain entries must be finite");
            }
            if (l == c && g != 1.0) {
                throw ConfigError("config: cross_gain diagonal must be 1");
            }
            if (l != c && (g < 0.0 || g >= 1.0)) {
                throw ConfigError("config: cross_gain(" + std::to_string(l) + "," + std::to_string(c) +
                                  ") must lie in [0, 1)");
            }
        }
    }
    if (!(total_power > 0.0) || !std::isfinite(total_power)) {
        throw ConfigError("config: total power must be positive");
    }
    if (!(noise_power > 0.0) || !std::isfinite(noise_power)) {
        throw ConfigError("config: noise power must be positive");
    }
}

NetworkConfig single_cell_config(int nt, int nr, int users, int beams, double rho)
{
    NetworkConfig cfg;
    cfg.num_tx_antennas = nt;
    cfg.num_rx_antennas = nr;
    cfg.cells = {CellSpec{users, beams}};
    cfg.cross_gain = Eigen::MatrixXd::Ones(1, 1);
    cfg.total_power = rho;
    cfg.noise_power = 1.0;
    cfg.validate();
    return cfg;
}

NetworkConfig symmetric_config(int cells, int nt, int nr, int users, int beams, double gamma, double rho)
{
    NetworkConfig cfg;
    cfg.num_tx_antennas = nt;
    cfg.num_rx_antennas = nr;
    cfg.cells.assign(idx(cells), CellSpec{users, beams});
    cfg.cross_gain = Eigen::MatrixXd::Constant(cells, cells, gamma);
    cfg.cross_gain.diagonal().setOnes();
    cfg.total_power = rho;
    cfg.noise_power = 1.0;
    cfg.validate();
    return cfg;
}

NetworkConfig observed_cell_config(int observed, double eta, const std::vector<double> &inr_into_observed,
                                   const std::vector<int> &beams, int nt, int nr)
{
    const int c_count = static_cast<int>(beams.size());
    if (observed < 0 || observed >= c_count || inr_into_observed.size() != beams.size()) {
        throw ConfigError("observed_cell_config: inconsistent cell counts");
    }
    NetworkConfig cfg;
    cfg.num_tx_antennas = nt;
    cfg.num_rx_antennas = nr;
    for (int b : beams) {
        cfg.cells.push_back(CellSpec{b, b});
    }
    cfg.noise_power = 1.0;
    cfg.total_power = eta * beams[idx(observed)];
    cfg.cross_gain = Eigen::MatrixXd::Identity(c_count, c_count);
    for (int l = 0; l < c_count; ++l) {
        if (l != observed && beams[idx(l)] > 0) {
            // mu_{l,c} = gamma_{l,c} P_T / (M_l sigma^2)
            cfg.cross_gain(l, observed) = inr_into_observed[idx(l)] * beams[idx(l)] / cfg.total_power;
        }
    }
    cfg.validate();
    return cfg;
}

DerivedGains derive_gains(const NetworkConfig &cfg)
{
    const int c_count = cfg.num_cells();
    DerivedGains g;
    g.rho = cfg.total_power / cfg.noise_power;
    g.eta.assign(idx(c_count), std::nullopt);
    g.inr.assign(idx(c_count), std::vector<std::optional<double>>(idx(c_count), std::nullopt));
    for (int c = 0; c < c_count; ++c) {
        if (cfg.beams(c) > 0) {
            g.eta[idx(c)] = cfg.total_power / (cfg.beams(c) * cfg.noise_power);
        }
    }
    for (int l = 0; l < c_count; ++l) {
        if (cfg.beams(l) == 0) {
            continue;
        }
        for (int c = 0; c < c_count; ++c) {
            if (l != c) {
                g.inr[idx(l)][idx(c)] = cfg.cross_gain(l, c) * cfg.total_power / (cfg.beams(l) * cfg.noise_power);
            }
        }
    }
    return g;
}

std::vector<BeamSet> draw_beams(const NetworkConfig &cfg, const RngStream &rng)
{
    std::vector<BeamSet> beams(idx(cfg.num_cells()));
    for (int l = 0; l < cfg.num_cells(); ++l) {
        const int m = cfg.beams(l);
        if (m > 0) {
            beams[idx(l)] =
                sample_orthonormal_beams(rng.derive({static_cast<std::uint64_t>(StreamPurpose::beams),
                                                     static_cast<std::uint64_t>(l)}),
                                         m, m);
        }
    }
    return beams;
}

UserChannelStream::UserChannelStream(const NetworkConfig &cfg, int c, const RngStream &rng) : cfg_(&cfg)
{
    engines_.reserve(idx(cfg.num_cells()));
    for (int l = 0; l < cfg.num_cells(); ++l) {
        engines_.push_back(rng.derive({static_cast<std::uint64_t>(StreamPurpose::channel),
                                       static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(c)})
                               .engine());
    }
    full_.resize(idx(cfg.num_cells()));
}

void UserChannelStream::next(UserChannels &out)
{
    const int nr = cfg_->num_rx_antennas;
    const int nt = cfg_->num_tx_antennas;
    out.from_cell.resize(idx(cfg_->num_cells()));
    for (int l = 0; l < cfg_->num_cells(); ++l) {
        const int m = cfg_->beams(l);
        if (m == 0) {
            out.from_cell[idx(l)].resize(nr, 0);
            continue;
        }
        full_[idx(l)].resize(nr, nt);
        fill_cscg(engines_[idx(l)], full_[idx(l)]);
        out.from_cell[idx(l)] = full_[idx(l)].leftCols(m);
    }
}

std::vector<UserChannels> draw_users(const NetworkConfig &cfg, int c, int count, const RngStream &rng)
{
    UserChannelStream stream(cfg, c, rng);
    std::vector<UserChannels> users(idx(count));
    for (auto &u : users) {
        stream.next(u);
    }
    return users;
}

ChannelRealization draw_realization(const NetworkConfig &cfg, const RngStream &rng)
{
    ChannelRealization real;
    real.beams = draw_beams(cfg, rng);
    real.users.resize(idx(cfg.num_cells()));
    for (int c = 0; c < cfg.num_cells(); ++c) {
        real.users[idx(c)] = draw_users(cfg, c, cfg.users(c), rng);
    }
    return real;
}

// --- config file ------------------------------------------------------------

namespace {

template <typename T>
T require(const nlohmann::json &doc, const char *key)
{
    if (!doc.contains(key)) {
        throw ConfigError(std::string("config: missing key '") + key + "'");
    }
    try {
        return doc.at(key).get<T>();
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
    }
}

} // namespace

NetworkConfig parse_config(const nlohmann::json &doc)
{
    if (!doc.is_object()) {
        throw ConfigError("config: top level must be an object");
    }
    NetworkConfig cfg;
    cfg.num_tx_antennas = require<int>(doc, "nt");
    cfg.num_rx_antennas = require<int>(doc, "nr");
    const auto cells = require<nlohmann::json>(doc, "cells");
    if (!cells.is_array() || cells.empty()) {
        throw ConfigError("config: 'cells' must be a non-empty list");
    }
    for (const auto &cell : cells) {
        cfg.cells.push_back(CellSpec{require<int>(cell, "users"), require<int>(cell, "beams")});
    }
    cfg.total_power = db_to_linear(require<double>(doc, "power_db"));
    cfg.noise_power = db_to_linear(require<double>(doc, "noise_db"));

    const int c_count = cfg.num_cells();
    if (doc.contains("cross_gain")) {
        const auto gains = require<std::vector<double>>(doc, "cross_gain");
        if (gains.size() != idx(c_count * c_count)) {
            throw ConfigError("config: cross_gain needs " + std::to_string(c_count * c_count) + " entries");
        }
        cfg.cross_gain.resize(c_count, c_count);
        for (int l = 0; l < c_count; ++l) {
            for (int c = 0; c < c_count; ++c) {
                cfg.cross_gain(l, c) = gains[idx(l * c_count + c)];
            }
        }
    } else if (c_count == 1) {
        cfg.cross_gain = Eigen::MatrixXd::Ones(1, 1);
    } else {
        throw ConfigError("config: missing key 'cross_gain'");
    }
    cfg.validate();
    return cfg;
}

NetworkConfig load_config_file(const std::string &path, nlohmann::json *raw)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError("config: '" + path + "' is not valid JSON: " + e.what());
    }
    NetworkConfig cfg = parse_config(doc);
    if (raw != nullptr) {
        *raw = std::move(doc);
    }
    return cfg;
}

nlohmann::json config_to_json(const NetworkConfig &cfg)
{
    nlohmann::json doc;
    doc["nt"] = cfg.num_tx_antennas;
    doc["nr"] = cfg.num_rx_antennas;
    doc["power_db"] = linear_to_db(cfg.total_power);
    doc["noise_db"] = linear_to_db(cfg.noise_power);
    doc["cells"] = nlohmann::json::array();
    for (const auto &cell : cfg.cells) {
        doc["cells"].push_back({{"users", cell.users}, {"beams", cell.beams}});
    }
    std::vector<double> gains;
    for (int l = 0; l < cfg.num_cells(); ++l) {
        for (int c = 0; c < cfg.num_cells(); ++c) {
            gains.push_back(cfg.cross_gain(l, c));
        }
    }
    doc["cross_gain"] = gains;
    return doc;
}

} // namespace rbf
