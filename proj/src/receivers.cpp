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

#include "rbf/receivers.hpp"

#include <algorithm>
#include <stdexcept>

namespace rbf {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

void check_indices(const ChannelRealization &real, const NetworkConfig &cfg, int c, int k, int m)
{
    if (c < 0 || c >= cfg.num_cells()) {
        throw std::out_of_range("receiver: cell index out of range");
    }
    if (cfg.beams(c) < 1) {
        throw std::invalid_argument("receiver: cell " + std::to_string(c) + " transmits no beams");
    }
    if (k < 0 || idx(k) >= real.users.at(idx(c)).size()) {
        throw std::out_of_range("receiver: user index out of range");
    }
    if (m < 0 || m >= cfg.beams(c)) {
        throw std::out_of_range("receiver: beam index out of range");
    }
}

} // namespace

std::string_view to_string(ReceiverKind kind)
{
    switch (kind) {
    case ReceiverKind::mmse:
        return "mmse";
    case ReceiverKind::mf:
        return "mf";
    case ReceiverKind::as:
        return "as";
    }
    return "unknown";
}

std::optional<ReceiverKind> parse_receiver(std::string_view name)
{
    for (ReceiverKind kind : kAllReceivers) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    return std::nullopt;
}

SinrEvaluator::SinrEvaluator(const NetworkConfig &cfg, int cell)
    : cfg_(&cfg), cell_(cell), own_beams_(cfg.beams(cell)), nr_(cfg.num_rx_antennas)
{
    if (own_beams_ < 1) {
        throw std::invalid_argument("SinrEvaluator: cell " + std::to_string(cell) + " transmits no beams");
    }
    own_power_ = cfg.total_power / own_beams_;
    cross_power_.assign(idx(cfg.num_cells()), 0.0);
    for (int l = 0; l < cfg.num_cells(); ++l) {
        if (l != cell && cfg.beams(l) > 0) {
            cross_power_[idx(l)] = cfg.total_power * cfg.cross_gain(l, cell) / cfg.beams(l);
        }
    }
    own_effective_.resize(nr_, own_beams_);
    base_.resize(nr_, nr_);
    w_.resize(nr_, nr_);
    solved_.resize(nr_);
    llt_ = Eigen::LLT<ComplexMatrix>(nr_);
}

void SinrEvaluator::evaluate(const std::vector<BeamSet> &beams, const UserChannels &user, std::span<double> mmse,
                             std::span<double> mf, std::span<double> as)
{
    const auto m_count = idx(own_beams_);
    if ((!mmse.empty() && mmse.size() != m_count) || (!mf.empty() && mf.size() != m_count) ||
        (!as.empty() && as.size() != m_count)) {
        throw std::invalid_argument("SinrEvaluator: output spans must hold one entry per beam");
    }

    base_.setIdentity();
    base_ *= cfg_->noise_power;
    for (int l = 0; l < cfg_->num_cells(); ++l) {
        if (l == cell_ || cfg_->beams(l) == 0 || cross_power_[idx(l)] == 0.0) {
            continue;
        }
        cross_effective_.noalias() = user.from_cell[idx(l)] * beams[idx(l)].vectors;
        base_.noalias() += cross_power_[idx(l)] * (cross_effective_ * cross_effective_.adjoint());
    }
    own_effective_.noalias() = user.from_cell[idx(cell_)] * beams[idx(cell_)].vectors;

    for (int m = 0; m < own_beams_; ++m) {
        w_ = base_;
        for (int j = 0; j < own_beams_; ++j) {
            if (j != m) {
                w_.noalias() += own_power_ * (own_effective_.col(j) * own_effective_.col(j).adjoint());
            }
        }
        const auto h = own_effective_.col(m);
        if (!mmse.empty()) {
            llt_.compute(w_);
            solved_ = llt_.solve(h);
            mmse[idx(m)] = std::max(0.0, own_power_ * h.dot(solved_).real());
        }
        if (!mf.empty()) {
            const double gain = h.squaredNorm();
            const double interference = h.dot(w_ * h).real();
            mf[idx(m)] = own_power_ * gain * gain / interference;
        }
        if (!as.empty()) {
            double best = 0.0;
            for (int n = 0; n < nr_; ++n) {
                best = std::max(best, own_power_ * std::norm(h(n)) / w_(n, n).real());
            }
            as[idx(m)] = best;
        }
    }
}

ComplexMatrix interference_covariance(const ChannelRealization &real, const NetworkConfig &cfg, int c, int k, int m)
{
    check_indices(real, cfg, c, k, m);
    const int nr = cfg.num_rx_antennas;
    ComplexMatrix w = cfg.noise_power * ComplexMatrix::Identity(nr, nr);
    const ComplexMatrix own = real.channel(c, c, k) * real.beams[idx(c)].vectors;
    const double own_power = cfg.total_power / cfg.beams(c);
    for (int j = 0; j < cfg.beams(c); ++j) {
        if (j != m) {
            w += own_power * own.col(j) * own.col(j).adjoint();
        }
    }
    for (int l = 0; l < cfg.num_cells(); ++l) {
        if (l == c || cfg.beams(l) == 0) {
            continue;
        }
        const ComplexMatrix cross = real.channel(l, c, k) * real.beams[idx(l)].vectors;
        w += (cfg.total_power * cfg.cross_gain(l, c) / cfg.beams(l)) * cross * cross.adjoint();
    }
    return w;
}

namespace {

std::vector<double> user_row(ReceiverKind kind, const ChannelRealization &real, const NetworkConfig &cfg, int c,
                             int k)
{
    SinrEvaluator eval(cfg, c);
    std::vector<double> row(idx(cfg.beams(c)));
    std::span<double> out(row);
    eval.evaluate(real.beams, real.users[idx(c)][idx(k)], kind == ReceiverKind::mmse ? out : std::span<double>{},
                  kind == ReceiverKind::mf ? out : std::span<double>{},
                  kind == ReceiverKind::as ? out : std::span<double>{});
    return row;
}

} // namespace

double sinr(ReceiverKind kind, const ChannelRealization &real, const NetworkConfig &cfg, int c, int k, int m)
{
    check_indices(real, cfg, c, k, m);
    return user_row(kind, real, cfg, c, k)[idx(m)];
}

double sinr_mmse(const ChannelRealization &real, const NetworkConfig &cfg, int c, int k, int m)
{
    return sinr(ReceiverKind::mmse, real, cfg, c, k, m);
}

double sinr_mf(const ChannelRealization &real, const NetworkConfig &cfg, int c, int k, int m)
{
    return sinr(ReceiverKind::mf, real, cfg, c, k, m);
}

double sinr_as(const ChannelRealization &real, const NetworkConfig &cfg, int c, int k, int m)
{
    return sinr(ReceiverKind::as, real, cfg, c, k, m);
}

SinrTable sinr_table(const ChannelRealization &real, const NetworkConfig &cfg, int c, ReceiverKind kind)
{
    SinrEvaluator eval(cfg, c);
    const auto &users = real.users.at(idx(c));
    SinrTable table;
    table.cell = c;
    table.kind = kind;
    table.values.resize(static_cast<Eigen::Index>(users.size()), cfg.beams(c));
    std::vector<double> row(idx(cfg.beams(c)));
    std::span<double> out(row);
    const std::span<double> none;
    for (std::size_t k = 0; k < users.size(); ++k) {
        eval.evaluate(real.beams, users[k], kind == ReceiverKind::mmse ? out : none,
                      kind == ReceiverKind::mf ? out : none, kind == ReceiverKind::as ? out : none);
        for (int m = 0; m < cfg.beams(c); ++m) {
            table.values(static_cast<Eigen::Index>(k), m) = row[idx(m)];
        }
    }
    return table;
}

} // namespace rbf
