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

#include "rbf/scheduler.hpp"

#include "rbf/montecarlo.hpp"

#include <cmath>
#include <limits>

namespace rbf {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

// Per-beam best SINR of every cell, for a set of receivers, on one realization.
class TrialWorker {
public:
    TrialWorker(const NetworkConfig &cfg, std::span<const ReceiverKind> kinds) : cfg_(&cfg), kinds_(kinds.begin(), kinds.end())
    {
        for (int c = 0; c < cfg.num_cells(); ++c) {
            if (cfg.beams(c) > 0) {
                evaluators_.emplace_back(cfg, c);
            }
        }
        rows_.assign(kinds_.size(), std::vector<double>());
        best_.assign(kinds_.size(), std::vector<std::vector<double>>(idx(cfg.num_cells())));
        for (std::size_t i = 0; i < kinds_.size(); ++i) {
            for (int c = 0; c < cfg.num_cells(); ++c) {
                best_[i][idx(c)].assign(idx(cfg.beams(c)), 0.0);
            }
        }
    }

    // best()[kind][cell][beam] after the call
    void run(const RngStream &trial_rng, int only_cell = -1)
    {
        const auto beams = draw_beams(*cfg_, trial_rng);
        for (auto &ev : evaluators_) {
            const int c = ev.cell();
            if (only_cell >= 0 && c != only_cell) {
                continue;
            }
            const auto m_count = idx(cfg_->beams(c));
            for (std::size_t i = 0; i < kinds_.size(); ++i) {
                rows_[i].assign(m_count, 0.0);
                std::fill(best_[i][idx(c)].begin(), best_[i][idx(c)].end(),
                          -std::numeric_limits<double>::infinity());
            }
            UserChannelStream stream(*cfg_, c, trial_rng);
            for (int k = 0; k < cfg_->users(c); ++k) {
                stream.next(user_);
                std::span<double> mmse, mf, as;
                for (std::size_t i = 0; i < kinds_.size(); ++i) {
                    std::span<double> row(rows_[i]);
                    switch (kinds_[i]) {
                    case ReceiverKind::mmse:
                        mmse = row;
                        break;
                    case ReceiverKind::mf:
                        mf = row;
                        break;
                    case ReceiverKind::as:
                        as = row;
                        break;
                    }
                }
                ev.evaluate(beams, user_, mmse, mf, as);
                for (std::size_t i = 0; i < kinds_.size(); ++i) {
                    auto &best = best_[i][idx(c)];
                    for (std::size_t m = 0; m < m_count; ++m) {
                        if (rows_[i][m] > best[m]) {
                            best[m] = rows_[i][m];
                        }
                    }
                }
            }
        }
    }

    const std::vector<std::vector<double>> &best(std::size_t kind_index) const { return best_[kind_index]; }

private:
    const NetworkConfig *cfg_;
    std::vector<ReceiverKind> kinds_;
    std::vector<SinrEvaluator> evaluators_;
    UserChannels user_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::vector<std::vector<double>>> best_;
};

double beam_rate(const std::vector<double> &best)
{
    double rate = 0.0;
    for (double s : best) {
        rate += std::log2(1.0 + s);
    }
    return rate;
}

SumRateEstimate summarize(const TrialStats &stats, std::size_t offset, int cells)
{
    SumRateEstimate est;
    est.trials = stats.trials;
    for (int c = 0; c < cells; ++c) {
        est.cell_mean.push_back(stats.mean(offset + idx(c)));
        est.cell_stderr.push_back(stats.std_error(offset + idx(c)));
    }
    est.total_mean = stats.mean(offset + idx(cells));
    est.total_stderr = stats.std_error(offset + idx(cells));
    return est;
}

void require_trials(std::int64_t trials)
{
    if (trials < 1) {
        throw std::invalid_argument("sum-rate estimation needs at least one trial");
    }
}

} // namespace

double ScheduleResult::total_rate() const
{
    double total = 0.0;
    for (const auto &cell : cells) {
        total += cell.rate;
    }
    return total;
}

CellSchedule schedule_cell(const SinrTable &table)
{
    if (table.num_users() == 0 || table.num_beams() == 0) {
        throw SchedulingError("schedule: cell " + std::to_string(table.cell) + " has an empty SINR table");
    }
    CellSchedule out;
    out.cell = table.cell;
    for (int m = 0; m < table.num_beams(); ++m) {
        BeamAssignment pick{0, table.values(0, m)};
        for (int k = 1; k < table.num_users(); ++k) {
            if (table.values(k, m) > pick.sinr) {
                pick = BeamAssignment{k, table.values(k, m)};
            }
        }
        out.rate += std::log2(1.0 + pick.sinr);
        out.beams.push_back(pick);
    }
    return out;
}

ScheduleResult schedule(std::span<const SinrTable> tables)
{
    ScheduleResult result;
    for (const auto &table : tables) {
        result.cells.push_back(schedule_cell(table));
    }
    return result;
}

UserScaling UserScaling::uniform(int cells, double alpha, double prefactor)
{
    return UserScaling{std::vector<double>(idx(cells), alpha), std::vector<double>(idx(cells), prefactor)};
}

int users_for_snr(const UserScaling &scaling, double rho, int c)
{
    const double alpha = scaling.alpha.at(idx(c));
    const double a = scaling.prefactor.at(idx(c));
    if (alpha < 0.0 || !(a > 0.0)) {
        throw std::invalid_argument("users_for_snr: need alpha >= 0 and a positive prefactor");
    }
    if (rho < 1.0) {
        throw std::invalid_argument("users_for_snr: rho must be >= 1");
    }
    const double k = a * std::pow(rho, alpha);
    // guard against pow() landing a hair below an exact integer
    const double floored = std::floor(k * (1.0 + 1e-12));
    if (floored >= static_cast<double>(std::numeric_limits<int>::max())) {
        throw std::overflow_error("users_for_snr: user count overflows");
    }
    return std::max(1, static_cast<int>(floored));
}

NetworkConfig config_at_snr(const NetworkConfig &cfg, double rho, const UserScaling *scaling)
{
    NetworkConfig out = cfg;
    out.total_power = rho * cfg.noise_power;
    if (scaling != nullptr) {
        for (int c = 0; c < out.num_cells(); ++c) {
            out.cells[idx(c)].users = std::max(users_for_snr(*scaling, rho, c), out.cells[idx(c)].beams);
        }
    }
    out.validate();
    return out;
}

std::vector<SumRateEstimate> estimate_sum_rates(const NetworkConfig &cfg, std::span<const ReceiverKind> kinds,
                                                std::int64_t trials, const RngStream &rng, SimulationOptions opts)
{
    cfg.validate();
    require_trials(trials);
    const int cells = cfg.num_cells();
    const std::size_t block = idx(cells) + 1;
    const std::size_t width = block * kinds.size();
    const auto stats = accumulate_trials(
        trials, width,
        [&] {
            return [&, worker = TrialWorker(cfg, kinds)](std::int64_t t, std::span<double> out) mutable {
                worker.run(rng.derive({static_cast<std::uint64_t>(t)}));
                for (std::size_t i = 0; i < kinds.size(); ++i) {
                    double total = 0.0;
                    for (int c = 0; c < cells; ++c) {
                        const double r = beam_rate(worker.best(i)[idx(c)]);
                        out[i * block + idx(c)] = r;
                        total += r;
                    }
                    out[i * block + idx(cells)] = total;
                }
            };
        },
        opts.threads);
    std::vector<SumRateEstimate> out;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        out.push_back(summarize(stats, i * block, cells));
    }
    return out;
}

SumRateEstimate estimate_sum_rate(const NetworkConfig &cfg, ReceiverKind kind, std::int64_t trials,
                                  const RngStream &rng, SimulationOptions opts)
{
    const ReceiverKind kinds[] = {kind};
    return estimate_sum_rates(cfg, kinds, trials, rng, opts).front();
}

SweepEstimate estimate_sum_rate_sweep(std::span<const NetworkConfig> cfgs, ReceiverKind kind, std::int64_t trials,
                                      const RngStream &rng, SimulationOptions opts)
{
    require_trials(trials);
    if (cfgs.empty()) {
        throw std::invalid_argument("estimate_sum_rate_sweep: no configurations");
    }
    std::vector<std::size_t> offset;
    std::size_t width = 0;
    for (const auto &cfg : cfgs) {
        cfg.validate();
        offset.push_back(width);
        width += idx(cfg.num_cells()) + 1;
    }
    const ReceiverKind kinds[] = {kind};
    const auto samples = collect_trials(
        trials, width,
        [&] {
            std::vector<TrialWorker> workers;
            for (const auto &cfg : cfgs) {
                workers.emplace_back(cfg, kinds);
            }
            return [&, workers = std::move(workers)](std::int64_t t, std::span<double> out) mutable {
                const RngStream trial = rng.derive({static_cast<std::uint64_t>(t)});
                for (std::size_t i = 0; i < workers.size(); ++i) {
                    workers[i].run(trial);
                    const int cells = cfgs[i].num_cells();
                    double total = 0.0;
                    for (int c = 0; c < cells; ++c) {
                        const double r = beam_rate(workers[i].best(0)[idx(c)]);
                        out[offset[i] + idx(c)] = r;
                        total += r;
                    }
                    out[offset[i] + idx(cells)] = total;
                }
            };
        },
        opts.threads);

    TrialStats stats;
    stats.trials = trials;
    stats.sum.assign(width, 0.0);
    stats.sum_sq.assign(width, 0.0);
    for (std::int64_t t = 0; t < trials; ++t) {
        for (std::size_t j = 0; j < width; ++j) {
            const double v = samples[static_cast<std::size_t>(t) * width + j];
            stats.sum[j] += v;
            stats.sum_sq[j] += v * v;
        }
    }
    SweepEstimate out;
    for (std::size_t i = 0; i < cfgs.size(); ++i) {
        out.points.push_back(summarize(stats, offset[i], cfgs[i].num_cells()));
    }
    const auto n = static_cast<Eigen::Index>(cfgs.size());
    out.paired_stderr = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = a + 1; b < n; ++b) {
            const auto ia = static_cast<std::size_t>(a);
            const auto ib = static_cast<std::size_t>(b);
            const std::size_t ta = offset[ia] + idx(cfgs[ia].num_cells());
            const std::size_t tb = offset[ib] + idx(cfgs[ib].num_cells());
            TrialStats diff;
            diff.trials = trials;
            diff.sum.assign(1, 0.0);
            diff.sum_sq.assign(1, 0.0);
            for (std::int64_t t = 0; t < trials; ++t) {
                const double d = samples[static_cast<std::size_t>(t) * width + ta] - samples[static_cast<std::size_t>(t) * width + tb];
                diff.sum[0] += d;
                diff.sum_sq[0] += d * d;
            }
            out.paired_stderr(a, b) = out.paired_stderr(b, a) = diff.std_error(0);
        }
    }
    return out;
}

SumRateEstimate dpc_upper_bound(const NetworkConfig &cfg, std::int64_t trials, const RngStream &rng,
                                SimulationOptions opts)
{
    cfg.validate();
    require_trials(trials);
    if (cfg.num_cells() != 1) {
        throw std::invalid_argument("dpc_upper_bound: only single-cell systems are supported");
    }
    const int nt = cfg.num_tx_antennas;
    const double eta = cfg.total_power / (nt * cfg.noise_power);
    const auto stats = accumulate_trials(
        trials, 2,
        [&] {
            return [&, full = ComplexMatrix()](std::int64_t t, std::span<double> out) mutable {
                // same stream as UserChannelStream for (l, c) = (0, 0)
                Engine engine = rng.derive({static_cast<std::uint64_t>(t)})
                                    .derive({static_cast<std::uint64_t>(StreamPurpose::channel), 0, 0})
                                    .engine();
                full.resize(cfg.num_rx_antennas, nt);
                double best = 0.0;
                for (int k = 0; k < cfg.users(0); ++k) {
                    fill_cscg(engine, full);
                    best = std::max(best, full.squaredNorm());
                }
                out[0] = nt * std::log2(1.0 + eta * best);
                out[1] = out[0];
            };
        },
        opts.threads);
    return summarize(stats, 0, 1);
}

std::vector<double> scheduled_sinr_samples(const NetworkConfig &cfg, ReceiverKind kind, int cell, int beam,
                                           std::int64_t trials, const RngStream &rng, SimulationOptions opts)
{
    cfg.validate();
    require_trials(trials);
    if (cell < 0 || cell >= cfg.num_cells() || beam < 0 || beam >= cfg.beams(cell)) {
        throw std::out_of_range("scheduled_sinr_samples: cell/beam out of range");
    }
    const ReceiverKind kinds[] = {kind};
    return collect_trials(
        trials, 1,
        [&] {
            return [&, worker = TrialWorker(cfg, kinds)](std::int64_t t, std::span<double> out) mutable {
                worker.run(rng.derive({static_cast<std::uint64_t>(t)}), cell);
                out[0] = worker.best(0)[idx(cell)][idx(beam)];
            };
        },
        opts.threads);
}

} // namespace rbf
