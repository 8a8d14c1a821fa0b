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

#include "rbf/validation.hpp"

#include "rbf/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace rbf {

EmpiricalCdf::EmpiricalCdf(std::vector<double> sorted_samples) : samples_(std::move(sorted_samples))
{
    if (samples_.empty()) {
        throw std::invalid_argument("EmpiricalCdf: no samples");
    }
    if (!std::is_sorted(samples_.begin(), samples_.end())) {
        throw std::invalid_argument("EmpiricalCdf: samples must be sorted ascending");
    }
}

EmpiricalCdf EmpiricalCdf::from_unsorted(std::vector<double> samples)
{
    std::sort(samples.begin(), samples.end());
    return EmpiricalCdf(std::move(samples));
}

double EmpiricalCdf::operator()(double s) const
{
    const auto it = std::upper_bound(samples_.begin(), samples_.end(), s);
    return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

KsReport ks_distance(const EmpiricalCdf &samples, const std::function<double(double)> &analytic)
{
    const auto &x = samples.samples();
    if (x.size() < 10) {
        throw std::invalid_argument("ks_distance: need at least 10 samples");
    }
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = analytic(x[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    KsReport r;
    r.statistic = std::clamp(d, 0.0, 1.0);
    r.n = static_cast<std::int64_t>(x.size());
    r.critical = kKsCritical05 / std::sqrt(n);
    r.pass = r.statistic < r.critical;
    return r;
}

KsReport ks_two_sample(const EmpiricalCdf &a, const EmpiricalCdf &b)
{
    const auto &x = a.samples();
    const auto &y = b.samples();
    const double n = static_cast<double>(x.size());
    const double m = static_cast<double>(y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) {
            ++i;
        }
        while (j < y.size() && y[j] <= v) {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    KsReport r;
    r.statistic = d;
    r.n = static_cast<std::int64_t>(std::llround(n * m / (n + m)));
    r.critical = kKsCritical05 * std::sqrt((n + m) / (n * m));
    r.pass = r.statistic < r.critical;
    return r;
}

SlopeFit fit_rate_slope(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) {
        throw std::invalid_argument("fit_rate_slope: abscissae and ordinates differ in length");
    }
    if (x.size() < 3) {
        throw std::invalid_argument("fit_rate_slope: need at least 3 points");
    }
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    const double span = *std::max_element(x.begin(), x.end()) - *std::min_element(x.begin(), x.end());
    if (!(span > 0.0) || !(sxx > 1e-14 * span * span * n)) {
        throw std::invalid_argument("fit_rate_slope: degenerate abscissae");
    }
    SlopeFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (f.intercept + f.slope * x[i]);
        ss += e * e;
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

SlopeFit fit_rate_slope_top_half(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) {
        throw std::invalid_argument("fit_rate_slope_top_half: abscissae and ordinates differ in length");
    }
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    const std::size_t keep = (x.size() + 1) / 2;
    std::vector<double> tx;
    std::vector<double> ty;
    for (std::size_t i = x.size() - keep; i < x.size(); ++i) {
        tx.push_back(x[order[i]]);
        ty.push_back(y[order[i]]);
    }
    return fit_rate_slope(tx, ty);
}

double invert_cdf(const std::function<double(double)> &cdf, double u, double tol)
{
    if (!(u > 0.0 && u < 1.0)) {
        throw std::invalid_argument("invert_cdf: u must lie in (0, 1)");
    }
    double lo = 0.0;
    double hi = 1.0;
    while (cdf(hi) < u) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) {
            throw std::runtime_error("invert_cdf: CDF never reaches u");
        }
    }
    while (hi - lo > tol * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < u) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

std::vector<double> user_sinr_samples(const NetworkConfig &cfg, ReceiverKind kind, int cell, int beam,
                                      std::int64_t trials, const RngStream &rng, SimulationOptions opts)
{
    cfg.validate();
    if (cell < 0 || cell >= cfg.num_cells() || beam < 0 || beam >= cfg.beams(cell)) {
        throw std::invalid_argument("user_sinr_samples: cell or beam out of range");
    }
    if (trials < 1) {
        throw std::invalid_argument("user_sinr_samples: trials must be >= 1");
    }
    const auto m = static_cast<std::size_t>(cfg.beams(cell));
    auto make_worker = [&] {
        return [&, eval = SinrEvaluator(cfg, cell), user = UserChannels{}, values = std::vector<double>(m)](
                   std::int64_t t, std::span<double> out) mutable {
            const RngStream trial = rng.derive({static_cast<std::uint64_t>(t)});
            const auto beams = draw_beams(cfg, trial);
            UserChannelStream stream(cfg, cell, trial);
            stream.next(user);
            std::span<double> all(values);
            std::span<double> none;
            eval.evaluate(beams, user, kind == ReceiverKind::mmse ? all : none, kind == ReceiverKind::mf ? all : none,
                          kind == ReceiverKind::as ? all : none);
            out[0] = values[static_cast<std::size_t>(beam)];
        };
    };
    return collect_trials(trials, 1, make_worker, opts.threads);
}

KsReport as_miso_equivalence(const NetworkConfig &cfg, std::int64_t trials, const RngStream &rng,
                             std::optional<int> miso_users, SimulationOptions opts)
{
    cfg.validate();
    if (cfg.beams(0) < 1) {
        throw std::invalid_argument("as_miso_equivalence: cell 0 must transmit");
    }
    NetworkConfig miso = cfg;
    miso.num_rx_antennas = 1;
    for (auto &cell : miso.cells) {
        cell.users *= cfg.num_rx_antennas;
    }
    if (miso_users) {
        miso.cells[0].users = *miso_users;
    }
    miso.validate();
    auto as_side = scheduled_sinr_samples(cfg, ReceiverKind::as, 0, 0, trials, rng.derive({1}), opts);
    auto miso_side = scheduled_sinr_samples(miso, ReceiverKind::as, 0, 0, trials, rng.derive({2}), opts);
    return ks_two_sample(EmpiricalCdf::from_unsorted(std::move(as_side)),
                         EmpiricalCdf::from_unsorted(std::move(miso_side)));
}

nlohmann::json to_json(const KsReport &r)
{
    return nlohmann::json{{"statistic", r.statistic}, {"n", r.n}, {"critical", r.critical}, {"pass", r.pass}};
}

nlohmann::json to_json(const SlopeFit &f)
{
    return nlohmann::json{{"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual}};
}

} // namespace rbf
