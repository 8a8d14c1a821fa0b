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

#include "rbf/analytic_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace rbf {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

constexpr double kHealthSlack = 1e-9;

CdfValue clamp_cdf(double raw)
{
    CdfValue out;
    out.healthy = std::isfinite(raw) && raw >= -kHealthSlack && raw <= 1.0 + kHealthSlack;
    out.value = std::isfinite(raw) ? std::clamp(raw, 0.0, 1.0) : (raw > 0 ? 1.0 : 0.0);
    return out;
}

// coefficients of (1 + a s)^m, truncated to `limit` terms
std::vector<double> binomial_power(double a, int m, int limit)
{
    const int top = std::min(m, limit - 1);
    std::vector<double> c(idx(top + 1));
    c[0] = 1.0;
    for (int i = 0; i < top; ++i) {
        c[idx(i + 1)] = c[idx(i)] * a * static_cast<double>(m - i) / static_cast<double>(i + 1);
    }
    return c;
}

std::vector<double> convolve(const std::vector<double> &x, const std::vector<double> &y, int limit)
{
    const std::size_t size = std::min(x.size() + y.size() - 1, idx(limit));
    std::vector<double> out(size, 0.0);
    for (std::size_t i = 0; i < x.size() && i < size; ++i) {
        for (std::size_t j = 0; j < y.size() && i + j < size; ++j) {
            out[i + j] += x[i] * y[j];
        }
    }
    return out;
}

double polyval(const std::vector<double> &c, double s)
{
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) {
        acc = acc * s + c[i];
    }
    return acc;
}

double factorial(int n)
{
    double f = 1.0;
    for (int i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

} // namespace

// --- ShiftedPowerProduct ------------------------------------------------------

ShiftedPowerProduct::ShiftedPowerProduct(std::span<const RateTerm> terms)
{
    for (const auto &t : terms) {
        multiply(t.rate, t.multiplicity);
    }
}

ShiftedPowerProduct ShiftedPowerProduct::from_rates(std::span<const double> psi)
{
    ShiftedPowerProduct q;
    for (double a : psi) {
        q.multiply(a, 1);
    }
    return q;
}

void ShiftedPowerProduct::multiply(double rate, int multiplicity)
{
    if (multiplicity < 0 || rate < 0.0 || !std::isfinite(rate)) {
        throw std::invalid_argument("ShiftedPowerProduct: rates must be finite and >= 0, multiplicities >= 0");
    }
    if (multiplicity == 0 || rate == 0.0) {
        return;
    }
    degree_ += multiplicity;
    for (auto &t : terms_) {
        if (t.rate == rate) {
            t.multiplicity += multiplicity;
            return;
        }
    }
    terms_.push_back(RateTerm{rate, multiplicity});
}

double ShiftedPowerProduct::evaluate(double s) const
{
    double v = 1.0;
    for (const auto &t : terms_) {
        v *= std::pow(1.0 + t.rate * s, t.multiplicity);
    }
    return v;
}

std::vector<double> leading_coefficients(const ShiftedPowerProduct &q, int count)
{
    if (count < 1) {
        throw std::invalid_argument("leading_coefficients: count must be >= 1");
    }
    std::vector<double> c{1.0};
    for (const auto &t : q.terms()) {
        c = convolve(c, binomial_power(t.rate, t.multiplicity, count), count);
    }
    c.resize(idx(count), 0.0);
    return c;
}

std::vector<double> expand_coefficients(const ShiftedPowerProduct &q)
{
    return leading_coefficients(q, q.degree() + 1);
}

// --- general quadratic form law ---------------------------------------------------

GeneralQuadraticCdf::GeneralQuadraticCdf(ShiftedPowerProduct q, int p) : q_(std::move(q)), p_(p)
{
    if (p_ < 1 || q_.degree() < p_) {
        throw HypothesisViolated("general quadratic CDF needs n >= p >= 1, got n=" + std::to_string(q_.degree()) +
                                 " p=" + std::to_string(p_));
    }
    beta_ = expand_coefficients(q_);
}

CdfValue GeneralQuadraticCdf::evaluate(double s) const
{
    if (s <= 0.0) {
        return CdfValue{0.0, true};
    }
    // sum_{i>=p} beta_i s^i / Q(s), evaluated as s^p * (sum beta_{i} s^{i-p}) / Q(s)
    double tail = 0.0;
    for (std::size_t i = beta_.size(); i-- > idx(p_);) {
        tail = tail * s + beta_[i];
    }
    return clamp_cdf(std::pow(s, p_) * tail / q_.evaluate(s));
}

double GeneralQuadraticCdf::complement_form(double s) const
{
    if (s <= 0.0) {
        return 0.0;
    }
    double head = 0.0;
    for (int i = p_ - 1; i >= 0; --i) {
        head = head * s + beta_[idx(i)];
    }
    return 1.0 - head / q_.evaluate(s);
}

// --- rational-exponential family ------------------------------------------------

RationalExpCdf::RationalExpCdf(double eta, std::vector<double> numerator, ShiftedPowerProduct denominator)
    : eta_(eta), numerator_(std::move(numerator)), denominator_(std::move(denominator))
{
    if (!(eta_ > 0.0)) {
        throw std::invalid_argument("RationalExpCdf: eta must be positive");
    }
    if (numerator_.empty()) {
        throw std::invalid_argument("RationalExpCdf: numerator must not be empty");
    }
}

CdfValue RationalExpCdf::evaluate(double s) const
{
    if (s <= 0.0) {
        return CdfValue{0.0, true};
    }
    return clamp_cdf(1.0 - std::exp(-s / eta_) * polyval(numerator_, s) / denominator_.evaluate(s));
}

ShiftedPowerProduct interference_product(const NetworkConfig &cfg, const DerivedGains &gains, int c)
{
    const auto eta = gains.per_beam_snr(c);
    if (!eta) {
        throw std::invalid_argument("interference_product: cell " + std::to_string(c) + " transmits no beams");
    }
    ShiftedPowerProduct q;
    q.multiply(1.0, cfg.beams(c) - 1);
    for (int l = 0; l < cfg.num_cells(); ++l) {
        if (l == c) {
            continue;
        }
        if (const auto mu = gains.per_beam_inr(l, c)) {
            q.multiply(*mu / *eta, cfg.beams(l));
        }
    }
    return q;
}

RationalExpCdf mmse_cdf(const NetworkConfig &cfg, const DerivedGains &gains, int c)
{
    const int nr = cfg.num_rx_antennas;
    if (nr > cfg.total_beams() - 1) {
        throw HypothesisViolated("mmse_cdf: closed form needs N_R <= sum_l M_l - 1 (N_R=" + std::to_string(nr) +
                                 ", sum M=" + std::to_string(cfg.total_beams()) + ")");
    }
    const double eta = *gains.per_beam_snr(c);
    ShiftedPowerProduct q = interference_product(cfg, gains, c);
    const auto beta = leading_coefficients(q, nr);
    std::vector<double> zeta(idx(nr), 0.0);
    for (int i = 0; i < nr; ++i) {
        double inv_eta_pow = 1.0;
        for (int j = 0; j <= i; ++j) {
            zeta[idx(i)] += beta[idx(i - j)] * inv_eta_pow / factorial(j);
            inv_eta_pow /= eta;
        }
    }
    return RationalExpCdf(eta, std::move(zeta), std::move(q));
}

// --- matched filter -------------------------------------------------------------

std::vector<double> t0_derivatives(const ShiftedPowerProduct &q, double s, int max_order)
{
    if (max_order < 0) {
        throw std::invalid_argument("t0_derivatives: max_order must be >= 0");
    }
    // g^{(k)}(s) = -sum_j m_j (-1)^k k! a_j^{k+1} / (1 + a_j s)^{k+1}
    std::vector<double> g(idx(max_order), 0.0);
    for (const auto &t : q.terms()) {
        const double ratio = t.rate / (1.0 + t.rate * s);
        double term = ratio; // (-1)^k k! ratio^{k+1}
        for (int k = 0; k < max_order; ++k) {
            g[idx(k)] -= t.multiplicity * term;
            term *= -ratio * (k + 1);
        }
    }
    std::vector<double> d(idx(max_order + 1), 0.0);
    d[0] = 1.0 / q.evaluate(s);
    for (int n = 1; n <= max_order; ++n) {
        double binom = 1.0; // C(n-1, k)
        for (int k = 0; k < n; ++k) {
            d[idx(n)] += binom * g[idx(k)] * d[idx(n - 1 - k)];
            binom = binom * (n - 1 - k) / (k + 1);
        }
    }
    return d;
}

MatchedFilterCdf::MatchedFilterCdf(double eta, int nr, ShiftedPowerProduct q) : eta_(eta), nr_(nr), q_(std::move(q))
{
    if (!(eta_ > 0.0) || nr_ < 1) {
        throw std::invalid_argument("MatchedFilterCdf: need eta > 0 and N_R >= 1");
    }
}

CdfValue MatchedFilterCdf::evaluate(double s) const
{
    if (s <= 0.0) {
        return CdfValue{0.0, true};
    }
    const auto d = t0_derivatives(q_, s, nr_ - 1);
    double sum = 0.0;
    for (int k = 0; k < nr_; ++k) {
        for (int m = 0; m <= k; ++m) {
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            sum += sign * std::pow(s, k) / (factorial(k - m) * factorial(m) * std::pow(eta_, k - m)) * d[idx(m)];
        }
    }
    return clamp_cdf(1.0 - std::exp(-s / eta_) * sum);
}

AntennaSelectionCdf::AntennaSelectionCdf(double eta, int nr, ShiftedPowerProduct q)
    : eta_(eta), nr_(nr), q_(std::move(q))
{
    if (!(eta_ > 0.0) || nr_ < 1) {
        throw std::invalid_argument("AntennaSelectionCdf: need eta > 0 and N_R >= 1");
    }
}

CdfValue AntennaSelectionCdf::evaluate(double s) const
{
    if (s <= 0.0) {
        return CdfValue{0.0, true};
    }
    const double single = 1.0 - std::exp(-s / eta_) / q_.evaluate(s);
    return clamp_cdf(std::pow(single, nr_));
}

MatchedFilterCdf mf_cdf(const NetworkConfig &cfg, const DerivedGains &gains, int c)
{
    return MatchedFilterCdf(*gains.per_beam_snr(c), cfg.num_rx_antennas, interference_product(cfg, gains, c));
}

AntennaSelectionCdf as_cdf(const NetworkConfig &cfg, const DerivedGains &gains, int c)
{
    return AntennaSelectionCdf(*gains.per_beam_snr(c), cfg.num_rx_antennas, interference_product(cfg, gains, c));
}

CdfFunction sinr_cdf(ReceiverKind kind, const NetworkConfig &cfg, int c)
{
    const DerivedGains gains = derive_gains(cfg);
    switch (kind) {
    case ReceiverKind::mmse:
        return mmse_cdf(cfg, gains, c);
    case ReceiverKind::mf:
        return mf_cdf(cfg, gains, c);
    case ReceiverKind::as:
        return as_cdf(cfg, gains, c);
    }
    throw std::invalid_argument("sinr_cdf: unknown receiver");
}

CdfCurve tabulate(const CdfFunction &cdf, std::span<const double> grid)
{
    CdfCurve curve;
    curve.s.assign(grid.begin(), grid.end());
    curve.F.reserve(grid.size());
    for (double s : grid) {
        curve.F.push_back(cdf(s));
    }
    return curve;
}

std::vector<double> log_grid(double lo, double hi, int points)
{
    if (!(lo > 0.0) || !(hi > lo) || points < 2) {
        throw std::invalid_argument("log_grid: need 0 < lo < hi and at least two points");
    }
    std::vector<double> grid(idx(points));
    const double step = std::log(hi / lo) / (points - 1);
    for (int i = 0; i < points; ++i) {
        grid[idx(i)] = lo * std::exp(step * i);
    }
    grid.back() = hi;
    return grid;
}

void write_cdf_csv(std::ostream &out, const CdfCurve &curve)
{
    out << "s,F\n";
    char line[64];
    for (std::size_t i = 0; i < curve.s.size(); ++i) {
        std::snprintf(line, sizeof line, "%.12g,%.12g\n", curve.s[i], curve.F[i]);
        out << line;
    }
}

} // namespace rbf
