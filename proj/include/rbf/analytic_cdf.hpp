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

#ifndef RBF_ANALYTIC_CDF_HPP
#define RBF_ANALYTIC_CDF_HPP

#include "rbf/network.hpp"
#include "rbf/receivers.hpp"

#include <functional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

namespace rbf {

// Raised when a closed form is requested outside the range where it holds.
class HypothesisViolated : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct RateTerm {
    double rate = 0.0;    // a_j > 0
    int multiplicity = 0; // m_j >= 1
};

// Q(s) = prod_j (1 + a_j s)^{m_j}. Equal rates are merged into one term.
class ShiftedPowerProduct {
public:
    ShiftedPowerProduct() = default;
    explicit ShiftedPowerProduct(std::span<const RateTerm> terms);
    // One factor (1 + psi_i s) per entry.
    static ShiftedPowerProduct from_rates(std::span<const double> psi);

    // Multiplies by (1 + rate s)^multiplicity. A zero rate or multiplicity is a no-op.
    void multiply(double rate, int multiplicity);

    const std::vector<RateTerm> &terms() const { return terms_; }
    int degree() const { return degree_; }
    double evaluate(double s) const;

private:
    std::vector<RateTerm> terms_;
    int degree_ = 0;
};

// beta_0..beta_n of Q(s); beta_0 = 1.
std::vector<double> expand_coefficients(const ShiftedPowerProduct &q);
// Only beta_0..beta_{count-1} (truncated convolution).
std::vector<double> leading_coefficients(const ShiftedPowerProduct &q, int count);

struct CdfValue {
    double value = 0.0; // clamped to [0, 1]
    bool healthy = true; // false when the raw value left [0, 1] by more than 1e-9
};

// Law of S = h^H (X Psi X^H)^{-1} h with h ~ CN(0, I_p), X ~ CN(0, I_p (x) I_n):
//   F(s) = sum_{i=p}^{n} beta_i s^i / Q(s),  Q(s) = prod_i (1 + psi_i s).
class GeneralQuadraticCdf {
public:
    GeneralQuadraticCdf(ShiftedPowerProduct q, int p);

    double operator()(double s) const { return evaluate(s).value; }
    CdfValue evaluate(double s) const;
    // Equivalent form 1 - sum_{i<p} beta_i s^i / Q(s).
    double complement_form(double s) const;

    int p() const { return p_; }
    const ShiftedPowerProduct &denominator() const { return q_; }
    const std::vector<double> &coefficients() const { return beta_; }

private:
    ShiftedPowerProduct q_;
    int p_;
    std::vector<double> beta_;
};

// F(s) = 1 - e^{-s/eta} N(s) / Q(s) with N given by its coefficients.
class RationalExpCdf {
public:
    RationalExpCdf(double eta, std::vector<double> numerator, ShiftedPowerProduct denominator);

    double operator()(double s) const { return evaluate(s).value; }
    CdfValue evaluate(double s) const;

    double eta() const { return eta_; }
    const std::vector<double> &numerator() const { return numerator_; }
    const ShiftedPowerProduct &denominator() const { return denominator_; }

private:
    double eta_;
    std::vector<double> numerator_;
    ShiftedPowerProduct denominator_;
};

// (1 + s)^{M_c - 1} prod_{l != c} (1 + (mu_{l,c}/eta_c) s)^{M_l}: the interference
// product shared by the three receiver laws.
ShiftedPowerProduct interference_product(const NetworkConfig &cfg, const DerivedGains &gains, int c);

// MMSE SINR law. The numerator holds the first N_R coefficients of
// e^{s/eta_c} Q(s), i.e. zeta_i = sum_{j<=i} beta_{i-j} / (j! eta_c^j).
// Requires N_R <= sum_l M_l - 1, otherwise throws HypothesisViolated.
RationalExpCdf mmse_cdf(const NetworkConfig &cfg, const DerivedGains &gains, int c);

// [T0(s), T0'(s), ..., T0^{(max_order)}(s)] for T0 = 1/Q via the log-derivative
// recursion T0^{(n)} = sum_{k<n} C(n-1, k) g^{(k)} T0^{(n-1-k)}, g = (log T0)'.
std::vector<double> t0_derivatives(const ShiftedPowerProduct &q, double s, int max_order);

// MF SINR law:
//   F(s) = 1 - e^{-s/eta} sum_{k<N_R} sum_{m<=k} (-1)^m s^k / ((k-m)! m! eta^{k-m}) T0^{(m)}(s)
class MatchedFilterCdf {
public:
    MatchedFilterCdf(double eta, int nr, ShiftedPowerProduct q);

    double operator()(double s) const { return evaluate(s).value; }
    CdfValue evaluate(double s) const;

private:
    double eta_;
    int nr_;
    ShiftedPowerProduct q_;
};

// AS SINR law: F(s) = (1 - e^{-s/eta} T0(s))^{N_R}.
class AntennaSelectionCdf {
public:
    AntennaSelectionCdf(double eta, int nr, ShiftedPowerProduct q);

    double operator()(double s) const { return evaluate(s).value; }
    CdfValue evaluate(double s) const;

private:
    double eta_;
    int nr_;
    ShiftedPowerProduct q_;
};

MatchedFilterCdf mf_cdf(const NetworkConfig &cfg, const DerivedGains &gains, int c);
AntennaSelectionCdf as_cdf(const NetworkConfig &cfg, const DerivedGains &gains, int c);

using CdfFunction = std::function<double(double)>;

// Closed-form SINR CDF of cell c for the given receiver (HypothesisViolated
// propagates from mmse_cdf).
CdfFunction sinr_cdf(ReceiverKind kind, const NetworkConfig &cfg, int c);

struct CdfCurve {
    std::vector<double> s;
    std::vector<double> F;
};

CdfCurve tabulate(const CdfFunction &cdf, std::span<const double> grid);
std::vector<double> log_grid(double lo, double hi, int points);

// CSV with header "s,F", 12 significant digits.
void write_cdf_csv(std::ostream &out, const CdfCurve &curve);

} // namespace rbf

#endif // RBF_ANALYTIC_CDF_HPP
