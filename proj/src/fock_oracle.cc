// Copyright 2026 The fockbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Explicit finite-dimensional model of the filter cavity outputs. Shares only
// sigma_n / kappa_n with the closed-form path; no coherent-state kernel is
// used here.

#include <cmath>
#include <limits>

#include "fockbell/fock_filter.h"

namespace fockbell {

namespace {

double poisson_tail(double mean, int truncation) {
  if (mean == 0.0) return 0.0;
  double tail = 0.0;
  const double log_mean = std::log(mean);
  for (int k = truncation + 1;; ++k) {
    const double term = std::exp(k * log_mean - mean - std::lgamma(k + 1.0));
    tail += term;
    if (k > mean && term < 1e-30 * std::max(tail, 1e-300)) break;
    if (k > truncation + 100000) break;
  }
  return tail;
}

// Amplitudes of the two cavity outputs, indexed [monitored][ignored].
using TwoModeVector = std::vector<std::vector<Complex>>;

TwoModeVector probe_output(Complex z, Complex sigma, Complex kappa, int truncation,
                           CavityPort monitored) {
  const int size = truncation + 1;
  TwoModeVector out(size, std::vector<Complex>(size));

  std::vector<Complex> sigma_pow(size, 1.0), kappa_pow(size, 1.0);
  for (int m = 1; m < size; ++m) {
    sigma_pow[m] = sigma_pow[m - 1] * sigma;
    kappa_pow[m] = kappa_pow[m - 1] * kappa;
  }

  // |z> = sum_k c_k |k>, c_k = e^{-|z|^2/2} z^k / sqrt(k!).
  Complex c = std::exp(-0.5 * std::norm(z));
  for (int k = 0; k <= truncation; ++k) {
    if (k > 0) c *= z / std::sqrt(static_cast<double>(k));
    for (int m = 0; m <= k; ++m) {
      const double binom =
          std::exp(0.5 * (std::lgamma(k + 1.0) - std::lgamma(m + 1.0) - std::lgamma(k - m + 1.0)));
      // m photons leave through the transmitted port, k - m through the reflected one.
      const Complex amp = c * binom * sigma_pow[m] * kappa_pow[k - m];
      if (monitored == CavityPort::kTransmitted) {
        out[m][k - m] = amp;
      } else {
        out[k - m][m] = amp;
      }
    }
  }
  return out;
}

}  // namespace

FockOracleResult fock_truncated_oracle(const PureState& signal, Arm arm, const FilterParams& p,
                                       int truncation, CavityPort monitored) {
  p.validate();
  if (truncation < 1) throw Error(ErrorCode::kTruncationTooSmall, "truncation must be positive");
  const double tail = poisson_tail(p.z2(), truncation);
  if (!(tail < 1e-12)) {
    throw Error(ErrorCode::kTruncationTooSmall,
                "probe Fock tail beyond truncation " + std::to_string(truncation) + " is " +
                    std::to_string(tail));
  }
  const auto modes = arm_modes(arm);
  const double norm = signal.norm();
  if (norm <= 0.0) throw Error(ErrorCode::kZeroNorm, "oracle input is the zero vector");

  std::vector<Occupation> basis;
  std::vector<Complex> amps;
  std::vector<TwoModeVector> outputs;
  for (const auto& [occ, amp] : signal.terms()) {
    const CavityResponse r = cavity_response(occ.photons_in(modes), p);
    basis.push_back(occ);
    amps.push_back(amp / norm);
    outputs.push_back(probe_output(p.z, r.sigma, r.kappa, truncation, monitored));
  }

  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd rho_off = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd rho_on = Eigen::MatrixXcd::Zero(dim, dim);
  const double leak = 1.0 - p.eta;
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index k = 0; k < dim; ++k) {
      Complex off{}, on{};
      const auto& vj = outputs[static_cast<std::size_t>(j)];
      const auto& vk = outputs[static_cast<std::size_t>(k)];
      for (int m = 0; m <= truncation; ++m) {
        const double no_click = std::pow(leak, m);
        Complex partial{};
        for (int l = 0; l + m <= truncation; ++l) partial += std::conj(vk[m][l]) * vj[m][l];
        off += no_click * partial;
        on += (1.0 - no_click) * partial;
      }
      const Complex coeff = amps[static_cast<std::size_t>(j)] * std::conj(amps[static_cast<std::size_t>(k)]);
      rho_off(j, k) = coeff * off;
      rho_on(j, k) = coeff * on;
    }
  }

  FockOracleResult result;
  const PureState input = signal.scaled(1.0 / norm);
  result.p_off = rho_off.trace().real();
  result.p_on = rho_on.trace().real();
  result.fidelity_off = std::numeric_limits<double>::quiet_NaN();
  result.fidelity_on = std::numeric_limits<double>::quiet_NaN();
  if (result.p_off > 0.0) {
    result.off_state.emplace(signal.reg(), basis, rho_off / result.p_off);
    result.fidelity_off = fidelity(*result.off_state, input);
  }
  if (result.p_on > 0.0) {
    result.on_state.emplace(signal.reg(), basis, rho_on / result.p_on);
    result.fidelity_on = fidelity(*result.on_state, input);
  }
  return result;
}

}  // namespace fockbell
