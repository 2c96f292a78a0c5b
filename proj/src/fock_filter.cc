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

#include "fockbell/fock_filter.h"

#include <cmath>

namespace fockbell {

namespace {

constexpr int kMaxFilteredPhotons = 2;

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

}  // namespace

FilterParams FilterParams::at_resonance(double g, double tau, double z2, double eta) {
  FilterParams p;
  p.g = g;
  p.tau = tau;
  p.psi = g;
  p.z = Complex(std::sqrt(z2), 0.0);
  p.eta = eta;
  return p;
}

void FilterParams::validate() const {
  if (!std::isfinite(g)) throw Error(ErrorCode::kOutOfRange, "g must be finite");
  if (!(tau > 0.0 && tau < 1.0)) throw Error(ErrorCode::kOutOfRange, "tau out of range (0,1)");
  if (!std::isfinite(psi)) throw Error(ErrorCode::kOutOfRange, "psi must be finite");
  if (!finite(z)) throw Error(ErrorCode::kOutOfRange, "z must be finite");
  if (!(eta >= 0.0 && eta <= 1.0)) throw Error(ErrorCode::kOutOfRange, "eta out of range [0,1]");
}

CavityResponse cavity_response(int n, const FilterParams& p) {
  if (p.tau == 0.0) {
    throw Error(ErrorCode::kDegenerateCavity, "tau = 0 leaves the cavity closed (degenerate response)");
  }
  p.validate();
  if (n < 0) throw Error(ErrorCode::kInvalidOccupation, "negative photon number");
  const double phi = p.psi - p.g * n;
  // 1 - (1-tau) e^{i phi} = e^{i phi/2} (tau cos(phi/2) - i (2-tau) sin(phi/2)).
  const double c = std::cos(0.5 * phi);
  const double s = std::sin(0.5 * phi);
  const Complex reduced(p.tau * c, -(2.0 - p.tau) * s);
  const Complex sigma = p.tau * std::polar(1.0, -0.5 * phi) / reduced;
  const Complex kappa = std::sqrt(1.0 - p.tau) * Complex(0.0, 2.0 * s) / reduced;
  return {sigma, kappa};
}

CavityResponse cavity_response_series(int n, const FilterParams& p, std::int64_t terms) {
  p.validate();
  if (terms < 1) throw Error(ErrorCode::kOutOfRange, "series needs at least one round trip");
  using Ext = std::complex<long double>;
  const long double phi = static_cast<long double>(p.psi) - static_cast<long double>(p.g) * n;
  const long double r = 1.0L - static_cast<long double>(p.tau);
  const Ext trip = r * Ext(std::cos(phi), std::sin(phi));

  // sum_{k<terms} trip^k, grouped as S_{a+b} = S_a + trip^a S_b over the
  // binary digits of `terms`.
  Ext total{0.0L, 0.0L};
  Ext offset{1.0L, 0.0L};   // trip^(terms consumed so far)
  Ext block{1.0L, 0.0L};    // sum of 2^j consecutive powers starting at 1
  Ext block_pow = trip;     // trip^(2^j)
  for (std::int64_t rest = terms; rest > 0; rest >>= 1) {
    if (rest & 1) {
      total += offset * block;
      offset *= block_pow;
    }
    block += block_pow * block;
    block_pow *= block_pow;
  }

  const Ext open = Ext(0.0L, 2.0L * std::sin(0.5L * phi)) * Ext(std::cos(0.5L * phi), std::sin(0.5L * phi));
  const Ext sigma = static_cast<long double>(p.tau) * total;
  const Ext kappa = std::sqrt(r) * open * total;
  return {Complex(static_cast<double>(sigma.real()), static_cast<double>(sigma.imag())),
          Complex(static_cast<double>(kappa.real()), static_cast<double>(kappa.imag()))};
}

std::int64_t round_trips_for_tail(double tau, double tail) {
  if (!(tau > 0.0 && tau < 1.0)) throw Error(ErrorCode::kOutOfRange, "tau out of range (0,1)");
  if (!(tail > 0.0 && tail < 1.0)) throw Error(ErrorCode::kOutOfRange, "tail bound out of range (0,1)");
  return static_cast<std::int64_t>(std::ceil(std::log(tail) / std::log1p(-tau)));
}

Complex BranchDecomposition::monitored_label(std::size_t i) const {
  const auto& b = branches_.at(i);
  return monitored_ == CavityPort::kTransmitted ? b.transmitted : b.reflected;
}

Complex BranchDecomposition::ignored_label(std::size_t i) const {
  const auto& b = branches_.at(i);
  return monitored_ == CavityPort::kTransmitted ? b.reflected : b.transmitted;
}

BranchDecomposition filter_transform(const PureState& signal, Arm arm, const FilterParams& p,
                                     CavityPort monitored) {
  p.validate();
  const auto modes = arm_modes(arm);
  if (signal.max_total() > kMaxFilteredPhotons) {
    throw Error(ErrorCode::kPhotonLimit, "filter input carries more than 2 photons");
  }
  const double norm = signal.norm();
  if (norm <= 0.0) throw Error(ErrorCode::kZeroNorm, "filter input is the zero vector");

  std::vector<FilterBranch> branches;
  branches.reserve(signal.terms().size());
  for (const auto& [occ, amp] : signal.terms()) {
    const int n = occ.photons_in(modes);
    const CavityResponse r = cavity_response(n, p);
    branches.push_back({amp / norm, occ, n, r.sigma * p.z, r.kappa * p.z});
  }
  return {signal.reg(), std::move(branches), monitored};
}

Eigen::MatrixXcd outcome_kernel(const BranchDecomposition& b, Click flag, double eta) {
  const auto n = static_cast<Eigen::Index>(b.branches().size());
  Eigen::MatrixXcd w(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto uj = static_cast<std::size_t>(j);
      const auto uk = static_cast<std::size_t>(k);
      const Complex detector = flag == Click::kOff
                                   ? off_kernel(b.monitored_label(uj), b.monitored_label(uk), eta)
                                   : on_kernel(b.monitored_label(uj), b.monitored_label(uk), eta);
      w(j, k) = detector * coherent_overlap(b.ignored_label(uj), b.ignored_label(uk));
    }
  }
  return w;
}

double outcome_probability(const BranchDecomposition& b, double eta, Click flag) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw Error(ErrorCode::kOutOfRange, "eta out of range [0,1]");
  // Distinct signal kets are orthogonal, so only the diagonal survives.
  double p = 0.0;
  for (std::size_t j = 0; j < b.branches().size(); ++j) {
    const double x = -eta * std::norm(b.monitored_label(j));
    const double weight = flag == Click::kOff ? std::exp(x) : -std::expm1(x);
    p += std::norm(b.branches()[j].amplitude) * weight;
  }
  return p;
}

FilterOutcome conditional_state(const BranchDecomposition& b, Click flag, double eta) {
  std::vector<WeightedBranch> weighted;
  weighted.reserve(b.branches().size());
  for (const auto& br : b.branches()) weighted.push_back({br.amplitude, br.occupation});
  auto conditioned = density_from_branches(b.reg(), weighted, outcome_kernel(b, flag, eta));
  return {flag, conditioned.probability, std::move(conditioned.state)};
}

}  // namespace fockbell
