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

// Fock Filter: one interferometer arm is coupled by a polarization-independent
// cross-Kerr medium to a ring cavity driven by a coherent probe |z>. A signal
// term with n photons in that arm leaves the cavity outputs in the coherent
// states |sigma_n z> (transmitted) and |kappa_n z> (reflected). One output is
// watched by an ON/OFF detector of efficiency eta, the other is discarded.
//
// Cavity fields are never expanded in Fock space here; every trace over them
// is a closed-form coherent-state kernel.

#ifndef FOCKBELL_FOCK_FILTER_H_
#define FOCKBELL_FOCK_FILTER_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "fockbell/fock_state.h"
#include "fockbell/optics.h"

namespace fockbell {

struct FilterParams {
  /// Kerr phase per signal photon, radians.
  double g = 0.1;
  /// Transmissivity of the two cavity couplers, in (0, 1).
  double tau = 1e-5;
  /// External cavity phase, radians.
  double psi = 0.1;
  /// Probe amplitude; |z|^2 is the mean probe photon number.
  Complex z = 100.0;
  /// Filter detector efficiency, in [0, 1].
  double eta = 0.2;

  /// psi = g: a single photon tunes the cavity to resonance.
  static FilterParams at_resonance(double g, double tau, double z2, double eta);

  double z2() const { return std::norm(z); }

  /// Throws kOutOfRange naming the offending field.
  void validate() const;
};

struct CavityResponse {
  Complex sigma;  ///< transmitted amplitude ratio
  Complex kappa;  ///< reflected amplitude ratio
};

/// sigma_n = tau / (1 - (1-tau) e^{i phi_n}),
/// kappa_n = sqrt(1-tau) (e^{i phi_n} - 1) / (1 - (1-tau) e^{i phi_n}),
/// phi_n = psi - g n.
CavityResponse cavity_response(int n, const FilterParams& p);

/// Same quantities by explicit summation of `terms` cavity round trips,
/// sum_{k<terms} ((1-tau) e^{i phi_n})^k, carried out in extended precision.
CavityResponse cavity_response_series(int n, const FilterParams& p, std::int64_t terms);

/// Round trips needed so that the neglected tail (1-tau)^K is below `tail`.
std::int64_t round_trips_for_tail(double tau, double tail);

enum class CavityPort { kTransmitted, kReflected };

/// One signal basis term after the filter, tagged with its cavity labels.
struct FilterBranch {
  Complex amplitude;
  Occupation occupation;
  int photons;         ///< photons in the filtered arm
  Complex transmitted; ///< sigma_n z
  Complex reflected;   ///< kappa_n z
};

class BranchDecomposition {
 public:
  BranchDecomposition(Register reg, std::vector<FilterBranch> branches, CavityPort monitored)
      : reg_(reg), branches_(std::move(branches)), monitored_(monitored) {}

  const Register& reg() const { return reg_; }
  const std::vector<FilterBranch>& branches() const { return branches_; }
  CavityPort monitored_port() const { return monitored_; }

  Complex monitored_label(std::size_t i) const;
  Complex ignored_label(std::size_t i) const;

 private:
  Register reg_;
  std::vector<FilterBranch> branches_;
  CavityPort monitored_;
};

BranchDecomposition filter_transform(const PureState& signal, Arm arm, const FilterParams& p,
                                     CavityPort monitored = CavityPort::kTransmitted);

enum class Click { kOff, kOn };

/// Trace kernel W_jk of the signal-space operator left by outcome `flag`:
/// the detector element between the monitored labels times the overlap of
/// the ignored labels.
Eigen::MatrixXcd outcome_kernel(const BranchDecomposition& b, Click flag, double eta);

double outcome_probability(const BranchDecomposition& b, double eta, Click flag);

struct FilterOutcome {
  Click flag;
  double probability;
  DensityOperator conditional;
};

/// Throws kNullEvent when the outcome cannot occur.
FilterOutcome conditional_state(const BranchDecomposition& b, Click flag, double eta);

/// Brute-force cross-check of the filter: the probe is a truncated Fock
/// vector, each branch maps |k>|0> to sum_m sqrt(C(k,m)) sigma^m kappa^{k-m}
/// |m>|k-m>, and the detector is the diagonal operator (1-eta)^m.
struct FockOracleResult {
  double p_on = 0.0;
  double p_off = 0.0;
  std::optional<DensityOperator> on_state;
  std::optional<DensityOperator> off_state;
  /// Fidelity of each conditional state with the filter input; NaN when the
  /// outcome has zero probability.
  double fidelity_on = 0.0;
  double fidelity_off = 0.0;
};

/// Throws kTruncationTooSmall when the Poisson tail of |z|^2 beyond
/// `truncation` is 1e-12 or more.
FockOracleResult fock_truncated_oracle(const PureState& signal, Arm arm, const FilterParams& p,
                                       int truncation,
                                       CavityPort monitored = CavityPort::kTransmitted);

}  // namespace fockbell

#endif  // FOCKBELL_FOCK_FILTER_H_
