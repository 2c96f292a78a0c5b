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

// Few-photon multimode states on a small register, density operators over a
// finite set of occupation vectors, and closed-form coherent-state kernels.

#ifndef FOCKBELL_FOCK_STATE_H_
#define FOCKBELL_FOCK_STATE_H_

#include <compare>
#include <complex>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fockbell/error.h"

namespace fockbell {

using Complex = std::complex<double>;

/// Amplitudes at or below this magnitude are dropped when terms are merged.
inline constexpr double kAmplitudeCutoff = 1e-15;

/// Shape of a mode register: number of modes and the photon-number ceiling.
struct Register {
  int modes = 4;
  int max_photons = 2;

  friend bool operator==(const Register&, const Register&) = default;
};

/// Photon counts per register mode, e.g. |1001>.
class Occupation {
 public:
  Occupation() = default;
  explicit Occupation(std::vector<int> counts) : counts_(std::move(counts)) {}
  Occupation(std::initializer_list<int> counts) : counts_(counts) {}

  int size() const { return static_cast<int>(counts_.size()); }
  int operator[](int mode) const { return counts_[mode]; }
  const std::vector<int>& counts() const { return counts_; }
  int total() const;

  /// Photons found in the given modes.
  int photons_in(std::span<const int> modes) const;

  std::string ket() const;

  friend auto operator<=>(const Occupation&, const Occupation&) = default;

 private:
  std::vector<int> counts_;
};

class ModeMatrix;

/// Finite superposition of occupation basis states. Immutable once built.
class PureState {
 public:
  using Terms = std::map<Occupation, Complex>;

  explicit PureState(Register reg = {}) : reg_(reg) {}

  /// Merges like terms and drops zero amplitudes. Throws on occupations that
  /// do not fit the register.
  static PureState from_terms(Register reg,
                              std::span<const std::pair<Occupation, Complex>> terms,
                              bool normalize = false);
  static PureState from_terms(Register reg, const Terms& terms, bool normalize = false);

  const Register& reg() const { return reg_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  Complex amplitude(const Occupation& occ) const;
  double norm() const;
  /// True when the squared norm is 1 within 1e-12.
  bool normalized() const { return normalized_; }
  /// Largest total photon number over the stored terms.
  int max_total() const;

  PureState scaled(Complex factor) const;

  std::string to_string() const;

 private:
  Register reg_;
  Terms terms_;
  bool normalized_ = false;
};

/// Validates `occ` against `reg` and returns the single-term state.
PureState basis_state(const std::vector<int>& occ, Register reg = {});

/// Linear combination sum_i c_i |s_i>. All states must share a register.
PureState superpose(std::span<const std::pair<Complex, PureState>> terms,
                    bool normalize = false);
PureState superpose(std::initializer_list<std::pair<Complex, PureState>> terms,
                    bool normalize = false);

/// <x|y>.
Complex inner_product(const PureState& x, const PureState& y);

/// Schroedinger action of a linear optical element on a state with at most
/// two photons. Each creation operator a_j^dag is replaced by
/// sum_k m(k, j) a_k^dag and the resulting polynomial is re-expanded in the
/// occupation basis.
PureState apply_creation_map(const ModeMatrix& m, const PureState& s);

/// <beta|alpha> for coherent states.
Complex coherent_overlap(Complex alpha, Complex beta);

/// <beta|(1-eta)^n|alpha>: the no-click element of an ON/OFF detector with
/// efficiency eta, between coherent states.
Complex off_kernel(Complex alpha, Complex beta, double eta);

/// <beta|1 - (1-eta)^n|alpha>, evaluated without cancellation on the
/// diagonal.
Complex on_kernel(Complex alpha, Complex beta, double eta);

/// Density operator over an explicit list of occupation vectors.
class DensityOperator {
 public:
  DensityOperator(Register reg, std::vector<Occupation> basis, Eigen::MatrixXcd matrix);

  static DensityOperator pure(const PureState& s);

  const Register& reg() const { return reg_; }
  const std::vector<Occupation>& basis() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  Complex element(const Occupation& row, const Occupation& col) const;
  double trace() const;
  double purity() const;

  /// Hermitian within 1e-12, unit trace within 1e-12, eigenvalues >= -1e-10.
  /// On failure `why` (when given) names the broken invariant.
  bool satisfies_invariants(std::string* why = nullptr) const;

  /// U rho U^dag with U the Schroedinger action of `m`.
  DensityOperator transformed(const ModeMatrix& m) const;

 private:
  int index_of(const Occupation& occ) const;

  Register reg_;
  std::vector<Occupation> basis_;
  Eigen::MatrixXcd matrix_;
};

/// One branch c_j |occ_j> of an entangled signal whose partner (the cavity
/// field) has already been traced out into a kernel.
struct WeightedBranch {
  Complex amplitude;
  Occupation occupation;
};

struct ConditionedState {
  DensityOperator state;
  /// Trace of the unnormalized operator, i.e. the outcome probability.
  double probability;
};

/// Builds sum_jk c_j conj(c_k) W_jk |occ_j><occ_k| and normalizes it.
/// Throws kNullEvent when the total weight is not positive.
ConditionedState density_from_branches(Register reg,
                                       std::span<const WeightedBranch> branches,
                                       const Eigen::MatrixXcd& kernel);

/// <psi|rho|psi>.
double fidelity(const DensityOperator& rho, const PureState& psi);

}  // namespace fockbell

#endif  // FOCKBELL_FOCK_STATE_H_
