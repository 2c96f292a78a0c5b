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

// Linear optical elements of the interferometer as mode matrices.
//
// The register is fixed: (arm 1 horizontal, arm 1 vertical, arm 2 horizontal,
// arm 2 vertical). Input modes a/b, intermediate modes c/d and output modes
// e/f are all names for these same four slots.

#ifndef FOCKBELL_OPTICS_H_
#define FOCKBELL_OPTICS_H_

#include <array>
#include <initializer_list>
#include <span>
#include <string>

#include <Eigen/Dense>

namespace fockbell {

inline constexpr int kArm1H = 0;
inline constexpr int kArm1V = 1;
inline constexpr int kArm2H = 2;
inline constexpr int kArm2V = 3;
inline constexpr int kSignalModes = 4;

/// Interferometer arm after the polarizing beam splitter. kC holds modes
/// (0, 1), kD holds modes (2, 3).
enum class Arm { kC, kD };

std::array<int, 2> arm_modes(Arm arm);

/// Heisenberg map of a linear element: out_k = sum_j entries(k, j) in_j.
/// States transform by a_j^dag -> sum_k entries(k, j) a_k^dag.
class ModeMatrix {
 public:
  ModeMatrix(Eigen::MatrixXcd entries, std::string label)
      : entries_(std::move(entries)), label_(std::move(label)) {}

  const Eigen::MatrixXcd& entries() const { return entries_; }
  const std::string& label() const { return label_; }
  int modes() const { return static_cast<int>(entries_.rows()); }

 private:
  Eigen::MatrixXcd entries_;
  std::string label_;
};

/// max |m m^dag - I| <= tol.
bool is_unitary(const ModeMatrix& m, double tol);

ModeMatrix identity_matrix(int modes = kSignalModes);

/// Swaps the two horizontal modes: (c_par, c_perp, d_par, d_perp) =
/// (b_par, a_perp, a_par, b_perp).
ModeMatrix pbs_matrix();

enum class RotatorKind {
  /// Half-wave plate at 45 degrees on arm d: d_par <-> d_perp. Used by the
  /// pipeline; it sends Phi+- to Psi+- and leaves chi+- alone.
  kHalfWavePlate,
  /// Pure 90 degree rotation (d_perp, -d_par). Sends Phi+ to -Psi- and
  /// exchanges chi+ with -chi-; kept for comparison.
  kQuarterTurn,
};

/// Polarization element on arm d, identity on arm c.
ModeMatrix pr_matrix(RotatorKind kind = RotatorKind::kHalfWavePlate);

/// Balanced non-polarizing beam splitter:
/// (x_par + y_par, x_perp + y_perp, x_par - y_par, x_perp - y_perp) / sqrt 2.
ModeMatrix bs_matrix();

/// Phase e^{i phase} per photon on both polarizations of one arm.
ModeMatrix phase_shifter(Arm arm, double phase);

/// Product in application order: compose({A, B, C}) = C * B * A.
ModeMatrix compose(std::span<const ModeMatrix> elements);
ModeMatrix compose(std::initializer_list<ModeMatrix> elements);

}  // namespace fockbell

#endif  // FOCKBELL_OPTICS_H_
