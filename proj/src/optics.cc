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

#include "fockbell/optics.h"

#include <cmath>
#include <complex>

#include "fockbell/error.h"

namespace fockbell {

std::array<int, 2> arm_modes(Arm arm) {
  switch (arm) {
    case Arm::kC: return {kArm1H, kArm1V};
    case Arm::kD: return {kArm2H, kArm2V};
  }
  throw Error(ErrorCode::kInvalidArm, "invalid arm selector");
}

bool is_unitary(const ModeMatrix& m, double tol) {
  const auto& e = m.entries();
  if (e.rows() != e.cols()) return false;
  const Eigen::MatrixXcd residual = e * e.adjoint() - Eigen::MatrixXcd::Identity(e.rows(), e.cols());
  return residual.cwiseAbs().maxCoeff() <= tol;
}

ModeMatrix identity_matrix(int modes) {
  return {Eigen::MatrixXcd::Identity(modes, modes), "I"};
}

ModeMatrix pbs_matrix() {
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(kSignalModes, kSignalModes);
  e(kArm1H, kArm2H) = 1.0;
  e(kArm1V, kArm1V) = 1.0;
  e(kArm2H, kArm1H) = 1.0;
  e(kArm2V, kArm2V) = 1.0;
  return {e, "PBS"};
}

ModeMatrix pr_matrix(RotatorKind kind) {
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(kSignalModes, kSignalModes);
  e(kArm1H, kArm1H) = 1.0;
  e(kArm1V, kArm1V) = 1.0;
  switch (kind) {
    case RotatorKind::kHalfWavePlate:
      e(kArm2H, kArm2V) = 1.0;
      e(kArm2V, kArm2H) = 1.0;
      return {e, "PR"};
    case RotatorKind::kQuarterTurn:
      e(kArm2H, kArm2V) = 1.0;
      e(kArm2V, kArm2H) = -1.0;
      return {e, "PR90"};
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown rotator kind");
}

ModeMatrix bs_matrix() {
  const double h = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(kSignalModes, kSignalModes);
  e(kArm1H, kArm1H) = h;
  e(kArm1H, kArm2H) = h;
  e(kArm1V, kArm1V) = h;
  e(kArm1V, kArm2V) = h;
  e(kArm2H, kArm1H) = h;
  e(kArm2H, kArm2H) = -h;
  e(kArm2V, kArm1V) = h;
  e(kArm2V, kArm2V) = -h;
  return {e, "BS"};
}

ModeMatrix phase_shifter(Arm arm, double phase) {
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Identity(kSignalModes, kSignalModes);
  const std::complex<double> w = std::polar(1.0, phase);
  for (int m : arm_modes(arm)) e(m, m) = w;
  return {e, "PS"};
}

ModeMatrix compose(std::span<const ModeMatrix> elements) {
  if (elements.empty()) return identity_matrix();
  Eigen::MatrixXcd acc = elements.front().entries();
  std::string label = elements.front().label();
  for (std::size_t i = 1; i < elements.size(); ++i) {
    if (elements[i].entries().cols() != acc.rows()) {
      throw Error(ErrorCode::kRegisterMismatch, "composed mode matrices are not conformable");
    }
    acc = elements[i].entries() * acc;
    label += "->" + elements[i].label();
  }
  return {acc, label};
}

ModeMatrix compose(std::initializer_list<ModeMatrix> elements) {
  return compose(std::span(elements.begin(), elements.size()));
}

}  // namespace fockbell
