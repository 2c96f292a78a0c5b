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

#include <cmath>

#include <gtest/gtest.h>

#include "fockbell/optics.h"
#include "fockbell/pipeline.h"

namespace fockbell {
namespace {

const double kH = 1.0 / std::sqrt(2.0);

PureState bell(BellLabel l) { return prepare_bell(l); }

// Signed overlap <expected|apply(m, input)>.
double signed_overlap(const ModeMatrix& m, const PureState& input, const PureState& expected) {
  const Complex ip = inner_product(expected, apply_creation_map(m, input));
  EXPECT_NEAR(ip.imag(), 0.0, 1e-12);
  return ip.real();
}

TEST(Unitarity, AllElements) {
  EXPECT_TRUE(is_unitary(pbs_matrix(), 1e-12));
  EXPECT_TRUE(is_unitary(pr_matrix(), 1e-12));
  EXPECT_TRUE(is_unitary(pr_matrix(RotatorKind::kQuarterTurn), 1e-12));
  EXPECT_TRUE(is_unitary(bs_matrix(), 1e-12));
  EXPECT_TRUE(is_unitary(phase_shifter(Arm::kD, 0.7), 1e-12));
}

TEST(Unitarity, UnscaledBeamSplitterFails) {
  const ModeMatrix raw(bs_matrix().entries() * std::sqrt(2.0), "raw");
  EXPECT_FALSE(is_unitary(raw, 1e-12));
  const ModeMatrix rect(Eigen::MatrixXcd::Identity(4, 3), "rect");
  EXPECT_FALSE(is_unitary(rect, 1e-12));
}

TEST(Pbs, SwapsHorizontalModes) {
  const Eigen::MatrixXcd e = pbs_matrix().entries();
  EXPECT_EQ(e(kArm1H, kArm2H), Complex(1.0));
  EXPECT_EQ(e(kArm2H, kArm1H), Complex(1.0));
  EXPECT_EQ(e(kArm1V, kArm1V), Complex(1.0));
  EXPECT_EQ(e(kArm2V, kArm2V), Complex(1.0));
}

TEST(Pbs, SchroedingerAction) {
  const ModeMatrix pbs = pbs_matrix();
  EXPECT_NEAR(signed_overlap(pbs, bell(BellLabel::kPhiPlus), bell(BellLabel::kPhiPlus)), 1.0, 1e-12);
  EXPECT_NEAR(signed_overlap(pbs, bell(BellLabel::kPhiMinus), bell(BellLabel::kPhiMinus)), 1.0, 1e-12);
  EXPECT_NEAR(signed_overlap(pbs, bell(BellLabel::kPsiPlus), chi_state(true)), 1.0, 1e-12);
  EXPECT_NEAR(signed_overlap(pbs, bell(BellLabel::kPsiMinus), chi_state(false)), -1.0, 1e-12);
}

TEST(Pbs, Involution) {
  EXPECT_TRUE((compose({pbs_matrix(), pbs_matrix()}).entries() - Eigen::MatrixXcd::Identity(4, 4)).isZero(1e-15));
}

TEST(Rotator, HalfWavePlateAction) {
  const ModeMatrix pr = pr_matrix();
  EXPECT_NEAR(signed_overlap(pr, bell(BellLabel::kPhiPlus), bell(BellLabel::kPsiPlus)), 1.0, 1e-12);
  EXPECT_NEAR(signed_overlap(pr, bell(BellLabel::kPhiMinus), bell(BellLabel::kPsiMinus)), 1.0, 1e-12);
  EXPECT_NEAR(signed_overlap(pr, chi_state(true), chi_state(true)), 1.0, 1e-12);
  EXPECT_NEAR(signed_overlap(pr, chi_state(false), chi_state(false)), 1.0, 1e-12);
}

TEST(Rotator, QuarterTurnAction) {
  const ModeMatrix pr = pr_matrix(RotatorKind::kQuarterTurn);
  EXPECT_EQ(pr.label(), "PR90");
  EXPECT_NEAR(signed_overlap(pr, bell(BellLabel::kPhiPlus), bell(BellLabel::kPsiMinus)), -1.0, 1e-12);
  EXPECT_NEAR(signed_overlap(pr, bell(BellLabel::kPhiMinus), bell(BellLabel::kPsiPlus)), -1.0, 1e-12);
  // Rotation of both photons in arm 2 flips which chi sign survives.
  EXPECT_NEAR(std::abs(signed_overlap(pr, chi_state(true), chi_state(false))), 1.0, 1e-12);
}

TEST(Rotator, ActsOnlyOnSecondArm) {
  const Eigen::MatrixXcd e = pr_matrix().entries();
  EXPECT_EQ(e(kArm1H, kArm1H), Complex(1.0));
  EXPECT_EQ(e(kArm1V, kArm1V), Complex(1.0));
  EXPECT_EQ(e(kArm2H, kArm2H), Complex(0.0));
}

TEST(BeamSplitter, SchroedingerAction) {
  const ModeMatrix bs = bs_matrix();
  EXPECT_NEAR(signed_overlap(bs, chi_state(false), bell(BellLabel::kPsiPlus)), 1.0, 1e-12);
  EXPECT_NEAR(signed_overlap(bs, bell(BellLabel::kPsiPlus), chi_state(false)), 1.0, 1e-12);
  EXPECT_NEAR(signed_overlap(bs, chi_state(true), chi_state(true)), 1.0, 1e-12);
  EXPECT_NEAR(signed_overlap(bs, bell(BellLabel::kPsiMinus), bell(BellLabel::kPsiMinus)), -1.0, 1e-12);
}

TEST(BeamSplitter, SquaresToIdentity) {
  EXPECT_TRUE((compose({bs_matrix(), bs_matrix()}).entries() - Eigen::MatrixXcd::Identity(4, 4)).isZero(1e-15));
}

TEST(Compose, OrderAndLabel) {
  const ModeMatrix m = compose({pbs_matrix(), pr_matrix(), bs_matrix()});
  EXPECT_EQ(m.label(), "PBS->PR->BS");
  EXPECT_TRUE(is_unitary(m, 1e-12));
  EXPECT_TRUE((m.entries() - bs_matrix().entries() * pr_matrix().entries() * pbs_matrix().entries()).isZero(0.0));
}

TEST(Compose, FullChainEntries) {
  // Rows: output e_H, e_V, f_H, f_V; columns: input a_H, a_V, b_H, b_V.
  Eigen::MatrixXcd expected(4, 4);
  expected << 0, 0, kH, kH,
              kH, kH, 0, 0,
              0, 0, kH, -kH,
              -kH, kH, 0, 0;
  const ModeMatrix m = compose({pbs_matrix(), pr_matrix(), bs_matrix()});
  EXPECT_LE((m.entries() - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Compose, TrivialCases) {
  EXPECT_TRUE(compose({identity_matrix()}).entries().isIdentity(0.0));
  EXPECT_TRUE(compose(std::span<const ModeMatrix>{}).entries().isIdentity(0.0));
  EXPECT_THROW(compose({identity_matrix(3), identity_matrix(4)}), Error);
}

TEST(PhaseShifter, MultipliesOneArm) {
  const ModeMatrix ps = phase_shifter(Arm::kC, 0.3);
  EXPECT_NEAR(std::arg(ps.entries()(kArm1H, kArm1H)), 0.3, 1e-15);
  EXPECT_NEAR(std::arg(ps.entries()(kArm1V, kArm1V)), 0.3, 1e-15);
  EXPECT_EQ(ps.entries()(kArm2H, kArm2H), Complex(1.0));
  // Two photons in arm c pick up twice the phase.
  const PureState t = apply_creation_map(ps, basis_state({1, 1, 0, 0}));
  EXPECT_NEAR(std::arg(t.amplitude(Occupation{1, 1, 0, 0})), 0.6, 1e-15);
}

TEST(ArmModes, Selector) {
  EXPECT_EQ(arm_modes(Arm::kC), (std::array<int, 2>{0, 1}));
  EXPECT_EQ(arm_modes(Arm::kD), (std::array<int, 2>{2, 3}));
  EXPECT_THROW(arm_modes(static_cast<Arm>(7)), Error);
}

TEST(Chain, RowsUnderHalfWavePlate) {
  struct Row {
    BellLabel label;
    PureState after_pbs, after_pr, after_bs;
    double s_pbs, s_pr, s_bs;
  };
  const std::vector<Row> rows{
      {BellLabel::kPsiPlus, chi_state(true), chi_state(true), chi_state(true), 1, 1, 1},
      {BellLabel::kPsiMinus, chi_state(false), chi_state(false), bell(BellLabel::kPsiPlus), -1, -1, -1},
      {BellLabel::kPhiPlus, bell(BellLabel::kPhiPlus), bell(BellLabel::kPsiPlus), chi_state(false), 1, 1, 1},
      {BellLabel::kPhiMinus, bell(BellLabel::kPhiMinus), bell(BellLabel::kPsiMinus), bell(BellLabel::kPsiMinus), 1, 1, -1},
  };
  for (const Row& r : rows) {
    const std::vector<PureState> chain = run_chain_pure(r.label);
    ASSERT_EQ(chain.size(), 4u);
    EXPECT_NEAR(inner_product(bell(r.label), chain[0]).real(), 1.0, 1e-12);
    EXPECT_NEAR(inner_product(r.after_pbs, chain[1]).real(), r.s_pbs, 1e-12) << to_string(r.label);
    EXPECT_NEAR(inner_product(r.after_pr, chain[2]).real(), r.s_pr, 1e-12) << to_string(r.label);
    EXPECT_NEAR(inner_product(r.after_bs, chain[3]).real(), r.s_bs, 1e-12) << to_string(r.label);
  }
}

}  // namespace
}  // namespace fockbell
