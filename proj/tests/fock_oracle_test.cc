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

#include "fockbell/fock_filter.h"
#include "fockbell/pipeline.h"

namespace fockbell {
namespace {

PureState after_pbs(BellLabel l) { return apply_creation_map(pbs_matrix(), prepare_bell(l)); }

TEST(FockOracle, PhiClickProbability) {
  const FilterParams p = FilterParams::at_resonance(0.1, 1e-3, 4.0, 0.5);
  const FockOracleResult r = fock_truncated_oracle(after_pbs(BellLabel::kPhiPlus), Arm::kC, p, 40);
  EXPECT_NEAR(r.p_on, 1.0 - std::exp(-2.0), 1e-8);
  EXPECT_NEAR(r.fidelity_on, 1.0, 1e-10);
}

TEST(FockOracle, BlindDetector) {
  const FilterParams p = FilterParams::at_resonance(0.1, 1e-3, 4.0, 0.0);
  const FockOracleResult r = fock_truncated_oracle(after_pbs(BellLabel::kPhiMinus), Arm::kC, p, 40);
  EXPECT_EQ(r.p_on, 0.0);
  EXPECT_FALSE(r.on_state.has_value());
  EXPECT_TRUE(std::isnan(r.fidelity_on));
}

TEST(FockOracle, ChiOffFidelityMatchesKernelPath) {
  const FilterParams p = FilterParams::at_resonance(0.3, 0.01, 4.0, 0.2);
  const FockOracleResult r = fock_truncated_oracle(chi_state(true), Arm::kC, p, 40);
  const FilterOutcome off = conditional_state(filter_transform(chi_state(true), Arm::kC, p), Click::kOff, p.eta);
  EXPECT_NEAR(r.fidelity_off, fidelity(off.conditional, chi_state(true)), 1e-6);
  EXPECT_LT(r.fidelity_off, 1.0);
}

TEST(FockOracle, RejectsShortTruncation) {
  const FilterParams p = FilterParams::at_resonance(0.1, 1e-3, 4.0, 0.2);
  for (int t : {0, 5, 20}) {
    try {
      fock_truncated_oracle(chi_state(true), Arm::kC, p, t);
      FAIL() << t;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kTruncationTooSmall);
    }
  }
}

TEST(FockOracle, AgreesWithKernelsAcrossInputsPortsAndArms) {
  double worst = 0.0;
  for (double tau : {1e-3, 0.05, 0.3}) {
    for (double psi_offset : {0.0, 0.7}) {
      FilterParams p = FilterParams::at_resonance(0.25, tau, 4.0, 0.35);
      p.psi += psi_offset;
      for (CavityPort port : {CavityPort::kTransmitted, CavityPort::kReflected}) {
        for (Arm arm : {Arm::kC, Arm::kD}) {
          std::vector<PureState> inputs{chi_state(true), chi_state(false)};
          for (BellLabel l : kBellLabels) inputs.push_back(after_pbs(l));
          inputs.push_back(superpose({{0.6, basis_state({1, 0, 1, 0})}, {Complex(0, 0.8), basis_state({0, 2, 0, 0})}}));
          for (const PureState& s : inputs) {
            const FockOracleResult r = fock_truncated_oracle(s, arm, p, 40, port);
            const BranchDecomposition b = filter_transform(s, arm, p, port);
            worst = std::max(worst, std::abs(r.p_on - outcome_probability(b, p.eta, Click::kOn)));
            worst = std::max(worst, std::abs(r.p_off - outcome_probability(b, p.eta, Click::kOff)));
            for (Click c : {Click::kOn, Click::kOff}) {
              // Resonant Phi inputs leave nothing in the reflected port.
              if ((c == Click::kOn ? r.p_on : r.p_off) == 0.0) continue;
              const FilterOutcome o = conditional_state(b, c, p.eta);
              const DensityOperator& oracle = c == Click::kOn ? *r.on_state : *r.off_state;
              worst = std::max(worst, (o.conditional.matrix() - oracle.matrix()).cwiseAbs().maxCoeff());
              const double f = c == Click::kOn ? r.fidelity_on : r.fidelity_off;
              worst = std::max(worst, std::abs(f - fidelity(o.conditional, s)));
            }
          }
        }
      }
    }
  }
  EXPECT_LT(worst, 1e-9);
}

}  // namespace
}  // namespace fockbell
