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

// End-to-end Bell measurement: PBS -> Fock Filter -> polarization rotator ->
// balanced beam splitter -> coincidence circuit on the two output paths.

#ifndef FOCKBELL_PIPELINE_H_
#define FOCKBELL_PIPELINE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fockbell/fock_filter.h"
#include "fockbell/fock_state.h"
#include "fockbell/optics.h"

namespace fockbell {

enum class BellLabel { kPsiPlus, kPsiMinus, kPhiPlus, kPhiMinus };

inline constexpr std::array<BellLabel, 4> kBellLabels = {
    BellLabel::kPsiPlus, BellLabel::kPsiMinus, BellLabel::kPhiPlus, BellLabel::kPhiMinus};

std::string_view to_string(BellLabel label);  // "PSI_PLUS", ...
std::optional<BellLabel> parse_bell_label(std::string_view name);
inline int index_of(BellLabel label) { return static_cast<int>(label); }

/// (|1001> +- |0110>)/sqrt 2 and (|1010> +- |0101>)/sqrt 2.
PureState prepare_bell(BellLabel label);

/// Both photons in one arm: (|1100> +- |0011>)/sqrt 2.
PureState chi_state(bool plus);

struct PipelineConfig {
  FilterParams filter;
  /// Efficiency of each output-path detector.
  double eta_d = 1.0;
  Arm ff_arm = Arm::kC;
  CavityPort monitored_port = CavityPort::kTransmitted;
  /// Adds a static phase shifter on the filter arm that cancels the
  /// deterministic OFF-branch phase between 0 and 2 filtered photons. Not
  /// part of the bare setup; off by default.
  bool compensate_phase = false;

  /// g = 0.1, tau = 1e-5, psi = g, |z|^2 = 1e4, eta = 0.2, eta_d = 1.
  static PipelineConfig ideal();

  /// Throws kOutOfRange / kInvalidConfig naming the field.
  void validate() const;
};

/// Relative phase of the OFF-conditional coherence between a term with two
/// photons and a term with none in the filter arm.
double backaction_phase(const PipelineConfig& cfg);

/// States after each element with the filter treated as transparent:
/// {input, after PBS, after PR, after BS}.
std::vector<PureState> run_chain_pure(BellLabel label);

struct CoincidenceDistribution {
  double on = 0.0;
  double off = 0.0;
};

/// Polarization-insensitive detectors on paths e (modes 0, 1) and f (modes 2,
/// 3); the circuit fires when both click.
CoincidenceDistribution coincidence_distribution(const DensityOperator& state, double eta_d);

struct OutcomeRecord {
  bool ff = false;
  bool cc = false;

  friend bool operator==(const OutcomeRecord&, const OutcomeRecord&) = default;
};

/// Slot order used by every per-outcome array: (OFF,OFF), (OFF,ON), (ON,OFF), (ON,ON).
inline int slot_of(OutcomeRecord r) { return (r.ff ? 2 : 0) + (r.cc ? 1 : 0); }
inline OutcomeRecord record_at(int slot) { return {slot >= 2, (slot & 1) != 0}; }

BellLabel infer_label(OutcomeRecord r);

struct AnalyticRun {
  std::array<double, 4> probabilities{};
  double p_ff_on = 0.0;
  /// P(cc ON | filter outcome); zero when that outcome is impossible.
  double p_cc_on_if_off = 0.0;
  double p_cc_on_if_on = 0.0;
  /// Post-filter conditional state carried through PR and BS, per filter
  /// outcome; empty when that outcome is impossible.
  std::optional<DensityOperator> final_if_off;
  std::optional<DensityOperator> final_if_on;

  double at(OutcomeRecord r) const { return probabilities[slot_of(r)]; }
  double p_correct(BellLabel truth) const;
};

AnalyticRun run_analytic(BellLabel label, const PipelineConfig& cfg);

/// Counts per outcome slot.
using OutcomeCounts = std::array<std::uint64_t, 4>;

/// Each shot draws the filter outcome, then the coincidence outcome given the
/// collapsed state. Shot i uses its own generator seeded from (seed, i), so
/// counts depend only on (label, cfg, shots, seed).
OutcomeCounts monte_carlo(BellLabel label, const PipelineConfig& cfg, std::uint64_t shots,
                          std::uint64_t seed);

/// rows = true label, columns = inferred label.
struct ConfusionMatrix {
  std::array<std::array<double, 4>, 4> p{};

  double at(BellLabel truth, BellLabel inferred) const {
    return p[index_of(truth)][index_of(inferred)];
  }
};

ConfusionMatrix confusion_matrix(const PipelineConfig& cfg);

enum class SweepParam { kG, kTau, kPsi, kZ2, kEta, kEtaD };

std::string_view to_string(SweepParam param);
std::optional<SweepParam> parse_sweep_param(std::string_view name);

using SweepPoint = std::vector<std::pair<SweepParam, double>>;

struct SweepRow {
  SweepPoint coordinates;
  PipelineConfig config;
  std::array<double, 4> p_correct{};
  std::array<double, 4> p_ff_on{};
  double mean = 0.0;
  /// Empty on success; otherwise the validation message for this point.
  std::string error;
};

/// Applies each point's coordinates to `base`. With `psi_follows_g`, psi is
/// reset to g after the overrides unless the point sets psi itself.
std::vector<SweepRow> sweep(const PipelineConfig& base, bool psi_follows_g,
                            const std::vector<SweepPoint>& points);

/// Cartesian product of the axes, first axis slowest.
std::vector<SweepPoint> cartesian_grid(
    const std::vector<std::pair<SweepParam, std::vector<double>>>& axes);

}  // namespace fockbell

#endif  // FOCKBELL_PIPELINE_H_
