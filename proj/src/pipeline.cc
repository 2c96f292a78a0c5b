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

#include "fockbell/pipeline.h"

#include <algorithm>
#include <cmath>
#include <random>

namespace fockbell {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

PureState pair_state(std::vector<int> first, std::vector<int> second, double sign) {
  return superpose({{kInvSqrt2, basis_state(first)}, {sign * kInvSqrt2, basis_state(second)}});
}

// Elements between the filter and the detectors.
ModeMatrix post_filter_optics(const PipelineConfig& cfg) {
  if (cfg.compensate_phase) {
    return compose({phase_shifter(cfg.ff_arm, -0.5 * backaction_phase(cfg)), pr_matrix(), bs_matrix()});
  }
  return compose({pr_matrix(), bs_matrix()});
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::string_view to_string(BellLabel label) {
  switch (label) {
    case BellLabel::kPsiPlus: return "PSI_PLUS";
    case BellLabel::kPsiMinus: return "PSI_MINUS";
    case BellLabel::kPhiPlus: return "PHI_PLUS";
    case BellLabel::kPhiMinus: return "PHI_MINUS";
  }
  return "?";
}

std::optional<BellLabel> parse_bell_label(std::string_view name) {
  for (BellLabel l : kBellLabels) {
    if (to_string(l) == name) return l;
  }
  return std::nullopt;
}

PureState prepare_bell(BellLabel label) {
  switch (label) {
    case BellLabel::kPsiPlus: return pair_state({1, 0, 0, 1}, {0, 1, 1, 0}, +1.0);
    case BellLabel::kPsiMinus: return pair_state({1, 0, 0, 1}, {0, 1, 1, 0}, -1.0);
    case BellLabel::kPhiPlus: return pair_state({1, 0, 1, 0}, {0, 1, 0, 1}, +1.0);
    case BellLabel::kPhiMinus: return pair_state({1, 0, 1, 0}, {0, 1, 0, 1}, -1.0);
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown Bell label");
}

PureState chi_state(bool plus) {
  return pair_state({1, 1, 0, 0}, {0, 0, 1, 1}, plus ? 1.0 : -1.0);
}

PipelineConfig PipelineConfig::ideal() {
  PipelineConfig cfg;
  cfg.filter = FilterParams::at_resonance(0.1, 1e-5, 1e4, 0.2);
  cfg.eta_d = 1.0;
  return cfg;
}

void PipelineConfig::validate() const {
  filter.validate();
  if (filter.g == 0.0) {
    throw Error(ErrorCode::kInvalidConfig,
                "g must be non-zero: with no Kerr shift the filter cannot tell 1 photon from 0 or 2");
  }
  if (!(eta_d >= 0.0 && eta_d <= 1.0)) throw Error(ErrorCode::kOutOfRange, "eta_d out of range [0,1]");
  arm_modes(ff_arm);
}

double backaction_phase(const PipelineConfig& cfg) {
  const CavityResponse two = cavity_response(2, cfg.filter);
  const CavityResponse none = cavity_response(0, cfg.filter);
  const bool transmitted = cfg.monitored_port == CavityPort::kTransmitted;
  const Complex z = cfg.filter.z;
  const Complex mon2 = (transmitted ? two.sigma : two.kappa) * z;
  const Complex mon0 = (transmitted ? none.sigma : none.kappa) * z;
  const Complex ign2 = (transmitted ? two.kappa : two.sigma) * z;
  const Complex ign0 = (transmitted ? none.kappa : none.sigma) * z;
  return std::arg(off_kernel(mon2, mon0, cfg.filter.eta) * coherent_overlap(ign2, ign0));
}

std::vector<PureState> run_chain_pure(BellLabel label) {
  std::vector<PureState> states;
  states.push_back(prepare_bell(label));
  states.push_back(apply_creation_map(pbs_matrix(), states.back()));
  states.push_back(apply_creation_map(pr_matrix(), states.back()));
  states.push_back(apply_creation_map(bs_matrix(), states.back()));
  return states;
}

CoincidenceDistribution coincidence_distribution(const DensityOperator& state, double eta_d) {
  if (!(eta_d >= 0.0 && eta_d <= 1.0)) throw Error(ErrorCode::kOutOfRange, "eta_d out of range [0,1]");
  constexpr std::array<int, 2> kPathE = {kArm1H, kArm1V};
  constexpr std::array<int, 2> kPathF = {kArm2H, kArm2V};
  CoincidenceDistribution d;
  const auto& basis = state.basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double weight = state.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    const double click_e = 1.0 - std::pow(1.0 - eta_d, basis[i].photons_in(kPathE));
    const double click_f = 1.0 - std::pow(1.0 - eta_d, basis[i].photons_in(kPathF));
    d.on += weight * click_e * click_f;
    d.off += weight * (1.0 - click_e * click_f);
  }
  return d;
}

BellLabel infer_label(OutcomeRecord r) {
  if (!r.ff) return r.cc ? BellLabel::kPsiMinus : BellLabel::kPsiPlus;
  return r.cc ? BellLabel::kPhiMinus : BellLabel::kPhiPlus;
}

double AnalyticRun::p_correct(BellLabel truth) const {
  double p = 0.0;
  for (int slot = 0; slot < 4; ++slot) {
    if (infer_label(record_at(slot)) == truth) p += probabilities[slot];
  }
  return p;
}

AnalyticRun run_analytic(BellLabel label, const PipelineConfig& cfg) {
  cfg.validate();
  const PureState after_pbs = apply_creation_map(pbs_matrix(), prepare_bell(label));
  const BranchDecomposition branches =
      filter_transform(after_pbs, cfg.ff_arm, cfg.filter, cfg.monitored_port);
  const ModeMatrix optics = post_filter_optics(cfg);

  AnalyticRun run;
  for (Click flag : {Click::kOff, Click::kOn}) {
    const bool ff = flag == Click::kOn;
    // Rounding can push these a hair outside [0, 1].
    const double p = std::clamp(outcome_probability(branches, cfg.filter.eta, flag), 0.0, 1.0);
    if (ff) run.p_ff_on = p;
    double cc_on = 0.0;
    if (p > 0.0) {
      FilterOutcome outcome = conditional_state(branches, flag, cfg.filter.eta);
      DensityOperator final_state = outcome.conditional.transformed(optics);
      cc_on = std::clamp(coincidence_distribution(final_state, cfg.eta_d).on, 0.0, 1.0);
      (ff ? run.final_if_on : run.final_if_off) = std::move(final_state);
    }
    (ff ? run.p_cc_on_if_on : run.p_cc_on_if_off) = cc_on;
    run.probabilities[slot_of({ff, true})] = p * cc_on;
    run.probabilities[slot_of({ff, false})] = p * (1.0 - cc_on);
  }
  return run;
}

OutcomeCounts monte_carlo(BellLabel label, const PipelineConfig& cfg, std::uint64_t shots,
                          std::uint64_t seed) {
  OutcomeCounts counts{};
  if (shots == 0) return counts;
  const AnalyticRun run = run_analytic(label, cfg);
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(shot), static_cast<std::uint32_t>(shot >> 32)};
    std::mt19937_64 rng(seq);
    const bool ff = uniform01(rng) < run.p_ff_on;
    const bool cc = uniform01(rng) < (ff ? run.p_cc_on_if_on : run.p_cc_on_if_off);
    ++counts[slot_of({ff, cc})];
  }
  return counts;
}

ConfusionMatrix confusion_matrix(const PipelineConfig& cfg) {
  ConfusionMatrix m;
  for (BellLabel truth : kBellLabels) {
    const AnalyticRun run = run_analytic(truth, cfg);
    for (int slot = 0; slot < 4; ++slot) {
      m.p[index_of(truth)][index_of(infer_label(record_at(slot)))] += run.probabilities[slot];
    }
  }
  return m;
}

std::string_view to_string(SweepParam param) {
  switch (param) {
    case SweepParam::kG: return "g";
    case SweepParam::kTau: return "tau";
    case SweepParam::kPsi: return "psi";
    case SweepParam::kZ2: return "z2";
    case SweepParam::kEta: return "eta";
    case SweepParam::kEtaD: return "eta_d";
  }
  return "?";
}

std::optional<SweepParam> parse_sweep_param(std::string_view name) {
  for (SweepParam p : {SweepParam::kG, SweepParam::kTau, SweepParam::kPsi, SweepParam::kZ2,
                       SweepParam::kEta, SweepParam::kEtaD}) {
    if (to_string(p) == name) return p;
  }
  if (name == "eta-d") return SweepParam::kEtaD;
  return std::nullopt;
}

std::vector<SweepRow> sweep(const PipelineConfig& base, bool psi_follows_g,
                            const std::vector<SweepPoint>& points) {
  std::vector<SweepRow> rows;
  rows.reserve(points.size());
  for (const SweepPoint& point : points) {
    SweepRow row;
    row.coordinates = point;
    row.config = base;
    FilterParams& f = row.config.filter;
    bool psi_set = false;
    try {
      for (const auto& [param, value] : point) {
        switch (param) {
          case SweepParam::kG: f.g = value; break;
          case SweepParam::kTau: f.tau = value; break;
          case SweepParam::kPsi: f.psi = value; psi_set = true; break;
          case SweepParam::kZ2:
            if (!(value >= 0.0)) throw Error(ErrorCode::kOutOfRange, "z2 must be non-negative");
            f.z = std::sqrt(value);
            break;
          case SweepParam::kEta: f.eta = value; break;
          case SweepParam::kEtaD: row.config.eta_d = value; break;
        }
      }
      if (psi_follows_g && !psi_set) f.psi = f.g;
      row.config.validate();
      double total = 0.0;
      for (BellLabel l : kBellLabels) {
        const AnalyticRun run = run_analytic(l, row.config);
        row.p_correct[index_of(l)] = run.p_correct(l);
        row.p_ff_on[index_of(l)] = run.p_ff_on;
        total += row.p_correct[index_of(l)];
      }
      row.mean = total / 4.0;
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SweepPoint> cartesian_grid(
    const std::vector<std::pair<SweepParam, std::vector<double>>>& axes) {
  std::vector<SweepPoint> points{{}};
  for (const auto& [param, values] : axes) {
    std::vector<SweepPoint> next;
    next.reserve(points.size() * values.size());
    for (const SweepPoint& prefix : points) {
      for (double v : values) {
        SweepPoint p = prefix;
        p.emplace_back(param, v);
        next.push_back(std::move(p));
      }
    }
    points = std::move(next);
  }
  return points;
}

}  // namespace fockbell
