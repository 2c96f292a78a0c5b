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

#include "fockbell/cli.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fockbell/pipeline.h"

namespace fockbell::cli {

namespace {

using nlohmann::json;

/// Parsed flags shared by all subcommands.
struct RunSpec {
  int n = 1;
  double g = 0.1;
  double tau = 1e-5;
  std::string psi = "auto";
  double z2 = 1e4;
  double eta = 0.2;
  double eta_d = 1.0;
  std::string arm = "c";
  std::string monitor = "transmitted";
  bool compensate_phase = false;
  std::string label;
  long long shots = 0;
  std::string seed = "0";
  std::string format;
  std::string out_path;

  std::string param;
  double from = 0.0;
  double to = 0.0;
  int steps = 1;
  std::string scale = "linear";
  bool hold_product = false;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_psi(const RunSpec& spec) {
  if (spec.psi == "auto") return spec.g;
  double v = 0.0;
  const char* first = spec.psi.data();
  const char* last = first + spec.psi.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ValidationError("psi must be a number or 'auto'");
  return v;
}

std::uint64_t parse_seed(const std::string& text) {
  const char* first = text.data();
  const char* last = first + text.size();
  std::uint64_t u = 0;
  if (auto [ptr, ec] = std::from_chars(first, last, u); ec == std::errc() && ptr == last) return u;
  std::int64_t s = 0;
  if (auto [ptr, ec] = std::from_chars(first, last, s); ec == std::errc() && ptr == last) {
    return static_cast<std::uint64_t>(s);
  }
  throw ValidationError("seed must be a 64-bit integer");
}

FilterParams filter_params(const RunSpec& spec) {
  if (!(spec.z2 >= 0.0)) throw ValidationError("z2 must be non-negative");
  FilterParams p;
  p.g = spec.g;
  p.tau = spec.tau;
  p.psi = parse_psi(spec);
  p.z = std::sqrt(spec.z2);
  p.eta = spec.eta;
  return p;
}

PipelineConfig pipeline_config(const RunSpec& spec) {
  PipelineConfig cfg;
  cfg.filter = filter_params(spec);
  cfg.eta_d = spec.eta_d;
  if (spec.arm == "c") {
    cfg.ff_arm = Arm::kC;
  } else if (spec.arm == "d") {
    cfg.ff_arm = Arm::kD;
  } else {
    throw ValidationError("arm must be 'c' or 'd'");
  }
  if (spec.monitor == "transmitted") {
    cfg.monitored_port = CavityPort::kTransmitted;
  } else if (spec.monitor == "reflected") {
    cfg.monitored_port = CavityPort::kReflected;
  } else {
    throw ValidationError("monitor must be 'transmitted' or 'reflected'");
  }
  cfg.compensate_phase = spec.compensate_phase;
  cfg.validate();
  return cfg;
}

std::string output_format(const RunSpec& spec, const char* fallback) {
  const std::string f = spec.format.empty() ? fallback : spec.format;
  if (f != "csv" && f != "json") throw ValidationError("format must be 'csv' or 'json'");
  return f;
}

json params_json(const PipelineConfig& cfg) {
  return {{"g", cfg.filter.g},
          {"tau", cfg.filter.tau},
          {"psi", cfg.filter.psi},
          {"z2", cfg.filter.z2()},
          {"eta", cfg.filter.eta},
          {"eta_d", cfg.eta_d},
          {"arm", cfg.ff_arm == Arm::kC ? "c" : "d"},
          {"monitor", cfg.monitored_port == CavityPort::kTransmitted ? "transmitted" : "reflected"},
          {"compensate_phase", cfg.compensate_phase}};
}

constexpr std::array<const char*, 4> kSlotNames = {"off_off", "off_on", "on_off", "on_on"};

std::string lower(std::string_view s) {
  std::string r(s);
  for (char& c : r) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return r;
}

std::string csv_quote(const std::string& s) {
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += '"';
    r += c;
  }
  return r + "\"";
}

std::string join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line + "\n";
}

std::string cmd_response(const RunSpec& spec) {
  const FilterParams p = filter_params(spec);
  if (spec.n < 0) throw ValidationError("n must be non-negative");
  const CavityResponse r = cavity_response(spec.n, p);
  if (output_format(spec, "csv") == "json") {
    json j = {{"n", spec.n},           {"g", p.g},
              {"tau", p.tau},          {"psi", p.psi},
              {"sigma_re", r.sigma.real()}, {"sigma_im", r.sigma.imag()},
              {"kappa_re", r.kappa.real()}, {"kappa_im", r.kappa.imag()},
              {"abs_sigma2", std::norm(r.sigma)}, {"abs_kappa2", std::norm(r.kappa)}};
    return j.dump(2) + "\n";
  }
  return "n,g,tau,psi,sigma_re,sigma_im,kappa_re,kappa_im,abs_sigma2,abs_kappa2\n" +
         join({std::to_string(spec.n), format_double(p.g), format_double(p.tau), format_double(p.psi),
               format_double(r.sigma.real()), format_double(r.sigma.imag()),
               format_double(r.kappa.real()), format_double(r.kappa.imag()),
               format_double(std::norm(r.sigma)), format_double(std::norm(r.kappa))});
}

std::string cmd_truth_table(const RunSpec& spec) {
  const PipelineConfig cfg = pipeline_config(spec);
  const std::string fmt = output_format(spec, "csv");
  json rows = json::array();
  std::string csv = "label,p_off_off,p_off_on,p_on_off,p_on_on,p_correct\n";
  for (BellLabel l : kBellLabels) {
    const AnalyticRun run = run_analytic(l, cfg);
    std::vector<std::string> cells{std::string(to_string(l))};
    json row = {{"label", to_string(l)}};
    for (int slot = 0; slot < 4; ++slot) {
      cells.push_back(format_double(run.probabilities[slot]));
      row[std::string("p_") + kSlotNames[slot]] = run.probabilities[slot];
    }
    cells.push_back(format_double(run.p_correct(l)));
    row["p_correct"] = run.p_correct(l);
    csv += join(cells);
    rows.push_back(row);
  }
  if (fmt == "csv") return csv;
  json inferred;
  for (int slot = 0; slot < 4; ++slot) inferred[kSlotNames[slot]] = to_string(infer_label(record_at(slot)));
  return json{{"params", params_json(cfg)}, {"inferred", inferred}, {"rows", rows}}.dump(2) + "\n";
}

std::string cmd_confusion(const RunSpec& spec) {
  const PipelineConfig cfg = pipeline_config(spec);
  const ConfusionMatrix m = confusion_matrix(cfg);
  if (output_format(spec, "csv") == "json") {
    json rows = json::object();
    for (BellLabel t : kBellLabels) {
      json row = json::object();
      for (BellLabel i : kBellLabels) row[std::string(to_string(i))] = m.at(t, i);
      rows[std::string(to_string(t))] = row;
    }
    return json{{"params", params_json(cfg)}, {"confusion", rows}}.dump(2) + "\n";
  }
  std::string csv = "true_label,PSI_PLUS,PSI_MINUS,PHI_PLUS,PHI_MINUS\n";
  for (BellLabel t : kBellLabels) {
    std::vector<std::string> cells{std::string(to_string(t))};
    for (BellLabel i : kBellLabels) cells.push_back(format_double(m.at(t, i)));
    csv += join(cells);
  }
  return csv;
}

std::string cmd_sweep(const RunSpec& spec) {
  const auto param = parse_sweep_param(spec.param);
  if (!param) throw ValidationError("param must be one of g, tau, psi, z2, eta, eta_d");
  if (spec.steps < 1) throw ValidationError("steps must be >= 1 (empty grid)");
  if (spec.scale != "linear" && spec.scale != "log") throw ValidationError("scale must be 'linear' or 'log'");
  if (spec.scale == "log" && !(spec.from > 0.0 && spec.to > 0.0)) {
    throw ValidationError("from/to must be positive for a log sweep");
  }
  const std::string fmt = output_format(spec, "csv");
  // The base is validated per point by the sweep itself, so an invalid fixed
  // parameter shows up as error rows rather than aborting.
  PipelineConfig base;
  base.filter = filter_params(spec);
  base.eta_d = spec.eta_d;
  base.ff_arm = spec.arm == "d" ? Arm::kD : Arm::kC;
  if (spec.arm != "c" && spec.arm != "d") throw ValidationError("arm must be 'c' or 'd'");
  base.monitored_port = spec.monitor == "reflected" ? CavityPort::kReflected : CavityPort::kTransmitted;
  base.compensate_phase = spec.compensate_phase;
  const bool psi_follows_g = spec.psi == "auto";

  const double product = spec.eta * spec.z2;
  if (spec.hold_product && *param != SweepParam::kEta && *param != SweepParam::kZ2) {
    throw ValidationError("hold-product applies only to eta or z2 sweeps");
  }
  std::vector<SweepPoint> points;
  for (int i = 0; i < spec.steps; ++i) {
    const double t = spec.steps == 1 ? 0.0 : static_cast<double>(i) / (spec.steps - 1);
    const double v = spec.scale == "log" ? spec.from * std::pow(spec.to / spec.from, t)
                                         : spec.from + (spec.to - spec.from) * t;
    SweepPoint point{{*param, v}};
    if (spec.hold_product) {
      point.emplace_back(*param == SweepParam::kEta ? SweepParam::kZ2 : SweepParam::kEta, product / v);
    }
    points.push_back(std::move(point));
  }
  const std::vector<SweepRow> rows = sweep(base, psi_follows_g, points);

  if (fmt == "json") {
    json out = json::array();
    for (const SweepRow& r : rows) {
      json row = {{"param", to_string(*param)}, {"value", r.coordinates.front().second}};
      row["params"] = params_json(r.config);
      if (!r.error.empty()) {
        row["error"] = r.error;
      } else {
        json ff = json::object(), pc = json::object();
        for (BellLabel l : kBellLabels) {
          ff[std::string(to_string(l))] = r.p_ff_on[index_of(l)];
          pc[std::string(to_string(l))] = r.p_correct[index_of(l)];
        }
        row["p_ff_on"] = ff;
        row["p_correct"] = pc;
        row["mean"] = r.mean;
      }
      out.push_back(row);
    }
    return out.dump(2) + "\n";
  }

  std::string csv = "param,value,g,tau,psi,z2,eta,eta_d";
  for (BellLabel l : kBellLabels) csv += ",p_ff_on_" + lower(to_string(l));
  for (BellLabel l : kBellLabels) csv += ",p_correct_" + lower(to_string(l));
  csv += ",mean,error\n";
  for (const SweepRow& r : rows) {
    const auto& f = r.config.filter;
    std::vector<std::string> cells{std::string(to_string(*param)), format_double(r.coordinates.front().second),
                                   format_double(f.g), format_double(f.tau), format_double(f.psi),
                                   format_double(f.z2()), format_double(f.eta), format_double(r.config.eta_d)};
    for (int i = 0; i < 4; ++i) cells.push_back(r.error.empty() ? format_double(r.p_ff_on[i]) : "");
    for (int i = 0; i < 4; ++i) cells.push_back(r.error.empty() ? format_double(r.p_correct[i]) : "");
    cells.push_back(r.error.empty() ? format_double(r.mean) : "");
    cells.push_back(r.error.empty() ? "" : csv_quote(r.error));
    csv += join(cells);
  }
  return csv;
}

std::string cmd_shots(const RunSpec& spec) {
  const auto label = parse_bell_label(spec.label);
  if (!label) throw ValidationError("unknown label '" + spec.label + "'");
  if (spec.shots < 0) throw ValidationError("shots must be non-negative");
  const std::uint64_t seed = parse_seed(spec.seed);
  const PipelineConfig cfg = pipeline_config(spec);
  const auto shots = static_cast<std::uint64_t>(spec.shots);
  const OutcomeCounts counts = monte_carlo(*label, cfg, shots, seed);
  std::array<std::uint64_t, 4> inferred{};
  for (int slot = 0; slot < 4; ++slot) inferred[index_of(infer_label(record_at(slot)))] += counts[slot];

  if (output_format(spec, "json") == "csv") {
    std::string csv = "label,shots,seed,off_off,off_on,on_off,on_on";
    for (BellLabel l : kBellLabels) csv += ",inferred_" + lower(to_string(l));
    csv += "\n";
    std::vector<std::string> cells{std::string(to_string(*label)), std::to_string(shots), std::to_string(seed)};
    for (auto c : counts) cells.push_back(std::to_string(c));
    for (auto c : inferred) cells.push_back(std::to_string(c));
    return csv + join(cells);
  }
  json j;
  j["label"] = to_string(*label);
  j["shots"] = shots;
  j["seed"] = seed;
  j["params"] = params_json(cfg);
  for (int slot = 0; slot < 4; ++slot) j["counts"][kSlotNames[slot]] = counts[slot];
  for (BellLabel l : kBellLabels) j["inferred"][std::string(to_string(l))] = inferred[index_of(l)];
  return j.dump(2) + "\n";
}

void add_filter_flags(CLI::App* app, RunSpec& spec) {
  app->add_option("--g", spec.g, "Kerr phase per signal photon (rad)");
  app->add_option("--tau", spec.tau, "cavity coupler transmissivity, in (0,1)");
  app->add_option("--psi", spec.psi, "external cavity phase (rad) or 'auto' for psi = g");
  app->add_option("--z2", spec.z2, "mean probe photon number |z|^2");
  app->add_option("--eta", spec.eta, "filter detector efficiency");
}

void add_pipeline_flags(CLI::App* app, RunSpec& spec) {
  add_filter_flags(app, spec);
  app->add_option("--eta-d", spec.eta_d, "output detector efficiency");
  app->add_option("--arm", spec.arm, "filtered arm: c or d");
  app->add_option("--monitor", spec.monitor, "monitored cavity port: transmitted or reflected");
  app->add_flag("--compensate-phase", spec.compensate_phase,
                "add a phase shifter cancelling the filter's OFF-branch phase");
}

void add_output_flags(CLI::App* app, RunSpec& spec) {
  app->add_option("--format", spec.format, "csv or json");
  app->add_option("--out", spec.out_path, "write to PATH instead of standard output");
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bell-state discrimination with a cross-Kerr Fock filter", "fockbell"};
  app.require_subcommand(1);
  RunSpec spec;

  auto* response = app.add_subcommand("response", "cavity response sigma_n, kappa_n");
  response->add_option("--n", spec.n, "photons in the filtered arm");
  add_filter_flags(response, spec);
  add_output_flags(response, spec);

  auto* truth = app.add_subcommand("truth-table", "P(ff, cc | label) for the four Bell inputs");
  add_pipeline_flags(truth, spec);
  add_output_flags(truth, spec);

  auto* confusion = app.add_subcommand("confusion", "P(inferred | true) matrix");
  add_pipeline_flags(confusion, spec);
  add_output_flags(confusion, spec);

  auto* sweep_cmd = app.add_subcommand("sweep", "success probabilities over a parameter grid");
  sweep_cmd->add_option("--param", spec.param, "g, tau, psi, z2, eta or eta_d")->required();
  sweep_cmd->add_option("--from", spec.from)->required();
  sweep_cmd->add_option("--to", spec.to)->required();
  sweep_cmd->add_option("--steps", spec.steps);
  sweep_cmd->add_option("--scale", spec.scale, "linear or log");
  sweep_cmd->add_flag("--hold-product", spec.hold_product,
                      "keep eta * z2 fixed while sweeping eta or z2");
  add_pipeline_flags(sweep_cmd, spec);
  add_output_flags(sweep_cmd, spec);

  auto* shots = app.add_subcommand("shots", "seeded Monte-Carlo outcome counts");
  shots->add_option("--label", spec.label, "PSI_PLUS, PSI_MINUS, PHI_PLUS or PHI_MINUS")->required();
  shots->add_option("--shots", spec.shots);
  shots->add_option("--seed", spec.seed);
  add_pipeline_flags(shots, spec);
  add_output_flags(shots, spec);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  std::string text;
  try {
    if (response->parsed()) {
      text = cmd_response(spec);
    } else if (truth->parsed()) {
      text = cmd_truth_table(spec);
    } else if (confusion->parsed()) {
      text = cmd_confusion(spec);
    } else if (sweep_cmd->parsed()) {
      text = cmd_sweep(spec);
    } else {
      text = cmd_shots(spec);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  if (spec.out_path.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file(spec.out_path, std::ios::binary);
  file << text;
  if (!file) {
    err << "error: cannot write " << spec.out_path << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace fockbell::cli
