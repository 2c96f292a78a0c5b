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

#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fockbell/cli.h"
#include "fockbell/pipeline.h"

namespace py = pybind11;
using namespace fockbell;

namespace {

py::dict state_dict(const PureState& s) {
  py::dict d;
  for (const auto& [occ, amp] : s.terms()) d[py::tuple(py::cast(occ.counts()))] = amp;
  return d;
}

PureState state_from_dict(const py::dict& d) {
  PureState::Terms terms;
  for (auto [key, value] : d) {
    terms[Occupation(key.cast<std::vector<int>>())] += value.cast<Complex>();
  }
  return PureState::from_terms(Register{}, terms);
}

py::dict analytic_dict(const AnalyticRun& run) {
  py::dict d;
  d["probabilities"] = run.probabilities;
  d["p_ff_on"] = run.p_ff_on;
  d["p_cc_on_if_off"] = run.p_cc_on_if_off;
  d["p_cc_on_if_on"] = run.p_cc_on_if_on;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bell-state discrimination with a cross-Kerr photon-number filter";

  py::register_exception<Error>(m, "FockbellError", PyExc_ValueError);

  py::enum_<BellLabel>(m, "BellLabel")
      .value("PSI_PLUS", BellLabel::kPsiPlus)
      .value("PSI_MINUS", BellLabel::kPsiMinus)
      .value("PHI_PLUS", BellLabel::kPhiPlus)
      .value("PHI_MINUS", BellLabel::kPhiMinus);

  py::enum_<Arm>(m, "Arm").value("C", Arm::kC).value("D", Arm::kD);
  py::enum_<CavityPort>(m, "CavityPort")
      .value("TRANSMITTED", CavityPort::kTransmitted)
      .value("REFLECTED", CavityPort::kReflected);

  py::class_<FilterParams>(m, "FilterParams")
      .def(py::init([](double g, double tau, std::optional<double> psi, double z2, double eta) {
             FilterParams p = FilterParams::at_resonance(g, tau, z2, eta);
             if (psi) p.psi = *psi;
             return p;
           }),
           py::arg("g") = 0.1, py::arg("tau") = 1e-5, py::arg("psi") = py::none(),
           py::arg("z2") = 1e4, py::arg("eta") = 0.2)
      .def_readwrite("g", &FilterParams::g)
      .def_readwrite("tau", &FilterParams::tau)
      .def_readwrite("psi", &FilterParams::psi)
      .def_readwrite("z", &FilterParams::z)
      .def_readwrite("eta", &FilterParams::eta)
      .def_property_readonly("z2", &FilterParams::z2)
      .def("validate", &FilterParams::validate);

  py::class_<PipelineConfig>(m, "PipelineConfig")
      .def(py::init([](FilterParams filter, double eta_d, Arm ff_arm, CavityPort port, bool compensate) {
             PipelineConfig cfg;
             cfg.filter = filter;
             cfg.eta_d = eta_d;
             cfg.ff_arm = ff_arm;
             cfg.monitored_port = port;
             cfg.compensate_phase = compensate;
             return cfg;
           }),
           py::arg("filter") = FilterParams::at_resonance(0.1, 1e-5, 1e4, 0.2), py::arg("eta_d") = 1.0,
           py::arg("ff_arm") = Arm::kC, py::arg("monitored_port") = CavityPort::kTransmitted,
           py::arg("compensate_phase") = false)
      .def_static("ideal", &PipelineConfig::ideal)
      .def_readwrite("filter", &PipelineConfig::filter)
      .def_readwrite("eta_d", &PipelineConfig::eta_d)
      .def_readwrite("ff_arm", &PipelineConfig::ff_arm)
      .def_readwrite("monitored_port", &PipelineConfig::monitored_port)
      .def_readwrite("compensate_phase", &PipelineConfig::compensate_phase)
      .def("validate", &PipelineConfig::validate);

  m.def("cavity_response",
        [](int n, const FilterParams& p) {
          const CavityResponse r = cavity_response(n, p);
          return std::make_pair(r.sigma, r.kappa);
        },
        py::arg("n"), py::arg("params"), "(sigma_n, kappa_n) for n photons in the filtered arm");

  m.def("prepare_bell", [](BellLabel l) { return state_dict(prepare_bell(l)); }, py::arg("label"),
        "Bell state as {occupation tuple: amplitude}");
  m.def("chain_states",
        [](BellLabel l) {
          std::vector<py::dict> out;
          for (const PureState& s : run_chain_pure(l)) out.push_back(state_dict(s));
          return out;
        },
        py::arg("label"), "states after input, PBS, PR and BS with a transparent filter");

  m.def("run_analytic", [](BellLabel l, const PipelineConfig& cfg) { return analytic_dict(run_analytic(l, cfg)); },
        py::arg("label"), py::arg("config") = PipelineConfig::ideal());
  m.def("truth_table",
        [](const PipelineConfig& cfg) {
          py::dict table;
          for (BellLabel l : kBellLabels) {
            py::dict row = analytic_dict(run_analytic(l, cfg));
            row["p_correct"] = run_analytic(l, cfg).p_correct(l);
            table[py::str(std::string(to_string(l)))] = row;
          }
          return table;
        },
        py::arg("config") = PipelineConfig::ideal());
  m.def("confusion_matrix", [](const PipelineConfig& cfg) { return confusion_matrix(cfg).p; },
        py::arg("config") = PipelineConfig::ideal(), "rows: true label, columns: inferred label");
  m.def("monte_carlo", &monte_carlo, py::arg("label"), py::arg("config"), py::arg("shots"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>(), "outcome counts in slot order (OFF,OFF), (OFF,ON), (ON,OFF), (ON,ON)");
  m.def("backaction_phase", &backaction_phase, py::arg("config"));

  m.def("filter_probabilities",
        [](const py::dict& state, Arm arm, const FilterParams& p) {
          const BranchDecomposition b = filter_transform(state_from_dict(state), arm, p);
          return std::make_pair(outcome_probability(b, p.eta, Click::kOff),
                                outcome_probability(b, p.eta, Click::kOn));
        },
        py::arg("state"), py::arg("arm"), py::arg("params"), "(P(OFF), P(ON)) from the closed form");
  m.def("fock_oracle",
        [](const py::dict& state, Arm arm, const FilterParams& p, int truncation) {
          const FockOracleResult r = fock_truncated_oracle(state_from_dict(state), arm, p, truncation);
          py::dict d;
          d["p_off"] = r.p_off;
          d["p_on"] = r.p_on;
          d["fidelity_off"] = r.fidelity_off;
          d["fidelity_on"] = r.fidelity_on;
          return d;
        },
        py::arg("state"), py::arg("arm"), py::arg("params"), py::arg("truncation"),
        "explicit truncated-Fock computation of the filter outcome");

  m.def("cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = cli::run(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "run a command-line invocation; returns (exit code, stdout, stderr)");
}
