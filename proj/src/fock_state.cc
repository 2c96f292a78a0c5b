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

#include "fockbell/fock_state.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fockbell/optics.h"

namespace fockbell {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidOccupation: return "invalid-occupation";
    case ErrorCode::kTruncationViolation: return "truncation-violation";
    case ErrorCode::kRegisterMismatch: return "register-mismatch";
    case ErrorCode::kNonUnitary: return "non-unitary";
    case ErrorCode::kPhotonLimit: return "photon-limit";
    case ErrorCode::kZeroNorm: return "zero-norm";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kDegenerateCavity: return "degenerate-cavity";
    case ErrorCode::kNullEvent: return "conditioning-on-null-event";
    case ErrorCode::kInvalidArm: return "invalid-arm";
    case ErrorCode::kTruncationTooSmall: return "truncation-too-small";
    case ErrorCode::kInvalidConfig: return "invalid-config";
  }
  return "unknown";
}

namespace {

constexpr double kUnitaryTolerance = 1e-12;
constexpr int kMaxMappedPhotons = 2;

void check_fits(const Occupation& occ, const Register& reg) {
  if (occ.size() != reg.modes) {
    throw Error(ErrorCode::kRegisterMismatch,
                "occupation " + occ.ket() + " has " + std::to_string(occ.size()) +
                    " modes, register has " + std::to_string(reg.modes));
  }
  for (int c : occ.counts()) {
    if (c < 0) {
      throw Error(ErrorCode::kInvalidOccupation,
                  "negative photon count in " + occ.ket());
    }
  }
  if (occ.total() > reg.max_photons) {
    throw Error(ErrorCode::kTruncationViolation,
                "occupation " + occ.ket() + " exceeds the photon ceiling " +
                    std::to_string(reg.max_photons));
  }
}

void accumulate(PureState::Terms& terms, const Occupation& occ, Complex amp) {
  terms[occ] += amp;
}

void prune(PureState::Terms& terms) {
  std::erase_if(terms, [](const auto& kv) { return std::abs(kv.second) <= kAmplitudeCutoff; });
}

double squared_norm(const PureState::Terms& terms) {
  double s = 0.0;
  for (const auto& [occ, amp] : terms) s += std::norm(amp);
  return s;
}

}  // namespace

int Occupation::total() const { return std::accumulate(counts_.begin(), counts_.end(), 0); }

int Occupation::photons_in(std::span<const int> modes) const {
  int n = 0;
  for (int m : modes) n += counts_.at(m);
  return n;
}

std::string Occupation::ket() const {
  std::string s = "|";
  for (int c : counts_) s += std::to_string(c);
  return s + ">";
}

PureState PureState::from_terms(Register reg,
                                std::span<const std::pair<Occupation, Complex>> terms,
                                bool normalize) {
  Terms merged;
  for (const auto& [occ, amp] : terms) {
    check_fits(occ, reg);
    accumulate(merged, occ, amp);
  }
  return from_terms(reg, merged, normalize);
}

PureState PureState::from_terms(Register reg, const Terms& terms, bool normalize) {
  PureState s(reg);
  for (const auto& [occ, amp] : terms) {
    check_fits(occ, reg);
    if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
      throw Error(ErrorCode::kInvalidOccupation, "non-finite amplitude on " + occ.ket());
    }
  }
  s.terms_ = terms;
  prune(s.terms_);
  if (normalize) {
    const double n2 = squared_norm(s.terms_);
    if (n2 <= 0.0) throw Error(ErrorCode::kZeroNorm, "cannot normalize the zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& [occ, amp] : s.terms_) amp *= inv;
  }
  s.normalized_ = std::abs(squared_norm(s.terms_) - 1.0) <= 1e-12;
  return s;
}

Complex PureState::amplitude(const Occupation& occ) const {
  auto it = terms_.find(occ);
  return it == terms_.end() ? Complex{} : it->second;
}

double PureState::norm() const { return std::sqrt(squared_norm(terms_)); }

int PureState::max_total() const {
  int n = 0;
  for (const auto& [occ, amp] : terms_) n = std::max(n, occ.total());
  return n;
}

PureState PureState::scaled(Complex factor) const {
  Terms t = terms_;
  for (auto& [occ, amp] : t) amp *= factor;
  return from_terms(reg_, t);
}

std::string PureState::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [occ, amp] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << amp.real() << (amp.imag() < 0 ? "-" : "+") << std::abs(amp.imag()) << "i)"
       << occ.ket();
  }
  if (first) os << "0";
  return os.str();
}

PureState basis_state(const std::vector<int>& occ, Register reg) {
  const std::pair<Occupation, Complex> term{Occupation(occ), Complex{1.0, 0.0}};
  return PureState::from_terms(reg, std::span(&term, 1));
}

PureState superpose(std::span<const std::pair<Complex, PureState>> terms, bool normalize) {
  if (terms.empty()) {
    if (normalize) throw Error(ErrorCode::kZeroNorm, "cannot normalize an empty superposition");
    return PureState{};
  }
  const Register reg = terms.front().second.reg();
  PureState::Terms merged;
  for (const auto& [c, s] : terms) {
    if (!(s.reg() == reg)) {
      throw Error(ErrorCode::kRegisterMismatch, "superposed states live on different registers");
    }
    for (const auto& [occ, amp] : s.terms()) accumulate(merged, occ, c * amp);
  }
  return PureState::from_terms(reg, merged, normalize);
}

PureState superpose(std::initializer_list<std::pair<Complex, PureState>> terms, bool normalize) {
  return superpose(std::span(terms.begin(), terms.size()), normalize);
}

Complex inner_product(const PureState& x, const PureState& y) {
  if (!(x.reg() == y.reg())) {
    throw Error(ErrorCode::kRegisterMismatch, "inner product across different registers");
  }
  Complex s{};
  for (const auto& [occ, amp] : x.terms()) s += std::conj(amp) * y.amplitude(occ);
  return s;
}

PureState apply_creation_map(const ModeMatrix& m, const PureState& s) {
  const Register& reg = s.reg();
  if (m.modes() != reg.modes || m.entries().cols() != reg.modes) {
    throw Error(ErrorCode::kRegisterMismatch,
                "mode matrix '" + m.label() + "' does not match the register size");
  }
  if (!is_unitary(m, kUnitaryTolerance)) {
    throw Error(ErrorCode::kNonUnitary, "mode matrix '" + m.label() + "' is not unitary");
  }
  if (s.max_total() > kMaxMappedPhotons) {
    throw Error(ErrorCode::kPhotonLimit, "creation-operator substitution supports at most 2 photons");
  }

  const auto& e = m.entries();
  PureState::Terms out;
  for (const auto& [occ, amp] : s.terms()) {
    // |n> = prod_j (a_j^dag)^{n_j} / sqrt(n_j!) |0>; push mapped creation
    // operators onto the vacuum one at a time.
    double norm = 1.0;
    std::vector<int> ops;
    for (int j = 0; j < reg.modes; ++j) {
      for (int r = 0; r < occ[j]; ++r) ops.push_back(j);
      norm *= std::tgamma(occ[j] + 1.0);
    }
    PureState::Terms partial{{Occupation(std::vector<int>(reg.modes, 0)), amp / std::sqrt(norm)}};
    for (int j : ops) {
      PureState::Terms next;
      for (const auto& [p, c] : partial) {
        for (int k = 0; k < reg.modes; ++k) {
          const Complex coeff = e(k, j);
          if (coeff == Complex{}) continue;
          std::vector<int> raised = p.counts();
          raised[k] += 1;
          accumulate(next, Occupation(std::move(raised)), c * coeff * std::sqrt(p[k] + 1.0));
        }
      }
      partial = std::move(next);
    }
    for (const auto& [p, c] : partial) accumulate(out, p, c);
  }
  return PureState::from_terms(reg, out);
}

Complex coherent_overlap(Complex alpha, Complex beta) {
  // -|a|^2/2 - |b|^2/2 + conj(b) a = -|a-b|^2/2 + i Im(conj(b) a)
  return std::exp(Complex(-0.5 * std::norm(alpha - beta), std::imag(std::conj(beta) * alpha)));
}

Complex off_kernel(Complex alpha, Complex beta, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "eta out of range [0,1]");
  }
  const Complex cross = std::conj(beta) * alpha;
  return std::exp(Complex(-0.5 * std::norm(alpha - beta), cross.imag()) - eta * cross);
}

namespace {

// e^w - 1 without cancellation for small |w|.
Complex expm1(Complex w) {
  const double half_sin = std::sin(0.5 * w.imag());
  const double re = std::expm1(w.real()) * std::cos(w.imag()) - 2.0 * half_sin * half_sin;
  const double im = std::exp(w.real()) * std::sin(w.imag());
  return {re, im};
}

}  // namespace

Complex on_kernel(Complex alpha, Complex beta, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "eta out of range [0,1]");
  }
  const Complex cross = std::conj(beta) * alpha;
  return -coherent_overlap(alpha, beta) * expm1(-eta * cross);
}

DensityOperator::DensityOperator(Register reg, std::vector<Occupation> basis,
                                 Eigen::MatrixXcd matrix)
    : reg_(reg), basis_(std::move(basis)), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(basis_.size());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw Error(ErrorCode::kRegisterMismatch, "density matrix shape does not match its basis");
  }
  for (const auto& occ : basis_) check_fits(occ, reg_);
}

DensityOperator DensityOperator::pure(const PureState& s) {
  std::vector<Occupation> basis;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(s.terms().size()));
  Eigen::Index i = 0;
  for (const auto& [occ, amp] : s.terms()) {
    basis.push_back(occ);
    v(i++) = amp;
  }
  const double n2 = v.squaredNorm();
  if (n2 <= 0.0) throw Error(ErrorCode::kZeroNorm, "projector onto the zero vector");
  return DensityOperator(s.reg(), std::move(basis), v * v.adjoint() / n2);
}

int DensityOperator::index_of(const Occupation& occ) const {
  auto it = std::find(basis_.begin(), basis_.end(), occ);
  return it == basis_.end() ? -1 : static_cast<int>(it - basis_.begin());
}

Complex DensityOperator::element(const Occupation& row, const Occupation& col) const {
  const int r = index_of(row);
  const int c = index_of(col);
  if (r < 0 || c < 0) return {};
  return matrix_(r, c);
}

double DensityOperator::trace() const { return matrix_.trace().real(); }

double DensityOperator::purity() const { return (matrix_ * matrix_).trace().real(); }

bool DensityOperator::satisfies_invariants(std::string* why) const {
  auto fail = [why](const char* what) {
    if (why) *why = what;
    return false;
  };
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) return fail("not Hermitian");
  if (std::abs(matrix_.trace() - Complex(1.0)) > 1e-12) return fail("trace differs from 1");
  const Eigen::MatrixXcd h = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10) return fail("negative eigenvalue");
  return true;
}

DensityOperator DensityOperator::transformed(const ModeMatrix& m) const {
  // Columns of `t` are U|basis_j> expressed in the output basis.
  std::vector<PureState> images;
  images.reserve(basis_.size());
  std::map<Occupation, int> out_index;
  for (const auto& occ : basis_) {
    const std::pair<Occupation, Complex> term{occ, Complex{1.0}};
    images.push_back(apply_creation_map(m, PureState::from_terms(reg_, std::span(&term, 1))));
    for (const auto& [o, amp] : images.back().terms()) out_index.emplace(o, 0);
  }
  std::vector<Occupation> out_basis;
  for (auto& [o, idx] : out_index) {
    idx = static_cast<int>(out_basis.size());
    out_basis.push_back(o);
  }
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(out_basis.size()),
                                              static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t j = 0; j < images.size(); ++j) {
    for (const auto& [o, amp] : images[j].terms()) t(out_index[o], static_cast<Eigen::Index>(j)) = amp;
  }
  return DensityOperator(reg_, std::move(out_basis), t * matrix_ * t.adjoint());
}

ConditionedState density_from_branches(Register reg, std::span<const WeightedBranch> branches,
                                       const Eigen::MatrixXcd& kernel) {
  const auto n = static_cast<Eigen::Index>(branches.size());
  if (kernel.rows() != n || kernel.cols() != n) {
    throw Error(ErrorCode::kRegisterMismatch, "kernel shape does not match the branch count");
  }
  std::vector<Occupation> basis;
  std::vector<int> slot(branches.size());
  for (std::size_t j = 0; j < branches.size(); ++j) {
    check_fits(branches[j].occupation, reg);
    auto it = std::find(basis.begin(), basis.end(), branches[j].occupation);
    slot[j] = static_cast<int>(it - basis.begin());
    if (it == basis.end()) basis.push_back(branches[j].occupation);
  }
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      rho(slot[j], slot[k]) += branches[j].amplitude * std::conj(branches[k].amplitude) * kernel(j, k);
    }
  }
  const double p = rho.trace().real();
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::kNullEvent, "outcome has zero probability; no conditional state");
  }
  rho /= p;
  return {DensityOperator(reg, std::move(basis), std::move(rho)), p};
}

double fidelity(const DensityOperator& rho, const PureState& psi) {
  if (!(rho.reg() == psi.reg())) {
    throw Error(ErrorCode::kRegisterMismatch, "fidelity across different registers");
  }
  const auto& basis = rho.basis();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) v(static_cast<Eigen::Index>(i)) = psi.amplitude(basis[i]);
  return (v.adjoint() * rho.matrix() * v)(0, 0).real();
}

}  // namespace fockbell
