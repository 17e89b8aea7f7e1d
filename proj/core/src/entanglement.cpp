// Copyright 2026 The xxquench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xxq/entanglement.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace xxq {

Eigen::Matrix4cd TwoSpinXState::dense() const {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = uu;
  m(1, 1) = ud;
  m(2, 2) = du;
  m(3, 3) = dd;
  m(1, 2) = coherence;
  m(2, 1) = std::conj(coherence);
  return m;
}

void TwoSpinXState::validate() const {
  for (double p : {uu, ud, du, dd})
    if (!(p >= -kStateTolerance)) throw std::domain_error("negative population in X state");
  if (std::abs(uu + ud + du + dd - 1.0) > kStateTolerance)
    throw std::domain_error("X state populations do not sum to 1");
  if (std::norm(coherence) > ud * du + kStateTolerance)
    throw std::domain_error("X state coherence violates positivity");
}

namespace {

TwoSpinXState populations(const CorrelationMatrix& c) {
  const int n = c.sites();
  const double alpha = c.values(0, 0).real();
  const double beta = c.values(n - 1, n - 1).real();
  const double g2 = std::norm(c.values(0, n - 1));
  TwoSpinXState rho;
  rho.uu = alpha * beta - g2;
  rho.ud = alpha * (1.0 - beta) + g2;
  rho.du = beta * (1.0 - alpha) + g2;
  rho.dd = (1.0 - alpha) * (1.0 - beta) - g2;
  return rho;
}

void check_end_pair_inputs(int sites, const InitialStateSpec& init) {
  if (sites != init.sites) throw std::invalid_argument("correlations and initial state differ");
  if (sites < 2) throw std::invalid_argument("end pair needs at least two sites");
}

}  // namespace

TwoSpinXState end_pair_state(const CorrelationMatrix& correlations,
                             const InitialStateSpec& init) {
  check_end_pair_inputs(correlations.sites(), init);
  TwoSpinXState rho = populations(correlations);
  // Every supported initial state is a parity eigenstate with P = (-1)^M.
  const double sign = (init.particles % 2 == 0) ? -1.0 : 1.0;
  rho.coherence = sign * std::conj(correlations.values(0, correlations.sites() - 1));
  return rho;
}

TwoSpinXState end_pair_state(const Spectrum& spectrum, const InitialStateSpec& init, double t) {
  const CorrelationMatrix c = quench_correlations(spectrum, init, t);
  if (init.kind != InitialState::BellSeries) return end_pair_state(c, init);

  check_end_pair_inputs(c.sites(), init);
  const Propagator f = propagator(spectrum, t);
  const int n = c.sites();
  // delta = sum_{l,m} conj(f_{1,l}) f_{N,m} <c_m c_l^dag P>.
  const cplx delta =
      (f.amplitudes.row(0).conjugate() * init.string_table.cast<cplx>().transpose() *
       f.amplitudes.row(n - 1).transpose())(0);
  TwoSpinXState rho = populations(c);
  rho.coherence = std::conj(delta);
  return rho;
}

TwoSpinXState neel_end_pair_state(const EndpointSpectrum& spectrum, double t) {
  const int n = spectrum.sites();
  if (n < 2) throw std::invalid_argument("end pair needs at least two sites");
  const EndpointAmplitudes f = endpoint_amplitudes(spectrum, 2.0 * t);
  const double last_sign = (n % 2 == 1) ? 1.0 : -1.0;
  CorrelationMatrix c;
  c.values = Eigen::MatrixXcd::Zero(n, n);
  c.values(0, 0) = 0.5 * (1.0 + f.first_return.real());
  c.values(n - 1, n - 1) = 0.5 * (1.0 + last_sign * f.last_return.real());
  c.values(0, n - 1) = 0.5 * f.transfer;
  c.values(n - 1, 0) = 0.5 * last_sign * f.transfer;
  c.time = t;
  TwoSpinXState rho = populations(c);
  const int particles = (n + 1) / 2;
  rho.coherence = ((particles % 2 == 0) ? -1.0 : 1.0) * std::conj(c.values(0, n - 1));
  return rho;
}

double fully_entangled_fraction(const TwoSpinXState& rho) {
  rho.validate();
  return std::max(0.5 * (rho.uu + rho.dd), 0.5 * (rho.ud + rho.du) + std::abs(rho.coherence));
}

double fully_entangled_fraction(const Eigen::Matrix4cd& rho) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance)
    throw std::domain_error("density matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > kStateTolerance)
    throw std::domain_error("density matrix trace is not 1");

  // Magic basis: maximally entangled states are exactly the real unit
  // combinations of these vectors, up to a global phase.
  const double r = std::numbers::sqrt2 / 2.0;
  const cplx i{0.0, 1.0};
  Eigen::Matrix4cd magic;
  magic << r, 0, 0, r,
           i * r, 0, 0, -i * r,
           0, i * r, i * r, 0,
           0, r, -r, 0;
  const Eigen::Matrix4cd in_magic = magic.conjugate() * rho * magic.transpose();
  const Eigen::Matrix4d real_part = in_magic.real();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(real_part, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(3);
}

double end_to_end_F_closed_form(double amplitude) {
  if (!(amplitude >= 0.0 && amplitude <= 1.0 + 1e-12))
    throw std::invalid_argument("transfer amplitude must lie in [0, 1]");
  return 0.25 * (1.0 + amplitude) * (1.0 + amplitude);
}

NestedBellTarget nested_bell_target(int sites) {
  if (sites < 2) throw std::invalid_argument("a chain needs at least 2 sites");
  NestedBellTarget target;
  target.sites = sites;
  for (int k = 0; k < sites / 2; ++k) target.pairs.emplace_back(k, sites - 1 - k);
  if (sites % 2 == 0) {
    target.phase = cplx{0.0, -1.0};
  } else {
    target.phase = 1.0;
    target.center = sites / 2;
  }
  return target;
}

PureState NestedBellTarget::state() const {
  if (sites > kMaxPureStateSites)
    throw SizeLimitError("target state is limited to " + std::to_string(kMaxPureStateSites) +
                         " sites");
  PureState psi{sites, Eigen::VectorXcd::Zero(Eigen::Index{1} << sites)};
  const auto n_pairs = static_cast<int>(pairs.size());
  const double amp = std::pow(0.5, 0.5 * n_pairs);
  BasisIndex base = center ? (BasisIndex{1} << *center) : 0;
  for (BasisIndex choice = 0; choice < (BasisIndex{1} << n_pairs); ++choice) {
    BasisIndex b = base;
    cplx a = amp;
    for (int k = 0; k < n_pairs; ++k) {
      if ((choice >> k) & 1U) {
        b |= BasisIndex{1} << pairs[k].second;
        a *= phase;
      } else {
        b |= BasisIndex{1} << pairs[k].first;
      }
    }
    psi.amplitudes(b) = a;
  }
  return psi;
}

double bell_generation_fidelity(int sites) {
  if (sites > kMaxPureStateSites)
    throw SizeLimitError("Bell fidelity needs the exact engine (N <= " +
                         std::to_string(kMaxPureStateSites) + ")");
  const CouplingProfile profile = build_profile(ProfileKind::FullyEngineered, sites);
  const SpinHamiltonian h = build_spin_hamiltonian(xx_spec(hopping_matrix(profile)));
  const SpectralEvolver evolver(h, initial_state(InitialState::Neel, sites));
  const double half_mirror_time = std::numbers::pi * sites / 4.0;
  const PureState psi = evolver.at(half_mirror_time);
  return std::norm(nested_bell_target(sites).state().amplitudes.dot(psi.amplitudes));
}

double pseudo_pure_F(double zeta, double F_pure) {
  if (!(zeta >= 0.0 && zeta <= 1.0)) throw std::invalid_argument("zeta must lie in [0, 1]");
  if (!(F_pure >= 0.0 && F_pure <= 1.0)) throw std::invalid_argument("F must lie in [0, 1]");
  return 0.25 * zeta + (1.0 - zeta) * F_pure;
}

std::vector<double> mirror_pair_fef(const PureState& psi, int chain_sites) {
  if (chain_sites < 2 || chain_sites > psi.sites)
    throw std::invalid_argument("chain does not fit in the register");
  std::vector<double> out;
  for (int k = 0; k < chain_sites / 2; ++k)
    out.push_back(fully_entangled_fraction(reduced_density(psi, k, chain_sites - 1 - k)));
  return out;
}

std::vector<double> mirror_pair_fef(const DensityMatrix& rho, int chain_sites) {
  if (chain_sites < 2 || chain_sites > rho.sites)
    throw std::invalid_argument("chain does not fit in the register");
  std::vector<double> out;
  for (int k = 0; k < chain_sites / 2; ++k)
    out.push_back(fully_entangled_fraction(reduced_density(rho, k, chain_sites - 1 - k)));
  return out;
}

}  // namespace xxq
