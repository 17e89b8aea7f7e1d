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

#ifndef XXQ_FREE_FERMION_HPP
#define XXQ_FREE_FERMION_HPP

#include "xxq/chain_model.hpp"

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <string_view>

namespace xxq {

using cplx = std::complex<double>;

/**
  Eigen-decomposition of a hopping matrix: modes.row(k) is the eigenvector
  with energy energies(k), energies ascending, so that modes * A * modes^T is
  diagonal. `quadratic` records whether the spin model behind A maps onto free
  fermions (nearest-neighbour couplings only).
*/
struct Spectrum {
  Eigen::MatrixXd modes;
  Eigen::VectorXd energies;
  bool quadratic = true;

  int sites() const { return static_cast<int>(energies.size()); }
};

/// Throws std::invalid_argument when A is not symmetric.
Spectrum diagonalize(const HoppingMatrix& hopping);

/// Single-particle amplitudes f(t) = exp(-i t A).
struct Propagator {
  Eigen::MatrixXcd amplitudes;
  double time = 0.0;

  int sites() const { return static_cast<int>(amplitudes.rows()); }
  cplx operator()(int target, int source) const { return amplitudes(target, source); }
};

Propagator propagator(const Spectrum& spectrum, double t);

/// f_{target,source}(t) without building the full matrix; O(N).
cplx transfer_amplitude(const Spectrum& spectrum, int target, int source, double t);

/**
  Energies plus the first and last component of every eigenvector of a
  tridiagonal hopping matrix: all that end-to-end amplitudes need. Computed by
  implicit QL sweeps that rotate only those two rows, O(N^2) instead of the
  O(N^3) full eigenvector accumulation.
*/
struct EndpointSpectrum {
  Eigen::VectorXd energies;
  Eigen::VectorXd first;
  Eigen::VectorXd last;

  int sites() const { return static_cast<int>(energies.size()); }
};

/// Throws std::invalid_argument for non-tridiagonal input.
EndpointSpectrum endpoint_spectrum(const HoppingMatrix& hopping);

/// f_{0,0}, f_{N-1,N-1} and f_{N-1,0} at time t.
struct EndpointAmplitudes {
  cplx first_return;
  cplx last_return;
  cplx transfer;
};

EndpointAmplitudes endpoint_amplitudes(const EndpointSpectrum& spectrum, double t);

enum class InitialState { Neel, FmDoubleQuantum, BellSeries };

/// CLI spelling: "neel", "fm-dq", "bell-series".
std::string_view to_string(InitialState kind);
InitialState parse_initial_state(std::string_view name);

/**
  Quadratic data of an initial product state.

  correlations(n, m) = <c_n^dag c_m> at t = 0. `particles` is the number of up
  spins M. For BellSeries, `string_table(l, m)` holds <c_l c_m^dag P> with
  P = prod_i (-Z_i), which fixes the end-pair coherence.

  FmDoubleQuantum is described in the frame rotated by X on every odd (0-based)
  site, where it coincides with the Neel quench under the XX chain. Reduced
  states built from it are related to the physical ones by local unitaries.
*/
struct InitialStateSpec {
  InitialState kind = InitialState::Neel;
  int sites = 0;
  int particles = 0;
  Eigen::MatrixXcd correlations;
  Eigen::MatrixXd string_table;
};

/// Throws std::invalid_argument for sites < 2 or odd sites with BellSeries.
InitialStateSpec initial_state_spec(InitialState kind, int sites);

/// C(t)(n, m) = <c_n^dag(t) c_m(t)>.
struct CorrelationMatrix {
  Eigen::MatrixXcd values;
  InitialState initial = InitialState::Neel;
  double time = 0.0;

  int sites() const { return static_cast<int>(values.rows()); }
  double particle_number() const { return values.trace().real(); }
};

/// Wick evolution C(t) = conj(f) C(0) f^T. Rejects non-quadratic spectra.
CorrelationMatrix quench_correlations(const Spectrum& spectrum, const InitialStateSpec& init,
                                      double t);

/// Neel correlations from a single walk at twice the time:
/// C(t) = [I + S f(2t)] / 2 with S the sublattice signs. Tridiagonal A only.
CorrelationMatrix neel_correlations_from_walk(const Spectrum& spectrum, double t);

/// Contiguous block of sites [first, first + size).
struct SiteRange {
  int first = 0;
  int size = 0;
};

/// The half-chain block [0, N/2).
inline SiteRange half_chain(int sites) { return {0, sites / 2}; }

/// Eigenvalue tolerance for the entropy: values outside [0, 1] by less than
/// this are clamped, larger excursions throw std::domain_error.
inline constexpr double kOccupationTolerance = 1e-9;

/// Von Neumann entropy of a block in bits, from the eigenvalues of the
/// block's correlation submatrix.
double block_entropy(const CorrelationMatrix& correlations, SiteRange block);

/// det f_{targets, sources}: the amplitude that particles starting on
/// `sources` are found on `targets`. Both lists strictly increasing.
cplx multiparticle_amplitude(const Propagator& f, std::span<const int> targets,
                             std::span<const int> sources);

/**
  Small Wigner d-matrix d^{s}_{m'm}(beta) for s = (dim - 1)/2, indexed by
  m + s. Built by coupling one spin-1/2 at a time, so every step is a
  contraction with a unitary 2x2 block and no factorial cancellation occurs.
*/
Eigen::MatrixXd wigner_small_d(int dim, double beta);

/// Propagator of the fully engineered chain as the rotation of a spin
/// (N-1)/2: f(t) = D^{(s)}(pi/2, -2t/N, -pi/2).
Eigen::MatrixXcd wigner_d_propagator(int sites, double t);

/// Single entry f_{target,source}(t) of the matrix above.
cplx wigner_d_propagator(int sites, double t, int target, int source);

}  // namespace xxq

#endif  // XXQ_FREE_FERMION_HPP
