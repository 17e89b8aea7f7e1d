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

#ifndef XXQ_ENTANGLEMENT_HPP
#define XXQ_ENTANGLEMENT_HPP

#include "xxq/exact_engine.hpp"
#include "xxq/free_fermion.hpp"

#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <vector>

namespace xxq {

inline constexpr double kStateTolerance = 1e-9;

/**
  Two-qubit state with X structure in the basis {uu, ud, du, dd}: four
  populations and the single coherence rho(ud, du). This is the form of the
  end-pair state after a number-conserving quench.
*/
struct TwoSpinXState {
  double uu = 0.0;
  double ud = 0.0;
  double du = 0.0;
  double dd = 0.0;
  cplx coherence = 0.0;

  Eigen::Matrix4cd dense() const;
  /// Throws std::domain_error if not a density matrix (kStateTolerance).
  void validate() const;
};

/**
  rho_{1,N} from the quench correlations: alpha = C(0,0), beta = C(N-1,N-1),
  gamma = C(0,N-1). The coherence is (-1)^{M+1} conj(gamma) for Neel-type
  states and conj(delta) for BellSeries, with delta contracted from the
  string table.
*/
TwoSpinXState end_pair_state(const CorrelationMatrix& correlations,
                             const InitialStateSpec& init);

/// Same, from the propagator at time t (needed for the BellSeries delta).
TwoSpinXState end_pair_state(const Spectrum& spectrum, const InitialStateSpec& init, double t);

/// Neel end pair straight from the walk amplitudes at 2t:
/// alpha = [1 + f_11]/2, beta = [1 + (-1)^{N-1} f_NN]/2, gamma = f_1N/2.
TwoSpinXState neel_end_pair_state(const EndpointSpectrum& spectrum, double t);

/// max{(uu + dd)/2, (ud + du)/2 + |coherence|}.
double fully_entangled_fraction(const TwoSpinXState& rho);

/// General two-qubit fully entangled fraction: the largest eigenvalue of the
/// real part of rho in the magic basis.
double fully_entangled_fraction(const Eigen::Matrix4cd& rho);

/// (1 + |f|)^2 / 4 for the end-to-end amplitude |f| in [0, 1].
double end_to_end_F_closed_form(double amplitude);

/// F > 1/2: entanglement can be distilled.
inline bool is_purifiable(double fef) { return fef > 0.5; }

/**
  Nested Bell pairs (k, N-1-k) generated by the fully engineered chain at half
  the mirror time. Each pair is (|ud> + phase |du>)/sqrt2 with phase -i for
  even N and +1 for odd N, where the central site of an odd chain is up.
*/
struct NestedBellTarget {
  int sites = 0;
  std::vector<std::pair<int, int>> pairs;
  cplx phase = 1.0;
  std::optional<int> center;

  PureState state() const;
};

NestedBellTarget nested_bell_target(int sites);

/// |<target|exp(-i H t*/2)|Neel>|^2 on the fully engineered chain, computed
/// with the exact engine. Throws SizeLimitError above kMaxPureStateSites.
double bell_generation_fidelity(int sites);

/// zeta/4 + (1 - zeta) F_pure for the pseudo-pure initial mixture.
double pseudo_pure_F(double zeta, double F_pure);

/// F of every mirror pair (k, N-1-k), k < N/2, of a chain embedded at the
/// start of a possibly larger register.
std::vector<double> mirror_pair_fef(const PureState& psi, int chain_sites);
std::vector<double> mirror_pair_fef(const DensityMatrix& rho, int chain_sites);

}  // namespace xxq

#endif  // XXQ_ENTANGLEMENT_HPP
