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

#ifndef XXQ_CHAIN_MODEL_HPP
#define XXQ_CHAIN_MODEL_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace xxq {

// Sites are 0-based throughout the library. Site k here is site k+1 in the
// usual 1-based chain notation, so the mirror partner of k is N-1-k.

enum class ProfileKind { Uniform, FullyEngineered, MinimallyEngineered };

/// CLI spelling: "uniform", "pst", "minimal".
std::string_view to_string(ProfileKind kind);
ProfileKind parse_profile_kind(std::string_view name);

/**
  Adimensional nearest-neighbour couplings j_n of an XX chain, in units of J.

  couplings[k] couples sites k and k+1. The boundary value is only set for
  minimally engineered chains, where it is the tuned end coupling j'.
*/
struct CouplingProfile {
  ProfileKind kind = ProfileKind::Uniform;
  int sites = 0;
  std::vector<double> couplings;
  std::optional<double> boundary;
};

/// Throws std::invalid_argument for sites < 2 or a boundary that is missing,
/// unexpected, or outside (0, 1].
CouplingProfile build_profile(ProfileKind kind, int sites,
                              std::optional<double> boundary = std::nullopt);

/// Checks the CouplingProfile invariants; throws std::invalid_argument.
void validate(const CouplingProfile& profile);

/**
  Real symmetric single-particle hopping matrix A (units of J), zero diagonal.
  For clean chains A(k, k+1) = j_k and `tridiagonal` is set; long-range and
  two-chain perturbations produce dense matrices with the flag cleared.
*/
struct HoppingMatrix {
  Eigen::MatrixXd entries;
  bool tridiagonal = true;

  int sites() const { return static_cast<int>(entries.rows()); }
};

HoppingMatrix hopping_matrix(const CouplingProfile& profile);

/// diag((-1)^k), the sublattice sign matrix (+1 on the first site).
Eigen::VectorXd sublattice_signs(int sites);

// Noise models of the three experimental platforms.

/// Imperfectly filtered dipolar couplings (NMR).
struct NmrFilterNoise {
  double epsilon = 0.0;
  bool two_chain = true;
  double interchain_spacing = 3.0;
  std::uint64_t seed = 0;
};

/// Coulomb-mediated long-range couplings (ion traps); fully set by the profile.
struct IonLongRangeNoise {};

/// Local sigma^z dephasing with physical rate J * gamma.
struct DephasingNoise {
  double gamma = 0.0;
};

/// Spurious sigma^z sigma^z term with coefficient jz_ratio * j_n on bond n.
struct XxzAnisotropyNoise {
  double jz_ratio = 0.0;
};

using NoiseConfig =
    std::variant<NmrFilterNoise, IonLongRangeNoise, DephasingNoise, XxzAnisotropyNoise>;

/// Throws std::invalid_argument on negative rates or spacings.
void validate(const NoiseConfig& config);

/**
  Clean profile plus epsilon * b_nm * F_nm over every pair of spins.

  b_nm = 1/d_nm^3 is the dipolar amplitude for unit intrachain spacing and
  F_nm = F_mn is drawn uniformly from [-1, 1] with the configured seed. With
  two_chain, a second identical chain runs parallel at `interchain_spacing`,
  aligned site to site, and the result is 2N x 2N: indices [0, N) are the
  chain being read out, [N, 2N) its neighbour.
*/
HoppingMatrix nmr_perturbed_matrix(const CouplingProfile& profile,
                                   const NmrFilterNoise& config);

/// Squared local trap frequencies w_n^2 with (w_n^2 w_{n+1}^2)^{-1} = j_n,
/// closed by mirror symmetry. Requires a mirror-symmetric profile.
std::vector<double> trap_frequencies_squared(const CouplingProfile& profile);

/// j_nm = (w_n^2 w_m^2 |n-m|^3)^{-1}; nearest-neighbour entries reproduce j_n.
HoppingMatrix ion_longrange_matrix(const CouplingProfile& profile);

enum class SpinModel { XX, DoubleQuantum, XXZ };

/**
  Full spin-1/2 Hamiltonian description, in units of J.

  XX:            (1/2) sum_{n<m} A_nm (X_n X_m + Y_n Y_m)
  DoubleQuantum: (1/2) sum_{n<m} A_nm (X_n X_m - Y_n Y_m) - B sum_n Z_n
  XXZ:           XX + (1/2) sum_n zz_n Z_n Z_{n+1}
*/
struct SpinHamiltonianSpec {
  SpinModel model = SpinModel::XX;
  Eigen::MatrixXd couplings;
  std::vector<double> zz;
  double field = 0.0;

  int sites() const { return static_cast<int>(couplings.rows()); }
};

SpinHamiltonianSpec xx_spec(const HoppingMatrix& hopping);
SpinHamiltonianSpec double_quantum_spec(const HoppingMatrix& hopping, double field = 0.0);
SpinHamiltonianSpec xxz_spec(const HoppingMatrix& hopping, std::vector<double> zz);

/// XXZ with zz_n = ratio * A(n, n+1), the optical-lattice imperfection model.
SpinHamiltonianSpec xxz_spec(const HoppingMatrix& hopping, const XxzAnisotropyNoise& noise);

}  // namespace xxq

#endif  // XXQ_CHAIN_MODEL_HPP
