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

#ifndef XXQ_EXACT_ENGINE_HPP
#define XXQ_EXACT_ENGINE_HPP

#include "xxq/chain_model.hpp"
#include "xxq/errors.hpp"
#include "xxq/free_fermion.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cstdint>
#include <functional>
#include <vector>

namespace xxq {

// Computational basis: bit k of a basis index is site k, set bit = spin up
// (an occupied Jordan-Wigner fermion).
using BasisIndex = std::uint32_t;

inline constexpr int kMaxPureStateSites = 14;
inline constexpr int kMaxDensitySites = 10;

/// Real symmetric Hamiltonian on the full 2^N space (all models here are
/// real in the Z basis).
struct SpinHamiltonian {
  int sites = 0;
  SpinModel model = SpinModel::XX;
  Eigen::SparseMatrix<double, Eigen::RowMajor> matrix;

  Eigen::Index dimension() const { return matrix.rows(); }
};

/// Throws SizeLimitError above kMaxPureStateSites.
SpinHamiltonian build_spin_hamiltonian(const SpinHamiltonianSpec& spec);

bool conserves_magnetization(const SpinHamiltonian& h);
bool conserves_parity(const SpinHamiltonian& h);

struct PureState {
  int sites = 0;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
};

/// Neel |up down up ...>, FmDoubleQuantum |up up ...>, BellSeries singlets on
/// (2k, 2k+1). Throws for odd N with BellSeries.
PureState initial_state(InitialState kind, int sites);

/// exp(-i H t) psi by Lanczos steps with local error control.
PureState evolve_state(const SpinHamiltonian& h, const PureState& psi, double t,
                       double tolerance = 1e-12);

/**
  Exact evolution of one initial state at many times.

  The Hamiltonian is restricted to the subspace reachable from the support of
  psi0 (a magnetization or parity sector for the models here) and diagonalized
  once; each call to at() is then a dense O(d^2) product.
*/
class SpectralEvolver {
 public:
  SpectralEvolver(const SpinHamiltonian& h, const PureState& psi0);

  PureState at(double t) const;
  Eigen::Index subspace_dimension() const { return static_cast<Eigen::Index>(basis_.size()); }
  const Eigen::VectorXd& energies() const { return energies_; }

 private:
  int sites_;
  std::vector<BasisIndex> basis_;
  Eigen::MatrixXd vectors_;
  Eigen::VectorXd energies_;
  Eigen::VectorXcd weights_;
};

/// Smallest set of basis states containing `seed` and closed under h.
std::vector<BasisIndex> reachable_subspace(const SpinHamiltonian& h,
                                           std::vector<BasisIndex> seed);

/**
  Density matrix supported on a subset of basis states: values(a, b) is
  <basis[a]| rho |basis[b]>, everything outside the subset is zero.
*/
struct DensityMatrix {
  int sites = 0;
  std::vector<BasisIndex> basis;
  Eigen::MatrixXcd values;

  static DensityMatrix from_pure(const PureState& psi, double cutoff = 0.0);
  static DensityMatrix full(int sites, Eigen::MatrixXcd values);

  cplx trace() const { return values.trace(); }
  Eigen::MatrixXcd to_full() const;
};

struct LindbladOptions {
  double max_step = 0.005;
  // Richardson estimate from a second run at twice the step.
  bool error_check = true;
  double tolerance = 1e-7;
};

/// Called after every step (and once at t = 0).
using LindbladObserver =
    std::function<void(int step, double time, const DensityMatrix& rho)>;

/**
  d rho/dt = -i[H, rho] + gamma sum_i (Z_i rho Z_i - rho), fourth-order
  Runge-Kutta with `steps` equal steps (raised so that t/steps <= max_step).
  Throws NumericalError when the step-doubling estimate exceeds tolerance.
*/
DensityMatrix evolve_lindblad(const SpinHamiltonian& h, const DensityMatrix& rho0,
                              double gamma, double t, int steps,
                              const LindbladObserver& observer = {},
                              const LindbladOptions& options = {});

/// Two-site reduced density matrix in the basis {uu, ud, du, dd}, first spin
/// is site `first`.
Eigen::Matrix4cd reduced_density(const PureState& psi, int first, int second);
Eigen::Matrix4cd reduced_density(const DensityMatrix& rho, int first, int second);

/// <c_n^dag c_m> with explicit Jordan-Wigner strings prod_{k<n}(-Z_k).
cplx fermion_correlation(const PureState& psi, int n, int m);
Eigen::MatrixXcd fermion_correlation_matrix(const PureState& psi);

/// Von Neumann entropy in bits of a contiguous block.
double entanglement_entropy(const PureState& psi, SiteRange block);

/// <sum_k Z_k> and <prod_k (-Z_k)>.
double total_magnetization(const PureState& psi);
double fermion_parity(const PureState& psi);

/// prod_{k in sites} X_k psi.
PureState apply_x(const PureState& psi, const std::vector<int>& sites);

}  // namespace xxq

#endif  // XXQ_EXACT_ENGINE_HPP
