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

#include "xxq/free_fermion.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace xxq {

Spectrum diagonalize(const HoppingMatrix& hopping) {
  const Eigen::MatrixXd& a = hopping.entries;
  if (a.rows() != a.cols() || a.rows() == 0)
    throw std::invalid_argument("hopping matrix must be square and non-empty");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("hopping matrix must be symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  if (hopping.tridiagonal && a.rows() > 1) {
    Eigen::VectorXd diag = a.diagonal();
    Eigen::VectorXd off = a.diagonal(1);
    solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  } else {
    solver.compute(a, Eigen::ComputeEigenvectors);
  }
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hopping matrix diagonalization did not converge");

  return {solver.eigenvectors().transpose(), solver.eigenvalues(), hopping.tridiagonal};
}

Propagator propagator(const Spectrum& spectrum, double t) {
  const Eigen::ArrayXd phase = -t * spectrum.energies.array();
  const Eigen::MatrixXd& g = spectrum.modes;
  // f = g^T diag(exp(-i E t)) g, split into two real products.
  const Eigen::MatrixXd re = g.transpose() * phase.cos().matrix().asDiagonal() * g;
  const Eigen::MatrixXd im = g.transpose() * phase.sin().matrix().asDiagonal() * g;
  Propagator f;
  f.time = t;
  f.amplitudes.resize(re.rows(), re.cols());
  f.amplitudes.real() = re;
  f.amplitudes.imag() = im;
  return f;
}

cplx transfer_amplitude(const Spectrum& spectrum, int target, int source, double t) {
  const int n = spectrum.sites();
  if (target < 0 || target >= n || source < 0 || source >= n)
    throw std::out_of_range("site index out of range");
  double re = 0.0;
  double im = 0.0;
  for (int k = 0; k < n; ++k) {
    const double w = spectrum.modes(k, target) * spectrum.modes(k, source);
    const double phase = -spectrum.energies(k) * t;
    re += w * std::cos(phase);
    im += w * std::sin(phase);
  }
  return {re, im};
}

EndpointSpectrum endpoint_spectrum(const HoppingMatrix& hopping) {
  if (!hopping.tridiagonal)
    throw std::invalid_argument("endpoint spectrum needs a tridiagonal hopping matrix");
  const int n = hopping.sites();
  if (n < 1) throw std::invalid_argument("empty hopping matrix");

  std::vector<double> d(n);
  std::vector<double> e(n, 0.0);
  for (int i = 0; i < n; ++i) d[i] = hopping.entries(i, i);
  for (int i = 0; i + 1 < n; ++i) e[i] = hopping.entries(i, i + 1);
  // Rows 0 and n-1 of the accumulated rotation matrix.
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(2, n);
  z(0, 0) = 1.0;
  z(1, n - 1) = 1.0;

  // Implicit QL with Wilkinson-type shifts.
  for (int l = 0; l < n; ++l) {
    int iterations = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m == l) break;
      if (++iterations > 60) throw std::runtime_error("QL iteration did not converge");

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      int i = m - 1;
      bool underflow = false;
      for (; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        for (int k = 0; k < 2; ++k) {
          f = z(k, i + 1);
          z(k, i + 1) = s * z(k, i) + c * f;
          z(k, i) = c * z(k, i) - s * f;
        }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
  EndpointSpectrum out{Eigen::VectorXd(n), Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (int k = 0; k < n; ++k) {
    out.energies(k) = d[order[k]];
    out.first(k) = z(0, order[k]);
    out.last(k) = z(1, order[k]);
  }
  return out;
}

EndpointAmplitudes endpoint_amplitudes(const EndpointSpectrum& spectrum, double t) {
  EndpointAmplitudes a{0.0, 0.0, 0.0};
  for (int k = 0; k < spectrum.sites(); ++k) {
    const cplx phase = std::polar(1.0, -spectrum.energies(k) * t);
    const double u = spectrum.first(k);
    const double v = spectrum.last(k);
    a.first_return += u * u * phase;
    a.last_return += v * v * phase;
    a.transfer += u * v * phase;
  }
  return a;
}

std::string_view to_string(InitialState kind) {
  switch (kind) {
    case InitialState::Neel:
      return "neel";
    case InitialState::FmDoubleQuantum:
      return "fm-dq";
    case InitialState::BellSeries:
      return "bell-series";
  }
  return "unknown";
}

InitialState parse_initial_state(std::string_view name) {
  if (name == "neel") return InitialState::Neel;
  if (name == "fm-dq" || name == "fm") return InitialState::FmDoubleQuantum;
  if (name == "bell-series" || name == "bell") return InitialState::BellSeries;
  throw std::invalid_argument("unknown initial state '" + std::string(name) + "'");
}

InitialStateSpec initial_state_spec(InitialState kind, int sites) {
  if (sites < 2) throw std::invalid_argument("a chain needs at least 2 sites");
  InitialStateSpec spec;
  spec.kind = kind;
  spec.sites = sites;
  spec.correlations = Eigen::MatrixXcd::Zero(sites, sites);

  switch (kind) {
    case InitialState::Neel:
    case InitialState::FmDoubleQuantum:
      for (int k = 0; k < sites; k += 2) spec.correlations(k, k) = 1.0;
      spec.particles = (sites + 1) / 2;
      break;
    case InitialState::BellSeries: {
      if (sites % 2 != 0) throw std::invalid_argument("a series of Bell pairs needs even N");
      spec.particles = sites / 2;
      const double parity = (spec.particles % 2 == 0) ? 1.0 : -1.0;
      spec.string_table = Eigen::MatrixXd::Zero(sites, sites);
      for (int k = 0; k < sites; k += 2) {
        spec.correlations(k, k) = 0.5;
        spec.correlations(k + 1, k + 1) = 0.5;
        spec.correlations(k, k + 1) = -0.5;
        spec.correlations(k + 1, k) = -0.5;
        spec.string_table(k, k) = 0.5 * parity;
        spec.string_table(k + 1, k + 1) = 0.5 * parity;
        spec.string_table(k, k + 1) = 0.5 * parity;
        spec.string_table(k + 1, k) = 0.5 * parity;
      }
      break;
    }
  }
  return spec;
}

CorrelationMatrix quench_correlations(const Spectrum& spectrum, const InitialStateSpec& init,
                                      double t) {
  if (!spectrum.quadratic)
    throw std::invalid_argument(
        "long-range spin couplings are not quadratic in fermions; use the exact engine");
  if (init.sites != spectrum.sites())
    throw std::invalid_argument("initial state and spectrum sizes differ");
  const Propagator f = propagator(spectrum, t);
  CorrelationMatrix c;
  c.initial = init.kind;
  c.time = t;
  c.values = f.amplitudes.conjugate() * init.correlations * f.amplitudes.transpose();
  return c;
}

CorrelationMatrix neel_correlations_from_walk(const Spectrum& spectrum, double t) {
  if (!spectrum.quadratic)
    throw std::invalid_argument("the walk identity needs a nearest-neighbour chain");
  const Propagator f = propagator(spectrum, 2.0 * t);
  const int n = spectrum.sites();
  CorrelationMatrix c;
  c.initial = InitialState::Neel;
  c.time = t;
  c.values = sublattice_signs(n).cast<cplx>().asDiagonal() * f.amplitudes;
  c.values.diagonal().array() += 1.0;
  c.values *= 0.5;
  return c;
}

double block_entropy(const CorrelationMatrix& correlations, SiteRange block) {
  if (block.size <= 0) throw std::invalid_argument("block must be non-empty");
  if (block.first < 0 || block.first + block.size > correlations.sites())
    throw std::out_of_range("block outside the chain");

  const Eigen::MatrixXcd sub =
      correlations.values.block(block.first, block.first, block.size, block.size);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sub, Eigen::EigenvaluesOnly);

  double entropy = 0.0;
  for (double lambda : solver.eigenvalues()) {
    if (lambda < -kOccupationTolerance || lambda > 1.0 + kOccupationTolerance)
      throw std::domain_error("correlation eigenvalue outside [0, 1]: " +
                              std::to_string(lambda));
    lambda = std::clamp(lambda, 0.0, 1.0);
    for (double p : {lambda, 1.0 - lambda})
      if (p > 0.0) entropy -= p * std::log2(p);
  }
  return entropy;
}

namespace {

void check_site_list(std::span<const int> sites, int n) {
  for (std::size_t k = 0; k < sites.size(); ++k) {
    if (sites[k] < 0 || sites[k] >= n) throw std::out_of_range("site index out of range");
    if (k > 0 && sites[k] <= sites[k - 1])
      throw std::invalid_argument("site lists must be strictly increasing");
  }
}

}  // namespace

cplx multiparticle_amplitude(const Propagator& f, std::span<const int> targets,
                             std::span<const int> sources) {
  if (targets.size() != sources.size())
    throw std::invalid_argument("target and source sets differ in size");
  check_site_list(targets, f.sites());
  check_site_list(sources, f.sites());
  const auto k = static_cast<Eigen::Index>(targets.size());
  if (k == 0) return 1.0;

  Eigen::MatrixXcd sub(k, k);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c) sub(r, c) = f.amplitudes(targets[r], sources[c]);
  return sub.partialPivLu().determinant();
}

Eigen::MatrixXd wigner_small_d(int dim, double beta) {
  if (dim < 1) throw std::invalid_argument("Wigner matrix dimension must be >= 1");
  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);

  Eigen::MatrixXd d = Eigen::MatrixXd::Ones(1, 1);
  // Step from spin j - 1/2 (size 2j) to spin j (size 2j + 1) using
  // |j m> = A_m |j-1/2, m-1/2>|up> + B_m |j-1/2, m+1/2>|down>.
  for (int size = 2; size <= dim; ++size) {
    const int two_j = size - 1;
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(size, size);
    auto old = [&](int r, int col) {
      return (r < 0 || col < 0 || r >= size - 1 || col >= size - 1) ? 0.0 : d(r, col);
    };
    for (int r = 0; r < size; ++r) {
      const double ar = std::sqrt(static_cast<double>(r) / two_j);
      const double br = std::sqrt(static_cast<double>(two_j - r) / two_j);
      for (int col = 0; col < size; ++col) {
        const double ac = std::sqrt(static_cast<double>(col) / two_j);
        const double bc = std::sqrt(static_cast<double>(two_j - col) / two_j);
        next(r, col) = ar * ac * c * old(r - 1, col - 1) - ar * bc * s * old(r - 1, col) +
                       br * ac * s * old(r, col - 1) + br * bc * c * old(r, col);
      }
    }
    d = std::move(next);
  }
  return d;
}

Eigen::MatrixXcd wigner_d_propagator(int sites, double t) {
  if (sites < 1) throw std::invalid_argument("chain needs at least one site");
  const Eigen::MatrixXd d = wigner_small_d(sites, -2.0 * t / sites);
  // D_{m'm}(pi/2, beta, -pi/2) = exp(-i (m' - m) pi/2) d_{m'm}(beta).
  static constexpr cplx kPhase[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  Eigen::MatrixXcd f(sites, sites);
  for (int r = 0; r < sites; ++r)
    for (int c = 0; c < sites; ++c) f(r, c) = kPhase[((r - c) % 4 + 4) % 4] * d(r, c);
  return f;
}

cplx wigner_d_propagator(int sites, double t, int target, int source) {
  if (target < 0 || target >= sites || source < 0 || source >= sites)
    throw std::out_of_range("site index out of range");
  return wigner_d_propagator(sites, t)(target, source);
}

}  // namespace xxq
