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

#include "xxq/exact_engine.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace xxq {

namespace {

BasisIndex bit(int site) { return BasisIndex{1} << site; }

bool is_up(BasisIndex b, int site) { return (b >> site) & 1U; }

/// (-1)^(number of up spins on sites < site).
double string_sign(BasisIndex b, int site) {
  return (std::popcount(b & (bit(site) - 1)) % 2 == 0) ? 1.0 : -1.0;
}

void check_pure_size(int sites) {
  if (sites < 1) throw std::invalid_argument("need at least one site");
  if (sites > kMaxPureStateSites)
    throw SizeLimitError("exact engine is limited to " + std::to_string(kMaxPureStateSites) +
                         " sites, got " + std::to_string(sites));
}

void check_site(int site, int sites) {
  if (site < 0 || site >= sites) throw std::out_of_range("site index out of range");
}

/// Restriction of h to a sorted basis, as a sparse row-major matrix.
Eigen::SparseMatrix<double, Eigen::RowMajor> restrict_sparse(
    const SpinHamiltonian& h, const std::vector<BasisIndex>& basis) {
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t r = 0; r < basis.size(); ++r) {
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(h.matrix, basis[r]); it;
         ++it) {
      const auto col = static_cast<BasisIndex>(it.col());
      auto pos = std::lower_bound(basis.begin(), basis.end(), col);
      if (pos == basis.end() || *pos != col)
        throw std::logic_error("basis is not closed under the Hamiltonian");
      triplets.emplace_back(static_cast<int>(r), static_cast<int>(pos - basis.begin()),
                            it.value());
    }
  }
  const auto d = static_cast<Eigen::Index>(basis.size());
  Eigen::SparseMatrix<double, Eigen::RowMajor> m(d, d);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

void check_symmetric(const SpinHamiltonian& h) {
  const Eigen::SparseMatrix<double, Eigen::RowMajor> t = h.matrix.transpose();
  if ((h.matrix - t).norm() > 1e-12 * std::max(1.0, h.matrix.norm()))
    throw std::invalid_argument("Hamiltonian is not Hermitian");
}

}  // namespace

SpinHamiltonian build_spin_hamiltonian(const SpinHamiltonianSpec& spec) {
  const int n = spec.sites();
  check_pure_size(n);
  if (spec.couplings.cols() != n) throw std::invalid_argument("coupling matrix must be square");
  if ((spec.couplings - spec.couplings.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("coupling matrix must be symmetric");
  if (spec.model == SpinModel::XXZ && static_cast<int>(spec.zz.size()) != n - 1)
    throw std::invalid_argument("XXZ needs one zz coefficient per bond");

  const BasisIndex dim = bit(n);
  std::vector<Eigen::Triplet<double>> triplets;

  struct Bond {
    int a, b;
    double value;
  };
  std::vector<Bond> bonds;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (spec.couplings(a, b) != 0.0) bonds.push_back({a, b, spec.couplings(a, b)});

  for (BasisIndex s = 0; s < dim; ++s) {
    double diag = 0.0;
    for (const Bond& bond : bonds) {
      const bool same = is_up(s, bond.a) == is_up(s, bond.b);
      // (1/2)(XX + YY) flips anti-aligned pairs; (1/2)(XX - YY) flips aligned ones.
      const bool flips = spec.model == SpinModel::DoubleQuantum ? same : !same;
      if (flips) triplets.emplace_back(s ^ bit(bond.a) ^ bit(bond.b), s, bond.value);
    }
    if (spec.model == SpinModel::XXZ) {
      for (int k = 0; k + 1 < n; ++k) {
        const double zz = (is_up(s, k) == is_up(s, k + 1)) ? 1.0 : -1.0;
        diag += 0.5 * spec.zz[k] * zz;
      }
    }
    if (spec.model == SpinModel::DoubleQuantum && spec.field != 0.0) {
      const int up = std::popcount(s);
      diag -= spec.field * (2 * up - n);
    }
    if (diag != 0.0) triplets.emplace_back(s, s, diag);
  }

  SpinHamiltonian h;
  h.sites = n;
  h.model = spec.model;
  h.matrix.resize(dim, dim);
  h.matrix.setFromTriplets(triplets.begin(), triplets.end());
  h.matrix.makeCompressed();
  return h;
}

bool conserves_magnetization(const SpinHamiltonian& h) {
  for (Eigen::Index r = 0; r < h.matrix.outerSize(); ++r)
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(h.matrix, r); it; ++it)
      if (it.value() != 0.0 && std::popcount(static_cast<BasisIndex>(r)) !=
                                   std::popcount(static_cast<BasisIndex>(it.col())))
        return false;
  return true;
}

bool conserves_parity(const SpinHamiltonian& h) {
  for (Eigen::Index r = 0; r < h.matrix.outerSize(); ++r)
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(h.matrix, r); it; ++it)
      if (it.value() != 0.0 && (std::popcount(static_cast<BasisIndex>(r)) -
                                std::popcount(static_cast<BasisIndex>(it.col()))) % 2 != 0)
        return false;
  return true;
}

PureState initial_state(InitialState kind, int sites) {
  check_pure_size(sites);
  PureState psi{sites, Eigen::VectorXcd::Zero(Eigen::Index{1} << sites)};
  switch (kind) {
    case InitialState::Neel: {
      BasisIndex b = 0;
      for (int k = 0; k < sites; k += 2) b |= bit(k);
      psi.amplitudes(b) = 1.0;
      break;
    }
    case InitialState::FmDoubleQuantum:
      psi.amplitudes(bit(sites) - 1) = 1.0;
      break;
    case InitialState::BellSeries: {
      if (sites % 2 != 0) throw std::invalid_argument("a series of Bell pairs needs even N");
      const int pairs = sites / 2;
      const double amp = std::pow(0.5, 0.5 * pairs);
      // Pair k in (|ud> - |du>)/sqrt2: choose for each pair which site is up.
      for (BasisIndex choice = 0; choice < bit(pairs); ++choice) {
        BasisIndex b = 0;
        double sign = 1.0;
        for (int k = 0; k < pairs; ++k) {
          if (is_up(choice, k)) {
            b |= bit(2 * k + 1);
            sign = -sign;
          } else {
            b |= bit(2 * k);
          }
        }
        psi.amplitudes(b) = sign * amp;
      }
      break;
    }
  }
  return psi;
}

PureState evolve_state(const SpinHamiltonian& h, const PureState& psi, double t,
                       double tolerance) {
  if (psi.amplitudes.size() != h.dimension())
    throw std::invalid_argument("state and Hamiltonian dimensions differ");
  check_symmetric(h);

  constexpr int kMaxKrylov = 40;
  PureState out = psi;
  const double direction = t < 0 ? -1.0 : 1.0;
  double remaining = std::abs(t);
  double tau = remaining;
  const Eigen::Index dim = h.dimension();

  while (remaining > 0.0) {
    const double beta0 = out.amplitudes.norm();
    if (beta0 == 0.0) break;

    Eigen::MatrixXcd v(dim, kMaxKrylov + 1);
    std::vector<double> alpha;
    std::vector<double> beta;
    v.col(0) = out.amplitudes / beta0;
    int m = 0;
    double residual = 0.0;
    for (; m < kMaxKrylov; ++m) {
      Eigen::VectorXcd w = h.matrix * v.col(m);
      alpha.push_back(v.col(m).dot(w).real());
      // Full reorthogonalization; Krylov spaces stay small.
      for (int pass = 0; pass < 2; ++pass)
        for (int k = 0; k <= m; ++k) w -= v.col(k) * v.col(k).dot(w);
      residual = w.norm();
      if (residual < 1e-13 * std::max(1.0, std::abs(alpha.back()))) {
        residual = 0.0;
        ++m;
        break;
      }
      beta.push_back(residual);
      v.col(m + 1) = w / residual;
    }
    const int size = static_cast<int>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(size, size);
    for (int k = 0; k < size; ++k) tri(k, k) = alpha[k];
    for (int k = 0; k + 1 < size; ++k) tri(k, k + 1) = tri(k + 1, k) = beta[k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);

    tau = std::min(tau, remaining);
    Eigen::VectorXcd y;
    for (;;) {
      const Eigen::ArrayXd ph = -direction * tau * es.eigenvalues().array();
      Eigen::VectorXcd phases(size);
      phases.real() = ph.cos().matrix();
      phases.imag() = ph.sin().matrix();
      y = es.eigenvectors().cast<cplx>() *
          phases.cwiseProduct(es.eigenvectors().row(0).transpose().cast<cplx>());
      const double err = residual * std::abs(y(size - 1));
      if (err <= tolerance || tau < 1e-12) break;
      tau *= 0.5;
    }
    out.amplitudes = beta0 * (v.leftCols(size) * y);
    remaining -= tau;
    tau *= 1.5;
  }
  return out;
}

std::vector<BasisIndex> reachable_subspace(const SpinHamiltonian& h,
                                           std::vector<BasisIndex> seed) {
  std::vector<char> seen(static_cast<std::size_t>(h.dimension()), 0);
  std::vector<BasisIndex> out;
  for (BasisIndex s : seed) {
    if (s >= h.dimension()) throw std::out_of_range("basis index out of range");
    if (!seen[s]) {
      seen[s] = 1;
      out.push_back(s);
    }
  }
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(h.matrix, out[head]); it;
         ++it) {
      const auto c = static_cast<BasisIndex>(it.col());
      if (!seen[c] && it.value() != 0.0) {
        seen[c] = 1;
        out.push_back(c);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SpectralEvolver::SpectralEvolver(const SpinHamiltonian& h, const PureState& psi0)
    : sites_(h.sites) {
  if (psi0.amplitudes.size() != h.dimension())
    throw std::invalid_argument("state and Hamiltonian dimensions differ");
  check_symmetric(h);
  std::vector<BasisIndex> support;
  for (Eigen::Index b = 0; b < psi0.amplitudes.size(); ++b)
    if (psi0.amplitudes(b) != cplx{0.0}) support.push_back(static_cast<BasisIndex>(b));
  basis_ = reachable_subspace(h, std::move(support));

  const Eigen::MatrixXd dense = restrict_sparse(h, basis_).toDense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
  if (es.info() != Eigen::Success) throw NumericalError("sector diagonalization failed");
  vectors_ = es.eigenvectors();
  energies_ = es.eigenvalues();

  Eigen::VectorXcd local(static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t k = 0; k < basis_.size(); ++k) local(k) = psi0.amplitudes(basis_[k]);
  weights_ = vectors_.transpose().cast<cplx>() * local;
}

PureState SpectralEvolver::at(double t) const {
  const Eigen::ArrayXd ph = -t * energies_.array();
  Eigen::VectorXcd phases(ph.size());
  phases.real() = ph.cos().matrix();
  phases.imag() = ph.sin().matrix();
  const Eigen::VectorXcd c = phases.cwiseProduct(weights_);
  Eigen::VectorXcd local(c.size());
  local.real() = vectors_ * c.real();
  local.imag() = vectors_ * c.imag();

  PureState psi{sites_, Eigen::VectorXcd::Zero(Eigen::Index{1} << sites_)};
  for (std::size_t k = 0; k < basis_.size(); ++k) psi.amplitudes(basis_[k]) = local(k);
  return psi;
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi, double cutoff) {
  DensityMatrix rho;
  rho.sites = psi.sites;
  for (Eigen::Index b = 0; b < psi.amplitudes.size(); ++b)
    if (std::abs(psi.amplitudes(b)) > cutoff) rho.basis.push_back(static_cast<BasisIndex>(b));
  Eigen::VectorXcd local(static_cast<Eigen::Index>(rho.basis.size()));
  for (std::size_t k = 0; k < rho.basis.size(); ++k) local(k) = psi.amplitudes(rho.basis[k]);
  rho.values = local * local.adjoint();
  return rho;
}

DensityMatrix DensityMatrix::full(int sites, Eigen::MatrixXcd values) {
  const Eigen::Index dim = Eigen::Index{1} << sites;
  if (values.rows() != dim || values.cols() != dim)
    throw std::invalid_argument("density matrix must be 2^N x 2^N");
  DensityMatrix rho;
  rho.sites = sites;
  rho.basis.resize(static_cast<std::size_t>(dim));
  std::iota(rho.basis.begin(), rho.basis.end(), BasisIndex{0});
  rho.values = std::move(values);
  return rho;
}

Eigen::MatrixXcd DensityMatrix::to_full() const {
  const Eigen::Index dim = Eigen::Index{1} << sites;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b) out(basis[a], basis[b]) = values(a, b);
  return out;
}

namespace {

struct LindbladSystem {
  Eigen::SparseMatrix<double, Eigen::RowMajor> h;
  Eigen::MatrixXd hamming;
  double gamma;

  // out = -i[H, rho] - 2 gamma hamming o rho, for Hermitian rho. `scratch`
  // holds H rho; buffers are reused so the step loop does not allocate.
  void rate(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& scratch,
            Eigen::MatrixXcd& out) const {
    scratch.noalias() = h * rho;
    out = scratch - scratch.adjoint();
    out *= cplx{0.0, -1.0};
    if (gamma != 0.0) out.array() -= (2.0 * gamma) * hamming.array() * rho.array();
  }

  void integrate(Eigen::MatrixXcd& rho, double t, int steps, DensityMatrix* view,
                 const LindbladObserver& observer) const {
    const double dt = t / steps;
    if (observer) {
      view->values = rho;
      observer(0, 0.0, *view);
    }
    const Eigen::Index d = rho.rows();
    Eigen::MatrixXcd k(d, d), acc(d, d), probe(d, d), scratch(d, d);
    for (int s = 1; s <= steps; ++s) {
      rate(rho, scratch, k);
      acc = k;
      probe = rho + (0.5 * dt) * k;
      rate(probe, scratch, k);
      acc += 2.0 * k;
      probe = rho + (0.5 * dt) * k;
      rate(probe, scratch, k);
      acc += 2.0 * k;
      probe = rho + dt * k;
      rate(probe, scratch, k);
      acc += k;
      rho += (dt / 6.0) * acc;
      probe = rho.adjoint();
      rho = 0.5 * (rho + probe);
      if (observer) {
        view->values = rho;
        observer(s, s * dt, *view);
      }
    }
  }
};

}  // namespace

DensityMatrix evolve_lindblad(const SpinHamiltonian& h, const DensityMatrix& rho0,
                              double gamma, double t, int steps,
                              const LindbladObserver& observer,
                              const LindbladOptions& options) {
  if (h.sites > kMaxDensitySites)
    throw SizeLimitError("density-matrix evolution is limited to " +
                         std::to_string(kMaxDensitySites) + " sites");
  if (rho0.sites != h.sites) throw std::invalid_argument("state and Hamiltonian sizes differ");
  if (!(gamma >= 0.0)) throw std::invalid_argument("dephasing rate must be >= 0");
  if (!(t >= 0.0)) throw std::invalid_argument("evolution time must be >= 0");
  if (steps < 1) throw std::invalid_argument("need at least one step");
  check_symmetric(h);

  steps = std::max(steps, static_cast<int>(std::ceil(t / options.max_step - 1e-9)));
  if (options.error_check && steps % 2 != 0) ++steps;

  DensityMatrix rho;
  rho.sites = h.sites;
  rho.basis = reachable_subspace(h, rho0.basis);
  const auto d = static_cast<Eigen::Index>(rho.basis.size());

  Eigen::MatrixXcd start = Eigen::MatrixXcd::Zero(d, d);
  std::vector<Eigen::Index> where(rho0.basis.size());
  for (std::size_t k = 0; k < rho0.basis.size(); ++k)
    where[k] = std::lower_bound(rho.basis.begin(), rho.basis.end(), rho0.basis[k]) -
               rho.basis.begin();
  for (std::size_t a = 0; a < where.size(); ++a)
    for (std::size_t b = 0; b < where.size(); ++b) start(where[a], where[b]) = rho0.values(a, b);

  LindbladSystem sys{restrict_sparse(h, rho.basis), Eigen::MatrixXd(d, d), gamma};
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b)
      sys.hamming(a, b) = std::popcount(rho.basis[a] ^ rho.basis[b]);

  Eigen::MatrixXcd fine = start;
  sys.integrate(fine, t, steps, &rho, observer);

  if (options.error_check && t > 0.0) {
    Eigen::MatrixXcd coarse = start;
    sys.integrate(coarse, t, steps / 2, nullptr, {});
    const double err = (fine - coarse).cwiseAbs().maxCoeff() / 15.0;
    if (err > options.tolerance)
      throw NumericalError("Lindblad step-doubling error " + std::to_string(err) +
                           " exceeds tolerance; increase steps");
  }
  rho.values = std::move(fine);
  return rho;
}

namespace {

int pair_code(BasisIndex b, int first, int second) {
  return 2 * (is_up(b, first) ? 0 : 1) + (is_up(b, second) ? 0 : 1);
}

void check_pair(int first, int second, int sites) {
  check_site(first, sites);
  check_site(second, sites);
  if (first == second) throw std::invalid_argument("reduced state needs two distinct sites");
}

}  // namespace

Eigen::Matrix4cd reduced_density(const PureState& psi, int first, int second) {
  check_pair(first, second, psi.sites);
  const BasisIndex mask = bit(first) | bit(second);
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  const auto dim = static_cast<BasisIndex>(psi.amplitudes.size());
  for (BasisIndex rest = 0; rest < dim; ++rest) {
    if (rest & mask) continue;
    Eigen::Vector4cd a;
    for (BasisIndex fill : {mask, bit(first), bit(second), BasisIndex{0}})
      a(pair_code(rest | fill, first, second)) = psi.amplitudes(rest | fill);
    rho.noalias() += a * a.adjoint();
  }
  return rho;
}

Eigen::Matrix4cd reduced_density(const DensityMatrix& rho, int first, int second) {
  check_pair(first, second, rho.sites);
  const BasisIndex mask = bit(first) | bit(second);
  std::vector<std::size_t> order(rho.basis.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return (rho.basis[a] & ~mask) < (rho.basis[b] & ~mask);
  });

  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  for (std::size_t lo = 0; lo < order.size();) {
    const BasisIndex rest = rho.basis[order[lo]] & ~mask;
    std::size_t hi = lo;
    while (hi < order.size() && (rho.basis[order[hi]] & ~mask) == rest) ++hi;
    for (std::size_t a = lo; a < hi; ++a)
      for (std::size_t b = lo; b < hi; ++b)
        out(pair_code(rho.basis[order[a]], first, second),
            pair_code(rho.basis[order[b]], first, second)) += rho.values(order[a], order[b]);
    lo = hi;
  }
  return out;
}

cplx fermion_correlation(const PureState& psi, int n, int m) {
  check_site(n, psi.sites);
  check_site(m, psi.sites);
  cplx sum = 0.0;
  const auto dim = static_cast<BasisIndex>(psi.amplitudes.size());
  for (BasisIndex b = 0; b < dim; ++b) {
    if (!is_up(b, m)) continue;
    // c_m |b>, then c_n^dag on the result.
    const BasisIndex mid = b ^ bit(m);
    if (is_up(mid, n)) continue;
    const BasisIndex out = mid | bit(n);
    const double sign = string_sign(b, m) * string_sign(mid, n);
    sum += std::conj(psi.amplitudes(out)) * sign * psi.amplitudes(b);
  }
  return sum;
}

Eigen::MatrixXcd fermion_correlation_matrix(const PureState& psi) {
  Eigen::MatrixXcd c(psi.sites, psi.sites);
  for (int n = 0; n < psi.sites; ++n)
    for (int m = 0; m < psi.sites; ++m) c(n, m) = fermion_correlation(psi, n, m);
  return c;
}

double entanglement_entropy(const PureState& psi, SiteRange block) {
  if (block.size <= 0) throw std::invalid_argument("block must be non-empty");
  if (block.first < 0 || block.first + block.size > psi.sites)
    throw std::out_of_range("block outside the chain");
  const int rest_bits = psi.sites - block.size;
  const BasisIndex block_mask = (bit(block.size) - 1) << block.first;

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index{1} << block.size,
                                              Eigen::Index{1} << rest_bits);
  const auto dim = static_cast<BasisIndex>(psi.amplitudes.size());
  for (BasisIndex b = 0; b < dim; ++b) {
    const BasisIndex inside = (b & block_mask) >> block.first;
    const BasisIndex low = b & (bit(block.first) - 1);
    const BasisIndex high = b >> (block.first + block.size);
    const BasisIndex outside = low | (high << block.first);
    m(inside, outside) = psi.amplitudes(b);
  }
  const Eigen::MatrixXcd reduced =
      m.rows() <= m.cols() ? Eigen::MatrixXcd(m * m.adjoint()) : Eigen::MatrixXcd(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(reduced, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (double p : es.eigenvalues())
    if (p > 1e-300) s -= p * std::log2(p);
  return s;
}

double total_magnetization(const PureState& psi) {
  double z = 0.0;
  for (Eigen::Index b = 0; b < psi.amplitudes.size(); ++b)
    z += std::norm(psi.amplitudes(b)) *
         (2 * std::popcount(static_cast<BasisIndex>(b)) - psi.sites);
  return z;
}

double fermion_parity(const PureState& psi) {
  double p = 0.0;
  for (Eigen::Index b = 0; b < psi.amplitudes.size(); ++b)
    p += std::norm(psi.amplitudes(b)) *
         (std::popcount(static_cast<BasisIndex>(b)) % 2 == 0 ? 1.0 : -1.0);
  return p;
}

PureState apply_x(const PureState& psi, const std::vector<int>& sites) {
  BasisIndex mask = 0;
  for (int s : sites) {
    check_site(s, psi.sites);
    mask ^= bit(s);
  }
  PureState out{psi.sites, Eigen::VectorXcd(psi.amplitudes.size())};
  for (Eigen::Index b = 0; b < psi.amplitudes.size(); ++b)
    out.amplitudes(static_cast<BasisIndex>(b) ^ mask) = psi.amplitudes(b);
  return out;
}

}  // namespace xxq
