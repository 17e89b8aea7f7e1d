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

#include "xxq/chain_model.hpp"

#include "xxq/random.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace xxq {

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::Uniform:
      return "uniform";
    case ProfileKind::FullyEngineered:
      return "pst";
    case ProfileKind::MinimallyEngineered:
      return "minimal";
  }
  return "unknown";
}

ProfileKind parse_profile_kind(std::string_view name) {
  if (name == "uniform") return ProfileKind::Uniform;
  if (name == "pst" || name == "full" || name == "fully-engineered")
    return ProfileKind::FullyEngineered;
  if (name == "minimal" || name == "minimally-engineered")
    return ProfileKind::MinimallyEngineered;
  throw std::invalid_argument("unknown coupling profile '" + std::string(name) + "'");
}

CouplingProfile build_profile(ProfileKind kind, int sites, std::optional<double> boundary) {
  if (sites < 2) throw std::invalid_argument("a chain needs at least 2 sites");

  const bool minimal = kind == ProfileKind::MinimallyEngineered;
  if (minimal && !boundary)
    throw std::invalid_argument("minimally engineered chains need a boundary coupling");
  if (!minimal && boundary)
    throw std::invalid_argument("boundary coupling only applies to minimally engineered chains");
  if (boundary && !(*boundary > 0.0 && *boundary <= 1.0))
    throw std::invalid_argument("boundary coupling must lie in (0, 1]");

  CouplingProfile p;
  p.kind = kind;
  p.sites = sites;
  p.boundary = boundary;
  p.couplings.assign(sites - 1, 0.5);

  const double n_sites = sites;
  switch (kind) {
    case ProfileKind::Uniform:
      break;
    case ProfileKind::FullyEngineered:
      for (int n = 1; n < sites; ++n)
        p.couplings[n - 1] = std::sqrt(static_cast<double>(n) * (sites - n)) / n_sites;
      break;
    case ProfileKind::MinimallyEngineered:
      p.couplings.front() = *boundary;
      p.couplings.back() = *boundary;
      break;
  }
  return p;
}

void validate(const CouplingProfile& profile) {
  if (profile.sites < 2) throw std::invalid_argument("a chain needs at least 2 sites");
  if (static_cast<int>(profile.couplings.size()) != profile.sites - 1)
    throw std::invalid_argument("coupling count must be sites - 1");
  for (double j : profile.couplings)
    if (!(j > 0.0) || !std::isfinite(j))
      throw std::invalid_argument("couplings must be positive and finite");
}

HoppingMatrix hopping_matrix(const CouplingProfile& profile) {
  validate(profile);
  const int n = profile.sites;
  HoppingMatrix a{Eigen::MatrixXd::Zero(n, n), true};
  for (int k = 0; k + 1 < n; ++k) {
    a.entries(k, k + 1) = profile.couplings[k];
    a.entries(k + 1, k) = profile.couplings[k];
  }
  return a;
}

Eigen::VectorXd sublattice_signs(int sites) {
  Eigen::VectorXd s(sites);
  for (int k = 0; k < sites; ++k) s(k) = (k % 2 == 0) ? 1.0 : -1.0;
  return s;
}

namespace {

struct NoiseValidator {
  void operator()(const NmrFilterNoise& c) const {
    if (!(c.epsilon >= 0.0)) throw std::invalid_argument("error strength must be >= 0");
    if (c.two_chain && !(c.interchain_spacing > 0.0))
      throw std::invalid_argument("interchain spacing must be positive");
  }
  void operator()(const IonLongRangeNoise&) const {}
  void operator()(const DephasingNoise& c) const {
    if (!(c.gamma >= 0.0)) throw std::invalid_argument("dephasing rate must be >= 0");
  }
  void operator()(const XxzAnisotropyNoise& c) const {
    if (!std::isfinite(c.jz_ratio)) throw std::invalid_argument("anisotropy must be finite");
  }
};

}  // namespace

void validate(const NoiseConfig& config) { std::visit(NoiseValidator{}, config); }

HoppingMatrix nmr_perturbed_matrix(const CouplingProfile& profile,
                                   const NmrFilterNoise& config) {
  validate(NoiseConfig{config});
  const HoppingMatrix clean = hopping_matrix(profile);
  const int n = profile.sites;
  const int total = config.two_chain ? 2 * n : n;

  HoppingMatrix a{Eigen::MatrixXd::Zero(total, total), false};
  a.entries.topLeftCorner(n, n) = clean.entries;
  if (config.two_chain) a.entries.bottomRightCorner(n, n) = clean.entries;

  // Geometry: site k of chain c sits at (k, c * spacing).
  auto position = [&](int idx) {
    const int chain = idx / n;
    return Eigen::Vector2d(idx % n, chain * config.interchain_spacing);
  };

  // Draw the upper triangle in a fixed order so the matrix depends only on the seed.
  Stream rng(config.seed);
  for (int i = 0; i < total; ++i) {
    for (int j = i + 1; j < total; ++j) {
      const double filter = rng.uniform(-1.0, 1.0);
      const double d = (position(i) - position(j)).norm();
      const double dipolar = 1.0 / (d * d * d);
      const double delta = config.epsilon * dipolar * filter;
      a.entries(i, j) += delta;
      a.entries(j, i) += delta;
    }
  }
  if (config.epsilon == 0.0) a.tridiagonal = !config.two_chain;
  return a;
}

std::vector<double> trap_frequencies_squared(const CouplingProfile& profile) {
  validate(profile);
  const int n = profile.sites;
  const auto& j = profile.couplings;
  for (int k = 0; k + 1 < n; ++k)
    if (std::abs(j[k] - j[n - 2 - k]) > 1e-12 * std::abs(j[k]))
      throw std::invalid_argument("trap frequencies need a mirror-symmetric profile");

  // x_k x_{k+1} = 1 / j_k. The centre is fixed by symmetry: for even N the two
  // central sites are equal; for odd N the central site equals its neighbours.
  std::vector<double> x(n, 0.0);
  const int left_centre = (n % 2 == 0) ? n / 2 - 1 : (n - 1) / 2 - 1;
  if (n == 2) {
    x[0] = x[1] = std::sqrt(1.0 / j[0]);
    return x;
  }
  x[left_centre] = std::sqrt(1.0 / j[left_centre]);
  x[left_centre + 1] = x[left_centre];
  for (int k = left_centre - 1; k >= 0; --k) x[k] = 1.0 / (j[k] * x[k + 1]);
  for (int k = 0; k < n / 2; ++k) x[n - 1 - k] = x[k];
  if (n % 2 == 1) x[(n - 1) / 2] = x[left_centre];

  for (double v : x)
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::domain_error("trap frequency recurrence produced a non-positive value");
  return x;
}

HoppingMatrix ion_longrange_matrix(const CouplingProfile& profile) {
  const std::vector<double> x = trap_frequencies_squared(profile);
  const int n = profile.sites;
  HoppingMatrix a{Eigen::MatrixXd::Zero(n, n), n == 2};
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      const double r = k - i;
      a.entries(i, k) = 1.0 / (x[i] * x[k] * r * r * r);
      a.entries(k, i) = a.entries(i, k);
    }
  }
  return a;
}

SpinHamiltonianSpec xx_spec(const HoppingMatrix& hopping) {
  return {SpinModel::XX, hopping.entries, {}, 0.0};
}

SpinHamiltonianSpec double_quantum_spec(const HoppingMatrix& hopping, double field) {
  return {SpinModel::DoubleQuantum, hopping.entries, {}, field};
}

SpinHamiltonianSpec xxz_spec(const HoppingMatrix& hopping, std::vector<double> zz) {
  if (static_cast<int>(zz.size()) != hopping.sites() - 1)
    throw std::invalid_argument("XXZ needs one zz coefficient per bond");
  return {SpinModel::XXZ, hopping.entries, std::move(zz), 0.0};
}

SpinHamiltonianSpec xxz_spec(const HoppingMatrix& hopping, const XxzAnisotropyNoise& noise) {
  validate(NoiseConfig{noise});
  std::vector<double> zz(hopping.sites() - 1);
  for (int k = 0; k + 1 < hopping.sites(); ++k)
    zz[k] = noise.jz_ratio * hopping.entries(k, k + 1);
  return xxz_spec(hopping, std::move(zz));
}

}  // namespace xxq
