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
#include "xxq/random.hpp"

#include <gtest/gtest.h>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace xxq {
namespace {

const cplx kI{0.0, 1.0};

Eigen::Matrix4cd projector(const Eigen::Vector4cd& v) { return v * v.adjoint() / v.squaredNorm(); }

Eigen::Matrix4cd random_state(Stream& s) {
  Eigen::Matrix4cd g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = cplx{s.uniform(-1, 1), s.uniform(-1, 1)};
  const Eigen::Matrix4cd rho = g * g.adjoint();
  return rho / rho.trace();
}

Eigen::Matrix2cd su2(double a, double b, double c, double d) {
  const double norm = std::sqrt(a * a + b * b + c * c + d * d);
  a /= norm, b /= norm, c /= norm, d /= norm;
  Eigen::Matrix2cd u;
  u << cplx{a, b}, cplx{c, d}, cplx{-c, d}, cplx{a, -b};
  return u;
}

// Every maximally entangled state is (I x U)|Phi+> up to a phase, so F is the
// maximum of <Phi+|(I x U^dag) rho (I x U)|Phi+> over SU(2). Random search
// followed by shrinking local perturbations.
double sampled_fef(const Eigen::Matrix4cd& rho, Stream& s) {
  const Eigen::Vector4cd phi = Eigen::Vector4cd(1, 0, 0, 1) / std::numbers::sqrt2;
  auto overlap = [&](const Eigen::Vector4d& q) {
    const Eigen::Matrix4cd u =
        Eigen::kroneckerProduct(Eigen::Matrix2cd::Identity(), su2(q(0), q(1), q(2), q(3)));
    const Eigen::Vector4cd v = u * phi;
    return (v.adjoint() * rho * v)(0).real();
  };
  Eigen::Vector4d best(1.0, 0.0, 0.0, 0.0);
  double best_value = overlap(best);
  for (int i = 0; i < 4000; ++i) {
    Eigen::Vector4d q(s.uniform(-1, 1), s.uniform(-1, 1), s.uniform(-1, 1), s.uniform(-1, 1));
    if (const double v = overlap(q); v > best_value) best = q, best_value = v;
  }
  for (double step = 0.1; step > 1e-7; step *= 0.7) {
    for (int i = 0; i < 60; ++i) {
      Eigen::Vector4d q = best;
      for (int k = 0; k < 4; ++k) q(k) += step * s.uniform(-1, 1);
      if (const double v = overlap(q); v > best_value) best = q, best_value = v;
    }
  }
  return best_value;
}

TEST(Fef, KnownStates) {
  const double r = std::numbers::sqrt2 / 2.0;
  EXPECT_NEAR(fully_entangled_fraction(projector({r, 0, 0, r})), 1.0, 1e-14);
  EXPECT_NEAR(fully_entangled_fraction(projector({0, r, -r, 0})), 1.0, 1e-14);
  EXPECT_NEAR(fully_entangled_fraction(projector({0, 1.0, kI, 0})), 1.0, 1e-14);
  EXPECT_NEAR(fully_entangled_fraction(projector({1, 0, 0, 0})), 0.5, 1e-14);
  EXPECT_NEAR(fully_entangled_fraction(Eigen::Matrix4cd(Eigen::Matrix4cd::Identity() / 4.0)), 0.25,
              1e-14);
}

TEST(Fef, MagicBasisMatchesSu2Search) {
  Stream s(17);
  for (int trial = 0; trial < 12; ++trial) {
    const Eigen::Matrix4cd rho = random_state(s);
    const double f = fully_entangled_fraction(rho);
    const double sampled = sampled_fef(rho, s);
    EXPECT_LE(sampled, f + 1e-12);
    EXPECT_NEAR(sampled, f, 1e-6);
  }
}

TEST(Fef, InvariantUnderLocalUnitaries) {
  Stream s(18);
  const Eigen::Matrix4cd rho = random_state(s);
  const Eigen::Matrix4cd u = Eigen::kroneckerProduct(su2(0.3, -1.2, 0.5, 0.1), su2(1, 2, 3, 4));
  EXPECT_NEAR(fully_entangled_fraction(rho), fully_entangled_fraction(Eigen::Matrix4cd(u * rho * u.adjoint())),
              1e-13);
}

TEST(Fef, RejectsNonDensityMatrices) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity() / 4.0;
  m(0, 1) = 0.1;
  EXPECT_THROW(fully_entangled_fraction(m), std::domain_error);
  EXPECT_THROW(fully_entangled_fraction(Eigen::Matrix4cd(Eigen::Matrix4cd::Identity())),
               std::domain_error);
  TwoSpinXState x{0.5, 0.25, 0.25, 0.0, 0.5};
  EXPECT_THROW(x.validate(), std::domain_error);
}

TEST(Fef, XStateFormulaMatchesGeneralForm) {
  Stream s(19);
  for (int trial = 0; trial < 50; ++trial) {
    double p[4];
    double total = 0;
    for (double& v : p) total += (v = s.uniform());
    TwoSpinXState x{p[0] / total, p[1] / total, p[2] / total, p[3] / total, 0.0};
    x.coherence = std::polar(s.uniform() * std::sqrt(x.ud * x.du), s.uniform(0, 6.3));
    EXPECT_NEAR(fully_entangled_fraction(x), fully_entangled_fraction(x.dense()), 1e-13);
  }
}

TEST(ClosedForm, EndToEndAndPseudoPure) {
  EXPECT_DOUBLE_EQ(end_to_end_F_closed_form(1.0), 1.0);
  EXPECT_DOUBLE_EQ(end_to_end_F_closed_form(0.0), 0.25);
  EXPECT_NEAR(end_to_end_F_closed_form(0.8469), 0.8528, 5e-5);
  EXPECT_THROW(end_to_end_F_closed_form(1.5), std::invalid_argument);
  EXPECT_DOUBLE_EQ(pseudo_pure_F(0.0, 0.9), 0.9);
  EXPECT_DOUBLE_EQ(pseudo_pure_F(0.2, 1.0), 1.0 - 0.75 * 0.2);
  EXPECT_THROW(pseudo_pure_F(-0.1, 1.0), std::invalid_argument);
  EXPECT_TRUE(is_purifiable(0.51));
  EXPECT_FALSE(is_purifiable(0.5));
}

HoppingMatrix random_chain(int n, std::uint64_t seed) {
  Stream s(seed);
  CouplingProfile p = build_profile(ProfileKind::Uniform, n);
  for (double& j : p.couplings) j = s.uniform(0.1, 1.0);
  return hopping_matrix(p);
}

TEST(EndPair, NeelAndBellMatchExactReducedState) {
  for (int n : {4, 6, 7}) {
    const HoppingMatrix a = random_chain(n, 40 + n);
    const Spectrum spec = diagonalize(a);
    const SpinHamiltonian h = build_spin_hamiltonian(xx_spec(a));
    for (InitialState kind : {InitialState::Neel, InitialState::BellSeries}) {
      if (kind == InitialState::BellSeries && n % 2) continue;
      const InitialStateSpec init = initial_state_spec(kind, n);
      const SpectralEvolver ev(h, initial_state(kind, n));
      for (double t : {0.0, 1.3, 4.9}) {
        const Eigen::Matrix4cd brute = reduced_density(ev.at(t), 0, n - 1);
        const TwoSpinXState x = end_pair_state(spec, init, t);
        EXPECT_NO_THROW(x.validate());
        EXPECT_LT((x.dense() - brute).cwiseAbs().maxCoeff(), 1e-11)
            << "N=" << n << " " << to_string(kind) << " t=" << t;
      }
    }
  }
}

TEST(EndPair, DoubleQuantumFefMatchesExact) {
  const int n = 6;
  const HoppingMatrix a = random_chain(n, 50);
  const Spectrum spec = diagonalize(a);
  const InitialStateSpec init = initial_state_spec(InitialState::FmDoubleQuantum, n);
  const SpectralEvolver ev(build_spin_hamiltonian(double_quantum_spec(a)),
                           initial_state(InitialState::FmDoubleQuantum, n));
  for (double t : {0.5, 2.5, 6.0}) {
    const double brute = fully_entangled_fraction(reduced_density(ev.at(t), 0, n - 1));
    EXPECT_NEAR(fully_entangled_fraction(end_pair_state(spec, init, t)), brute, 1e-11);
  }
}

TEST(EndPair, EndpointPathMatchesCorrelationPath) {
  for (int n : {5, 8}) {
    const HoppingMatrix a = random_chain(n, 60 + n);
    const Spectrum spec = diagonalize(a);
    const EndpointSpectrum ends = endpoint_spectrum(a);
    const InitialStateSpec init = initial_state_spec(InitialState::Neel, n);
    for (double t : {0.2, 3.0, 8.5}) {
      const TwoSpinXState full = end_pair_state(spec, init, t);
      const TwoSpinXState fast = neel_end_pair_state(ends, t);
      EXPECT_LT((full.dense() - fast.dense()).cwiseAbs().maxCoeff(), 1e-11);
    }
  }
}

TEST(EndPair, StartsUnentangled) {
  const Spectrum spec = diagonalize(random_chain(6, 70));
  const InitialStateSpec init = initial_state_spec(InitialState::Neel, 6);
  EXPECT_NEAR(fully_entangled_fraction(end_pair_state(spec, init, 0.0)), 0.5, 1e-14);
}

TEST(NestedBell, TargetStructure) {
  const NestedBellTarget even = nested_bell_target(6);
  EXPECT_EQ(even.pairs.size(), 3u);
  EXPECT_EQ(even.pairs[0], std::make_pair(0, 5));
  EXPECT_FALSE(even.center.has_value());
  EXPECT_EQ(even.phase, cplx(0.0, -1.0));
  const NestedBellTarget odd = nested_bell_target(5);
  EXPECT_EQ(odd.center, 2);
  const PureState psi = odd.state();
  EXPECT_NEAR(psi.norm(), 1.0, 1e-14);
  EXPECT_NEAR(entanglement_entropy(even.state(), half_chain(6)), 3.0, 1e-12);
  for (double f : mirror_pair_fef(even.state(), 6)) EXPECT_NEAR(f, 1.0, 1e-14);
  EXPECT_THROW(nested_bell_target(1), std::invalid_argument);
}

TEST(NestedBell, GeneratedByFullyEngineeredChain) {
  for (int n = 2; n <= 9; ++n) EXPECT_NEAR(bell_generation_fidelity(n), 1.0, 1e-10) << n;
  EXPECT_THROW(bell_generation_fidelity(kMaxPureStateSites + 1), SizeLimitError);
}

TEST(MirrorPairs, DensityAndPureAgree) {
  const HoppingMatrix a = random_chain(6, 80);
  const PureState psi =
      SpectralEvolver(build_spin_hamiltonian(xx_spec(a)), initial_state(InitialState::Neel, 6))
          .at(2.0);
  const std::vector<double> pure = mirror_pair_fef(psi, 6);
  const std::vector<double> mixed = mirror_pair_fef(DensityMatrix::from_pure(psi, 1e-14), 6);
  ASSERT_EQ(pure.size(), 3u);
  for (std::size_t k = 0; k < pure.size(); ++k) EXPECT_NEAR(pure[k], mixed[k], 1e-12);
  EXPECT_THROW(mirror_pair_fef(psi, 7), std::invalid_argument);
}

}  // namespace
}  // namespace xxq
