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

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <stdexcept>

namespace xxq {
namespace {

TEST(Profile, FullyEngineeredCouplings) {
  const CouplingProfile p = build_profile(ProfileKind::FullyEngineered, 7);
  ASSERT_EQ(p.couplings.size(), 6u);
  for (int n = 1; n < 7; ++n) EXPECT_DOUBLE_EQ(p.couplings[n - 1], std::sqrt(n * (7.0 - n)) / 7.0);
  EXPECT_FALSE(p.boundary.has_value());
}

TEST(Profile, MinimalOnlyTunesEnds) {
  const CouplingProfile p = build_profile(ProfileKind::MinimallyEngineered, 6, 0.3);
  EXPECT_DOUBLE_EQ(p.couplings.front(), 0.3);
  EXPECT_DOUBLE_EQ(p.couplings.back(), 0.3);
  for (std::size_t k = 1; k + 1 < p.couplings.size(); ++k) EXPECT_DOUBLE_EQ(p.couplings[k], 0.5);
}

TEST(Profile, AllKindsAreMirrorSymmetric) {
  for (int n = 2; n <= 12; ++n)
    for (const CouplingProfile& p :
         {build_profile(ProfileKind::Uniform, n), build_profile(ProfileKind::FullyEngineered, n),
          build_profile(ProfileKind::MinimallyEngineered, n, 0.4)})
      for (int k = 0; k + 1 < n; ++k) EXPECT_DOUBLE_EQ(p.couplings[k], p.couplings[n - 2 - k]);
}

TEST(Profile, RejectsBadInput) {
  EXPECT_THROW(build_profile(ProfileKind::Uniform, 1), std::invalid_argument);
  EXPECT_THROW(build_profile(ProfileKind::MinimallyEngineered, 5), std::invalid_argument);
  EXPECT_THROW(build_profile(ProfileKind::MinimallyEngineered, 5, 0.0), std::invalid_argument);
  EXPECT_THROW(build_profile(ProfileKind::MinimallyEngineered, 5, 1.5), std::invalid_argument);
  EXPECT_THROW(build_profile(ProfileKind::Uniform, 5, 0.5), std::invalid_argument);
  CouplingProfile bad = build_profile(ProfileKind::Uniform, 4);
  bad.couplings[1] = -1.0;
  EXPECT_THROW(validate(bad), std::invalid_argument);
}

TEST(Profile, NamesRoundTrip) {
  for (ProfileKind k :
       {ProfileKind::Uniform, ProfileKind::FullyEngineered, ProfileKind::MinimallyEngineered})
    EXPECT_EQ(parse_profile_kind(to_string(k)), k);
  EXPECT_THROW(parse_profile_kind("ring"), std::invalid_argument);
}

TEST(Hopping, TridiagonalSymmetricZeroDiagonal) {
  const CouplingProfile p = build_profile(ProfileKind::FullyEngineered, 6);
  const HoppingMatrix a = hopping_matrix(p);
  EXPECT_TRUE(a.tridiagonal);
  EXPECT_EQ((a.entries - a.entries.transpose()).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(a.entries.diagonal().cwiseAbs().maxCoeff(), 0.0);
  for (int k = 0; k < 5; ++k) EXPECT_EQ(a.entries(k, k + 1), p.couplings[k]);
  EXPECT_EQ(a.entries(0, 2), 0.0);
}

TEST(Hopping, SublatticeSignsAntiCommuteWithChain) {
  const HoppingMatrix a = hopping_matrix(build_profile(ProfileKind::Uniform, 7));
  const Eigen::MatrixXd s = sublattice_signs(7).asDiagonal();
  EXPECT_LT((s * a.entries * s + a.entries).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(sublattice_signs(3)(0), 1.0);
}

TEST(Nmr, ZeroEpsilonIsBlockDiagonalClean) {
  const CouplingProfile p = build_profile(ProfileKind::FullyEngineered, 5);
  NmrFilterNoise cfg;
  cfg.seed = 7;
  const HoppingMatrix a = nmr_perturbed_matrix(p, cfg);
  ASSERT_EQ(a.sites(), 10);
  const Eigen::MatrixXd clean = hopping_matrix(p).entries;
  EXPECT_EQ((a.entries.topLeftCorner(5, 5) - clean).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ((a.entries.bottomRightCorner(5, 5) - clean).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(a.entries.topRightCorner(5, 5).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Nmr, PerturbationBoundedByDipolarAmplitude) {
  const CouplingProfile p = build_profile(ProfileKind::FullyEngineered, 5);
  NmrFilterNoise cfg{0.1, true, 3.0, 11};
  const Eigen::MatrixXd delta = nmr_perturbed_matrix(p, cfg).entries -
                                nmr_perturbed_matrix(p, {0.0, true, 3.0, 11}).entries;
  EXPECT_LT((delta - delta.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      if (i == j) continue;
      const double dx = i % 5 - j % 5;
      const double dy = 3.0 * (i / 5 - j / 5);
      const double b = 1.0 / std::pow(std::hypot(dx, dy), 3);
      EXPECT_LE(std::abs(delta(i, j)), 0.1 * b + 1e-15);
    }
  // Next-nearest neighbours are perturbed too.
  EXPECT_NE(delta(0, 2), 0.0);
}

TEST(Nmr, DeterministicInSeed) {
  const CouplingProfile p = build_profile(ProfileKind::Uniform, 4);
  const NmrFilterNoise a{0.05, true, 3.0, 99};
  NmrFilterNoise b = a;
  b.seed = 100;
  EXPECT_EQ(nmr_perturbed_matrix(p, a).entries, nmr_perturbed_matrix(p, a).entries);
  EXPECT_NE(nmr_perturbed_matrix(p, a).entries, nmr_perturbed_matrix(p, b).entries);
  NmrFilterNoise single = a;
  single.two_chain = false;
  EXPECT_EQ(nmr_perturbed_matrix(p, single).sites(), 4);
}

TEST(Noise, ValidationRejectsNegativeParameters) {
  EXPECT_THROW(validate(NoiseConfig{NmrFilterNoise{-0.1}}), std::invalid_argument);
  EXPECT_THROW(validate(NoiseConfig{DephasingNoise{-1.0}}), std::invalid_argument);
  // Either sign of the spurious zz term is physical.
  EXPECT_NO_THROW(validate(NoiseConfig{XxzAnisotropyNoise{-0.2}}));
  EXPECT_NO_THROW(validate(NoiseConfig{IonLongRangeNoise{}}));
}

TEST(Ion, TrapFrequenciesReproduceNearestNeighbours) {
  for (int n : {2, 3, 5, 8, 10, 11}) {
    for (const CouplingProfile& p : {build_profile(ProfileKind::FullyEngineered, n),
                                     build_profile(ProfileKind::MinimallyEngineered, n, 0.36)}) {
      const std::vector<double> x = trap_frequencies_squared(p);
      for (int k = 0; k + 1 < n; ++k) EXPECT_NEAR(x[k] * x[k + 1], 1.0 / p.couplings[k], 1e-12);
      for (int k = 0; k < n; ++k) EXPECT_DOUBLE_EQ(x[k], x[n - 1 - k]);
    }
  }
}

TEST(Ion, LongRangeMatrixDecaysAsInverseCube) {
  const CouplingProfile p = build_profile(ProfileKind::Uniform, 6);
  const HoppingMatrix a = ion_longrange_matrix(p);
  EXPECT_FALSE(a.tridiagonal);
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(a.entries(k, k + 1), 0.5, 1e-14);
  // Uniform chain: all trap frequencies equal, so j_nm = j / |n-m|^3.
  EXPECT_NEAR(a.entries(0, 2), 0.5 / 8.0, 1e-14);
  EXPECT_NEAR(a.entries(1, 4), 0.5 / 27.0, 1e-14);
}

TEST(Ion, RejectsAsymmetricProfile) {
  CouplingProfile p = build_profile(ProfileKind::Uniform, 5);
  p.couplings[0] = 0.2;
  EXPECT_THROW(trap_frequencies_squared(p), std::invalid_argument);
}

TEST(Specs, XxzScalesWithLocalCoupling) {
  const HoppingMatrix a = hopping_matrix(build_profile(ProfileKind::FullyEngineered, 5));
  const SpinHamiltonianSpec s = xxz_spec(a, XxzAnisotropyNoise{0.35});
  ASSERT_EQ(s.zz.size(), 4u);
  for (int k = 0; k < 4; ++k) EXPECT_DOUBLE_EQ(s.zz[k], 0.35 * a.entries(k, k + 1));
  EXPECT_THROW(xxz_spec(a, std::vector<double>{1.0}), std::invalid_argument);
  EXPECT_EQ(double_quantum_spec(a, 0.3).field, 0.3);
}

TEST(Random, StreamsAreReproducibleAndDistinct) {
  Stream a(5), b(5);
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
  std::set<std::uint64_t> seeds;
  for (std::uint64_t r = 0; r < 1000; ++r) seeds.insert(stream_seed(42, r));
  EXPECT_EQ(seeds.size(), 1000u);
  EXPECT_NE(stream_seed(1, 0), stream_seed(0, 1));
}

TEST(Random, UniformIsRoughlyUniform) {
  Stream s(123);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) sum += s.uniform(-1.0, 1.0);
  EXPECT_NEAR(sum / n, 0.0, 0.01);
}

}  // namespace
}  // namespace xxq
