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

#include "xxq/optimizer.hpp"
#include "xxq/serialization.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace xxq {
namespace {

TEST(Golden, FindsParabolaVertex) {
  const ScalarMaximum m =
      golden_section_maximize([](double x) { return -(x - 0.3) * (x - 0.3); }, -1.0, 2.0, 1e-9);
  EXPECT_NEAR(m.argument, 0.3, 1e-8);
  EXPECT_GT(m.evaluations, 10);
  EXPECT_THROW(golden_section_maximize([](double x) { return x; }, 1.0, 0.0, 1e-6),
               std::invalid_argument);
}

TEST(Golden, BracketedSearchFindsGlobalPeak) {
  // Two peaks; golden section alone on [0, 10] would be free to pick either.
  auto f = [](double x) { return std::exp(-(x - 2) * (x - 2)) + 1.5 * std::exp(-(x - 7) * (x - 7)); };
  const ScalarMaximum m = bracketed_maximize(f, 0.0, 10.0, 21, 1e-9);
  EXPECT_NEAR(m.argument, 7.0, 1e-4);
  EXPECT_THROW(bracketed_maximize(f, 0.0, 1.0, 2, 1e-6), std::invalid_argument);
}

TEST(PeakSearch, CosineSeriesHasAnalyticPeak) {
  const double centre = 1.2345678;
  std::vector<double> t, v;
  for (double x = 0.0; x <= 3.0; x += 0.001) {
    t.push_back(x);
    v.push_back(std::cos(x - centre));
  }
  const PeakInfo p = peak_search(t, v);
  EXPECT_NEAR(p.time, centre, 1e-6);
  EXPECT_NEAR(p.value, 1.0, 1e-9);
  // cos >= 1/2 within pi/3 of the peak, >= 0.9 within acos(0.9).
  EXPECT_NEAR(p.half_start, centre - std::numbers::pi / 3.0, 1e-6);
  EXPECT_NEAR(p.half_end, centre + std::numbers::pi / 3.0, 1e-6);
  EXPECT_NEAR(p.near_width(), 2.0 * std::acos(0.9), 1e-6);
  EXPECT_GT(p.half_width(), 0.0);
  EXPECT_LT(p.half_width(), p.time + 2.0);
}

TEST(PeakSearch, PicksFirstQualifyingMaximum) {
  std::vector<double> t, v;
  for (double x = 0.0; x <= 20.0; x += 0.01) {
    t.push_back(x);
    // Ripple maxima below the threshold, a real peak near 5, a taller one at 15.
    // The ripple moves the first peak to 5 + 0.02 cos(10).
    v.push_back(0.02 * std::sin(2 * x) + std::exp(-(x - 5) * (x - 5)) +
                1.2 * std::exp(-(x - 15) * (x - 15)));
  }
  EXPECT_NEAR(peak_search(t, v).time, 5.0 + 0.02 * std::cos(10.0), 1e-3);
}

TEST(PeakSearch, RejectsDegenerateSeries) {
  const std::vector<double> t{0.0, 1.0, 2.0, 3.0};
  EXPECT_THROW(peak_search(t, std::vector<double>{0.0, 1.0, 2.0, 3.0}), NumericalError);
  EXPECT_THROW(peak_search(std::vector<double>{0.0, 1.0}, std::vector<double>{0.0, 1.0}),
               std::invalid_argument);
  EXPECT_THROW(peak_search(t, std::vector<double>{0.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(peak_search(std::vector<double>{0.0, 2.0, 1.0}, std::vector<double>{0.0, 1.0, 0.0}),
               std::invalid_argument);
}

TEST(TransferTime, ClosedForms) {
  EXPECT_NEAR(transfer_time_estimate(10, ProfileKind::FullyEngineered).transfer, 5.0 * std::numbers::pi,
              1e-12);
  EXPECT_NEAR(transfer_time_estimate(25, ProfileKind::MinimallyEngineered).entangling, 15.85, 0.01);
  EXPECT_GT(transfer_time_estimate(25, ProfileKind::Uniform).transfer, 25.0);
  EXPECT_THROW(transfer_time_estimate(1, ProfileKind::Uniform), std::invalid_argument);
}

TEST(Fits, RecoverSyntheticLaws) {
  const std::vector<double> x{10, 20, 50, 100, 1000};
  std::vector<double> y, z;
  for (double v : x) {
    y.push_back(2.5 * std::pow(v, -1.0 / 6.0));
    z.push_back(0.85 + 0.4 * std::cbrt(1.0 / v));
  }
  const PowerLaw p = fit_power_law(x, y);
  EXPECT_NEAR(p.exponent, -1.0 / 6.0, 1e-12);
  EXPECT_NEAR(p.prefactor, 2.5, 1e-12);
  const FiniteSizeFit f = fit_finite_size(x, z, 1.0 / 3.0);
  EXPECT_NEAR(f.limit, 0.85, 1e-12);
  EXPECT_NEAR(f.slope, 0.4, 1e-12);
  EXPECT_THROW(fit_power_law(std::vector<double>{1.0}, std::vector<double>{1.0}),
               std::invalid_argument);
}

TEST(Arrival, MatchesBruteForceScan) {
  const HoppingMatrix a = hopping_matrix(build_profile(ProfileKind::MinimallyEngineered, 20, 0.33));
  const EndpointSpectrum s = endpoint_spectrum(a);
  const Spectrum full = diagonalize(a);
  double best = 0.0;
  for (double t = 14.0; t <= 32.0; t += 0.0005)
    best = std::max(best, std::abs(transfer_amplitude(full, 19, 0, t)));
  const Arrival r = best_arrival(s, 14.0, 32.0, 0.05, 1e-9);
  EXPECT_NEAR(r.amplitude, best, 1e-7);
  EXPECT_NEAR(std::abs(transfer_amplitude(full, 19, 0, r.time)), r.amplitude, 1e-12);
}

TEST(Optimizer, ResultIsConsistentLocalMaximum) {
  BoundarySearchOptions options;
  options.tolerance = 1e-6;
  const OptimizationResult r = optimal_boundary_coupling(25, options);
  EXPECT_NEAR(r.fef, std::pow(1.0 + r.amplitude, 2) / 4.0, 1e-15);
  EXPECT_NEAR(r.fef, 0.97, 0.01);
  EXPECT_GT(r.boundary, 0.0);
  EXPECT_LE(r.boundary, 1.0);
  for (double delta : {-2.0 * options.tolerance, 2.0 * options.tolerance}) {
    const EndpointSpectrum s = endpoint_spectrum(
        hopping_matrix(build_profile(ProfileKind::MinimallyEngineered, 25, r.boundary + delta)));
    EXPECT_LE(best_arrival(s, 0.7 * 25, 1.6 * 25, 0.05, 1e-9).amplitude, r.amplitude + 1e-9);
  }
}

TEST(Optimizer, SmallChainsAndErrors) {
  const OptimizationResult r = optimal_boundary_coupling(3);
  EXPECT_GT(r.boundary, 0.0);
  EXPECT_LE(r.boundary, 1.0);
  EXPECT_THROW(optimal_boundary_coupling(2), std::invalid_argument);
  BoundarySearchOptions bad;
  bad.boundary_hi = 1.5;
  EXPECT_THROW(optimal_boundary_coupling(10, bad), std::invalid_argument);
  // A window no signal reaches: every j' gives the same negligible amplitude.
  BoundarySearchOptions early;
  early.window_lo = 1e-6;
  early.window_hi = 2e-6;
  EXPECT_THROW(optimal_boundary_coupling(200, early), NumericalError);
}

TEST(FefSeries, EndpointAndFullPathsAgree) {
  const HoppingMatrix a = hopping_matrix(build_profile(ProfileKind::MinimallyEngineered, 12, 0.37));
  std::vector<double> t;
  for (double x = 0.0; x < 12.0; x += 0.5) t.push_back(x);
  const std::vector<double> full =
      end_to_end_fef_series(diagonalize(a), initial_state_spec(InitialState::Neel, 12), t);
  const std::vector<double> fast = end_to_end_fef_series(endpoint_spectrum(a), t);
  ASSERT_EQ(full.size(), t.size());
  EXPECT_NEAR(full.front(), 0.5, 1e-14);
  for (std::size_t k = 0; k < t.size(); ++k) EXPECT_NEAR(full[k], fast[k], 1e-12);
}

TEST(Studies, StudyProfileUsesOptimalBoundary) {
  const CouplingProfile p = study_profile(ProfileKind::MinimallyEngineered, 10);
  EXPECT_NEAR(*p.boundary, optimal_boundary_coupling(10).boundary, 1e-12);
  EXPECT_FALSE(study_profile(ProfileKind::FullyEngineered, 10).boundary.has_value());
}

TEST(Ensemble, CleanLimitAndDeterminism) {
  const EnsembleScenario scenario{build_profile(ProfileKind::FullyEngineered, 3)};
  NmrFilterNoise clean_cfg;
  const EnsembleSummary clean = ensemble_run(scenario, clean_cfg, 4, 1);
  // The fully engineered chain generates a perfect Bell pair at t*/2.
  ASSERT_EQ(clean.mean.size(), 1u);
  EXPECT_NEAR(clean.mean[0], 1.0, 1e-9);
  EXPECT_NEAR(clean.standard_error[0], 0.0, 1e-12);

  NmrFilterNoise noisy;
  noisy.epsilon = 0.2;
  const EnsembleSummary a = ensemble_run(scenario, noisy, 8, 5);
  const EnsembleSummary b = ensemble_run(scenario, noisy, 8, 5);
  const EnsembleSummary c = ensemble_run(scenario, noisy, 8, 6);
  EXPECT_EQ(to_json(a), to_json(b));
  EXPECT_NE(to_json(a), to_json(c));
  EXPECT_GT(a.standard_error[0], 0.0);
  EXPECT_LT(a.mean[0], 1.0);
}

TEST(Ensemble, RealizationsAreIndependentOfRunLength) {
  const EnsembleScenario scenario{build_profile(ProfileKind::FullyEngineered, 3)};
  NmrFilterNoise noisy;
  noisy.epsilon = 0.2;
  const EnsembleSummary short_run = ensemble_run(scenario, noisy, 3, 9);
  const EnsembleSummary long_run = ensemble_run(scenario, noisy, 6, 9);
  for (int r = 0; r < 3; ++r) EXPECT_EQ(short_run.samples[r].fef, long_run.samples[r].fef);
}

TEST(Ensemble, StandardErrorScalesAsInverseRoot) {
  const EnsembleScenario scenario{build_profile(ProfileKind::FullyEngineered, 3)};
  NmrFilterNoise noisy;
  noisy.epsilon = 0.2;
  const double small = ensemble_run(scenario, noisy, 100, 21).standard_error[0];
  const double large = ensemble_run(scenario, noisy, 400, 22).standard_error[0];
  EXPECT_NEAR(small / large, 2.0, 0.6);
}

TEST(Ensemble, RejectsBadInput) {
  const EnsembleScenario scenario{build_profile(ProfileKind::FullyEngineered, 8)};
  EXPECT_THROW(ensemble_run(scenario, NmrFilterNoise{0.1}, 1, 0), SizeLimitError);
  EXPECT_THROW(ensemble_run(EnsembleScenario{build_profile(ProfileKind::FullyEngineered, 3)},
                            NmrFilterNoise{0.1}, 0, 0),
               std::invalid_argument);
}

TEST(Studies, DephasingZeroRateMatchesPureEvolution) {
  const CouplingProfile p = build_profile(ProfileKind::FullyEngineered, 6);
  const std::vector<double> gammas{0.0, 0.05};
  const std::vector<DephasingPoint> points = dephasing_study(p, gammas);
  ASSERT_EQ(points.size(), 2u);
  // The fully engineered chain reaches F = 1 at t*/2 without noise.
  EXPECT_NEAR(points[0].fef_at_clean_peak, 1.0, 1e-6);
  EXPECT_NEAR(points[0].peak_fef, 1.0, 1e-6);
  EXPECT_NEAR(points[0].peak_time, std::numbers::pi * 6 / 4, 1e-3);
  EXPECT_LT(points[1].peak_fef, points[0].peak_fef);
  EXPECT_EQ(points[1].pair_fef.size(), 3u);
}

TEST(Studies, AnisotropyZeroIsClean) {
  const CouplingProfile p = build_profile(ProfileKind::FullyEngineered, 6);
  const AnisotropyResult r = anisotropy_study(p, 0.0);
  EXPECT_NEAR(r.ratio, 1.0, 1e-12);
  EXPECT_LT(anisotropy_study(p, 0.5).ratio, 1.0);
}

TEST(Studies, LongRangeDegradesPerfectChain) {
  const PairFefAtPeak r = long_range_study(build_profile(ProfileKind::FullyEngineered, 6));
  ASSERT_EQ(r.fef.size(), 3u);
  for (double f : r.fef) {
    EXPECT_LT(f, 1.0 - 1e-3);
    EXPECT_GT(f, 0.5);
  }
}

}  // namespace
}  // namespace xxq
