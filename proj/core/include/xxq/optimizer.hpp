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

#ifndef XXQ_OPTIMIZER_HPP
#define XXQ_OPTIMIZER_HPP

#include "xxq/chain_model.hpp"
#include "xxq/entanglement.hpp"
#include "xxq/exact_engine.hpp"
#include "xxq/free_fermion.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace xxq {

struct ScalarMaximum {
  double argument = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Golden-section search for a maximum of a unimodal f on [lo, hi].
ScalarMaximum golden_section_maximize(const std::function<double(double)>& f, double lo,
                                      double hi, double tolerance);

/// Best of `samples` equally spaced points on [lo, hi], then golden-section
/// refinement inside the neighbouring cells. Robust to multimodal f as long as
/// the grid resolves the global peak.
ScalarMaximum bracketed_maximize(const std::function<double(double)>& f, double lo, double hi,
                                 int samples, double tolerance);

struct OptimizationResult {
  int sites = 0;
  double boundary = 0.0;      // optimal j'
  double amplitude = 0.0;     // |f_{N,1}(t*)|
  double arrival_time = 0.0;  // t*, units of 1/J
  double fef = 0.0;           // (1 + amplitude)^2 / 4, reached at t*/2
};

struct BoundarySearchOptions {
  double tolerance = 1e-6;
  double boundary_lo = 0.02;
  double boundary_hi = 1.0;
  int boundary_samples = 50;
  // Arrival search window, in units of N/J.
  double window_lo = 0.7;
  double window_hi = 1.6;
  double time_step = 0.05;
};

/// max_t |f_{N,1}(t)| for one minimally engineered chain.
struct Arrival {
  double time = 0.0;
  double amplitude = 0.0;
};
Arrival best_arrival(const EndpointSpectrum& spectrum, double t_lo, double t_hi,
                     double time_step, double tolerance);

/// Maximizes the end-to-end arrival amplitude over j' in (0, 1]. Throws
/// NumericalError if the landscape is flat.
OptimizationResult optimal_boundary_coupling(int sites,
                                             const BoundarySearchOptions& options = {});

struct TransferTimes {
  double transfer = 0.0;    // t*
  double entangling = 0.0;  // t*/2
};

/// Fully engineered: pi N/2. Minimally engineered: N + 2.29 N^{1/3}. Uniform:
/// the Bessel-front arrival N + 0.8086 N^{1/3}.
TransferTimes transfer_time_estimate(int sites, ProfileKind kind);

struct PeakInfo {
  double time = 0.0;
  double value = 0.0;
  // Interval around the peak where the series stays above half / 90% of the
  // peak value, by linear interpolation. Bounded by the series ends if it
  // never drops below the threshold.
  double half_start = 0.0;
  double half_end = 0.0;
  double near_start = 0.0;
  double near_end = 0.0;

  double half_width() const { return half_end - half_start; }
  double near_width() const { return near_end - near_start; }
};

struct PeakOptions {
  // A local maximum counts only if it rises this fraction of the way from
  // the series minimum to its maximum.
  double min_relative_height = 0.5;
};

/// First qualifying local maximum, refined by a parabola through its
/// neighbours. Throws std::invalid_argument for fewer than 3 samples or
/// mismatched spans and NumericalError for a monotone series.
PeakInfo peak_search(std::span<const double> times, std::span<const double> values,
                     const PeakOptions& options = {});

/// F_{1,N}(t) of the quench on a nearest-neighbour chain.
std::vector<double> end_to_end_fef_series(const Spectrum& spectrum, const InitialStateSpec& init,
                                          std::span<const double> times);

/// Fast Neel-only series from the endpoint spectrum.
std::vector<double> end_to_end_fef_series(const EndpointSpectrum& spectrum,
                                          std::span<const double> times);

/// Least-squares slope and prefactor of log y = log a + k log x.
struct PowerLaw {
  double exponent = 0.0;
  double prefactor = 0.0;
};
PowerLaw fit_power_law(std::span<const double> x, std::span<const double> y);

/// Least-squares fit of y = limit + slope * x^{-power}, the leading
/// finite-size correction; `limit` estimates y at x -> infinity.
struct FiniteSizeFit {
  double limit = 0.0;
  double slope = 0.0;
};
FiniteSizeFit fit_finite_size(std::span<const double> x, std::span<const double> y,
                              double power);

// Noise studies on the exact engine.

/// Mirror-pair fidelities at the time t' in [lo, hi] maximizing F_{1,N}.
struct PairFefAtPeak {
  double time = 0.0;
  std::vector<double> fef;  // fef[k] for the pair (k, N-1-k)
};

PairFefAtPeak pair_fef_at_peak(const SpinHamiltonian& h, const PureState& psi0, int chain_sites,
                               double t_lo, double t_hi, int samples = 41,
                               double tolerance = 1e-7);

/// The profile every noise study starts from: a minimally engineered chain
/// uses the optimal boundary coupling for its length.
CouplingProfile study_profile(ProfileKind kind, int sites,
                              std::optional<double> boundary = std::nullopt);

struct EnsembleScenario {
  CouplingProfile profile;
  // Peak search window relative to the t*/2 estimate of the profile.
  double window_lo = 0.8;
  double window_hi = 1.2;
};

struct EnsembleSummary {
  NmrFilterNoise config;
  int realizations = 0;
  std::uint64_t seed = 0;
  std::vector<double> mean;            // per mirror pair
  std::vector<double> standard_error;  // per mirror pair
  double mean_peak_time = 0.0;
  std::vector<PairFefAtPeak> samples;  // one per realization
};

/**
  Disorder average of the double-quantum quench from |FM> under the NMR
  filtering model. Realization r draws its couplings from stream_seed(seed, r)
  and is independent of every other realization.
*/
EnsembleSummary ensemble_run(const EnsembleScenario& scenario, const NmrFilterNoise& config,
                             int realizations, std::uint64_t seed);

struct DephasingPoint {
  double gamma = 0.0;
  double clean_peak_time = 0.0;
  double fef_at_clean_peak = 0.0;  // F_{1,N}(t'_clean; gamma)
  double peak_time = 0.0;          // re-optimized t'(gamma)
  double peak_fef = 0.0;
  std::vector<double> pair_fef;    // mirror pairs at the sample nearest t'(gamma)
  // Optional mirror-pair series from t = 0: pair_series[k][i] at times[i].
  std::vector<double> times;
  std::vector<std::vector<double>> pair_series;
};

struct DephasingOptions {
  double window_lo = 0.8;
  double window_hi = 1.2;
  LindbladOptions integrator;
  // Record every mirror pair each `record_stride` integrator steps; 0 = off.
  int record_stride = 0;
};

/// Neel quench under XX with local dephasing, one entry per rate.
std::vector<DephasingPoint> dephasing_study(const CouplingProfile& profile,
                                            std::span<const double> gammas,
                                            const DephasingOptions& options = {});

/// Neel quench under the ion-trap long-range couplings.
PairFefAtPeak long_range_study(const CouplingProfile& profile, double window_lo = 0.8,
                               double window_hi = 1.2);

struct AnisotropyResult {
  PairFefAtPeak clean;
  PairFefAtPeak perturbed;
  double ratio = 0.0;  // F_{1,N}(t') perturbed / clean
};

/// Neel quench with a spurious zz term, zz_n = jz_ratio * j_n.
AnisotropyResult anisotropy_study(const CouplingProfile& profile, double jz_ratio,
                                  double window_lo = 0.8, double window_hi = 1.2);

}  // namespace xxq

#endif  // XXQ_OPTIMIZER_HPP
