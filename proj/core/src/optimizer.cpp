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

#include "xxq/errors.hpp"
#include "xxq/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace xxq {

ScalarMaximum golden_section_maximize(const std::function<double(double)>& f, double lo,
                                      double hi, double tolerance) {
  if (!(hi >= lo)) throw std::invalid_argument("search interval is reversed");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  int evaluations = 2;
  while (b - a > tolerance) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = f(x2);
    }
    ++evaluations;
  }
  return f1 >= f2 ? ScalarMaximum{x1, f1, evaluations} : ScalarMaximum{x2, f2, evaluations};
}

ScalarMaximum bracketed_maximize(const std::function<double(double)>& f, double lo, double hi,
                                 int samples, double tolerance) {
  if (samples < 3) throw std::invalid_argument("need at least 3 grid samples");
  if (!(hi > lo)) throw std::invalid_argument("search interval is empty");
  const double step = (hi - lo) / (samples - 1);
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double v = f(lo + i * step);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double a = lo + std::max(best - 1, 0) * step;
  const double b = lo + std::min(best + 1, samples - 1) * step;
  ScalarMaximum m = golden_section_maximize(f, a, b, tolerance);
  m.evaluations += samples;
  if (best_value > m.value) {
    m.argument = lo + best * step;
    m.value = best_value;
  }
  return m;
}

namespace {

double transfer_modulus(const EndpointSpectrum& s, double t) {
  return std::abs(endpoint_amplitudes(s, t).transfer);
}

}  // namespace

Arrival best_arrival(const EndpointSpectrum& spectrum, double t_lo, double t_hi,
                     double time_step, double tolerance) {
  if (!(t_hi > t_lo) || !(time_step > 0.0))
    throw std::invalid_argument("invalid arrival search window");
  const int n = spectrum.sites();
  const Eigen::ArrayXd weight = spectrum.first.array() * spectrum.last.array();
  const auto steps = static_cast<long>(std::ceil((t_hi - t_lo) / time_step));

  // Phases advance by a fixed rotation per step and are recomputed exactly
  // every kResync steps so that rounding cannot accumulate.
  constexpr long kResync = 256;
  Eigen::ArrayXcd phase(n);
  Eigen::ArrayXcd rotate(n);
  for (int k = 0; k < n; ++k) rotate(k) = std::polar(1.0, -spectrum.energies(k) * time_step);

  long best = 0;
  double best_value = -1.0;
  for (long i = 0; i <= steps; ++i) {
    if (i % kResync == 0) {
      const double t = t_lo + static_cast<double>(i) * time_step;
      for (int k = 0; k < n; ++k) phase(k) = std::polar(1.0, -spectrum.energies(k) * t);
    } else {
      phase *= rotate;
    }
    const double v = std::abs((weight * phase).sum());
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double centre = t_lo + static_cast<double>(best) * time_step;
  const ScalarMaximum m = golden_section_maximize(
      [&](double t) { return transfer_modulus(spectrum, t); },
      std::max(t_lo, centre - time_step), std::min(t_hi, centre + time_step), tolerance);
  if (m.value >= best_value) return {m.argument, m.value};
  return {centre, best_value};
}

OptimizationResult optimal_boundary_coupling(int sites, const BoundarySearchOptions& options) {
  if (sites < 3) throw std::invalid_argument("boundary optimization needs N >= 3");
  if (!(options.boundary_lo > 0.0 && options.boundary_hi <= 1.0 &&
        options.boundary_lo < options.boundary_hi))
    throw std::invalid_argument("boundary search range must lie in (0, 1]");

  const double t_lo = options.window_lo * sites;
  const double t_hi = options.window_hi * sites;
  auto arrival = [&](double boundary) {
    const CouplingProfile p = build_profile(ProfileKind::MinimallyEngineered, sites, boundary);
    return best_arrival(endpoint_spectrum(hopping_matrix(p)), t_lo, t_hi, options.time_step,
                        options.tolerance);
  };
  auto objective = [&](double boundary) { return arrival(boundary).amplitude; };

  // Coarse grid first, so that a flat landscape is reported, not "optimized".
  const int probes = std::max(options.boundary_samples, 3);
  const double step = (options.boundary_hi - options.boundary_lo) / (probes - 1);
  double lowest = std::numeric_limits<double>::infinity();
  double highest = -lowest;
  int best_probe = 0;
  for (int i = 0; i < probes; ++i) {
    const double v = objective(options.boundary_lo + i * step);
    lowest = std::min(lowest, v);
    if (v > highest) {
      highest = v;
      best_probe = i;
    }
  }
  if (!(highest - lowest > 1e-10)) {
    std::ostringstream msg;
    msg << "flat boundary landscape for N=" << sites << ": |f_N1| in [" << lowest << ", "
        << highest << "] over j' in [" << options.boundary_lo << ", " << options.boundary_hi
        << "]";
    throw NumericalError(msg.str());
  }

  ScalarMaximum m = golden_section_maximize(
      objective, options.boundary_lo + std::max(best_probe - 1, 0) * step,
      options.boundary_lo + std::min(best_probe + 1, probes - 1) * step, options.tolerance);
  if (highest > m.value) m = {options.boundary_lo + best_probe * step, highest, 0};
  const Arrival best = arrival(m.argument);
  OptimizationResult r;
  r.sites = sites;
  r.boundary = m.argument;
  r.amplitude = best.amplitude;
  r.arrival_time = best.time;
  r.fef = end_to_end_F_closed_form(std::min(best.amplitude, 1.0));
  return r;
}

TransferTimes transfer_time_estimate(int sites, ProfileKind kind) {
  if (sites < 2) throw std::invalid_argument("a chain needs at least 2 sites");
  const double n = sites;
  double t = 0.0;
  switch (kind) {
    case ProfileKind::FullyEngineered:
      t = std::numbers::pi * n / 2.0;
      break;
    case ProfileKind::MinimallyEngineered:
      t = n + 2.29 * std::cbrt(n);
      break;
    case ProfileKind::Uniform:
      t = n + 0.8086 * std::cbrt(n);
      break;
  }
  return {t, t / 2.0};
}

namespace {

// Crossing of `level` between samples i and j by linear interpolation.
double crossing(std::span<const double> t, std::span<const double> v, std::size_t i,
                std::size_t j, double level) {
  const double dv = v[j] - v[i];
  if (dv == 0.0) return t[i];
  return t[i] + (level - v[i]) * (t[j] - t[i]) / dv;
}

std::pair<double, double> window_above(std::span<const double> t, std::span<const double> v,
                                       std::size_t peak, double level) {
  std::size_t lo = peak;
  while (lo > 0 && v[lo - 1] >= level) --lo;
  const double start = lo == 0 ? t.front() : crossing(t, v, lo - 1, lo, level);
  std::size_t hi = peak;
  while (hi + 1 < v.size() && v[hi + 1] >= level) ++hi;
  const double end = hi + 1 == v.size() ? t.back() : crossing(t, v, hi, hi + 1, level);
  return {start, end};
}

}  // namespace

PeakInfo peak_search(std::span<const double> times, std::span<const double> values,
                     const PeakOptions& options) {
  if (times.size() != values.size())
    throw std::invalid_argument("times and values differ in length");
  if (times.size() < 3) throw std::invalid_argument("peak search needs at least 3 samples");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw std::invalid_argument("times must increase strictly");

  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double threshold = *lo_it + options.min_relative_height * (*hi_it - *lo_it);

  std::size_t peak = 0;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    if (values[i] >= values[i - 1] && values[i] > values[i + 1] && values[i] >= threshold) {
      peak = i;
      break;
    }
  }
  if (peak == 0) throw NumericalError("series has no interior peak (monotone or flat)");

  // Vertex of the parabola through the three samples around the peak.
  const double t0 = times[peak - 1], t1 = times[peak], t2 = times[peak + 1];
  const double v0 = values[peak - 1], v1 = values[peak], v2 = values[peak + 1];
  const double d01 = (v1 - v0) / (t1 - t0);
  const double d12 = (v2 - v1) / (t2 - t1);
  const double curvature = (d12 - d01) / (t2 - t0);
  PeakInfo info;
  info.time = t1;
  info.value = v1;
  if (curvature < 0.0) {
    const double slope = d01 + curvature * (t1 - t0);  // derivative at t1
    const double shift = -slope / (2.0 * curvature);
    if (std::abs(shift) <= std::max(t1 - t0, t2 - t1)) {
      info.time = t1 + shift;
      info.value = v1 + slope * shift + curvature * shift * shift;
    }
  }
  std::tie(info.half_start, info.half_end) = window_above(times, values, peak, 0.5 * info.value);
  std::tie(info.near_start, info.near_end) = window_above(times, values, peak, 0.9 * info.value);
  return info;
}

std::vector<double> end_to_end_fef_series(const Spectrum& spectrum, const InitialStateSpec& init,
                                          std::span<const double> times) {
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times)
    out.push_back(fully_entangled_fraction(end_pair_state(spectrum, init, t)));
  return out;
}

std::vector<double> end_to_end_fef_series(const EndpointSpectrum& spectrum,
                                          std::span<const double> times) {
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(fully_entangled_fraction(neel_end_pair_state(spectrum, t)));
  return out;
}

PowerLaw fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("power-law fit needs at least two (x, y) pairs");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw std::invalid_argument("power-law fit needs x, y > 0");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(x.size());
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("power-law fit needs distinct x values");
  const double k = (n * sxy - sx * sy) / denom;
  return {k, std::exp((sy - k * sx) / n)};
}

FiniteSizeFit fit_finite_size(std::span<const double> x, std::span<const double> y,
                              double power) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("finite-size fit needs at least two (x, y) pairs");
  double su = 0, sy = 0, suu = 0, suy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) throw std::invalid_argument("finite-size fit needs x > 0");
    const double u = std::pow(x[i], -power);
    su += u;
    sy += y[i];
    suu += u * u;
    suy += u * y[i];
  }
  const double n = static_cast<double>(x.size());
  const double denom = n * suu - su * su;
  if (denom == 0.0) throw std::invalid_argument("finite-size fit needs distinct x values");
  const double slope = (n * suy - su * sy) / denom;
  return {(sy - slope * su) / n, slope};
}

PairFefAtPeak pair_fef_at_peak(const SpinHamiltonian& h, const PureState& psi0, int chain_sites,
                               double t_lo, double t_hi, int samples, double tolerance) {
  const SpectralEvolver evolver(h, psi0);
  auto end_fef = [&](double t) {
    return fully_entangled_fraction(reduced_density(evolver.at(t), 0, chain_sites - 1));
  };
  const ScalarMaximum m = bracketed_maximize(end_fef, t_lo, t_hi, samples, tolerance);
  return {m.argument, mirror_pair_fef(evolver.at(m.argument), chain_sites)};
}

CouplingProfile study_profile(ProfileKind kind, int sites, std::optional<double> boundary) {
  if (kind == ProfileKind::MinimallyEngineered && !boundary)
    boundary = optimal_boundary_coupling(sites).boundary;
  return build_profile(kind, sites, boundary);
}

namespace {

std::pair<double, double> entangling_window(const CouplingProfile& profile, double lo,
                                            double hi) {
  if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("invalid peak window");
  const double t = transfer_time_estimate(profile.sites, profile.kind).entangling;
  return {lo * t, hi * t};
}

}  // namespace

EnsembleSummary ensemble_run(const EnsembleScenario& scenario, const NmrFilterNoise& config,
                             int realizations, std::uint64_t seed) {
  validate(scenario.profile);
  validate(NoiseConfig{config});
  if (realizations < 1) throw std::invalid_argument("need at least one realization");
  const int n = scenario.profile.sites;
  const int register_sites = config.two_chain ? 2 * n : n;
  if (register_sites > kMaxPureStateSites)
    throw SizeLimitError("ensemble register of " + std::to_string(register_sites) +
                         " spins exceeds the exact-engine limit");
  const auto [t_lo, t_hi] =
      entangling_window(scenario.profile, scenario.window_lo, scenario.window_hi);

  // Built into a local summary and returned whole: a throwing realization
  // leaves the caller with nothing partial.
  EnsembleSummary summary;
  summary.config = config;
  summary.config.seed = seed;
  summary.realizations = realizations;
  summary.seed = seed;
  summary.samples.reserve(realizations);
  const PureState psi0 = initial_state(InitialState::FmDoubleQuantum, register_sites);
  for (int r = 0; r < realizations; ++r) {
    NmrFilterNoise draw = config;
    draw.seed = stream_seed(seed, static_cast<std::uint64_t>(r));
    const HoppingMatrix a = nmr_perturbed_matrix(scenario.profile, draw);
    const SpinHamiltonian h = build_spin_hamiltonian(double_quantum_spec(a));
    summary.samples.push_back(pair_fef_at_peak(h, psi0, n, t_lo, t_hi));
  }

  const std::size_t pairs = summary.samples.front().fef.size();
  summary.mean.assign(pairs, 0.0);
  summary.standard_error.assign(pairs, 0.0);
  for (const PairFefAtPeak& s : summary.samples) {
    summary.mean_peak_time += s.time / realizations;
    for (std::size_t k = 0; k < pairs; ++k) summary.mean[k] += s.fef[k] / realizations;
  }
  if (realizations > 1) {
    for (std::size_t k = 0; k < pairs; ++k) {
      double ss = 0.0;
      for (const PairFefAtPeak& s : summary.samples) ss += std::pow(s.fef[k] - summary.mean[k], 2);
      summary.standard_error[k] = std::sqrt(ss / (realizations - 1) / realizations);
    }
  }
  return summary;
}

namespace {

// Quadratic through the three samples nearest `at`.
double interpolate(std::span<const double> t, std::span<const double> v, double at) {
  if (at <= t.front()) return v.front();
  if (at >= t.back()) return v.back();
  auto j = static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), at) - t.begin());
  j = std::clamp<std::size_t>(j, 1, t.size() - 2);
  const double x0 = t[j - 1], x1 = t[j], x2 = t[j + 1];
  return v[j - 1] * (at - x1) * (at - x2) / ((x0 - x1) * (x0 - x2)) +
         v[j] * (at - x0) * (at - x2) / ((x1 - x0) * (x1 - x2)) +
         v[j + 1] * (at - x0) * (at - x1) / ((x2 - x0) * (x2 - x1));
}

}  // namespace

std::vector<DephasingPoint> dephasing_study(const CouplingProfile& profile,
                                            std::span<const double> gammas,
                                            const DephasingOptions& options) {
  validate(profile);
  const int n = profile.sites;
  const auto [t_lo, t_hi] = entangling_window(profile, options.window_lo, options.window_hi);
  const SpinHamiltonian h = build_spin_hamiltonian(xx_spec(hopping_matrix(profile)));
  const PureState psi0 = initial_state(InitialState::Neel, n);
  const double clean_peak = pair_fef_at_peak(h, psi0, n, t_lo, t_hi).time;

  const DensityMatrix rho0 = DensityMatrix::from_pure(psi0, 1e-14);
  const int steps = static_cast<int>(std::ceil(t_hi / options.integrator.max_step));
  std::vector<DephasingPoint> out;
  for (double gamma : gammas) {
    std::vector<double> times;
    std::vector<double> fef;
    DensityMatrix best;
    double best_fef = -1.0;
    DephasingPoint p;
    p.pair_series.resize(static_cast<std::size_t>(n / 2));
    auto observe = [&](int step, double t, const DensityMatrix& rho) {
      if (options.record_stride > 0 && step % options.record_stride == 0) {
        p.times.push_back(t);
        const std::vector<double> pairs = mirror_pair_fef(rho, n);
        for (std::size_t k = 0; k < pairs.size(); ++k) p.pair_series[k].push_back(pairs[k]);
      }
      if (t < t_lo - 1e-12) return;
      const double f = fully_entangled_fraction(reduced_density(rho, 0, n - 1));
      times.push_back(t);
      fef.push_back(f);
      if (f > best_fef) {
        best_fef = f;
        best = rho;
      }
    };
    evolve_lindblad(h, rho0, gamma, t_hi, steps, observe, options.integrator);
    if (times.size() < 3) throw NumericalError("too few samples in the dephasing window");
    if (options.record_stride <= 0) p.pair_series.clear();

    p.gamma = gamma;
    p.clean_peak_time = clean_peak;
    p.fef_at_clean_peak = interpolate(times, fef, clean_peak);
    // Parabolic refinement of the best sample; F can peak at a window edge
    // under strong dephasing, where the sample itself is reported.
    const auto i = static_cast<std::size_t>(std::max_element(fef.begin(), fef.end()) -
                                            fef.begin());
    p.peak_time = times[i];
    p.peak_fef = fef[i];
    if (i > 0 && i + 1 < fef.size() && fef[i + 1] < fef[i]) {
      const PeakInfo refined =
          peak_search(std::span(times).subspan(i - 1, 3), std::span(fef).subspan(i - 1, 3),
                      PeakOptions{0.0});
      p.peak_time = refined.time;
      p.peak_fef = refined.value;
    }
    p.pair_fef = mirror_pair_fef(best, n);
    out.push_back(std::move(p));
  }
  return out;
}

PairFefAtPeak long_range_study(const CouplingProfile& profile, double window_lo,
                               double window_hi) {
  validate(profile);
  const auto [t_lo, t_hi] = entangling_window(profile, window_lo, window_hi);
  const SpinHamiltonian h = build_spin_hamiltonian(xx_spec(ion_longrange_matrix(profile)));
  return pair_fef_at_peak(h, initial_state(InitialState::Neel, profile.sites), profile.sites,
                          t_lo, t_hi, 81);
}

AnisotropyResult anisotropy_study(const CouplingProfile& profile, double jz_ratio,
                                  double window_lo, double window_hi) {
  validate(profile);
  validate(NoiseConfig{XxzAnisotropyNoise{jz_ratio}});
  const int n = profile.sites;
  const auto [t_lo, t_hi] = entangling_window(profile, window_lo, window_hi);
  const HoppingMatrix a = hopping_matrix(profile);
  const PureState psi0 = initial_state(InitialState::Neel, n);
  AnisotropyResult r;
  r.clean = pair_fef_at_peak(build_spin_hamiltonian(xx_spec(a)), psi0, n, t_lo, t_hi);
  r.perturbed = pair_fef_at_peak(build_spin_hamiltonian(xxz_spec(a, XxzAnisotropyNoise{jz_ratio})),
                                 psi0, n, t_lo, t_hi);
  r.ratio = r.perturbed.fef.front() / r.clean.fef.front();
  return r;
}

}  // namespace xxq
