// Copyright 2026 The qslsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Excited-state amplitude C1(t) of the probe qubit. Initially the probe is
// excited and the N-1 spectators and the field are in their ground/vacuum
// state. All N amplitudes obey
//
//   dC_l/dt = -\int_0^t f(t - s) sum_m C_m(s) ds.
//
// The right side is the same for every l, so u = sum_m C_m satisfies the
// scalar equation du/dt = -N \int_0^t f(t - s) u(s) ds, u(0) = 1, and
// C1 = (N-1)/N + u/N exactly.

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "qslsim/simd/complex_dot.hpp"
#include "qslsim/spectral.hpp"

namespace qslsim {

inline constexpr double kDefaultHorizon = 10.0;
inline constexpr double kDefaultStep = 1e-3;
inline constexpr double kDefaultSolverTol = 1e-8;
inline constexpr double kMaxGridRatio = 1e7;

struct SimulationConfig {
  int n_qubits = 1;
  SpectralDensity density = SpectralDensity::lorentzian(1.0, 1.0);
  double horizon = kDefaultHorizon;
  double step = kDefaultStep;
  double solver_tol = kDefaultSolverTol;

  /// DomainError naming the violated invariant: "n_qubits >= 1",
  /// "0 < step", "step <= horizon/10", "horizon/step <= 1e7", ...
  void validate() const;
  /// Number of steps; times are k * step for k = 0 .. steps().
  std::size_t steps() const;
};

enum class Method { analytic, volterra };

struct AmplitudeTrajectory {
  std::vector<double> times;
  std::vector<Complex> c1;
  std::vector<double> population;  // |c1|^2
  Method method = Method::volterra;

  std::size_t size() const noexcept { return times.size(); }
  double horizon() const { return times.back(); }
};

/// G(t) = (N-1)/N + e^{-lambda t/2}/N [cosh(Dt/2) + (lambda/D) sinh(Dt/2)],
/// D = sqrt(lambda^2 - 2 gamma0 lambda N), evaluated in complex arithmetic;
/// continuous through D = 0.
Complex lorentzian_propagator(int n_qubits, double gamma0, double lambda, double t);

/// G(t) sampled on the config grid. DomainError for a non-Lorentzian density.
AmplitudeTrajectory analytic_trajectory(const SimulationConfig& config);

/// Symmetry-reduced Volterra solve with trapezoidal product integration of
/// the memory term and an Euler predictor / trapezoidal corrector step.
/// NumericError when |C1| exceeds 1 + 1e3 * solver_tol.
AmplitudeTrajectory solve_amplitude(const SimulationConfig& config,
                                    simd::Isa isa = simd::active_isa());

/// All N amplitudes integrated without the reduction (same scheme, one
/// memory sum per component, scalar reference kernel). N <= 16.
std::vector<std::vector<Complex>> solve_amplitude_vector(const SimulationConfig& config);

struct DecayRate {
  std::vector<double> times;
  std::vector<double> gamma;
  bool truncated = false;  // stopped before the first |c1| <= 1e-12
};

/// Gamma(t) = -Re(C1'/C1), C1' by centered differences (second-order
/// one-sided at the ends).
DecayRate decay_rate(const AmplitudeTrajectory& trajectory);

/// CSV with header `t,re_c1,im_c1,population`.
std::string to_csv(const AmplitudeTrajectory& trajectory);
/// CSV with header `t,gamma`.
std::string to_csv(const DecayRate& rate);

}  // namespace qslsim
