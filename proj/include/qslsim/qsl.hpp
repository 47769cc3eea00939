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

// Quantum speed limit of the probe qubit:
//
//   tau_QSL = tau (1 - |C1(tau)|^2) / \int_0^tau |d/dt |C1(t)|^2| dt.

#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>

#include "qslsim/dynamics.hpp"
#include "qslsim/sweep.hpp"

namespace qslsim {

inline constexpr double kNoEvolutionThreshold = 1e-12;

/// arccos|c1|; the root fidelity with the initially excited state is |C1(tau)|.
/// DomainError if |c1| > 1 + 1e-9.
double bures_angle(Complex c1_at_tau);

enum class QslStatus { ok, no_evolution };

struct QslResult {
  double tau = 0.0;
  std::optional<double> tau_qsl;  // empty when status == no_evolution
  std::optional<double> ratio;    // tau_qsl / tau
  double numerator = 0.0;         // 1 - |C1(tau)|^2
  double denominator = 0.0;       // \int |d/dt |C1|^2| dt
  QslStatus status = QslStatus::ok;
};

/// The time integral of |dP/dt| is taken cell by cell as |P[i+1] - P[i]|
/// (half-step centered difference, midpoint rule), so a monotone population
/// gives tau_qsl == tau up to rounding. Needs >= 100 samples.
QslResult qsl_time(const AmplitudeTrajectory& trajectory);

enum class DynamicsPath {
  automatic,  // closed form for Lorentzian, Volterra otherwise
  analytic,
  volterra,
};

struct QslCell {
  double coupling = 0.0;
  int n_qubits = 1;
  QslResult result;
  std::string error;  // non-empty when the cell failed
};

using QslSweepTable = SweepTable<QslCell>;

/// qsl_time for every (coupling, N). no_evolution and solver failures are
/// recorded per cell.
QslSweepTable qsl_sweep(const SpectralDensity& sd_template, std::span<const double> couplings,
                        std::span<const int> n_list, double tau, double step,
                        DynamicsPath path = DynamicsPath::automatic, unsigned threads = 1);

/// CSV with header `coupling,N,tau,tau_qsl,ratio,status`, rows by (N, coupling).
/// status is ok, no_evolution or error.
std::string to_csv(const QslSweepTable& table);

}  // namespace qslsim
