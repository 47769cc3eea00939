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

// Negative-energy bound state of N qubits sharing one reservoir. The energy
// solves E = y(E) with
//
//   y(E) = omega0 - N \int_0^inf J(omega) / (omega - E) d omega,   E <= 0,
//
// and a bound state exists iff y(0) < 0.

#pragma once

#include <optional>
#include <span>
#include <string>

#include "qslsim/spectral.hpp"
#include "qslsim/sweep.hpp"

namespace qslsim {

inline constexpr double kDefaultBoundTol = 1e-8;
/// |y(0)| below this (in units of omega0) marks a root at the continuum edge.
inline constexpr double kMarginalThreshold = 1e-6;

enum class BoundStatus {
  none,        // y(0) >= 0
  bound,       // root located
  unresolved,  // y(0) < 0 but the root lies in [-tol, 0)
};

struct BoundStateResult {
  bool exists = false;
  double y_at_zero = 0.0;
  std::optional<double> energy;
  int bracket_expansions = 0;
  double residual = 0.0;  // |E - y(E)| at the returned energy
  BoundStatus status = BoundStatus::none;
  bool marginal = false;  // 0 > y(0) > -1e-6 omega0
  // Final bisection bracket, g(lo) < 0 < g(hi) with g(E) = E - y(E).
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

struct ExistenceCheck {
  bool exists;
  double y_at_zero;
};

/// y(E) by adaptive quadrature. E = 0 returns -inf when J(0) > 0 (the
/// integral of J/omega diverges at the origin). DomainError for E > 0.
double y_of(const SpectralDensity& sd, int n_qubits, double energy,
            double tol = kDefaultQuadratureTol);

/// (y(0) < 0, y(0)).
ExistenceCheck bound_state_exists(const SpectralDensity& sd, int n_qubits);

/// gamma_c = 2 pi omega0 / (N omega_c): Ohmic bound states need gamma > gamma_c.
double ohmic_critical_coupling(double omega0, double omega_c, int n_qubits);

/// Bisection for the root of g(E) = E - y(E) on [E_lo, -tol]; E_lo starts at
/// -omega0 and doubles until g(E_lo) < 0. Stops when the bracket is at most
/// tol wide and |g| <= tol. NumericError after 60 doublings.
BoundStateResult find_bound_state(const SpectralDensity& sd, int n_qubits,
                                  double tol = kDefaultBoundTol);

struct BoundScanCell {
  double coupling = 0.0;
  int n_qubits = 1;
  BoundStateResult result;
  std::string error;  // non-empty when the cell failed
};

using BoundScanTable = SweepTable<BoundScanCell>;

/// find_bound_state for every (coupling, N). Cell failures are recorded in
/// the cell, not thrown.
BoundScanTable bound_energy_scan(const SpectralDensity& sd_template,
                                 std::span<const double> couplings,
                                 std::span<const int> n_list, double tol = kDefaultBoundTol,
                                 unsigned threads = 1);

/// CSV with header `coupling,N,energy,exists,residual`, rows by (N, coupling).
/// No bound state: empty energy and residual fields.
std::string to_csv(const BoundScanTable& table);

}  // namespace qslsim
