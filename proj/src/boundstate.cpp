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

#include "qslsim/boundstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "qslsim/errors.hpp"
#include "qslsim/quadrature.hpp"

namespace qslsim {
namespace {

// Where the density has its structure, and the length scale around it.
struct Feature {
  double split;
  double scale;
};

Feature feature_of(const SpectralDensity& sd) {
  if (const auto* l = std::get_if<Lorentzian>(&sd.shape())) {
    return {sd.omega0(), l->lambda};
  }
  const auto& o = std::get<Ohmic>(sd.shape());
  return {o.omega_c, o.omega_c};
}

void require_qubits(int n_qubits) {
  if (n_qubits < 1) throw DomainError("n_qubits must be >= 1");
}

}  // namespace

double y_of(const SpectralDensity& sd, int n_qubits, double energy, double tol) {
  require_qubits(n_qubits);
  if (!(energy <= 0.0)) throw DomainError("y_of: energy must be <= 0 (continuum starts at 0)");
  if (!(tol > 0.0)) throw DomainError("y_of: tol must be > 0");
  if (sd.coupling() == 0.0) return sd.omega0();
  if (energy == 0.0 && evaluate_density(sd, 0.0) > 0.0) {
    return -std::numeric_limits<double>::infinity();
  }

  // Gauss-Kronrod nodes never touch the endpoint omega = 0.
  auto integrand = [&](double omega) { return evaluate_density(sd, omega) / (omega - energy); };
  const auto [split, scale] = feature_of(sd);
  const double near = quad::integrate<double>(integrand, 0.0, split, 0.5 * tol).value;
  const double far =
      quad::integrate_semi_infinite<double>(integrand, split, scale, 0.5 * tol).value;
  return sd.omega0() - static_cast<double>(n_qubits) * (near + far);
}

ExistenceCheck bound_state_exists(const SpectralDensity& sd, int n_qubits) {
  const double y0 = y_of(sd, n_qubits, 0.0);
  return {y0 < 0.0, y0};
}

double ohmic_critical_coupling(double omega0, double omega_c, int n_qubits) {
  return 2.0 * std::numbers::pi * omega0 / (static_cast<double>(n_qubits) * omega_c);
}

BoundStateResult find_bound_state(const SpectralDensity& sd, int n_qubits, double tol) {
  require_qubits(n_qubits);
  if (!(tol > 0.0)) throw DomainError("find_bound_state: tol must be > 0");

  const double quad_tol = std::min(kDefaultQuadratureTol, 1e-2 * tol);
  auto g = [&](double e) { return e - y_of(sd, n_qubits, e, quad_tol); };

  BoundStateResult result;
  result.y_at_zero = y_of(sd, n_qubits, 0.0, quad_tol);
  if (!(result.y_at_zero < 0.0)) return result;
  result.marginal = result.y_at_zero > -kMarginalThreshold * sd.omega0();

  // g is strictly increasing, so g(-tol) <= 0 puts the root in [-tol, 0).
  double hi = -tol;
  const double g_hi = g(hi);
  if (!(g_hi > 0.0)) {
    result.status = BoundStatus::unresolved;
    return result;
  }

  double lo = -sd.omega0();
  while (!(g(lo) < 0.0)) {
    if (++result.bracket_expansions > 60) {
      throw NumericError("find_bound_state: no bracket after 60 doublings");
    }
    hi = std::min(hi, lo);
    lo *= 2.0;
  }

  for (int iter = 0;; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = g(mid);
    if (hi - lo <= tol && std::abs(g_mid) <= tol) {
      result.exists = true;
      result.status = BoundStatus::bound;
      result.energy = mid;
      result.residual = std::abs(g_mid);
      break;
    }
    if (iter >= 200 || !(mid > lo && mid < hi)) {
      throw NumericError("find_bound_state: bisection stalled", std::abs(g_mid));
    }
    (g_mid > 0.0 ? hi : lo) = mid;
  }
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  return result;
}

BoundScanTable bound_energy_scan(const SpectralDensity& sd_template,
                                 std::span<const double> couplings,
                                 std::span<const int> n_list, double tol, unsigned threads) {
  validate_coupling_grid(couplings);
  validate_n_list(n_list);
  BoundScanTable table({couplings.begin(), couplings.end()}, {n_list.begin(), n_list.end()});

  run_cells(table.size(), threads, [&](std::size_t flat) {
    const std::size_t n_index = flat / couplings.size();
    const std::size_t c_index = flat % couplings.size();
    BoundScanCell cell;
    cell.coupling = couplings[c_index];
    cell.n_qubits = n_list[n_index];
    try {
      cell.result = find_bound_state(sd_template.with_coupling(cell.coupling), cell.n_qubits, tol);
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
    table.set(n_index, c_index, std::move(cell));
  });
  return table;
}

std::string to_csv(const BoundScanTable& table) {
  std::string out = "coupling,N,energy,exists,residual\n";
  for (std::size_t n = 0; n < table.n_list().size(); ++n) {
    for (std::size_t c = 0; c < table.couplings().size(); ++c) {
      const auto& cell = table.at(n, c);
      const auto& r = cell.result;
      if (r.exists && r.energy) {
        out += fmt::format("{},{},{},1,{}\n", cell.coupling, cell.n_qubits, *r.energy, r.residual);
      } else {
        out += fmt::format("{},{},,0,\n", cell.coupling, cell.n_qubits);
      }
    }
  }
  return out;
}

}  // namespace qslsim
