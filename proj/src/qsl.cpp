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

#include "qslsim/qsl.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qslsim/errors.hpp"

namespace qslsim {

double bures_angle(Complex c1_at_tau) {
  const double magnitude = std::abs(c1_at_tau);
  if (!(magnitude <= 1.0 + 1e-9)) throw DomainError("bures_angle: |c1| must be <= 1");
  return std::acos(std::min(magnitude, 1.0));
}

QslResult qsl_time(const AmplitudeTrajectory& trajectory) {
  const std::size_t size = trajectory.size();
  if (size < 100) throw DomainError("qsl_time: trajectory needs at least 100 samples");
  const auto& p = trajectory.population;

  QslResult out;
  out.tau = trajectory.horizon() - trajectory.times.front();
  out.numerator = 1.0 - p.back();
  double variation = 0.0;
  for (std::size_t k = 0; k + 1 < size; ++k) variation += std::abs(p[k + 1] - p[k]);
  out.denominator = variation;

  if (out.denominator < kNoEvolutionThreshold) {
    out.status = QslStatus::no_evolution;
    return out;
  }
  out.tau_qsl = out.tau * out.numerator / out.denominator;
  out.ratio = *out.tau_qsl / out.tau;
  return out;
}

QslSweepTable qsl_sweep(const SpectralDensity& sd_template, std::span<const double> couplings,
                        std::span<const int> n_list, double tau, double step,
                        DynamicsPath path, unsigned threads) {
  validate_coupling_grid(couplings);
  validate_n_list(n_list);
  SimulationConfig probe{n_list.front(), sd_template, tau, step, kDefaultSolverTol};
  probe.validate();
  const bool lorentzian = sd_template.kind() == DensityKind::lorentzian;
  if (path == DynamicsPath::analytic && !lorentzian) {
    throw DomainError("qsl_sweep: the analytic path needs a Lorentzian density");
  }
  const bool use_analytic = lorentzian && path != DynamicsPath::volterra;

  QslSweepTable table({couplings.begin(), couplings.end()}, {n_list.begin(), n_list.end()});
  run_cells(table.size(), threads, [&](std::size_t flat) {
    const std::size_t n_index = flat / couplings.size();
    const std::size_t c_index = flat % couplings.size();
    QslCell cell;
    cell.coupling = couplings[c_index];
    cell.n_qubits = n_list[n_index];
    cell.result.tau = tau;
    try {
      SimulationConfig config{cell.n_qubits, sd_template.with_coupling(cell.coupling), tau, step,
                              kDefaultSolverTol};
      const auto trajectory =
          use_analytic ? analytic_trajectory(config) : solve_amplitude(config);
      cell.result = qsl_time(trajectory);
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
    table.set(n_index, c_index, std::move(cell));
  });
  return table;
}

std::string to_csv(const QslSweepTable& table) {
  std::string out = "coupling,N,tau,tau_qsl,ratio,status\n";
  for (std::size_t n = 0; n < table.n_list().size(); ++n) {
    for (std::size_t c = 0; c < table.couplings().size(); ++c) {
      const auto& cell = table.at(n, c);
      const auto& r = cell.result;
      if (!cell.error.empty()) {
        out += fmt::format("{},{},{},,,error\n", cell.coupling, cell.n_qubits, r.tau);
      } else if (r.status == QslStatus::no_evolution) {
        out += fmt::format("{},{},{},,,no_evolution\n", cell.coupling, cell.n_qubits, r.tau);
      } else {
        out += fmt::format("{},{},{},{},{},ok\n", cell.coupling, cell.n_qubits, r.tau,
                           *r.tau_qsl, *r.ratio);
      }
    }
  }
  return out;
}

}  // namespace qslsim
