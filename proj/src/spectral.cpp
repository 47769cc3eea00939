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

#include "qslsim/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qslsim/errors.hpp"
#include "qslsim/quadrature.hpp"

namespace qslsim {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be positive and finite");
  }
}

void require_non_negative(double value, const char* name) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be non-negative and finite");
  }
}

}  // namespace

SpectralDensity SpectralDensity::lorentzian(double gamma0, double lambda, double omega0) {
  require_non_negative(gamma0, "gamma0");
  require_positive(lambda, "lambda");
  require_positive(omega0, "omega0");
  return SpectralDensity(Lorentzian{gamma0, lambda}, omega0);
}

SpectralDensity SpectralDensity::ohmic(double gamma, double omega_c, double omega0) {
  require_non_negative(gamma, "gamma");
  require_positive(omega_c, "omega_c");
  require_positive(omega0, "omega0");
  return SpectralDensity(Ohmic{gamma, omega_c}, omega0);
}

DensityKind SpectralDensity::kind() const noexcept {
  return std::holds_alternative<Lorentzian>(shape_) ? DensityKind::lorentzian
                                                    : DensityKind::ohmic;
}

double SpectralDensity::coupling() const noexcept {
  return std::visit(Overloaded{[](const Lorentzian& l) { return l.gamma0; },
                               [](const Ohmic& o) { return o.gamma; }},
                    shape_);
}

SpectralDensity SpectralDensity::with_coupling(double coupling) const {
  return std::visit(
      Overloaded{[&](const Lorentzian& l) { return lorentzian(coupling, l.lambda, omega0_); },
                 [&](const Ohmic& o) { return ohmic(coupling, o.omega_c, omega0_); }},
      shape_);
}

std::string_view SpectralDensity::name() const noexcept {
  return kind() == DensityKind::lorentzian ? "lorentzian" : "ohmic";
}

double evaluate_density(const SpectralDensity& sd, double omega) {
  if (!(omega >= 0.0)) throw DomainError("evaluate_density: omega must be >= 0");
  const double omega0 = sd.omega0();
  return std::visit(
      Overloaded{[&](const Lorentzian& l) {
                   const double detuning = omega - omega0;
                   return l.gamma0 * l.lambda * l.lambda /
                          (kTwoPi * (detuning * detuning + l.lambda * l.lambda));
                 },
                 [&](const Ohmic& o) {
                   return o.gamma / kTwoPi * omega * std::exp(-omega / o.omega_c);
                 }},
      sd.shape());
}

Complex correlation_kernel(const SpectralDensity& sd, double tau) {
  if (!(tau >= 0.0)) throw DomainError("correlation_kernel: tau must be >= 0");
  const double omega0 = sd.omega0();
  return std::visit(
      Overloaded{[&](const Lorentzian& l) {
                   return Complex(0.5 * l.gamma0 * l.lambda * std::exp(-l.lambda * tau), 0.0);
                 },
                 [&](const Ohmic& o) {
                   const Complex denom(1.0 / o.omega_c, tau);
                   return o.gamma / kTwoPi * std::polar(1.0, omega0 * tau) / (denom * denom);
                 }},
      sd.shape());
}

namespace {

// Lorentzian: the frequency integral runs over the whole real line. With
// u = omega - omega0 the phase is exp(-i u tau); the two half-lines are folded
// onto u in [0, inf).
Complex lorentzian_kernel_quadrature(const Lorentzian& l, double omega0, double tau,
                                     double tol) {
  // Extended to omega < 0, which evaluate_density rejects.
  auto density = [&](double omega) {
    const double detuning = omega - omega0;
    return l.gamma0 * l.lambda * l.lambda /
           (kTwoPi * (detuning * detuning + l.lambda * l.lambda));
  };
  if (tau == 0.0) {
    auto folded = [&](double u) { return density(omega0 + u) + density(omega0 - u); };
    return quad::integrate_semi_infinite<double>(folded, 0.0, l.lambda, tol).value;
  }
  auto folded = [&](double u) {
    const Complex phase = std::polar(1.0, -u * tau);
    return density(omega0 + u) * phase + density(omega0 - u) * std::conj(phase);
  };
  const double half_period = std::numbers::pi / tau;
  return quad::integrate_oscillatory<Complex>(folded, 0.0, half_period, tol).value;
}

// Ohmic: semi-infinite range through omega = omega_c x / (1 - x).
Complex ohmic_kernel_quadrature(const Ohmic& o, double omega0, double tau, double tol) {
  auto integrand = [&](double omega) {
    const double density = o.gamma / kTwoPi * omega * std::exp(-omega / o.omega_c);
    return density * std::polar(1.0, (omega0 - omega) * tau);
  };
  return quad::integrate_semi_infinite<Complex>(integrand, 0.0, o.omega_c, tol).value;
}

}  // namespace

Complex correlation_kernel_quadrature(const SpectralDensity& sd, double tau, double tol) {
  if (!(tau >= 0.0)) throw DomainError("correlation_kernel_quadrature: tau must be >= 0");
  if (!(tol > 0.0)) throw DomainError("correlation_kernel_quadrature: tol must be > 0");
  return std::visit(
      Overloaded{[&](const Lorentzian& l) { return lorentzian_kernel_quadrature(l, sd.omega0(), tau, tol); },
                 [&](const Ohmic& o) {
                   return ohmic_kernel_quadrature(o, sd.omega0(), tau, tol);
                 }},
      sd.shape());
}

std::vector<KernelValue> tabulate_kernel(const SpectralDensity& sd, double step,
                                         std::size_t count) {
  if (!(step > 0.0)) throw DomainError("tabulate_kernel: step must be > 0");
  std::vector<KernelValue> table;
  table.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double tau = static_cast<double>(k) * step;
    table.push_back({tau, correlation_kernel(sd, tau)});
  }
  return table;
}

}  // namespace qslsim
