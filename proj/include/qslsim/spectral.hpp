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

// Reservoir spectral densities J(omega) and the memory kernel
//
//   f(tau) = \int d omega J(omega) exp(i (omega0 - omega) tau).
//
// All frequencies are in units of the qubit transition frequency omega0 unless
// a density is built with an explicit omega0.

#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <variant>
#include <vector>

namespace qslsim {

using Complex = std::complex<double>;

inline constexpr double kDefaultQuadratureTol = 1e-10;

/// J(omega) = (1/2pi) gamma0 lambda^2 / ((omega - omega0)^2 + lambda^2)
struct Lorentzian {
  double gamma0;  // coupling strength
  double lambda;  // spectral width
};

/// J(omega) = (gamma/2pi) omega exp(-omega/omega_c)
struct Ohmic {
  double gamma;    // dimensionless coupling
  double omega_c;  // cutoff frequency
};

enum class DensityKind { lorentzian, ohmic };

class SpectralDensity {
 public:
  /// Throws DomainError unless gamma0 >= 0 and lambda, omega0 > 0.
  static SpectralDensity lorentzian(double gamma0, double lambda, double omega0 = 1.0);
  /// Throws DomainError unless gamma >= 0 and omega_c, omega0 > 0.
  static SpectralDensity ohmic(double gamma, double omega_c, double omega0 = 1.0);

  DensityKind kind() const noexcept;
  const std::variant<Lorentzian, Ohmic>& shape() const noexcept { return shape_; }
  double omega0() const noexcept { return omega0_; }

  /// gamma0 for Lorentzian, gamma for Ohmic.
  double coupling() const noexcept;
  /// Same density with the coupling replaced; used to walk sweep grids.
  SpectralDensity with_coupling(double coupling) const;

  std::string_view name() const noexcept;

 private:
  SpectralDensity(std::variant<Lorentzian, Ohmic> shape, double omega0)
      : shape_(shape), omega0_(omega0) {}

  std::variant<Lorentzian, Ohmic> shape_;
  double omega0_;
};

struct KernelValue {
  double tau;
  Complex value;
};

/// J(omega) for omega >= 0; DomainError for negative omega.
double evaluate_density(const SpectralDensity& sd, double omega);

/// Closed-form memory kernel f(tau), tau >= 0.
///   Lorentzian: (gamma0 lambda / 2) exp(-lambda tau)  (omega integral over the
///               whole real line)
///   Ohmic:      (gamma/2pi) exp(i omega0 tau) / (1/omega_c + i tau)^2
Complex correlation_kernel(const SpectralDensity& sd, double tau);

/// The same kernel by direct quadrature of the frequency integral, to
/// absolute tolerance `tol`. Independent of correlation_kernel; used as its
/// oracle. Throws NumericError if the quadrature budget is exhausted.
Complex correlation_kernel_quadrature(const SpectralDensity& sd, double tau,
                                      double tol = kDefaultQuadratureTol);

/// f(k * step) for k = 0 .. count-1.
std::vector<KernelValue> tabulate_kernel(const SpectralDensity& sd, double step,
                                         std::size_t count);

}  // namespace qslsim
