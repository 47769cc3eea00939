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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qslsim/errors.hpp"
#include "qslsim/spectral.hpp"

using namespace qslsim;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("evaluate_density examples") {
  CHECK(evaluate_density(SpectralDensity::lorentzian(1.0, 1.0), 1.0) ==
        doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-15));
  CHECK(evaluate_density(SpectralDensity::ohmic(1.0, 1.0), 0.0) == 0.0);
  CHECK(evaluate_density(SpectralDensity::ohmic(2.0 * kPi, 1.0), 1.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(evaluate_density(SpectralDensity::ohmic(1.0, 1.0), -0.1), DomainError);
}

TEST_CASE("density shapes: Lorentzian peak at omega0, Ohmic vanishes at both ends") {
  const auto lor = SpectralDensity::lorentzian(0.7, 0.3, 1.5);
  const double peak = evaluate_density(lor, 1.5);
  CHECK(peak == doctest::Approx(0.7 / (2.0 * kPi)));
  CHECK(evaluate_density(lor, 1.4) < peak);
  CHECK(evaluate_density(lor, 1.6) < peak);

  const auto ohm = SpectralDensity::ohmic(3.0, 2.0);
  CHECK(evaluate_density(ohm, 0.0) == 0.0);
  CHECK(evaluate_density(ohm, 2000.0) < 1e-300);
}

TEST_CASE("evaluate_density is non-negative on omega >= 0") {
  const SpectralDensity densities[] = {SpectralDensity::lorentzian(2.0, 0.5),
                                       SpectralDensity::ohmic(4.0, 0.5)};
  for (const auto& sd : densities) {
    for (double w = 0.0; w < 50.0; w += 0.037) CHECK(evaluate_density(sd, w) >= 0.0);
  }
}

TEST_CASE("constructor invariants") {
  CHECK_THROWS_AS(SpectralDensity::lorentzian(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(SpectralDensity::lorentzian(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(SpectralDensity::ohmic(1.0, -2.0), DomainError);
  CHECK_THROWS_AS(SpectralDensity::ohmic(1.0, 1.0, 0.0), DomainError);
  CHECK_NOTHROW(SpectralDensity::ohmic(0.0, 1.0));
  CHECK(SpectralDensity::ohmic(2.0, 1.0).with_coupling(5.0).coupling() == 5.0);
}

TEST_CASE("correlation_kernel examples") {
  const auto lor = correlation_kernel(SpectralDensity::lorentzian(1.0, 1.0), 0.0);
  CHECK(lor.real() == doctest::Approx(0.5));
  CHECK(lor.imag() == 0.0);

  const auto ohm = correlation_kernel(SpectralDensity::ohmic(2.0 * kPi, 1.0), 0.0);
  CHECK(ohm.real() == doctest::Approx(1.0));
  CHECK(ohm.imag() == 0.0);

  // |f| tau^2 -> gamma omega_c^0 / (2 pi) = 1 for the tau^-2 tail.
  const auto sd = SpectralDensity::ohmic(2.0 * kPi, 1.0);
  const double tail = std::abs(correlation_kernel(sd, 1e3)) * 1e6;
  CHECK(tail == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(std::abs(correlation_kernel(sd, 200.0)) / std::abs(correlation_kernel(sd, 100.0)) ==
        doctest::Approx(0.25).epsilon(1e-3));

  CHECK_THROWS_AS(correlation_kernel(sd, -1.0), DomainError);
}

TEST_CASE("quadrature oracle examples") {
  const auto lor = SpectralDensity::lorentzian(1.0, 1.0);
  CHECK(std::abs(correlation_kernel_quadrature(lor, 0.0) - Complex(0.5, 0.0)) < 1e-10);
  CHECK(std::abs(correlation_kernel_quadrature(lor, 2.0) - Complex(0.5 * std::exp(-2.0), 0.0)) <
        1e-9);

  // e^{i}/(1+i)^2 = e^{i}/(2i) = (sin 1)/2 - i (cos 1)/2
  const auto ohm = SpectralDensity::ohmic(2.0 * kPi, 1.0);
  const Complex expected(0.42073549240394825, -0.2701511529340699);
  CHECK(std::abs(correlation_kernel(ohm, 1.0) - expected) < 1e-14);
  CHECK(std::abs(correlation_kernel_quadrature(ohm, 1.0) - expected) < 1e-9);
  CHECK(std::abs(correlation_kernel_quadrature(ohm, 0.0) - Complex(1.0, 0.0)) < 1e-10);

  CHECK_THROWS_AS(correlation_kernel_quadrature(ohm, -1.0), DomainError);
  CHECK_THROWS_AS(correlation_kernel_quadrature(ohm, 1.0, 0.0), DomainError);
}

TEST_CASE("closed form and quadrature agree on tau in [0, 20]") {
  const double tol = kDefaultQuadratureTol;
  const SpectralDensity densities[] = {
      SpectralDensity::lorentzian(1.0, 1.0), SpectralDensity::lorentzian(3.0, 0.4, 1.3),
      SpectralDensity::ohmic(2.0 * kPi, 1.0), SpectralDensity::ohmic(0.8, 2.5, 0.7)};
  for (const auto& sd : densities) {
    for (double tau = 0.0; tau <= 20.0; tau += 0.625) {
      CAPTURE(sd.name());
      CAPTURE(tau);
      const Complex closed = correlation_kernel(sd, tau);
      const Complex numeric = correlation_kernel_quadrature(sd, tau, tol);
      CHECK(std::abs(closed - numeric) <= 10.0 * tol);
    }
  }
}

TEST_CASE("Lorentzian kernel is real and decreasing") {
  const auto sd = SpectralDensity::lorentzian(2.0, 0.7);
  double previous = correlation_kernel(sd, 0.0).real();
  for (double tau = 0.1; tau <= 20.0; tau += 0.1) {
    const Complex f = correlation_kernel(sd, tau);
    CHECK(f.imag() == 0.0);
    CHECK(f.real() < previous);
    previous = f.real();
  }
}

TEST_CASE("kernel is linear in the coupling") {
  const SpectralDensity densities[] = {SpectralDensity::lorentzian(0.9, 1.2),
                                       SpectralDensity::ohmic(1.7, 0.6)};
  for (const auto& sd : densities) {
    const auto doubled = sd.with_coupling(2.0 * sd.coupling());
    for (double tau = 0.0; tau <= 20.0; tau += 0.25) {
      CHECK(correlation_kernel(doubled, tau) == 2.0 * correlation_kernel(sd, tau));
    }
  }
}

TEST_CASE("tabulate_kernel samples on the step grid") {
  const auto sd = SpectralDensity::ohmic(1.0, 1.0);
  const auto table = tabulate_kernel(sd, 0.5, 5);
  REQUIRE(table.size() == 5);
  CHECK(table[4].tau == 2.0);
  CHECK(table[4].value == correlation_kernel(sd, 2.0));
  CHECK(table[0].value.real() > 0.0);
}
