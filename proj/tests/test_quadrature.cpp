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
#include <complex>
#include <numbers>

#include "doctest.h"
#include "qslsim/quadrature.hpp"

using namespace qslsim;

TEST_CASE("gauss_kronrod15 integrates polynomials of degree 22 exactly") {
  auto p = [](double x) { return std::pow(x, 22) + 3.0 * x * x - 1.0; };
  const auto r = quad::gauss_kronrod15<double>(p, -1.0, 2.0);
  const double exact = (std::pow(2.0, 23) + 1.0) / 23.0 + (8.0 + 1.0) - 3.0;
  CHECK(r.value == doctest::Approx(exact).epsilon(1e-13));
}

TEST_CASE("adaptive integration handles a peaked integrand") {
  auto f = [](double x) { return 1.0 / (1e-4 + x * x); };
  const auto r = quad::integrate<double>(f, -1.0, 1.0, 1e-10);
  const double exact = 2.0 / 1e-2 * std::atan(1.0 / 1e-2);
  CHECK(std::abs(r.value - exact) < 1e-8);
}

TEST_CASE("semi-infinite map") {
  auto f = [](double x) { return std::exp(-2.0 * x); };
  const auto r = quad::integrate_semi_infinite<double>(f, 1.0, 1.0, 1e-13);
  CHECK(std::abs(r.value - 0.5 * std::exp(-2.0)) < 1e-12);

  auto g = [](double x) { return 1.0 / (1.0 + x * x); };
  const auto s = quad::integrate_semi_infinite<double>(g, 0.0, 1.0, 1e-12);
  CHECK(std::abs(s.value - std::numbers::pi / 2.0) < 1e-11);
}

TEST_CASE("oscillatory cycle summation with epsilon acceleration") {
  // \int_0^inf cos(x)/(1+x^2) dx = pi / (2e)
  auto f = [](double x) { return std::complex<double>(std::cos(x) / (1.0 + x * x), 0.0); };
  const auto r = quad::integrate_oscillatory<std::complex<double>>(f, 0.0, std::numbers::pi, 1e-11);
  CHECK(std::abs(r.value - std::numbers::pi / (2.0 * std::numbers::e)) < 1e-10);
}

TEST_CASE("epsilon table accelerates the alternating harmonic series") {
  quad::EpsilonTable<double> table;
  double partial = 0.0;
  for (int k = 1; k <= 20; ++k) {
    partial += (k % 2 == 1 ? 1.0 : -1.0) / k;
    table.push(partial);
  }
  CHECK(std::abs(partial - std::log(2.0)) > 1e-2);
  CHECK(std::abs(table.estimate() - std::log(2.0)) < 1e-12);
}

TEST_CASE("exhausted interval budget raises NumericError with a residual") {
  auto nasty = [](double x) { return std::sin(1.0 / x); };
  try {
    quad::integrate<double>(nasty, 1e-6, 1.0, 1e-14, 8);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(e.residual() > 0.0);
  }
}
