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
#include <random>
#include <vector>

#include "doctest.h"
#include "qslsim/boundstate.hpp"
#include "qslsim/errors.hpp"

using namespace qslsim;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent closed form of y(E) for the Ohmic density:
// \int_0^inf w e^{-w/c} / (w + a) dw = c - a e^{a/c} E1(a/c), E1(x) = -Ei(-x).
double ohmic_y_closed_form(double gamma, double omega_c, int n, double energy,
                           double omega0 = 1.0) {
  const double a = -energy;
  const double integral =
      a > 0.0 ? omega_c + a * std::exp(a / omega_c) * std::expint(-a / omega_c) : omega_c;
  return omega0 - n * gamma / (2.0 * kPi) * integral;
}

}  // namespace

TEST_CASE("y_of at E = 0 matches omega0 - N gamma omega_c / 2pi for Ohmic") {
  for (int n : {1, 2, 5}) {
    for (double gamma : {0.5, 3.0, 7.0}) {
      for (double wc : {0.5, 1.0, 2.0}) {
        const auto sd = SpectralDensity::ohmic(gamma, wc);
        CHECK(y_of(sd, n, 0.0) == doctest::Approx(1.0 - n * gamma * wc / (2.0 * kPi)).epsilon(1e-11));
      }
    }
  }
  CHECK(std::abs(y_of(SpectralDensity::ohmic(2.0 * kPi, 1.0), 1, 0.0)) < 1e-10);
}

TEST_CASE("y_of below the continuum against the E1 closed form") {
  for (double e : {-1e-6, -0.01, -0.7, -3.0, -40.0}) {
    const auto sd = SpectralDensity::ohmic(3.0, 2.0, 1.2);
    CAPTURE(e);
    CHECK(std::abs(y_of(sd, 2, e) - ohmic_y_closed_form(3.0, 2.0, 2, e, 1.2)) < 1e-9);
  }
  // scipy reference value for the same expression
  CHECK(std::abs(ohmic_y_closed_form(3.0, 2.0, 2, -0.7) - (-0.15648499532158966)) < 1e-12);
}

TEST_CASE("y_of for the Lorentzian density") {
  // mpmath, 30 digits: 1 - 3 \int_0^inf J(w)/(w + 1/2) dw with gamma0 = 2, lambda = 1
  const auto sd = SpectralDensity::lorentzian(2.0, 1.0);
  CHECK(std::abs(y_of(sd, 3, -0.5) - (-0.34395698482674836)) < 1e-9);
  // J(0) > 0: the integral of J/omega diverges at the origin.
  CHECK(y_of(sd, 1, 0.0) == -std::numeric_limits<double>::infinity());
  CHECK(y_of(SpectralDensity::lorentzian(0.0, 1.0), 4, 0.0) == 1.0);
}

TEST_CASE("y_of tends to omega0 far below the continuum") {
  CHECK(std::abs(y_of(SpectralDensity::ohmic(5.0, 1.0), 3, -1e9) - 1.0) < 1e-6);
  CHECK(std::abs(y_of(SpectralDensity::lorentzian(2.0, 1.0), 3, -1e9) - 1.0) < 1e-6);
}

TEST_CASE("y_of domain errors") {
  const auto sd = SpectralDensity::ohmic(1.0, 1.0);
  CHECK_THROWS_AS(y_of(sd, 1, 0.1), DomainError);
  CHECK_THROWS_AS(y_of(sd, 0, -0.1), DomainError);
  CHECK_THROWS_AS(y_of(sd, 1, -0.1, 0.0), DomainError);
}

TEST_CASE("bound_state_exists follows the Ohmic criterion") {
  CHECK(bound_state_exists(SpectralDensity::ohmic(7.0, 1.0), 1).exists);
  CHECK_FALSE(bound_state_exists(SpectralDensity::ohmic(5.0, 1.0), 1).exists);
  CHECK(bound_state_exists(SpectralDensity::ohmic(5.0, 1.0), 2).exists);
}

TEST_CASE("ohmic_critical_coupling") {
  CHECK(ohmic_critical_coupling(1.0, 1.0, 1) == doctest::Approx(2.0 * kPi));
  CHECK(ohmic_critical_coupling(1.0, 1.0, 10) == doctest::Approx(kPi / 5.0));
  CHECK(ohmic_critical_coupling(1.0, 1.0, 1000000) < 1e-5);
}

TEST_CASE("existence agrees with the critical coupling on random triples") {
  std::mt19937_64 rng(20261018);
  std::uniform_real_distribution<double> gamma_dist(0.05, 15.0);
  std::uniform_real_distribution<double> wc_dist(0.2, 4.0);
  std::uniform_int_distribution<int> n_dist(1, 12);
  for (int i = 0; i < 100; ++i) {
    const double gamma = gamma_dist(rng);
    const double wc = wc_dist(rng);
    const int n = n_dist(rng);
    CAPTURE(gamma);
    CAPTURE(wc);
    CAPTURE(n);
    const bool expected = gamma > ohmic_critical_coupling(1.0, wc, n);
    CHECK(bound_state_exists(SpectralDensity::ohmic(gamma, wc), n).exists == expected);
  }
}

TEST_CASE("find_bound_state examples") {
  const auto none = find_bound_state(SpectralDensity::ohmic(5.0, 1.0), 1);
  CHECK_FALSE(none.exists);
  CHECK(none.status == BoundStatus::none);
  CHECK_FALSE(none.energy.has_value());

  const auto bound = find_bound_state(SpectralDensity::ohmic(7.0, 1.0), 1);
  REQUIRE(bound.exists);
  CHECK(bound.status == BoundStatus::bound);
  CHECK(*bound.energy < 0.0);
  CHECK(bound.residual <= kDefaultBoundTol);
  // scipy brentq on the E1 closed form
  CHECK(std::abs(*bound.energy - (-0.02486372014300587)) < 2e-8);

  // Weak Lorentzian coupling: the root is below double resolution of the tolerance.
  const auto weak = find_bound_state(SpectralDensity::lorentzian(1e-3, 1.0), 4);
  CHECK_FALSE(weak.exists);
  CHECK(weak.status == BoundStatus::unresolved);
  CHECK(std::isinf(weak.y_at_zero));
}

TEST_CASE("find_bound_state scipy anchors across N") {
  const std::vector<std::pair<int, double>> anchors = {
      {2, -0.1642623515360503}, {4, -0.6009162202495096}, {10, -1.5552212357973196}};
  for (const auto& [n, energy] : anchors) {
    const auto r = find_bound_state(SpectralDensity::ohmic(5.0, 1.0), n);
    REQUIRE(r.exists);
    CHECK(std::abs(*r.energy - energy) < 2e-8);
  }
}

TEST_CASE("marginal flag near the Ohmic threshold") {
  const double gamma_c = ohmic_critical_coupling(1.0, 1.0, 1);
  const auto r = find_bound_state(SpectralDensity::ohmic(gamma_c * (1.0 + 1e-7), 1.0), 1);
  CHECK(r.y_at_zero < 0.0);
  CHECK(r.marginal);
  const auto clear = find_bound_state(SpectralDensity::ohmic(8.0, 1.0), 1);
  CHECK_FALSE(clear.marginal);
}

TEST_CASE("bisection invariants: single sign change, residual and self-consistency") {
  const SpectralDensity densities[] = {
      SpectralDensity::ohmic(7.0, 1.0), SpectralDensity::ohmic(2.0, 0.5, 0.8),
      SpectralDensity::lorentzian(2.0, 1.0), SpectralDensity::lorentzian(0.8, 0.3)};
  for (const auto& sd : densities) {
    for (int n : {1, 3, 8}) {
      const double tol = kDefaultBoundTol;
      const auto r = find_bound_state(sd, n, tol);
      if (!r.exists) continue;
      auto g = [&](double e) { return e - y_of(sd, n, e, 1e-12); };
      CHECK(g(r.bracket_lo) < 0.0);
      CHECK(g(r.bracket_hi) > 0.0);
      CHECK(r.bracket_hi - r.bracket_lo <= tol);
      CHECK(r.residual <= tol);
      CHECK(std::abs(y_of(sd, n, *r.energy) - *r.energy) <= 10.0 * tol);
    }
  }
}

TEST_CASE("bound energy deepens with N") {
  const SpectralDensity densities[] = {SpectralDensity::ohmic(4.0, 1.0),
                                       SpectralDensity::lorentzian(1.5, 1.0)};
  for (const auto& sd : densities) {
    std::optional<double> previous;
    for (int n = 1; n <= 12; ++n) {
      const auto r = find_bound_state(sd, n);
      if (previous) {
        REQUIRE(r.exists);
        CHECK(*r.energy <= *previous);
      }
      if (r.exists) previous = r.energy;
    }
    CHECK(previous.has_value());
  }
}

TEST_CASE("bound_energy_scan: threshold, monotone energies, CSV") {
  const auto grid = make_grid(0.0, 8.0, 0.1);
  const std::vector<int> ns = {1, 2, 4, 10};
  const auto table = bound_energy_scan(SpectralDensity::ohmic(1.0, 1.0), grid, ns);
  REQUIRE(table.complete());

  for (std::size_t ni = 0; ni < ns.size(); ++ni) {
    const double gamma_c = ohmic_critical_coupling(1.0, 1.0, ns[ni]);
    std::optional<double> first;
    std::optional<double> previous;
    for (std::size_t ci = 0; ci < grid.size(); ++ci) {
      const auto& cell = table.at(ni, ci);
      CHECK(cell.error.empty());
      if (!cell.result.exists) {
        CHECK_FALSE(previous.has_value());
        continue;
      }
      if (!first) first = grid[ci];
      if (previous) CHECK(*cell.result.energy < *previous);
      previous = cell.result.energy;
    }
    REQUIRE(first.has_value());
    CHECK(*first > gamma_c);
    CHECK(*first - gamma_c <= 0.1 + 1e-12);
  }

  const std::string csv = to_csv(table);
  CHECK(csv.rfind("coupling,N,energy,exists,residual\n", 0) == 0);
  CHECK(csv.find("\n0,1,,0,\n") != std::string::npos);
}

TEST_CASE("bound_energy_scan result does not depend on the thread count") {
  const auto grid = make_grid(0.5, 4.0, 0.5);
  const std::vector<int> ns = {1, 3};
  const auto sd = SpectralDensity::lorentzian(1.0, 1.0);
  CHECK(to_csv(bound_energy_scan(sd, grid, ns, kDefaultBoundTol, 1)) ==
        to_csv(bound_energy_scan(sd, grid, ns, kDefaultBoundTol, 4)));
}

TEST_CASE("bound_energy_scan rejects bad grids") {
  const std::vector<int> ns = {1};
  const std::vector<double> decreasing = {1.0, 0.5};
  const std::vector<double> negative = {-1.0, 0.5};
  const auto sd = SpectralDensity::ohmic(1.0, 1.0);
  CHECK_THROWS_AS(bound_energy_scan(sd, decreasing, ns), DomainError);
  CHECK_THROWS_AS(bound_energy_scan(sd, negative, ns), DomainError);
  const std::vector<int> zero_n = {0};
  const std::vector<double> ok = {1.0};
  CHECK_THROWS_AS(bound_energy_scan(sd, ok, zero_n), DomainError);
}
