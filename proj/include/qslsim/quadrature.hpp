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

// Adaptive Gauss-Kronrod quadrature on finite and semi-infinite ranges, plus
// cycle summation with Wynn epsilon acceleration for slowly decaying
// oscillatory integrands.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "qslsim/errors.hpp"

namespace qslsim::quad {

template <typename T>
struct Estimate {
  T value{};
  double error = 0.0;
};

namespace detail {

// 15-point Kronrod abscissae (non-negative half) and weights; every odd
// index is also a node of the embedded 7-point Gauss rule.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(std::complex<double> z) { return std::abs(z); }

template <typename T>
struct Interval {
  double a;
  double b;
  T value;
  double error;

  bool operator<(const Interval& other) const { return error < other.error; }
};

}  // namespace detail

/// One Gauss-Kronrod 7/15 panel on [a, b]; error is |K15 - G7|.
template <typename T, typename F>
Estimate<T> gauss_kronrod15(F&& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const T f_center = f(center);
  T kronrod = f_center * detail::kKronrodWeights[7];
  T gauss = f_center * detail::kGaussWeights[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * detail::kKronrodNodes[i];
    const T pair = f(center - dx) + f(center + dx);
    kronrod += pair * detail::kKronrodWeights[i];
    if (i % 2 == 1) gauss += pair * detail::kGaussWeights[i / 2];
  }
  return {kronrod * half, detail::magnitude((kronrod - gauss) * half)};
}

/// Globally adaptive integration of f over [a, b] to an absolute tolerance.
/// The interval with the largest error estimate is bisected until the summed
/// error drops below max(abs_tol, 50 eps |I|). Throws NumericError when the
/// interval budget runs out.
template <typename T, typename F>
Estimate<T> integrate(F&& f, double a, double b, double abs_tol,
                      std::size_t max_intervals = 5000) {
  if (a == b) return {};
  std::priority_queue<detail::Interval<T>> queue;
  auto first = gauss_kronrod15<T>(f, a, b);
  queue.push({a, b, first.value, first.error});
  T total = first.value;
  double total_error = first.error;

  constexpr double kEps = std::numeric_limits<double>::epsilon();
  while (total_error > std::max(abs_tol, 50.0 * kEps * detail::magnitude(total))) {
    if (queue.size() >= max_intervals) {
      throw NumericError("adaptive quadrature did not converge within " +
                             std::to_string(max_intervals) + " intervals",
                         total_error);
    }
    const auto worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw NumericError("adaptive quadrature hit floating-point resolution",
                         total_error);
    }
    queue.pop();
    const auto left = gauss_kronrod15<T>(f, worst.a, mid);
    const auto right = gauss_kronrod15<T>(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    queue.push({worst.a, mid, left.value, left.error});
    queue.push({mid, worst.b, right.value, right.error});
  }

  // Re-sum from the leaves so cancellation in the running update does not
  // leak into the result.
  T sum{};
  double err = 0.0;
  while (!queue.empty()) {
    sum += queue.top().value;
    err += queue.top().error;
    queue.pop();
  }
  return {sum, err};
}

/// Integral of f over [a, inf) through omega = a + scale * x / (1 - x).
/// Suitable when f decays faster than 1/omega^2 (or is not oscillatory).
template <typename T, typename F>
Estimate<T> integrate_semi_infinite(F&& f, double a, double scale, double abs_tol,
                                    std::size_t max_intervals = 5000) {
  auto mapped = [&](double x) -> T {
    const double one_minus = 1.0 - x;
    const double omega = a + scale * x / one_minus;
    const double jacobian = scale / (one_minus * one_minus);
    if (!std::isfinite(omega) || !std::isfinite(jacobian)) return T{};
    return f(omega) * jacobian;
  };
  return integrate<T>(mapped, 0.0, 1.0, abs_tol, max_intervals);
}

/// Accelerated limit of a sequence of partial sums (Wynn's epsilon
/// algorithm). Feed partial sums one at a time; `estimate()` is the deepest
/// even column reached so far.
template <typename T>
class EpsilonTable {
 public:
  void push(T partial_sum) {
    std::vector<T> next;
    next.reserve(previous_.size() + 1);
    next.push_back(partial_sum);
    for (std::size_t k = 0; k < previous_.size(); ++k) {
      const T diff = next[k] - previous_[k];
      if (detail::magnitude(diff) <= std::numeric_limits<double>::min()) break;
      const T lower = k == 0 ? T{} : previous_[k - 1];
      next.push_back(lower + T{1.0} / diff);
    }
    if (next.size() > kMaxDepth) next.resize(kMaxDepth);
    previous_ = std::move(next);
  }

  T estimate() const {
    std::size_t deepest_even = (previous_.size() - 1) & ~std::size_t{1};
    return previous_[deepest_even];
  }

  std::size_t depth() const { return previous_.size(); }

 private:
  static constexpr std::size_t kMaxDepth = 41;
  std::vector<T> previous_;
};

/// Integral over [a, inf) of an oscillatory integrand with slowly decaying
/// envelope. The range is cut into pieces of length `piece` (a half period
/// of the oscillation works best); the partial sums are accelerated with the
/// epsilon algorithm until three successive estimates agree to abs_tol.
template <typename T, typename F>
Estimate<T> integrate_oscillatory(F&& f, double a, double piece, double abs_tol,
                                  std::size_t max_pieces = 4000) {
  const double piece_tol = 1e-3 * abs_tol;
  EpsilonTable<T> table;
  T partial{};
  T last = T{};
  T before_last = T{};
  double quadrature_error = 0.0;
  for (std::size_t k = 0; k < max_pieces; ++k) {
    const double lo = a + static_cast<double>(k) * piece;
    const auto chunk = integrate<T>(f, lo, lo + piece, piece_tol);
    partial += chunk.value;
    quadrature_error += chunk.error;
    table.push(partial);
    const T current = table.estimate();
    if (k >= 4) {
      const double step1 = detail::magnitude(current - last);
      const double step2 = detail::magnitude(last - before_last);
      if (step1 <= abs_tol && step2 <= abs_tol) {
        return {current, step1 + step2 + quadrature_error};
      }
    }
    before_last = last;
    last = current;
  }
  throw NumericError("oscillatory quadrature did not converge within " +
                         std::to_string(max_pieces) + " pieces",
                     detail::magnitude(last - before_last));
}

}  // namespace qslsim::quad
