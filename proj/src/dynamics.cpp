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

#include "qslsim/dynamics.hpp"

#include <cmath>

#include <fmt/format.h>

#include "qslsim/errors.hpp"

namespace qslsim {

void SimulationConfig::validate() const {
  if (n_qubits < 1) throw DomainError("invariant violated: n_qubits >= 1");
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("invariant violated: 0 < step");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw DomainError("invariant violated: horizon > 0");
  }
  if (step > horizon / 10.0) throw DomainError("invariant violated: step <= horizon/10");
  if (horizon / step > kMaxGridRatio) {
    throw DomainError("invariant violated: horizon/step <= 1e7");
  }
  if (!(solver_tol > 0.0)) throw DomainError("invariant violated: solver_tol > 0");
  const double count = std::round(horizon / step);
  if (std::abs(count * step - horizon) > 1e-9 * horizon) {
    throw DomainError("invariant violated: horizon must be an integer multiple of step");
  }
}

std::size_t SimulationConfig::steps() const {
  return static_cast<std::size_t>(std::llround(horizon / step));
}

Complex lorentzian_propagator(int n_qubits, double gamma0, double lambda, double t) {
  if (n_qubits < 1 || !(gamma0 >= 0.0) || !(lambda > 0.0) || !(t >= 0.0)) {
    throw DomainError("lorentzian_propagator: need N >= 1, gamma0 >= 0, lambda > 0, t >= 0");
  }
  const double n = static_cast<double>(n_qubits);
  const Complex d = std::sqrt(Complex(lambda * lambda - 2.0 * gamma0 * lambda * n, 0.0));
  const Complex z = 0.5 * d * t;
  const double damping = 0.5 * lambda * t;

  Complex relaxing;  // e^{-lambda t/2} [cosh z + (lambda/D) sinh z]
  if (std::abs(z) < 1e-3) {
    // cosh z + (lambda t/2) sinh(z)/z, Taylor expanded so D = 0 is regular.
    const Complex z2 = z * z;
    const Complex cosh_z = 1.0 + z2 / 2.0 + z2 * z2 / 24.0 + z2 * z2 * z2 / 720.0;
    const Complex sinhc_z = 1.0 + z2 / 6.0 + z2 * z2 / 120.0 + z2 * z2 * z2 / 5040.0;
    relaxing = std::exp(-damping) * (cosh_z + damping * sinhc_z);
  } else {
    // Exponents combined before exponentiating so large lambda t never overflows.
    const Complex grow = std::exp(z - damping);
    const Complex decay = std::exp(-z - damping);
    relaxing = 0.5 * (grow + decay) + 0.5 * (lambda / d) * (grow - decay);
  }
  return (n - 1.0) / n + relaxing / n;
}

AmplitudeTrajectory analytic_trajectory(const SimulationConfig& config) {
  config.validate();
  const auto* lorentzian = std::get_if<Lorentzian>(&config.density.shape());
  if (lorentzian == nullptr) {
    throw DomainError("analytic_trajectory: closed form exists only for the Lorentzian density");
  }
  const std::size_t n = config.steps();
  AmplitudeTrajectory out;
  out.method = Method::analytic;
  out.times.resize(n + 1);
  out.c1.resize(n + 1);
  out.population.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * config.step;
    out.times[k] = t;
    out.c1[k] = lorentzian_propagator(config.n_qubits, lorentzian->gamma0, lorentzian->lambda, t);
    out.population[k] = std::norm(out.c1[k]);
  }
  return out;
}

namespace {

// Kernel on the grid, stored reversed and split so that the history sum
// sum_{j=1}^{k-1} f_{k-j} u_j reads both operands forward:
// f_{k-j} = reversed[n - k + j].
struct ReversedKernel {
  std::vector<Complex> forward;
  std::vector<double> re;
  std::vector<double> im;

  ReversedKernel(const SpectralDensity& sd, double step, std::size_t n)
      : forward(n + 1), re(n + 1), im(n + 1) {
    const auto table = tabulate_kernel(sd, step, n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      forward[k] = table[k].value;
      re[n - k] = table[k].value.real();
      im[n - k] = table[k].value.imag();
    }
  }

  simd::SplitComplexView history_window(std::size_t n, std::size_t k) const {
    return simd::SplitComplexView{re, im}.subview(n - k + 1, k - 1);
  }
};

struct SplitSeries {
  std::vector<double> re;
  std::vector<double> im;

  explicit SplitSeries(std::size_t size) : re(size, 0.0), im(size, 0.0) {}

  Complex operator[](std::size_t k) const { return {re[k], im[k]}; }
  void set(std::size_t k, Complex z) {
    re[k] = z.real();
    im[k] = z.imag();
  }
  simd::SplitComplexView history(std::size_t k) const {
    return simd::SplitComplexView{re, im}.subview(1, k - 1);
  }
};

[[noreturn]] void report_instability(std::size_t k, double step, double magnitude) {
  throw NumericError(fmt::format("Volterra solver unstable at step {} (|C1| = {}); "
                                 "reduce the step (currently h = {})",
                                 k, magnitude, step),
                     magnitude - 1.0);
}

}  // namespace

AmplitudeTrajectory solve_amplitude(const SimulationConfig& config, simd::Isa isa) {
  config.validate();
  const auto dot = simd::resolve(isa);
  const std::size_t n = config.steps();
  const double h = config.step;
  const double big_n = static_cast<double>(config.n_qubits);
  const double limit = 1.0 + 1e3 * config.solver_tol;

  const ReversedKernel kernel(config.density, h, n);
  const Complex f0 = kernel.forward[0];

  SplitSeries u(n + 1);
  u.set(0, 1.0);
  Complex memory_prev = 0.0;  // \int_0^{t_{k-1}} f(t_{k-1} - s) u(s) ds

  AmplitudeTrajectory out;
  out.method = Method::volterra;
  out.times.resize(n + 1);
  out.c1.resize(n + 1);
  out.population.resize(n + 1);
  out.times[0] = 0.0;
  out.c1[0] = 1.0;
  out.population[0] = 1.0;

  for (std::size_t k = 1; k <= n; ++k) {
    Complex history = 0.0;
    if (k > 1) {
      const auto a = kernel.history_window(n, k);
      const auto b = u.history(k);
      history = dot(a.re.data(), a.im.data(), b.re.data(), b.im.data(), k - 1);
    }
    // Trapezoid weights for every node except the unknown endpoint u_k.
    const Complex known = h * (0.5 * kernel.forward[k] * u[0] + history);

    const Complex predicted = u[k - 1] - h * big_n * memory_prev;
    const Complex memory_predicted = known + 0.5 * h * f0 * predicted;
    const Complex corrected = u[k - 1] - 0.5 * h * big_n * (memory_prev + memory_predicted);
    u.set(k, corrected);
    memory_prev = known + 0.5 * h * f0 * corrected;

    const Complex c1 = (big_n - 1.0) / big_n + corrected / big_n;
    const double magnitude = std::abs(c1);
    if (!(magnitude <= limit)) report_instability(k, h, magnitude);
    out.times[k] = static_cast<double>(k) * h;
    out.c1[k] = c1;
    out.population[k] = std::norm(c1);
  }
  return out;
}

std::vector<std::vector<Complex>> solve_amplitude_vector(const SimulationConfig& config) {
  config.validate();
  if (config.n_qubits > 16) throw DomainError("solve_amplitude_vector: N <= 16");
  const auto dot = simd::resolve(simd::Isa::scalar);
  const std::size_t n = config.steps();
  const auto components = static_cast<std::size_t>(config.n_qubits);
  const double h = config.step;
  const double limit = 1.0 + 1e3 * config.solver_tol;

  const ReversedKernel kernel(config.density, h, n);
  const Complex f0 = kernel.forward[0];

  std::vector<SplitSeries> amplitude(components, SplitSeries(n + 1));
  amplitude[0].set(0, 1.0);
  Complex memory_prev = 0.0;  // shared by all components

  std::vector<Complex> predicted(components);
  for (std::size_t k = 1; k <= n; ++k) {
    Complex known = 0.0;
    for (std::size_t m = 0; m < components; ++m) {
      Complex history = 0.0;
      if (k > 1) {
        const auto a = kernel.history_window(n, k);
        const auto b = amplitude[m].history(k);
        history = dot(a.re.data(), a.im.data(), b.re.data(), b.im.data(), k - 1);
      }
      known += h * (0.5 * kernel.forward[k] * amplitude[m][0] + history);
    }

    Complex predicted_sum = 0.0;
    for (std::size_t m = 0; m < components; ++m) {
      predicted[m] = amplitude[m][k - 1] - h * memory_prev;
      predicted_sum += predicted[m];
    }
    const Complex memory_predicted = known + 0.5 * h * f0 * predicted_sum;

    Complex corrected_sum = 0.0;
    for (std::size_t m = 0; m < components; ++m) {
      const Complex next = amplitude[m][k - 1] - 0.5 * h * (memory_prev + memory_predicted);
      amplitude[m].set(k, next);
      corrected_sum += next;
    }
    memory_prev = known + 0.5 * h * f0 * corrected_sum;

    const double magnitude = std::abs(amplitude[0][k]);
    if (!(magnitude <= limit)) report_instability(k, h, magnitude);
  }

  std::vector<std::vector<Complex>> out(components, std::vector<Complex>(n + 1));
  for (std::size_t m = 0; m < components; ++m) {
    for (std::size_t k = 0; k <= n; ++k) out[m][k] = amplitude[m][k];
  }
  return out;
}

DecayRate decay_rate(const AmplitudeTrajectory& trajectory) {
  const std::size_t size = trajectory.size();
  if (size < 3) throw DomainError("decay_rate: need at least 3 samples");
  const double h = trajectory.times[1] - trajectory.times[0];
  const auto& c = trajectory.c1;

  DecayRate out;
  std::size_t usable = size;
  for (std::size_t k = 0; k < size; ++k) {
    if (std::abs(c[k]) <= 1e-12) {
      usable = k;
      out.truncated = true;
      break;
    }
  }
  out.times.reserve(usable);
  out.gamma.reserve(usable);
  for (std::size_t k = 0; k < usable; ++k) {
    Complex derivative;
    if (k == 0) {
      derivative = (-3.0 * c[0] + 4.0 * c[1] - c[2]) / (2.0 * h);
    } else if (k == size - 1) {
      derivative = (3.0 * c[k] - 4.0 * c[k - 1] + c[k - 2]) / (2.0 * h);
    } else {
      derivative = (c[k + 1] - c[k - 1]) / (2.0 * h);
    }
    out.times.push_back(trajectory.times[k]);
    out.gamma.push_back(-(derivative / c[k]).real());
  }
  return out;
}

std::string to_csv(const AmplitudeTrajectory& trajectory) {
  std::string out = "t,re_c1,im_c1,population\n";
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    out += fmt::format("{},{},{},{}\n", trajectory.times[k], trajectory.c1[k].real(),
                       trajectory.c1[k].imag(), trajectory.population[k]);
  }
  return out;
}

std::string to_csv(const DecayRate& rate) {
  std::string out = "t,gamma\n";
  for (std::size_t k = 0; k < rate.times.size(); ++k) {
    out += fmt::format("{},{}\n", rate.times[k], rate.gamma[k]);
  }
  return out;
}

}  // namespace qslsim
