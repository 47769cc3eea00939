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

#include "qslsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "qslsim/errors.hpp"

namespace qslsim {

std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("grid step must be > 0");
  if (!std::isfinite(start) || !std::isfinite(stop) || stop < start) {
    throw DomainError("grid stop must be >= grid start");
  }
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-6)) + 1;
  std::vector<double> grid(count);
  // Snap to 12 significant digits so 3 * 0.1 prints as 0.3 in the tables.
  for (std::size_t k = 0; k < count; ++k) {
    const double raw = start + static_cast<double>(k) * step;
    grid[k] = std::strtod(fmt::format("{:.12g}", raw).c_str(), nullptr);
  }
  return grid;
}

void validate_coupling_grid(std::span<const double> couplings) {
  if (couplings.empty()) throw DomainError("coupling grid is empty");
  for (std::size_t k = 0; k < couplings.size(); ++k) {
    if (!std::isfinite(couplings[k]) || couplings[k] < 0.0) {
      throw DomainError("coupling grid values must be finite and >= 0");
    }
    if (k > 0 && !(couplings[k] > couplings[k - 1])) {
      throw DomainError("coupling grid must be strictly increasing");
    }
  }
}

void validate_n_list(std::span<const int> n_list) {
  if (n_list.empty()) throw DomainError("N list is empty");
  for (int n : n_list) {
    if (n < 1) throw DomainError("every N must be >= 1");
  }
}

void run_cells(std::size_t count, unsigned threads,
               const std::function<void(std::size_t)>& job) {
  const auto workers = static_cast<std::size_t>(
      std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
          try {
            job(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace qslsim
