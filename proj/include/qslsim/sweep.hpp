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

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qslsim {

/// Rectangular (N, coupling) table. Cells may be filled in any order and
/// from several threads as long as each slot is written once.
template <typename Cell>
class SweepTable {
 public:
  SweepTable(std::vector<double> couplings, std::vector<int> n_list)
      : couplings_(std::move(couplings)),
        n_list_(std::move(n_list)),
        cells_(couplings_.size() * n_list_.size()) {}

  const std::vector<double>& couplings() const noexcept { return couplings_; }
  const std::vector<int>& n_list() const noexcept { return n_list_; }
  std::size_t size() const noexcept { return cells_.size(); }

  /// Flat index; rows ordered by N, then by coupling.
  std::size_t index(std::size_t n_index, std::size_t coupling_index) const {
    if (n_index >= n_list_.size() || coupling_index >= couplings_.size()) {
      throw std::out_of_range("SweepTable: cell index out of range");
    }
    return n_index * couplings_.size() + coupling_index;
  }

  void set(std::size_t n_index, std::size_t coupling_index, Cell cell) {
    cells_[index(n_index, coupling_index)] = std::move(cell);
  }

  const Cell& at(std::size_t n_index, std::size_t coupling_index) const {
    const auto& slot = cells_[index(n_index, coupling_index)];
    if (!slot) throw std::logic_error("SweepTable: cell not filled");
    return *slot;
  }

  bool complete() const noexcept {
    for (const auto& slot : cells_) {
      if (!slot) return false;
    }
    return true;
  }

 private:
  std::vector<double> couplings_;
  std::vector<int> n_list_;
  std::vector<std::optional<Cell>> cells_;
};

/// start, start + step, ... up to stop (inclusive within step/1e6). Points
/// are start + k * step, not accumulated sums.
std::vector<double> make_grid(double start, double stop, double step);

/// Non-empty, finite, non-negative and strictly increasing; DomainError otherwise.
void validate_coupling_grid(std::span<const double> couplings);
/// Non-empty, every entry >= 1; DomainError otherwise.
void validate_n_list(std::span<const int> n_list);

/// Runs job(i) for i in [0, count) on up to `threads` workers. The first
/// exception thrown by a job is rethrown after all workers join.
void run_cells(std::size_t count, unsigned threads,
               const std::function<void(std::size_t)>& job);

}  // namespace qslsim
