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

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qslsim/simd/complex_dot.hpp"

namespace qslsim::simd {

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(QSLSIM_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(QSLSIM_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() noexcept {
  if (isa_supported(Isa::avx2)) return Isa::avx2;
  if (isa_supported(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

Isa active_isa() noexcept {
  static const Isa chosen = [] {
    if (const char* env = std::getenv("QSLSIM_KERNEL")) {
      if (auto requested = parse_isa(env); requested && isa_supported(*requested)) {
        return *requested;
      }
    }
    return best_isa();
  }();
  return chosen;
}

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

std::optional<Isa> parse_isa(std::string_view name) noexcept {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  if (name == "neon") return Isa::neon;
  return std::nullopt;
}

ComplexDotFn resolve(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument("complex_dot: variant '" + std::string(isa_name(isa)) +
                                "' is not available on this machine");
  }
  switch (isa) {
#if defined(QSLSIM_HAVE_AVX2)
    case Isa::avx2:
      return &detail::complex_dot_avx2;
#endif
#if defined(QSLSIM_HAVE_NEON)
    case Isa::neon:
      return &detail::complex_dot_neon;
#endif
    default:
      return &detail::complex_dot_scalar;
  }
}

std::complex<double> complex_dot(Isa isa, SplitComplexView a, SplitComplexView b) {
  if (a.re.size() != a.im.size() || b.re.size() != b.im.size() || a.size() != b.size()) {
    throw std::invalid_argument("complex_dot: operand lengths differ");
  }
  return resolve(isa)(a.re.data(), a.im.data(), b.re.data(), b.im.data(), a.size());
}

}  // namespace qslsim::simd
