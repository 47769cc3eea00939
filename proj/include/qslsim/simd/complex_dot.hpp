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

// Split-complex dot product sum_i a[i] * b[i], the inner loop of the memory
// convolution. One scalar reference kernel plus vector variants chosen at run
// time. Variants differ from the reference only by summation order.

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace qslsim::simd {

enum class Isa { scalar, avx2, neon };

/// Operands stored as separate real and imaginary arrays of equal length.
struct SplitComplexView {
  std::span<const double> re;
  std::span<const double> im;

  std::size_t size() const noexcept { return re.size(); }
  SplitComplexView subview(std::size_t offset, std::size_t count) const {
    return {re.subspan(offset, count), im.subspan(offset, count)};
  }
};

using ComplexDotFn = std::complex<double> (*)(const double* a_re, const double* a_im,
                                              const double* b_re, const double* b_im,
                                              std::size_t n);

namespace detail {
std::complex<double> complex_dot_scalar(const double* a_re, const double* a_im,
                                        const double* b_re, const double* b_im,
                                        std::size_t n);
#if defined(QSLSIM_HAVE_AVX2)
std::complex<double> complex_dot_avx2(const double* a_re, const double* a_im,
                                      const double* b_re, const double* b_im,
                                      std::size_t n);
#endif
#if defined(QSLSIM_HAVE_NEON)
std::complex<double> complex_dot_neon(const double* a_re, const double* a_im,
                                      const double* b_re, const double* b_im,
                                      std::size_t n);
#endif
}  // namespace detail

/// True when the variant was compiled in and the running CPU supports it.
bool isa_supported(Isa isa) noexcept;

/// Widest supported variant.
Isa best_isa() noexcept;

/// best_isa(), unless QSLSIM_KERNEL names a supported variant.
Isa active_isa() noexcept;

std::string_view isa_name(Isa isa) noexcept;
std::optional<Isa> parse_isa(std::string_view name) noexcept;

/// Kernel entry point for `isa`; throws std::invalid_argument if unsupported.
ComplexDotFn resolve(Isa isa);

/// Throws std::invalid_argument on length mismatch.
std::complex<double> complex_dot(Isa isa, SplitComplexView a, SplitComplexView b);

}  // namespace qslsim::simd
