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

// Built with -mavx2 -mfma; only reached after a cpuid check.

#include <immintrin.h>

#include "qslsim/simd/complex_dot.hpp"

namespace qslsim::simd::detail {
namespace {

inline double horizontal_sum(__m256d v) {
  const __m128d low = _mm256_castpd256_pd128(v);
  const __m128d high = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(low, high);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

std::complex<double> complex_dot_avx2(const double* a_re, const double* a_im,
                                      const double* b_re, const double* b_im,
                                      std::size_t n) {
  // Two independent accumulator sets of four lanes hide the FMA latency.
  __m256d rr0 = _mm256_setzero_pd(), ii0 = _mm256_setzero_pd();
  __m256d ri0 = _mm256_setzero_pd(), ir0 = _mm256_setzero_pd();
  __m256d rr1 = _mm256_setzero_pd(), ii1 = _mm256_setzero_pd();
  __m256d ri1 = _mm256_setzero_pd(), ir1 = _mm256_setzero_pd();

  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d ar0 = _mm256_loadu_pd(a_re + i);
    const __m256d ai0 = _mm256_loadu_pd(a_im + i);
    const __m256d br0 = _mm256_loadu_pd(b_re + i);
    const __m256d bi0 = _mm256_loadu_pd(b_im + i);
    const __m256d ar1 = _mm256_loadu_pd(a_re + i + 4);
    const __m256d ai1 = _mm256_loadu_pd(a_im + i + 4);
    const __m256d br1 = _mm256_loadu_pd(b_re + i + 4);
    const __m256d bi1 = _mm256_loadu_pd(b_im + i + 4);
    rr0 = _mm256_fmadd_pd(ar0, br0, rr0);
    ii0 = _mm256_fmadd_pd(ai0, bi0, ii0);
    ri0 = _mm256_fmadd_pd(ar0, bi0, ri0);
    ir0 = _mm256_fmadd_pd(ai0, br0, ir0);
    rr1 = _mm256_fmadd_pd(ar1, br1, rr1);
    ii1 = _mm256_fmadd_pd(ai1, bi1, ii1);
    ri1 = _mm256_fmadd_pd(ar1, bi1, ri1);
    ir1 = _mm256_fmadd_pd(ai1, br1, ir1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d ar = _mm256_loadu_pd(a_re + i);
    const __m256d ai = _mm256_loadu_pd(a_im + i);
    const __m256d br = _mm256_loadu_pd(b_re + i);
    const __m256d bi = _mm256_loadu_pd(b_im + i);
    rr0 = _mm256_fmadd_pd(ar, br, rr0);
    ii0 = _mm256_fmadd_pd(ai, bi, ii0);
    ri0 = _mm256_fmadd_pd(ar, bi, ri0);
    ir0 = _mm256_fmadd_pd(ai, br, ir0);
  }

  const __m256d re_lanes = _mm256_sub_pd(_mm256_add_pd(rr0, rr1), _mm256_add_pd(ii0, ii1));
  const __m256d im_lanes = _mm256_add_pd(_mm256_add_pd(ri0, ri1), _mm256_add_pd(ir0, ir1));
  double re = horizontal_sum(re_lanes);
  double im = horizontal_sum(im_lanes);

  for (; i < n; ++i) {
    re += a_re[i] * b_re[i] - a_im[i] * b_im[i];
    im += a_re[i] * b_im[i] + a_im[i] * b_re[i];
  }
  return {re, im};
}

}  // namespace qslsim::simd::detail
