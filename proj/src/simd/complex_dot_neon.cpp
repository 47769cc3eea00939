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

// AArch64 only. NEON (Advanced SIMD with f64 lanes) is mandatory there.

#include <arm_neon.h>

#include "qslsim/simd/complex_dot.hpp"

namespace qslsim::simd::detail {

std::complex<double> complex_dot_neon(const double* a_re, const double* a_im,
                                      const double* b_re, const double* b_im,
                                      std::size_t n) {
  float64x2_t rr0 = vdupq_n_f64(0.0), ii0 = vdupq_n_f64(0.0);
  float64x2_t ri0 = vdupq_n_f64(0.0), ir0 = vdupq_n_f64(0.0);
  float64x2_t rr1 = vdupq_n_f64(0.0), ii1 = vdupq_n_f64(0.0);
  float64x2_t ri1 = vdupq_n_f64(0.0), ir1 = vdupq_n_f64(0.0);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float64x2_t ar0 = vld1q_f64(a_re + i);
    const float64x2_t ai0 = vld1q_f64(a_im + i);
    const float64x2_t br0 = vld1q_f64(b_re + i);
    const float64x2_t bi0 = vld1q_f64(b_im + i);
    const float64x2_t ar1 = vld1q_f64(a_re + i + 2);
    const float64x2_t ai1 = vld1q_f64(a_im + i + 2);
    const float64x2_t br1 = vld1q_f64(b_re + i + 2);
    const float64x2_t bi1 = vld1q_f64(b_im + i + 2);
    rr0 = vfmaq_f64(rr0, ar0, br0);
    ii0 = vfmaq_f64(ii0, ai0, bi0);
    ri0 = vfmaq_f64(ri0, ar0, bi0);
    ir0 = vfmaq_f64(ir0, ai0, br0);
    rr1 = vfmaq_f64(rr1, ar1, br1);
    ii1 = vfmaq_f64(ii1, ai1, bi1);
    ri1 = vfmaq_f64(ri1, ar1, bi1);
    ir1 = vfmaq_f64(ir1, ai1, br1);
  }

  const float64x2_t re_lanes = vsubq_f64(vaddq_f64(rr0, rr1), vaddq_f64(ii0, ii1));
  const float64x2_t im_lanes = vaddq_f64(vaddq_f64(ri0, ri1), vaddq_f64(ir0, ir1));
  double re = vaddvq_f64(re_lanes);
  double im = vaddvq_f64(im_lanes);

  for (; i < n; ++i) {
    re += a_re[i] * b_re[i] - a_im[i] * b_im[i];
    im += a_re[i] * b_im[i] + a_im[i] * b_re[i];
  }
  return {re, im};
}

}  // namespace qslsim::simd::detail
