// SPDX-License-Identifier: Apache-2.0
// AVX2 back-end: four ensemble members per vector lane set. Compiled with
// -mavx2 in this TU only; the dispatcher gates on the CPU at runtime.
#include <immintrin.h>

#include <cmath>

#include "agesirs/kernel.h"
#include "simd_internal.h"

namespace agesirs::detail {
namespace {

struct Pack4 {
  __m256d v;
  Pack4() = default;
  Pack4(__m256d x) : v(x) {}               // NOLINT(google-explicit-constructor)
  explicit Pack4(double x) : v(_mm256_set1_pd(x)) {}
  friend Pack4 operator+(Pack4 a, Pack4 b) { return _mm256_add_pd(a.v, b.v); }
  friend Pack4 operator-(Pack4 a, Pack4 b) { return _mm256_sub_pd(a.v, b.v); }
  friend Pack4 operator*(Pack4 a, Pack4 b) { return _mm256_mul_pd(a.v, b.v); }
  friend Pack4 operator/(Pack4 a, Pack4 b) { return _mm256_div_pd(a.v, b.v); }
};

Pack4 lane_set(double l0, double l1, double l2, double l3) {
  return _mm256_setr_pd(l0, l1, l2, l3);
}

}  // namespace

bool ensemble_block4_avx2(const EnsembleMember* m4, const State& y0,
                          const Grid& g, double* const itot[4],
                          bool lane_ok[4]) {
  RateConstants<Pack4> c;
  c.b1 = lane_set(m4[0].params.b1, m4[1].params.b1, m4[2].params.b1, m4[3].params.b1);
  c.delta1 = lane_set(m4[0].params.delta1, m4[1].params.delta1, m4[2].params.delta1, m4[3].params.delta1);
  c.delta2 = lane_set(m4[0].params.delta2, m4[1].params.delta2, m4[2].params.delta2, m4[3].params.delta2);
  c.beta1 = lane_set(m4[0].params.beta1, m4[1].params.beta1, m4[2].params.beta1, m4[3].params.beta1);
  c.beta2 = lane_set(m4[0].params.beta2, m4[1].params.beta2, m4[2].params.beta2, m4[3].params.beta2);
  c.beta3 = lane_set(m4[0].params.beta3, m4[1].params.beta3, m4[2].params.beta3, m4[3].params.beta3);
  c.beta4 = lane_set(m4[0].params.beta4, m4[1].params.beta4, m4[2].params.beta4, m4[3].params.beta4);
  c.mu = lane_set(m4[0].params.mu, m4[1].params.mu, m4[2].params.mu, m4[3].params.mu);
  c.d1 = lane_set(m4[0].params.d1, m4[1].params.d1, m4[2].params.d1, m4[3].params.d1);
  c.d2 = lane_set(m4[0].params.d2, m4[1].params.d2, m4[2].params.d2, m4[3].params.d2);
  c.alpha = lane_set(m4[0].params.alpha, m4[1].params.alpha, m4[2].params.alpha, m4[3].params.alpha);
  c.m = lane_set(m4[0].params.m, m4[1].params.m, m4[2].params.m, m4[3].params.m);
  const Pack4 u11 = lane_set(m4[0].u11, m4[1].u11, m4[2].u11, m4[3].u11);
  const Pack4 u12 = lane_set(m4[0].u12, m4[1].u12, m4[2].u12, m4[3].u12);

  const double hs = g.h();
  const Pack4 h(hs), h2(0.5 * hs), h6(hs / 6.0);

  Pack4 y[6];
  for (int j = 0; j < 6; ++j) y[j] = Pack4(y0[j]);

  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, (y[iI1] + y[iI2]).v);
  for (int l = 0; l < 4; ++l) {
    itot[l][0] = lanes[l];
    lane_ok[l] = std::isfinite(lanes[l]);
  }
  for (std::int64_t k = 0; k < g.n_steps; ++k) {
    rk4_step_const<Pack4>(y, c, u11, u12, h, h2, h6);
    _mm256_store_pd(lanes, (y[iI1] + y[iI2]).v);
    for (int l = 0; l < 4; ++l) {
      itot[l][k + 1] = lanes[l];
      lane_ok[l] = lane_ok[l] && std::isfinite(lanes[l]);
    }
  }
  return lane_ok[0] && lane_ok[1] && lane_ok[2] && lane_ok[3];
}

}  // namespace agesirs::detail
