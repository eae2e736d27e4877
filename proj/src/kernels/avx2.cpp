// AVX2 variants of the kernels in kernels.hpp. Compiled with a target
// attribute so the rest of the library keeps the baseline ISA; only called
// after a runtime CPU check.

#include <immintrin.h>

#include <cmath>
#include <cstring>

#include "mvquant/kernels.hpp"

#define MVQ_AVX2 __attribute__((target("avx2")))

namespace mvq::kernels::avx2 {

namespace {

MVQ_AVX2 inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Per-lane argmin state reduced to the global (value, lowest index).
MVQ_AVX2 inline ArgMin reduce_argmin(__m256d best_v, __m256d best_i) {
  alignas(32) double v[4], idx[4];
  _mm256_store_pd(v, best_v);
  _mm256_store_pd(idx, best_i);
  ArgMin out;
  for (int l = 0; l < 4; ++l) {
    if (idx[l] < 0.0) continue;
    const auto li = static_cast<std::size_t>(idx[l]);
    if (v[l] < out.value || (v[l] == out.value && li < out.index)) {
      out.value = v[l];
      out.index = li;
    }
  }
  return out;
}

MVQ_AVX2 inline __m256d scanned_mask(const std::uint8_t* flags) {
  std::int32_t word;
  std::memcpy(&word, flags, sizeof word);
  const __m256i f = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(word));
  return _mm256_castsi256_pd(_mm256_cmpgt_epi64(f, _mm256_setzero_si256()));
}

}  // namespace

MVQ_AVX2 PlanarMoments planar_moments(double zx, double zy, const PlanarSample& s,
                                      double collision_eps) {
  const std::size_t n = s.xs.size();
  const __m256d vzx = _mm256_set1_pd(zx), vzy = _mm256_set1_pd(zy);
  const __m256d veps = _mm256_set1_pd(collision_eps);
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d ex_acc = _mm256_setzero_pd(), ey_acc = _mm256_setzero_pd();
  __m256d w_acc = _mm256_setzero_pd(), wx_acc = _mm256_setzero_pd(), wy_acc = _mm256_setzero_pd();
  __m256d hxx = _mm256_setzero_pd(), hxy = _mm256_setzero_pd(), hyy = _mm256_setzero_pd();
  __m256d dev = _mm256_setzero_pd();
  std::size_t collisions = 0;

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(&s.xs[i]);
    const __m256d y = _mm256_loadu_pd(&s.ys[i]);
    const __m256d dx = _mm256_sub_pd(vzx, x);
    const __m256d dy = _mm256_sub_pd(vzy, y);
    const __m256d d = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
    dev = _mm256_add_pd(dev, _mm256_sub_pd(d, _mm256_loadu_pd(&s.norms[i])));
    const __m256d ok = _mm256_cmp_pd(d, veps, _CMP_GE_OQ);
    collisions += static_cast<std::size_t>(__builtin_popcount(~_mm256_movemask_pd(ok) & 0xF));
    const __m256d w = _mm256_and_pd(ok, _mm256_div_pd(one, d));
    const __m256d ex = _mm256_mul_pd(dx, w);
    const __m256d ey = _mm256_mul_pd(dy, w);
    ex_acc = _mm256_add_pd(ex_acc, ex);
    ey_acc = _mm256_add_pd(ey_acc, ey);
    w_acc = _mm256_add_pd(w_acc, w);
    wx_acc = _mm256_add_pd(wx_acc, _mm256_mul_pd(x, w));
    wy_acc = _mm256_add_pd(wy_acc, _mm256_mul_pd(y, w));
    hxx = _mm256_add_pd(hxx, _mm256_mul_pd(_mm256_mul_pd(ey, ey), w));
    hxy = _mm256_sub_pd(hxy, _mm256_mul_pd(_mm256_mul_pd(ex, ey), w));
    hyy = _mm256_add_pd(hyy, _mm256_mul_pd(_mm256_mul_pd(ex, ex), w));
  }

  PlanarMoments m;
  m.sum_ex = hsum(ex_acc);
  m.sum_ey = hsum(ey_acc);
  m.sum_w = hsum(w_acc);
  m.sum_wx = hsum(wx_acc);
  m.sum_wy = hsum(wy_acc);
  m.h_xx = hsum(hxx);
  m.h_xy = hsum(hxy);
  m.h_yy = hsum(hyy);
  m.sum_dev = hsum(dev);
  m.collisions = collisions;

  if (i < n) {
    const PlanarSample tail{s.xs.subspan(i), s.ys.subspan(i), s.norms.subspan(i)};
    const PlanarMoments t = scalar::planar_moments(zx, zy, tail, collision_eps);
    m.sum_ex += t.sum_ex;
    m.sum_ey += t.sum_ey;
    m.sum_w += t.sum_w;
    m.sum_wx += t.sum_wx;
    m.sum_wy += t.sum_wy;
    m.h_xx += t.h_xx;
    m.h_xy += t.h_xy;
    m.h_yy += t.h_yy;
    m.sum_dev += t.sum_dev;
    m.collisions += t.collisions;
  }
  return m;
}

MVQ_AVX2 ArgMin assignment_scan(const ScanArgs& a) {
  const std::size_t n = a.gx.size();
  const __m256d vpx = _mm256_set1_pd(a.px), vpy = _mm256_set1_pd(a.py);
  const __m256d vbase = _mm256_set1_pd(a.base);
  const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256d best_v = inf;
  __m256d best_i = _mm256_set1_pd(-1.0);
  __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  const __m256d four = _mm256_set1_pd(4.0);

  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d dx = _mm256_sub_pd(vpx, _mm256_loadu_pd(&a.gx[j]));
    const __m256d dy = _mm256_sub_pd(vpy, _mm256_loadu_pd(&a.gy[j]));
    const __m256d c = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const __m256d r = _mm256_sub_pd(_mm256_add_pd(vbase, c), _mm256_loadu_pd(&a.v[j]));
    const __m256d old = _mm256_loadu_pd(&a.dist[j]);
    const __m256d done = scanned_mask(&a.scanned[j]);
    const __m256d upd = _mm256_andnot_pd(done, _mm256_cmp_pd(r, old, _CMP_LT_OQ));
    const __m256d cur = _mm256_blendv_pd(old, r, upd);
    _mm256_storeu_pd(&a.dist[j], cur);
    if (int bits = _mm256_movemask_pd(upd)) {
      for (int l = 0; l < 4; ++l) {
        if (bits & (1 << l)) a.path[j + static_cast<std::size_t>(l)] = a.row;
      }
    }
    const __m256d cand = _mm256_blendv_pd(cur, inf, done);
    const __m256d better = _mm256_cmp_pd(cand, best_v, _CMP_LT_OQ);
    best_v = _mm256_blendv_pd(best_v, cand, better);
    best_i = _mm256_blendv_pd(best_i, idx, better);
    idx = _mm256_add_pd(idx, four);
  }

  ArgMin best = reduce_argmin(best_v, best_i);
  for (; j < n; ++j) {
    if (a.scanned[j]) continue;
    const double dx = a.px - a.gx[j];
    const double dy = a.py - a.gy[j];
    const double r = (a.base + (dx * dx + dy * dy)) - a.v[j];
    if (r < a.dist[j]) {
      a.dist[j] = r;
      a.path[j] = a.row;
    }
    if (a.dist[j] < best.value) {
      best.value = a.dist[j];
      best.index = j;
    }
  }
  return best;
}

MVQ_AVX2 void column_min_sq_dist(double px, double py, std::span<const double> gx,
                                 std::span<const double> gy, std::span<double> colmin) {
  const std::size_t n = gx.size();
  const __m256d vpx = _mm256_set1_pd(px), vpy = _mm256_set1_pd(py);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d dx = _mm256_sub_pd(vpx, _mm256_loadu_pd(&gx[j]));
    const __m256d dy = _mm256_sub_pd(vpy, _mm256_loadu_pd(&gy[j]));
    const __m256d c = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const __m256d old = _mm256_loadu_pd(&colmin[j]);
    _mm256_storeu_pd(&colmin[j], _mm256_blendv_pd(old, c, _mm256_cmp_pd(c, old, _CMP_LT_OQ)));
  }
  for (; j < n; ++j) {
    const double dx = px - gx[j];
    const double dy = py - gy[j];
    const double c = dx * dx + dy * dy;
    if (c < colmin[j]) colmin[j] = c;
  }
}

MVQ_AVX2 ArgMin row_min_reduced(double px, double py, std::span<const double> gx,
                                std::span<const double> gy, std::span<const double> v) {
  const std::size_t n = gx.size();
  const __m256d vpx = _mm256_set1_pd(px), vpy = _mm256_set1_pd(py);
  __m256d best_v = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256d best_i = _mm256_set1_pd(-1.0);
  __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  const __m256d four = _mm256_set1_pd(4.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d dx = _mm256_sub_pd(vpx, _mm256_loadu_pd(&gx[j]));
    const __m256d dy = _mm256_sub_pd(vpy, _mm256_loadu_pd(&gy[j]));
    const __m256d c = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    const __m256d r = _mm256_sub_pd(c, _mm256_loadu_pd(&v[j]));
    const __m256d better = _mm256_cmp_pd(r, best_v, _CMP_LT_OQ);
    best_v = _mm256_blendv_pd(best_v, r, better);
    best_i = _mm256_blendv_pd(best_i, idx, better);
    idx = _mm256_add_pd(idx, four);
  }
  ArgMin best = reduce_argmin(best_v, best_i);
  for (; j < n; ++j) {
    const double dx = px - gx[j];
    const double dy = py - gy[j];
    const double r = (dx * dx + dy * dy) - v[j];
    if (r < best.value) {
      best.value = r;
      best.index = j;
    }
  }
  return best;
}

MVQ_AVX2 void planar_sq_distances(double zx, double zy, std::span<const double> xs,
                                  std::span<const double> ys, std::span<double> out) {
  const std::size_t n = xs.size();
  const __m256d vzx = _mm256_set1_pd(zx), vzy = _mm256_set1_pd(zy);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d dx = _mm256_sub_pd(vzx, _mm256_loadu_pd(&xs[j]));
    const __m256d dy = _mm256_sub_pd(vzy, _mm256_loadu_pd(&ys[j]));
    _mm256_storeu_pd(&out[j], _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
  }
  for (; j < n; ++j) {
    const double dx = zx - xs[j];
    const double dy = zy - ys[j];
    out[j] = dx * dx + dy * dy;
  }
}

}  // namespace mvq::kernels::avx2
