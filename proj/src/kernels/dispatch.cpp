#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "mvquant/kernels.hpp"

namespace mvq::kernels {

namespace {

struct Table {
  PlanarMoments (*planar_moments)(double, double, const PlanarSample&, double);
  ArgMin (*assignment_scan)(const ScanArgs&);
  void (*column_min_sq_dist)(double, double, std::span<const double>, std::span<const double>,
                             std::span<double>);
  ArgMin (*row_min_reduced)(double, double, std::span<const double>, std::span<const double>,
                            std::span<const double>);
  void (*planar_sq_distances)(double, double, std::span<const double>, std::span<const double>,
                              std::span<double>);
};

constexpr Table kScalar{scalar::planar_moments, scalar::assignment_scan, scalar::column_min_sq_dist,
                        scalar::row_min_reduced, scalar::planar_sq_distances};
#if defined(MVQUANT_HAVE_AVX2)
constexpr Table kAvx2{avx2::planar_moments, avx2::assignment_scan, avx2::column_min_sq_dist,
                      avx2::row_min_reduced, avx2::planar_sq_distances};
#endif

const Table& table_for(Isa isa) {
#if defined(MVQUANT_HAVE_AVX2)
  if (isa == Isa::avx2) return kAvx2;
#endif
  return kScalar;
}

Isa detect() {
  if (const char* env = std::getenv("MVQUANT_ISA")) {
    const std::string want(env);
    if (want == "scalar") return Isa::scalar;
    if (want == "avx2" && isa_available(Isa::avx2)) return Isa::avx2;
  }
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

const Table& active() { return table_for(current().load(std::memory_order_relaxed)); }

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::scalar) return true;
#if defined(MVQUANT_HAVE_AVX2)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() { return current().load(); }

void set_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("kernel ISA not available: " + std::string(isa_name(isa)));
  }
  current().store(isa);
}

PlanarMoments planar_moments(double zx, double zy, const PlanarSample& s, double collision_eps) {
  return active().planar_moments(zx, zy, s, collision_eps);
}

ArgMin assignment_scan(const ScanArgs& a) { return active().assignment_scan(a); }

void column_min_sq_dist(double px, double py, std::span<const double> gx,
                        std::span<const double> gy, std::span<double> colmin) {
  active().column_min_sq_dist(px, py, gx, gy, colmin);
}

ArgMin row_min_reduced(double px, double py, std::span<const double> gx,
                       std::span<const double> gy, std::span<const double> v) {
  return active().row_min_reduced(px, py, gx, gy, v);
}

void planar_sq_distances(double zx, double zy, std::span<const double> xs,
                         std::span<const double> ys, std::span<double> out) {
  active().planar_sq_distances(zx, zy, xs, ys, out);
}

}  // namespace mvq::kernels
