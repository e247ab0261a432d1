#pragma once

#include <array>
#include <vector>

#include "cone_spectra/cone_geometry.hpp"

namespace cone_spectra {

/// Band {|x| = R, |x₂| ≤ λ} around the crack plane P = {x₂ = 0}, seen from y.
struct BandSpec {
  double R = 1.0;
  double lam = 0.1;
  Vec3 y = Vec3::Zero();
};

struct ZoneArea {
  double exact = 0.0;  // 4πRλ
  /// 2π[λ√(R²−λ²) + R² arcsin(λ/R)], the band integral with the √(R²−w²) element.
  double sqrt_element = 0.0;
};

ZoneArea zone_area(double R, double lam);

enum class BumpProfile {
  Indicator,     // 1 on |x₂| ≤ λ
  RaisedCosine,  // 1 on |x₂| ≤ λ, cosine ramp to 0 at |x₂| = 2λ
};

double bump_value(double x2, double lam, BumpProfile profile);

/// (R² − |y|²) / (4πR |x − y|³) for |x| = R.
double poisson_kernel(double R, const Vec3& y, const Vec3& x);

struct MeasureOptions {
  double rel_tol = 1e-9;
  int max_doublings = 9;
};

/// ∫_{∂B_R} P(y, x) φ(x) ds(x), by Gauss-Legendre in x₂ and the trapezoid
/// rule in azimuth, doubling both until successive values agree.
double poisson_band_mass(const BandSpec& band, BumpProfile profile = BumpProfile::RaisedCosine,
                         const MeasureOptions& options = {});

/// 2R · length for a planar polyline.
double extruded_area(const std::vector<Vec3>& polyline, double R);

/// Triangles of Γ × [−R, R], extruding along the polyline's plane normal.
std::vector<std::array<Vec3, 3>> extrude_strip(const std::vector<Vec3>& polyline, double R);

}  // namespace cone_spectra
