#include "cone_spectra/harmonic_measure.hpp"

#include <cmath>
#include <numbers>

#include "cone_spectra/error.hpp"
#include "cone_spectra/quadrature.hpp"

namespace cone_spectra {

namespace {

constexpr double kPi = std::numbers::pi;

void check_band(const BandSpec& band) {
  require(band.R > 0.0, ErrorCode::InvalidArgument, "radius must be positive");
  require(band.lam > 0.0 && band.lam < band.R / 2.0, ErrorCode::LambdaOutOfRange,
          "band half-width must lie in (0, R/2)");
  require(band.y.norm() <= band.R / 2.0 * (1.0 + 1e-12), ErrorCode::InvalidArgument,
          "center must lie in the ball of radius R/2");
}

double band_integral(const BandSpec& band, BumpProfile profile, int n, int m) {
  const GaussRule rule = gauss_legendre(n);
  const double a = band.lam / band.R;
  std::vector<std::pair<double, double>> panels = {{-a, a}};
  if (profile == BumpProfile::RaisedCosine) {
    panels.insert(panels.begin(), {-2.0 * a, -a});
    panels.push_back({a, 2.0 * a});
  }
  const double R = band.R;
  const double dpsi = 2.0 * kPi / m;
  double total = 0.0;
  for (const auto& [lo, hi] : panels) {
    total += integrate_gauss(rule, lo, hi, [&](double s) {
      const double phi = bump_value(R * s, band.lam, profile);
      if (phi == 0.0) return 0.0;
      const double c = std::sqrt(std::max(0.0, 1.0 - s * s));
      double ring = 0.0;
      for (int j = 0; j < m; ++j) {
        const double psi = j * dpsi;
        const Vec3 x(R * c * std::cos(psi), R * s, R * c * std::sin(psi));
        ring += poisson_kernel(R, band.y, x);
      }
      return phi * ring * dpsi * R * R;
    });
  }
  return total;
}

Vec3 polyline_normal(const std::vector<Vec3>& pts) {
  double scale = 0.0;
  for (const Vec3& p : pts) scale = std::max(scale, (p - pts.front()).norm());
  Vec3 best = Vec3::Zero();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const Vec3 c = (pts[i] - pts[0]).cross(pts[j] - pts[0]);
      if (c.norm() > best.norm()) best = c;
    }
  }
  if (best.norm() > 1e-12 * scale * scale && scale > 0.0) {
    const Vec3 n = best.normalized();
    for (const Vec3& p : pts) {
      require(std::abs((p - pts[0]).dot(n)) <= 1e-9 * scale, ErrorCode::NonPlanarInput,
              "polyline does not lie in a plane");
    }
    return n;
  }
  // Collinear or degenerate input: any normal perpendicular to the line works.
  Vec3 dir = Vec3::UnitX();
  for (const Vec3& p : pts) {
    if ((p - pts[0]).norm() > 0.0) {
      dir = (p - pts[0]).normalized();
      break;
    }
  }
  Vec3 trial = std::abs(dir.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  return dir.cross(trial).normalized();
}

}  // namespace

ZoneArea zone_area(double R, double lam) {
  require(R > 0.0, ErrorCode::InvalidArgument, "radius must be positive");
  require(lam > 0.0 && lam <= R, ErrorCode::LambdaOutOfRange, "lambda must lie in (0, R]");
  ZoneArea z;
  z.exact = 4.0 * kPi * R * lam;
  z.sqrt_element = 2.0 * kPi * (lam * std::sqrt(R * R - lam * lam) + R * R * std::asin(lam / R));
  return z;
}

double bump_value(double x2, double lam, BumpProfile profile) {
  const double d = std::abs(x2);
  if (d <= lam) return 1.0;
  if (profile == BumpProfile::Indicator || d >= 2.0 * lam) return 0.0;
  return 0.5 * (1.0 + std::cos(kPi * (d - lam) / lam));
}

double poisson_kernel(double R, const Vec3& y, const Vec3& x) {
  const double d = (x - y).norm();
  return (R * R - y.squaredNorm()) / (4.0 * kPi * R * d * d * d);
}

double poisson_band_mass(const BandSpec& band, BumpProfile profile, const MeasureOptions& options) {
  check_band(band);
  int n = 16;
  int m = 64;
  double prev = band_integral(band, profile, n, m);
  for (int k = 0; k < options.max_doublings; ++k) {
    n *= 2;
    m *= 2;
    const double next = band_integral(band, profile, n, m);
    if (std::abs(next - prev) <= options.rel_tol * std::abs(next)) return next;
    prev = next;
  }
  fail(ErrorCode::QuadratureFailure, "band quadrature did not converge");
}

double extruded_area(const std::vector<Vec3>& polyline, double R) {
  require(R > 0.0, ErrorCode::InvalidArgument, "half-height must be positive");
  if (polyline.size() < 2) return 0.0;
  polyline_normal(polyline);
  double length = 0.0;
  for (std::size_t i = 1; i < polyline.size(); ++i) length += (polyline[i] - polyline[i - 1]).norm();
  return 2.0 * R * length;
}

std::vector<std::array<Vec3, 3>> extrude_strip(const std::vector<Vec3>& polyline, double R) {
  require(R > 0.0, ErrorCode::InvalidArgument, "half-height must be positive");
  std::vector<std::array<Vec3, 3>> tris;
  if (polyline.size() < 2) return tris;
  const Vec3 n = polyline_normal(polyline);
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    const Vec3 a0 = polyline[i - 1] - R * n;
    const Vec3 a1 = polyline[i - 1] + R * n;
    const Vec3 b0 = polyline[i] - R * n;
    const Vec3 b1 = polyline[i] + R * n;
    tris.push_back({a0, b0, b1});
    tris.push_back({a0, b1, a1});
  }
  return tris;
}

}  // namespace cone_spectra
