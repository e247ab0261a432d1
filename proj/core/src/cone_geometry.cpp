#include "cone_spectra/cone_geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "cone_spectra/crack_mesh.hpp"
#include "cone_spectra/error.hpp"

namespace cone_spectra {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnitTol = 1e-12;
constexpr double kPointTol = 1e-9;

Vec3 equator(double theta) { return {std::cos(theta), std::sin(theta), 0.0}; }

/// Meridian from the north pole through longitude theta to the south pole.
Arc meridian(double theta, bool crack) {
  return make_arc(Vec3(0, 0, 1), Vec3(0, 0, -1), crack,
                  Vec3(-std::sin(theta), std::cos(theta), 0.0));
}

Arc point_arc(double theta, bool crack) {
  const Vec3 p = equator(theta);
  return Arc{p, p, Vec3(0, 0, 1), crack};
}

bool on_arc(const Vec3& p, const Arc& arc) {
  if (arc.length() == 0.0) return (p - arc.a).norm() < kPointTol;
  if (std::abs(p.dot(arc.normal)) > kPointTol) return false;
  const Vec3 tangent = arc.normal.cross(arc.a);
  double t = std::atan2(p.dot(tangent), p.dot(arc.a));
  if (t < -kPointTol) t += 2.0 * kPi;
  return t <= arc.length() + kPointTol;
}

std::string normalize_name(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c == '-' || c == '_' || c == ' ') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

double Arc::length() const {
  if ((a - b).norm() < 1e-15 && normal.cross(a).norm() > 0.5) {
    // Degenerate point arc (N = 2 traces).
    return 0.0;
  }
  const Vec3 tangent = normal.cross(a);
  double t = std::atan2(b.dot(tangent), b.dot(a));
  if (t <= 0.0) t += 2.0 * kPi;
  return t;
}

Vec3 Arc::point(double t) const {
  return std::cos(t) * a + std::sin(t) * normal.cross(a);
}

Arc make_arc(const Vec3& a, const Vec3& b, bool crack, std::optional<Vec3> normal) {
  require(std::abs(a.norm() - 1.0) <= kUnitTol && std::abs(b.norm() - 1.0) <= kUnitTol,
          ErrorCode::InvalidCone, "arc endpoints must be unit vectors");
  Vec3 n;
  if (normal) {
    require(normal->norm() > 0.0, ErrorCode::InvalidCone, "arc normal must be nonzero");
    n = normal->normalized();
  } else {
    const Vec3 c = a.cross(b);
    require(c.norm() > 1e-9, ErrorCode::InvalidCone,
            "arc endpoints are parallel; an explicit normal is required");
    n = c.normalized();
  }
  require(std::abs(n.dot(a)) < kPointTol && std::abs(n.dot(b)) < kPointTol,
          ErrorCode::InvalidCone, "arc endpoints do not lie on the great circle of the normal");
  return Arc{a, b, n, crack};
}

std::string_view to_string(Preset preset) noexcept {
  switch (preset) {
    case Preset::Empty: return "Empty";
    case Preset::FullPlane: return "FullPlane";
    case Preset::HalfPlane: return "HalfPlane";
    case Preset::Lune: return "Lune";
    case Preset::SectorArc: return "SectorArc";
    case Preset::Y: return "Y";
    case Preset::T: return "T";
    case Preset::Custom: return "Custom";
  }
  return "Custom";
}

Preset parse_preset(std::string_view name) {
  const std::string key = normalize_name(name);
  if (key == "empty") return Preset::Empty;
  if (key == "fullplane" || key == "plane") return Preset::FullPlane;
  if (key == "halfplane") return Preset::HalfPlane;
  if (key == "lune" || key == "wing") return Preset::Lune;
  if (key == "sectorarc" || key == "sector") return Preset::SectorArc;
  if (key == "y") return Preset::Y;
  if (key == "t") return Preset::T;
  if (key == "custom") return Preset::Custom;
  fail(ErrorCode::InvalidArgument, "unknown cone preset '" + std::string(name) + "'");
}

ConeSpec make_cone(Preset preset, int ambient_dim, std::optional<double> omega) {
  require(ambient_dim == 2 || ambient_dim == 3, ErrorCode::UnsupportedDimension,
          "only N = 2 and N = 3 cones can be built");
  require(preset != Preset::Custom, ErrorCode::InvalidArgument,
          "custom cones are built with make_custom_cone");
  const bool needs_omega = preset == Preset::Lune || preset == Preset::SectorArc;
  if (needs_omega) {
    require(omega.has_value(), ErrorCode::OmegaOutOfRange, "this preset requires omega");
    require(*omega > 0.0 && *omega <= kPi, ErrorCode::OmegaOutOfRange,
            "omega must lie in (0, pi]");
  } else {
    require(!omega.has_value(), ErrorCode::InvalidArgument,
            "omega is only meaningful for Lune and SectorArc");
  }

  ConeSpec spec;
  spec.ambient_dim = ambient_dim;
  spec.preset = preset;
  spec.omega = omega;

  if (ambient_dim == 2) {
    switch (preset) {
      case Preset::Empty: break;
      case Preset::FullPlane:
        spec.arcs = {point_arc(0.0, false), point_arc(kPi, false)};
        break;
      case Preset::HalfPlane: spec.arcs = {point_arc(kPi, true)}; break;
      case Preset::Lune:
        if (*omega == kPi) {
          spec.arcs = {point_arc(kPi, true)};
        } else {
          spec.arcs = {point_arc(-*omega, false), point_arc(*omega, false)};
        }
        break;
      case Preset::Y:
        spec.arcs = {point_arc(0.0, false), point_arc(2.0 * kPi / 3.0, false),
                     point_arc(4.0 * kPi / 3.0, false)};
        break;
      default:
        fail(ErrorCode::UnsupportedDimension,
             std::string(to_string(preset)) + " has no N = 2 analogue");
    }
    return spec;
  }

  switch (preset) {
    case Preset::Empty: break;
    case Preset::FullPlane:
      spec.arcs = {make_arc(equator(0.0), equator(kPi), false, Vec3(0, 0, 1)),
                   make_arc(equator(kPi), equator(0.0), false, Vec3(0, 0, 1))};
      break;
    case Preset::HalfPlane: spec.arcs = {meridian(kPi, true)}; break;
    case Preset::Lune:
      if (*omega == kPi) {
        spec.arcs = {meridian(kPi, true)};
      } else {
        spec.arcs = {meridian(-*omega, false), meridian(*omega, false)};
      }
      break;
    case Preset::SectorArc:
      spec.arcs = {make_arc(equator(-*omega), equator(0.0), true, Vec3(0, 0, 1)),
                   make_arc(equator(0.0), equator(*omega), true, Vec3(0, 0, 1))};
      break;
    case Preset::Y:
      spec.arcs = {meridian(0.0, false), meridian(2.0 * kPi / 3.0, false),
                   meridian(4.0 * kPi / 3.0, false)};
      break;
    case Preset::T: {
      const double s2 = std::sqrt(2.0);
      const double s6 = std::sqrt(6.0);
      const std::array<Vec3, 4> v = {Vec3(1.0, 0.0, 0.0),
                                     Vec3(-1.0 / 3.0, 2.0 * s2 / 3.0, 0.0),
                                     Vec3(-1.0 / 3.0, -s2 / 3.0, s6 / 3.0),
                                     Vec3(-1.0 / 3.0, -s2 / 3.0, -s6 / 3.0)};
      for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
          spec.arcs.push_back(make_arc(v[i].normalized(), v[j].normalized(), false));
        }
      }
      break;
    }
    default: break;
  }
  return spec;
}

ConeSpec make_custom_cone(int ambient_dim, std::vector<Arc> arcs) {
  require(ambient_dim == 2 || ambient_dim == 3, ErrorCode::UnsupportedDimension,
          "only N = 2 and N = 3 cones can be built");
  for (const Arc& arc : arcs) {
    require(std::abs(arc.a.norm() - 1.0) <= kUnitTol && std::abs(arc.b.norm() - 1.0) <= kUnitTol,
            ErrorCode::InvalidCone, "arc endpoints must be unit vectors");
    if (ambient_dim == 2) {
      require(std::abs(arc.a.z()) < kPointTol && (arc.a - arc.b).norm() < kPointTol,
              ErrorCode::InvalidCone, "N = 2 traces are points on the equatorial circle");
    } else {
      require(std::abs(arc.normal.norm() - 1.0) < 1e-9 &&
                  std::abs(arc.normal.dot(arc.a)) < kPointTol &&
                  std::abs(arc.normal.dot(arc.b)) < kPointTol,
              ErrorCode::InvalidCone, "arc normal inconsistent with its endpoints");
      const double len = arc.length();
      require(len > 0.0 && len <= kPi + 1e-12, ErrorCode::InvalidCone,
              "custom arcs must have length in (0, pi]");
    }
  }
  ConeSpec spec;
  spec.ambient_dim = ambient_dim;
  spec.preset = Preset::Custom;
  spec.arcs = std::move(arcs);
  return spec;
}

std::vector<Vec3> crack_tips(const ConeSpec& spec) {
  std::vector<Vec3> tips;
  if (spec.ambient_dim != 3) return tips;
  for (std::size_t i = 0; i < spec.arcs.size(); ++i) {
    const Arc& arc = spec.arcs[i];
    if (!arc.crack) continue;
    for (const Vec3& end : {arc.a, arc.b}) {
      bool shared = false;
      for (std::size_t j = 0; j < spec.arcs.size() && !shared; ++j) {
        if (j != i && on_arc(end, spec.arcs[j])) shared = true;
      }
      const bool duplicate = std::any_of(tips.begin(), tips.end(), [&](const Vec3& t) {
        return (t - end).norm() < kPointTol;
      });
      if (!shared && !duplicate) tips.push_back(end);
    }
  }
  return tips;
}

DomainTopology topology(const ConeSpec& spec) {
  DomainTopology topo;
  topo.crack_tip_points = crack_tips(spec);
  switch (spec.preset) {
    case Preset::Empty:
    case Preset::HalfPlane:
    case Preset::Lune: topo.component_count = 1; break;
    case Preset::FullPlane: topo.component_count = 2; break;
    case Preset::SectorArc: topo.component_count = (*spec.omega >= kPi) ? 2 : 1; break;
    case Preset::Y: topo.component_count = 3; break;
    case Preset::T: topo.component_count = 4; break;
    case Preset::Custom: topo.component_count = build_mesh(spec, 0, 0).component_count; break;
  }
  return topo;
}

double total_trace_length(const ConeSpec& spec) {
  double total = 0.0;
  for (const Arc& arc : spec.arcs) total += arc.length();
  return total;
}

bool is_region_preset(const ConeSpec& spec) {
  return spec.preset == Preset::Lune && spec.omega && *spec.omega < kPi;
}

Vec3 region_seed(const ConeSpec& spec) {
  if (spec.ambient_dim == 2) return Vec3(1.0, 0.0, 0.0);
  return Vec3(1.0, 0.0, 0.3).normalized();
}

}  // namespace cone_spectra
