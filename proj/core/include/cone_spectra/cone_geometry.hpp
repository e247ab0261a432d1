#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace cone_spectra {

using Vec3 = Eigen::Vector3d;

enum class Preset { Empty, FullPlane, HalfPlane, Lune, SectorArc, Y, T, Custom };

std::string_view to_string(Preset preset) noexcept;
/// Accepts the canonical names ("HalfPlane") and the CLI spellings ("half-plane").
Preset parse_preset(std::string_view name);

/// A geodesic arc of the trace K ∩ S^{N-1}.
///
/// The arc starts at `a` and turns about `normal` (right-handed) until it
/// reaches `b`; storing the normal disambiguates half great circles whose
/// endpoints are antipodal. For N = 2 the trace is a set of points and every
/// arc is degenerate (a == b, zero length).
struct Arc {
  Vec3 a;
  Vec3 b;
  Vec3 normal;
  bool crack = false;

  double length() const;
  /// Point at arc-length t from `a`.
  Vec3 point(double t) const;
};

/// Builds the arc from a to b in the plane through the origin with the given
/// normal; when `normal` is omitted it is taken from a x b (minor arc).
Arc make_arc(const Vec3& a, const Vec3& b, bool crack,
             std::optional<Vec3> normal = std::nullopt);

struct ConeSpec {
  int ambient_dim = 3;
  Preset preset = Preset::Empty;
  std::optional<double> omega;
  std::vector<Arc> arcs;
};

struct DomainTopology {
  int component_count = 1;
  std::vector<Vec3> crack_tip_points;
};

/// Canonical cone presets. Lune(ω) is the open lune |θ| < ω about the x1 axis
/// bounded by two meridians; SectorArc(ω) is the equatorial crack |θ| ≤ ω;
/// HalfPlane is {x2 = 0, x1 ≤ 0}; Y has meridians at 0, 2π/3, 4π/3; T is the
/// regular tetrahedral net with A1 = (1,0,0).
ConeSpec make_cone(Preset preset, int ambient_dim, std::optional<double> omega = std::nullopt);

/// Validates a hand-built spec (unit endpoints, crack flags, arc lengths).
ConeSpec make_custom_cone(int ambient_dim, std::vector<Arc> arcs);

/// Crack-tip points: open endpoints of crack arcs, i.e. endpoints shared with
/// no other arc. Empty for N = 2.
std::vector<Vec3> crack_tips(const ConeSpec& spec);

DomainTopology topology(const ConeSpec& spec);

double total_trace_length(const ConeSpec& spec);

/// True when the meshed domain is the single lune region rather than the
/// whole sphere cut along the trace.
bool is_region_preset(const ConeSpec& spec);

/// Point that lies in the retained region for region presets.
Vec3 region_seed(const ConeSpec& spec);

}  // namespace cone_spectra
