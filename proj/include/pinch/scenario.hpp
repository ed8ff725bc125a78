#pragma once

#include <vector>

#include "pinch/config.hpp"
#include "pinch/random.hpp"

namespace pinch {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool operator==(const Point3&) const = default;
};

double distance(const Point3& a, const Point3& b);

/// One realization of the deployment. Index m (0-based) refers to user m,
/// waveguide m and conventional element m throughout.
struct Placement {
  std::vector<Point3> user_positions;   // (x_m, y_m, 0)
  std::vector<Point3> pinch_positions;  // (x_m, beta_m, d)
  std::vector<Point3> conv_positions;   // half-wavelength array at height d
  std::vector<Point3> feed_positions;   // (-D_L/2, beta_m, d)

  int num_users() const { return static_cast<int>(user_positions.size()); }
  bool operator==(const Placement&) const = default;
};

/// y-coordinate of waveguide m (1-based): -D_W/2 + (m-1) D_W/M + D_W/(2M).
double waveguide_y_offset(int m, const SystemConfig& cfg);

/// Feed point of waveguide m (1-based), placed at the near edge x = -D_L/2.
Point3 feed_position(int m, const SystemConfig& cfg);

/// M elements centered on (0, 0, d), spaced lambda/2 along x.
std::vector<Point3> conventional_array_positions(const SystemConfig& cfg);

/// Draws user m uniformly in strip m (or directly under waveguide m when
/// constrain_under_waveguide is set) and activates the pinching antenna at
/// the closest point on the waveguide.
Placement sample_placement(const SystemConfig& cfg, RandomStream& rng);

}  // namespace pinch
