#include "pinch/scenario.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pinch {

double distance(const Point3& a, const Point3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double waveguide_y_offset(int m, const SystemConfig& cfg) {
  const int num = cfg.num_users();
  if (m < 1 || m > num)
    throw std::invalid_argument("waveguide index " + std::to_string(m) + " outside [1, " +
                                std::to_string(num) + "]");
  const double w = cfg.d_w();
  return -w / 2.0 + (m - 1) * w / num + w / (2.0 * num);
}

Point3 feed_position(int m, const SystemConfig& cfg) {
  return {-cfg.d_l() / 2.0, waveguide_y_offset(m, cfg), cfg.height()};
}

std::vector<Point3> conventional_array_positions(const SystemConfig& cfg) {
  const int num = cfg.num_users();
  const double spacing = cfg.wavelength() / 2.0;
  std::vector<Point3> out;
  out.reserve(num);
  for (int k = 0; k < num; ++k)
    out.push_back({(k - (num - 1) / 2.0) * spacing, 0.0, cfg.height()});
  return out;
}

Placement sample_placement(const SystemConfig& cfg, RandomStream& rng) {
  const int num = cfg.num_users();
  const double half_strip = cfg.strip_width() / 2.0;
  const double half_len = cfg.d_l() / 2.0;
  const bool pinned = cfg.params().constrain_under_waveguide;

  Placement pl;
  pl.user_positions.reserve(num);
  pl.pinch_positions.reserve(num);
  pl.feed_positions.reserve(num);
  for (int m = 1; m <= num; ++m) {
    const double beta = waveguide_y_offset(m, cfg);
    // Draw order is x then y for every user; the y draw is skipped when pinned.
    const double x = rng.uniform(-half_len, half_len);
    const double y = pinned ? beta : rng.uniform(beta - half_strip, beta + half_strip);
    pl.user_positions.push_back({x, y, 0.0});
    pl.pinch_positions.push_back({x, beta, cfg.height()});
    pl.feed_positions.push_back(feed_position(m, cfg));
  }
  pl.conv_positions = conventional_array_positions(cfg);
  return pl;
}

}  // namespace pinch
