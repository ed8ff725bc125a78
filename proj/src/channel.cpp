#include "pinch/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pinch {

BlockageState::BlockageState(SystemKind kind, int num_users)
    : kind_(kind), num_users_(num_users) {
  if (num_users < 1) throw std::invalid_argument("BlockageState needs at least one user");
  alpha_.assign(static_cast<std::size_t>(num_users) * cols(), 0);
}

BlockageState BlockageState::all_clear(SystemKind kind, int num_users) {
  BlockageState s(kind, num_users);
  std::fill(s.alpha_.begin(), s.alpha_.end(), std::uint8_t{1});
  return s;
}

std::size_t BlockageState::index(int m, int k) const {
  if (kind_ == SystemKind::Conventional) k = 0;
  if (m < 0 || m >= num_users_ || k < 0 || k >= cols())
    throw std::out_of_range("blockage index out of range");
  return static_cast<std::size_t>(m) * cols() + k;
}

double blockage_probability(double distance, const SystemConfig& cfg) {
  if (distance < 0.0 || std::isnan(distance))
    throw std::invalid_argument("blockage distance must be non-negative");
  const double exponent = cfg.blockage_model() == BlockageModel::ModelA
                              ? distance
                              : distance * distance;
  return std::exp(-cfg.phi() * exponent);
}

BlockageState sample_blockage(const Placement& placement, const SystemConfig& cfg,
                              SystemKind kind, RandomStream& rng) {
  const int num = placement.num_users();
  BlockageState state(kind, num);
  if (kind == SystemKind::Pinching) {
    for (int m = 0; m < num; ++m)
      for (int k = 0; k < num; ++k) {
        const double r = distance(placement.pinch_positions[k], placement.user_positions[m]);
        state.set(m, k, rng.bernoulli(blockage_probability(r, cfg)));
      }
  } else {
    const Point3 center{0.0, 0.0, cfg.height()};
    for (int m = 0; m < num; ++m) {
      const double r = distance(center, placement.user_positions[m]);
      state.set(m, 0, rng.bernoulli(blockage_probability(r, cfg)));
    }
  }
  return state;
}

std::complex<double> free_space_coefficient(const Point3& tx, const Point3& rx,
                                            const SystemConfig& cfg) {
  const double r = distance(tx, rx);
  if (!(r > 0.0)) throw std::domain_error("coincident transmitter and receiver");
  const double phase = -2.0 * kPi * r / cfg.wavelength();
  return std::polar(std::sqrt(cfg.eta()) / r, phase);
}

std::complex<double> waveguide_factor(const Point3& feed, const Point3& antenna,
                                      const SystemConfig& cfg) {
  constexpr double kTol = 1e-9;
  if (std::abs(feed.y - antenna.y) > kTol || std::abs(feed.z - antenna.z) > kTol)
    throw std::invalid_argument("feed and antenna are not on the same waveguide");
  const double len = std::abs(antenna.x - feed.x);
  const double phase = -2.0 * kPi * len / cfg.guided_wavelength();
  double amplitude = 1.0;
  if (cfg.loss_case() == LossCase::CaseII)
    amplitude = std::pow(10.0, -cfg.params().waveguide_loss_db_per_m * len / 20.0);
  return std::polar(amplitude, phase);
}

ChannelMatrix build_channel_matrix(const Placement& placement, const BlockageState& blockage,
                                   const SystemConfig& cfg, SystemKind kind) {
  const int num = placement.num_users();
  if (blockage.num_users() != num || blockage.kind() != kind)
    throw std::invalid_argument("blockage state does not match placement/system");

  const auto& elements =
      kind == SystemKind::Pinching ? placement.pinch_positions : placement.conv_positions;
  if (static_cast<int>(elements.size()) != num)
    throw std::invalid_argument("placement has " + std::to_string(elements.size()) +
                                " transmit elements for " + std::to_string(num) + " users");

  ChannelMatrix out{Eigen::MatrixXcd::Zero(num, num), Eigen::MatrixXd::Zero(num, num)};
  for (int k = 0; k < num; ++k) {
    std::complex<double> feed{1.0, 0.0};
    if (kind == SystemKind::Pinching)
      feed = waveguide_factor(placement.feed_positions[k], elements[k], cfg);
    for (int m = 0; m < num; ++m) {
      const std::complex<double> h =
          free_space_coefficient(elements[k], placement.user_positions[m], cfg) * feed;
      out.raw_magnitude(m, k) = std::abs(h);
      if (blockage.clear(m, k)) out.h(m, k) = h;
    }
  }
  return out;
}

}  // namespace pinch
