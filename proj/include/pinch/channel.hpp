#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "pinch/config.hpp"
#include "pinch/random.hpp"
#include "pinch/scenario.hpp"

namespace pinch {

enum class SystemKind { Pinching, Conventional };

/// LoS indicators. Pinching: M x M, entry (m, k) is 1 when the link from the
/// antenna on waveguide k to user m is clear. Conventional: M x 1, one
/// indicator per user shared by every array element.
class BlockageState {
 public:
  BlockageState(SystemKind kind, int num_users);

  static BlockageState all_clear(SystemKind kind, int num_users);

  SystemKind kind() const { return kind_; }
  int num_users() const { return num_users_; }
  int cols() const { return kind_ == SystemKind::Pinching ? num_users_ : 1; }

  /// For the conventional form the column index is ignored.
  bool clear(int m, int k = 0) const { return alpha_[index(m, k)] != 0; }
  void set(int m, int k, bool clear) { alpha_[index(m, k)] = clear ? 1 : 0; }

  bool operator==(const BlockageState&) const = default;

 private:
  std::size_t index(int m, int k) const;

  SystemKind kind_;
  int num_users_;
  std::vector<std::uint8_t> alpha_;
};

/// Effective channel. Row m is user m, column k is transmit element k.
struct ChannelMatrix {
  Eigen::MatrixXcd h;             // alpha_mk * h_mk
  Eigen::MatrixXd raw_magnitude;  // |h_mk| ignoring blockage

  int num_users() const { return static_cast<int>(h.rows()); }
};

/// P(link clear) = exp(-phi r) for model A, exp(-phi r^2) for model B.
double blockage_probability(double distance, const SystemConfig& cfg);

BlockageState sample_blockage(const Placement& placement, const SystemConfig& cfg,
                              SystemKind kind, RandomStream& rng);

/// sqrt(eta) exp(-2 pi j r / lambda) / r with r = |tx - rx|.
std::complex<double> free_space_coefficient(const Point3& tx, const Point3& rx,
                                            const SystemConfig& cfg);

/// In-waveguide propagation from the feed to an antenna on the same
/// waveguide: phase exp(-2 pi j L / lambda_g), amplitude 1 (case I) or
/// 10^(-loss_db_per_m L / 20) (case II).
std::complex<double> waveguide_factor(const Point3& feed, const Point3& antenna,
                                      const SystemConfig& cfg);

ChannelMatrix build_channel_matrix(const Placement& placement, const BlockageState& blockage,
                                   const SystemConfig& cfg, SystemKind kind);

}  // namespace pinch
