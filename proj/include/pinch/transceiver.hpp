#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "pinch/channel.hpp"
#include "pinch/config.hpp"
#include "pinch/scenario.hpp"

namespace pinch {

enum class RatePath { ZeroForcing, Design2Fallback, Design2, Conventional };

std::string_view to_string(RatePath path);

/// Per-user instantaneous rates in bits/s/Hz.
struct RateVector {
  std::vector<double> rates;
  RatePath path = RatePath::Design2;

  double sum() const;
};

/// Zero-forcing effective gains g_m = 1 / (M [(G G^H)^{-1}]_mm), where G is
/// the channel with row m = user m.
struct ZfGains {
  std::vector<double> g;
};

/// Relative condition number above which the channel is treated as rank
/// deficient.
inline constexpr double kZfConditionLimit = 1e12;

/// Returns std::nullopt when the channel is rank deficient (an all-zero row or
/// column, or condition number above kZfConditionLimit). Throws
/// std::invalid_argument for a non-square matrix.
std::optional<ZfGains> zero_forcing_gains(const Eigen::MatrixXcd& h);

/// Explicit precoder G^{-1} diag(sqrt(g)); column m carries user m's stream.
Eigen::MatrixXcd zero_forcing_precoder(const Eigen::MatrixXcd& h, const ZfGains& gains);

/// Design I: zero forcing when the channel is invertible, otherwise the whole
/// realization falls back to design2_rates.
RateVector design1_rates(const ChannelMatrix& channel, const SystemConfig& cfg);

/// Design II: antenna m serves user m only with power P/M.
///   R_m = log2(1 + |h_mm|^2 P / (sum_{i != m} |h_mi|^2 P + M sigma^2))
RateVector design2_rates(const ChannelMatrix& channel, const SystemConfig& cfg);

/// Fixed half-wavelength array at the area center, element m serving user m
/// with power P/M; all elements share the user's blockage indicator.
RateVector conventional_rates(const Placement& placement, const BlockageState& blockage,
                              const SystemConfig& cfg);

}  // namespace pinch
