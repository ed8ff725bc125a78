#include "pinch/transceiver.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pinch {

std::string_view to_string(RatePath path) {
  switch (path) {
    case RatePath::ZeroForcing: return "ZF";
    case RatePath::Design2Fallback: return "DESIGN2_FALLBACK";
    case RatePath::Design2: return "DESIGN2";
    case RatePath::Conventional: return "CONVENTIONAL";
  }
  return "?";
}

double RateVector::sum() const { return std::accumulate(rates.begin(), rates.end(), 0.0); }

std::optional<ZfGains> zero_forcing_gains(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols() || h.rows() == 0)
    throw std::invalid_argument("zero forcing needs a non-empty square channel matrix");
  const Eigen::Index num = h.rows();

  // Blockage produces exact zeros, so check those before any factorization.
  for (Eigen::Index i = 0; i < num; ++i) {
    if ((h.row(i).array() == std::complex<double>{}).all()) return std::nullopt;
    if ((h.col(i).array() == std::complex<double>{}).all()) return std::nullopt;
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(num - 1);
  if (!(smin > 0.0) || smax / smin > kZfConditionLimit) return std::nullopt;

  // G^{-1} = V S^{-1} U^H; [(G G^H)^{-1}]_mm is the squared norm of column m.
  const Eigen::MatrixXcd inv =
      svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();
  ZfGains out;
  out.g.resize(num);
  for (Eigen::Index m = 0; m < num; ++m)
    out.g[m] = 1.0 / (static_cast<double>(num) * inv.col(m).squaredNorm());
  return out;
}

Eigen::MatrixXcd zero_forcing_precoder(const Eigen::MatrixXcd& h, const ZfGains& gains) {
  if (h.rows() != h.cols() || static_cast<std::size_t>(h.rows()) != gains.g.size())
    throw std::invalid_argument("precoder dimensions do not match");
  Eigen::VectorXd d(h.rows());
  for (Eigen::Index m = 0; m < h.rows(); ++m) d(m) = std::sqrt(gains.g[m]);
  return h.inverse() * d.asDiagonal();
}

RateVector design1_rates(const ChannelMatrix& channel, const SystemConfig& cfg) {
  const auto gains = zero_forcing_gains(channel.h);
  if (!gains) {
    RateVector fallback = design2_rates(channel, cfg);
    fallback.path = RatePath::Design2Fallback;
    return fallback;
  }
  const double snr = cfg.tx_power() / cfg.noise_power();
  RateVector out{{}, RatePath::ZeroForcing};
  out.rates.reserve(gains->g.size());
  for (double g : gains->g) out.rates.push_back(std::log2(1.0 + g * snr));
  return out;
}

RateVector design2_rates(const ChannelMatrix& channel, const SystemConfig& cfg) {
  const Eigen::Index num = channel.h.rows();
  const double power = cfg.tx_power();
  const double noise = static_cast<double>(num) * cfg.noise_power();
  RateVector out{{}, RatePath::Design2};
  out.rates.reserve(num);
  for (Eigen::Index m = 0; m < num; ++m) {
    const double signal = std::norm(channel.h(m, m)) * power;
    double interference = 0.0;
    for (Eigen::Index i = 0; i < num; ++i)
      if (i != m) interference += std::norm(channel.h(m, i));
    out.rates.push_back(std::log2(1.0 + signal / (interference * power + noise)));
  }
  return out;
}

RateVector conventional_rates(const Placement& placement, const BlockageState& blockage,
                              const SystemConfig& cfg) {
  // The shared blockage indicator zeroes a whole row, which is exactly the
  // Design II SINR evaluated on the array channel.
  const ChannelMatrix channel =
      build_channel_matrix(placement, blockage, cfg, SystemKind::Conventional);
  RateVector out = design2_rates(channel, cfg);
  out.path = RatePath::Conventional;
  return out;
}

}  // namespace pinch
