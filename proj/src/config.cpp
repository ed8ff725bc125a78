#include "pinch/config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pinch {

std::string_view to_string(BlockageModel model) {
  return model == BlockageModel::ModelA ? "A" : "B";
}

std::string_view to_string(LossCase loss) {
  return loss == LossCase::CaseI ? "I" : "II";
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw std::invalid_argument(std::string(name) + " must be positive and finite");
}

}  // namespace

SystemConfig::SystemConfig(const SystemParams& params) : p_(params) {
  if (p_.num_users < 1)
    throw std::invalid_argument("num_users must be at least 1");
  require_positive(p_.d_w, "d_w");
  require_positive(p_.d_l, "d_l");
  require_positive(p_.height, "height");
  require_positive(p_.carrier_freq, "carrier_freq");
  require_positive(p_.light_speed, "light_speed");
  require_positive(p_.noise_power, "noise_power");
  require_positive(p_.tx_power, "tx_power");
  require_positive(p_.n_eff, "n_eff");
  if (!(p_.phi >= 0.0) || !std::isfinite(p_.phi))
    throw std::invalid_argument("phi must be non-negative and finite");
  if (!(p_.waveguide_loss_db_per_m >= 0.0) || !std::isfinite(p_.waveguide_loss_db_per_m))
    throw std::invalid_argument("waveguide_loss_db_per_m must be non-negative and finite");
}

double SystemConfig::eta() const {
  const double c = p_.light_speed;
  const double f = p_.carrier_freq;
  return (c * c) / (16.0 * kPi * kPi * f * f);
}

}  // namespace pinch
