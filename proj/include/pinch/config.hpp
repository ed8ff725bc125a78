#pragma once

#include <cstdint>
#include <string_view>

namespace pinch {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSpeedOfLight = 299792458.0;

enum class BlockageModel { ModelA, ModelB };
enum class LossCase { CaseI, CaseII };

std::string_view to_string(BlockageModel model);
std::string_view to_string(LossCase loss);

/// dBm to watts: 10^((dBm - 30) / 10).
double dbm_to_watts(double dbm);

/// Raw deployment and link-budget parameters. Defaults are the 28 GHz
/// indoor setup with -90 dBm noise and a 3 m waveguide height.
struct SystemParams {
  int num_users = 1;
  double d_w = 10.0;  // service-area width, meters (across waveguides)
  double d_l = 40.0;  // service-area length, meters (along waveguides)
  double height = 3.0;
  double carrier_freq = 28e9;
  double light_speed = kSpeedOfLight;
  double noise_power = 1e-12;  // watts
  double tx_power = 1e-2;      // watts
  BlockageModel blockage_model = BlockageModel::ModelA;
  double phi = 0.1;  // 1/m for model A, 1/m^2 for model B
  LossCase loss_case = LossCase::CaseI;
  double waveguide_loss_db_per_m = 0.08;
  double n_eff = 1.4;
  bool constrain_under_waveguide = false;

  bool operator==(const SystemParams&) const = default;
};

/// Validated, immutable system configuration. Construction throws
/// std::invalid_argument on any non-physical parameter.
class SystemConfig {
 public:
  SystemConfig() : SystemConfig(SystemParams{}) {}
  explicit SystemConfig(const SystemParams& params);

  const SystemParams& params() const { return p_; }

  int num_users() const { return p_.num_users; }
  double d_w() const { return p_.d_w; }
  double d_l() const { return p_.d_l; }
  double height() const { return p_.height; }
  double noise_power() const { return p_.noise_power; }
  double tx_power() const { return p_.tx_power; }
  double phi() const { return p_.phi; }
  BlockageModel blockage_model() const { return p_.blockage_model; }
  LossCase loss_case() const { return p_.loss_case; }

  double wavelength() const { return p_.light_speed / p_.carrier_freq; }
  double guided_wavelength() const { return wavelength() / p_.n_eff; }
  /// Free-space path-loss constant c^2 / (16 pi^2 f_c^2).
  double eta() const;
  /// Width of the strip served by one waveguide, D_W / M.
  double strip_width() const { return p_.d_w / p_.num_users; }

  bool operator==(const SystemConfig&) const = default;

 private:
  SystemParams p_;
};

}  // namespace pinch
