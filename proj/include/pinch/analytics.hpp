#pragma once

#include "pinch/config.hpp"

namespace pinch {

/// Single-user outage setup: a system and a target rate in bits/s/Hz.
class OutageParams {
 public:
  OutageParams(SystemConfig cfg, double r_target);

  const SystemConfig& cfg() const { return cfg_; }
  double r_target() const { return r_target_; }
  /// SNR threshold 2^R - 1.
  double epsilon() const;
  /// Largest antenna-user distance that still meets the target when the
  /// link is clear: sqrt(eta P / (epsilon sigma^2)).
  double tau1() const;

 private:
  SystemConfig cfg_;
  double r_target_;
};

/// Band of y offsets (relative to the waveguide) served without distance
/// outage: [tau2, tau3], with s = sqrt(max(tau1^2 - d^2, 0)).
struct ThresholdGeometry {
  double s = 0.0;
  double tau2 = 0.0;
  double tau3 = 0.0;
};

/// Error function (2/sqrt(pi)) int_0^x exp(-t^2) dt.
double erf_phi(double x);

ThresholdGeometry threshold_geometry(const OutageParams& p);

/// f(a, b) = (1/D_W) int_a^b exp(-phi sqrt(y^2 + d^2)) dy by adaptive
/// quadrature. Throws std::invalid_argument when a > b.
double strip_integral_f(double a, double b, const SystemConfig& cfg);

// Single-user outage, linear-exponent blockage (model A). No elementary
// antiderivative exists, so these are quadrature based.

/// Exact outage 1 - f(-D_W/2, D_W/2) + f(-D_W/2, tau2) + f(tau3, D_W/2).
double outage_pin_model_a_exact(const OutageParams& p);
/// High-SNR limit 1 - f(-D_W/2, D_W/2).
double outage_pin_model_a_highsnr(const OutageParams& p);
/// High-SNR conventional outage: average of 1 - exp(-phi sqrt(x^2+y^2+d^2))
/// over the service area (2-D quadrature).
double outage_conv_model_a_highsnr(const OutageParams& p);

// Single-user outage, quadratic-exponent blockage (model B): closed forms.

/// 1 - e^{-phi d^2} sqrt(pi) / (2 sqrt(phi) D_W) (erf(-sqrt(phi) tau2) + erf(sqrt(phi) tau3)).
/// For phi = 0 this reduces to the distance-outage probability alone.
double outage_pin_model_b_closed(const OutageParams& p);
/// 1 - sqrt(pi) e^{-phi d^2} erf(sqrt(phi) D_W / 2) / (sqrt(phi) D_W).
double outage_pin_model_b_highsnr(const OutageParams& p);
/// 1 - pi e^{-phi d^2} erf(sqrt(phi) D_L / 2) erf(sqrt(phi) D_W / 2) / (D_W D_L phi).
double outage_conv_model_b_highsnr(const OutageParams& p);
/// Conventional minus pinching high-SNR outage,
/// gamma1 (1 - sqrt(pi) erf(sqrt(phi) D_L / 2) / (D_L sqrt(phi))).
double outage_gap_model_b(const OutageParams& p);

/// Density of x1 - x2 for x1, x2 i.i.d. uniform on an interval of length
/// d_l: (d_l - |z|) / d_l^2 on [-d_l, d_l].
double triangular_pdf(double z, double d_l);

/// The bracketed triangular-average term of the two-user high-SNR rate,
/// i.e. 1/2 - int_0^{D_L} exp(-phi (z^2 + tau4)) (D_L - z) / D_L^2 dz in
/// closed form, with tau4 = (beta1 - beta2)^2 + d^2.
double two_user_blockage_bracket(const SystemConfig& cfg);

/// High-SNR ergodic rate of user 1 for M = 2, model B, users directly under
/// their waveguides:
///   2 log2(1 + eta P / (M sigma^2 d^2)) e^{-phi d^2} * two_user_blockage_bracket.
/// Throws std::invalid_argument unless M = 2 and model B.
double ergodic_pin_two_user_highsnr(const SystemConfig& cfg);

}  // namespace pinch
