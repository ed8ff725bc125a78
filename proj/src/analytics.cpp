#include "pinch/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pinch/quadrature.hpp"
#include "pinch/scenario.hpp"

namespace pinch {

namespace {

const double kSqrtPi = std::sqrt(kPi);

constexpr double kProbabilitySlack = 1e-9;

void require_model(const SystemConfig& cfg, BlockageModel model, const char* what) {
  if (cfg.blockage_model() != model)
    throw std::invalid_argument(std::string(what) + " requires blockage model " +
                                std::string(to_string(model)));
}

double checked_probability(double value, const char* what) {
  if (!(value >= -kProbabilitySlack && value <= 1.0 + kProbabilitySlack))
    throw std::logic_error(std::string(what) + " produced " + std::to_string(value) +
                           ", outside [0, 1]");
  return value;
}

}  // namespace

OutageParams::OutageParams(SystemConfig cfg, double r_target)
    : cfg_(std::move(cfg)), r_target_(r_target) {
  if (!(r_target > 0.0) || !std::isfinite(r_target))
    throw std::invalid_argument("target rate must be positive and finite");
}

double OutageParams::epsilon() const { return std::exp2(r_target_) - 1.0; }

double OutageParams::tau1() const {
  return std::sqrt(cfg_.eta() * cfg_.tx_power() / (epsilon() * cfg_.noise_power()));
}

double erf_phi(double x) { return std::erf(x); }

ThresholdGeometry threshold_geometry(const OutageParams& p) {
  const double t1 = p.tau1();
  const double d = p.cfg().height();
  const double half_w = p.cfg().d_w() / 2.0;
  ThresholdGeometry g;
  g.s = std::sqrt(std::max(t1 * t1 - d * d, 0.0));
  g.tau2 = std::max(-half_w, -g.s);
  g.tau3 = std::min(half_w, g.s);
  return g;
}

double strip_integral_f(double a, double b, const SystemConfig& cfg) {
  if (a > b) throw std::invalid_argument("strip_integral_f requires a <= b");
  if (a == b) return 0.0;
  const double phi = cfg.phi();
  const double d2 = cfg.height() * cfg.height();
  if (phi == 0.0) return (b - a) / cfg.d_w();
  const auto integrand = [phi, d2](double y) { return std::exp(-phi * std::sqrt(y * y + d2)); };
  // Split at the peak y = 0 so each piece is monotone.
  double total = 0.0;
  if (a < 0.0 && b > 0.0) {
    total = integrate(integrand, a, 0.0, 1e-15, 1e-12).value +
            integrate(integrand, 0.0, b, 1e-15, 1e-12).value;
  } else {
    total = integrate(integrand, a, b, 1e-15, 1e-12).value;
  }
  return total / cfg.d_w();
}

double outage_pin_model_a_exact(const OutageParams& p) {
  const SystemConfig& cfg = p.cfg();
  require_model(cfg, BlockageModel::ModelA, "outage_pin_model_a_exact");
  const ThresholdGeometry g = threshold_geometry(p);
  const double half_w = cfg.d_w() / 2.0;
  const double value = 1.0 - strip_integral_f(-half_w, half_w, cfg) +
                       strip_integral_f(-half_w, g.tau2, cfg) +
                       strip_integral_f(g.tau3, half_w, cfg);
  return checked_probability(value, "outage_pin_model_a_exact");
}

double outage_pin_model_a_highsnr(const OutageParams& p) {
  const SystemConfig& cfg = p.cfg();
  require_model(cfg, BlockageModel::ModelA, "outage_pin_model_a_highsnr");
  const double half_w = cfg.d_w() / 2.0;
  return checked_probability(1.0 - strip_integral_f(-half_w, half_w, cfg),
                             "outage_pin_model_a_highsnr");
}

double outage_conv_model_a_highsnr(const OutageParams& p) {
  const SystemConfig& cfg = p.cfg();
  require_model(cfg, BlockageModel::ModelA, "outage_conv_model_a_highsnr");
  const double phi = cfg.phi();
  if (phi == 0.0) return 0.0;
  const double d2 = cfg.height() * cfg.height();
  const double half_w = cfg.d_w() / 2.0;
  const double half_l = cfg.d_l() / 2.0;

  // Symmetric in x and y: integrate the positive quadrant only.
  const auto inner = [&](double x) {
    const double c = x * x + d2;
    return integrate([phi, c](double y) { return std::exp(-phi * std::sqrt(y * y + c)); }, 0.0,
                     half_w, 1e-16, 1e-12)
        .value;
  };
  const double quadrant = integrate(inner, 0.0, half_l, 1e-15, 1e-11).value;
  const double value = 1.0 - 4.0 * quadrant / (cfg.d_w() * cfg.d_l());
  return checked_probability(value, "outage_conv_model_a_highsnr");
}

double outage_pin_model_b_closed(const OutageParams& p) {
  const SystemConfig& cfg = p.cfg();
  require_model(cfg, BlockageModel::ModelB, "outage_pin_model_b_closed");
  const ThresholdGeometry g = threshold_geometry(p);
  const double phi = cfg.phi();
  if (phi == 0.0) return checked_probability(1.0 - (g.tau3 - g.tau2) / cfg.d_w(),
                                             "outage_pin_model_b_closed");
  const double d = cfg.height();
  const double rp = std::sqrt(phi);
  const double value = 1.0 - std::exp(-phi * d * d) * kSqrtPi / (2.0 * rp * cfg.d_w()) *
                                 (erf_phi(-rp * g.tau2) + erf_phi(rp * g.tau3));
  return checked_probability(value, "outage_pin_model_b_closed");
}

double outage_pin_model_b_highsnr(const OutageParams& p) {
  const SystemConfig& cfg = p.cfg();
  require_model(cfg, BlockageModel::ModelB, "outage_pin_model_b_highsnr");
  const double phi = cfg.phi();
  if (phi == 0.0) return 0.0;
  const double d = cfg.height();
  const double w = cfg.d_w();
  const double rp = std::sqrt(phi);
  const double value = 1.0 - kSqrtPi * std::exp(-phi * d * d) * erf_phi(rp * w / 2.0) / (rp * w);
  return checked_probability(value, "outage_pin_model_b_highsnr");
}

double outage_conv_model_b_highsnr(const OutageParams& p) {
  const SystemConfig& cfg = p.cfg();
  require_model(cfg, BlockageModel::ModelB, "outage_conv_model_b_highsnr");
  const double phi = cfg.phi();
  if (phi == 0.0) return 0.0;
  const double d = cfg.height();
  const double w = cfg.d_w();
  const double l = cfg.d_l();
  const double rp = std::sqrt(phi);
  const double value = 1.0 - kPi * std::exp(-phi * d * d) / (w * l * phi) *
                                 erf_phi(rp * l / 2.0) * erf_phi(rp * w / 2.0);
  return checked_probability(value, "outage_conv_model_b_highsnr");
}

double outage_gap_model_b(const OutageParams& p) {
  const SystemConfig& cfg = p.cfg();
  require_model(cfg, BlockageModel::ModelB, "outage_gap_model_b");
  const double phi = cfg.phi();
  if (phi == 0.0) return 0.0;
  const double d = cfg.height();
  const double w = cfg.d_w();
  const double l = cfg.d_l();
  const double rp = std::sqrt(phi);
  const double gamma1 = kSqrtPi * std::exp(-phi * d * d) * erf_phi(rp * w / 2.0) / (rp * w);
  return gamma1 * (1.0 - kSqrtPi * erf_phi(rp * l / 2.0) / (l * rp));
}

double triangular_pdf(double z, double d_l) {
  if (!(d_l > 0.0)) throw std::invalid_argument("triangular_pdf requires d_l > 0");
  const double a = std::abs(z);
  if (a > d_l) return 0.0;
  return (d_l - a) / (d_l * d_l);
}

double two_user_blockage_bracket(const SystemConfig& cfg) {
  if (cfg.num_users() != 2)
    throw std::invalid_argument("the two-user rate approximation needs num_users = 2");
  require_model(cfg, BlockageModel::ModelB, "two_user_blockage_bracket");
  const double phi = cfg.phi();
  // phi -> 0: the interferer is never blocked and the bracket vanishes.
  if (phi == 0.0) return 0.0;
  const double d = cfg.height();
  const double l = cfg.d_l();
  const double gap = waveguide_y_offset(1, cfg) - waveguide_y_offset(2, cfg);
  const double tau4 = gap * gap + d * d;
  const double rp = std::sqrt(phi);
  const double e4 = std::exp(-phi * tau4);
  return 0.5 - e4 / l * kSqrtPi / (2.0 * rp) * erf_phi(rp * l) -
         e4 / (2.0 * phi * l * l) * std::expm1(-phi * l * l);
}

double ergodic_pin_two_user_highsnr(const SystemConfig& cfg) {
  const double bracket = two_user_blockage_bracket(cfg);
  const double d = cfg.height();
  const double snr = cfg.eta() * cfg.tx_power() / (2.0 * cfg.noise_power() * d * d);
  return 2.0 * std::log2(1.0 + snr) * std::exp(-cfg.phi() * d * d) * bracket;
}

}  // namespace pinch
