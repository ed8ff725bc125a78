// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pinch/analytics.hpp"
#include "pinch/channel.hpp"
#include "pinch/experiment.hpp"
#include "pinch/montecarlo.hpp"
#include "pinch/transceiver.hpp"

namespace {

using namespace pinch;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double quad(const std::function<double(double)>& f, double a, double b) {
  if (a >= b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 25, 1e-15);
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

SystemConfig with_phi_geometry(BlockageModel model, double phi, double d_w, double d_l,
                               int users = 1) {
  SystemParams p;
  p.num_users = users;
  p.blockage_model = model;
  p.phi = phi;
  p.d_w = d_w;
  p.d_l = d_l;
  p.tx_power = dbm_to_watts(10.0);
  return SystemConfig(p);
}

struct GridPoint {
  double phi, d_w, d_l, r_target;
};

std::vector<GridPoint> grid() {
  std::vector<GridPoint> out;
  int i = 0;
  for (double phi : {0.01, 0.05, 0.1, 0.2, 0.5})
    for (double w : {2.0, 5.0, 10.0, 20.0})
      for (double l : {10.0, 20.0, 40.0, 80.0, 160.0})
        out.push_back({phi, w, l, 6.0 + 0.2 * (i++ % 20)});
  return out;
}

SystemConfig preset_system(Preset p) { return preset_config(p).system_config(); }

SystemConfig with_power(const SystemConfig& cfg, double dbm) {
  return apply_axis(cfg, SweepAxis::TxPowerDbm, dbm);
}

SystemConfig with_loss(const SystemConfig& cfg, LossCase loss) {
  SystemParams p = cfg.params();
  p.loss_case = loss;
  return SystemConfig(p);
}

// 1. Closed forms against adaptive quadrature of their defining integrals.
Outcome closed_forms_vs_quadrature() {
  double worst = 0.0;
  std::string worst_name;
  auto track = [&](const char* name, double got, double want) {
    const double e = rel_err(got, want);
    if (e > worst) {
      worst = e;
      worst_name = name;
    }
  };
  const auto points = grid();
  for (const GridPoint& g : points) {
    const SystemConfig cfg = with_phi_geometry(BlockageModel::ModelB, g.phi, g.d_w, g.d_l);
    const OutageParams p(cfg, g.r_target);
    const ThresholdGeometry t = threshold_geometry(p);
    const double phi = g.phi;
    const auto clear_y = [phi](double y) { return std::exp(-phi * (y * y + 9.0)); };
    const auto gauss = [phi](double x) { return std::exp(-phi * x * x); };
    const double strip = quad(clear_y, -g.d_w / 2, g.d_w / 2);
    const double along = quad(gauss, -g.d_l / 2, g.d_l / 2);

    const double pin_ref = 1.0 - quad(clear_y, t.tau2, t.tau3) / g.d_w;
    const double pin = 1.0 - strip / g.d_w;
    const double conv = 1.0 - strip * along / (g.d_w * g.d_l);
    track("pin_exact", outage_pin_model_b_closed(p), pin_ref);
    track("pin_highsnr", outage_pin_model_b_highsnr(p), pin);
    track("conv_highsnr", outage_conv_model_b_highsnr(p), conv);
    track("gap", outage_gap_model_b(p), conv - pin);

    const SystemConfig two = with_phi_geometry(BlockageModel::ModelB, g.phi, g.d_w, g.d_l, 2);
    const double gap = g.d_w / 2;
    const double tau4 = gap * gap + 9.0;
    const double l = g.d_l;
    const double bracket =
        0.5 - quad([&](double z) { return std::exp(-phi * (z * z + tau4)) * (l - z) / (l * l); }, 0.0, l);
    track("two_user_blockage_bracket", two_user_blockage_bracket(two), bracket);
  }
  Outcome o;
  o.pass = points.size() == 100 && worst <= 1e-9;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu grid points, max relative error %.2e (%s)", points.size(),
                worst, worst_name.c_str());
  o.detail = buf;
  return o;
}

// 2. Model-B single-user outage simulation against the closed form.
Outcome model_b_outage_vs_simulation() {
  Outcome o;
  const ExperimentConfig base = preset_config(Preset::Fig2B);
  const SystemConfig cfg = with_loss(base.system_config(), LossCase::CaseI);
  constexpr std::uint64_t kTrials = 1000000;
  std::string detail;
  for (std::size_t i = 0; i < base.run.axis_values.size(); ++i) {
    const double d_l = base.run.axis_values[i];
    const OutageParams p(apply_axis(cfg, SweepAxis::DL, d_l), base.r_target);
    McOptions opts;
    opts.point_index = i;
    const MetricEstimate e = estimate_outage(Scheme::PinD2, p, kTrials, 2024, opts);
    const double expected = outage_pin_model_b_closed(p);
    const double sigma = std::sqrt(expected * (1.0 - expected) / kTrials);
    const double z = std::abs(e.value - expected) / sigma;
    o.pass = o.pass && z <= 3.0;
    char buf[120];
    std::snprintf(buf, sizeof buf, "%sD_L=%g: %.5f vs %.5f (%.2f sigma)", detail.empty() ? "" : "; ",
                  d_l, e.value, expected, z);
    detail += buf;
  }
  o.detail = detail;
  return o;
}

// 3. Exact model-A outage approaches its high-SNR limit.
Outcome model_a_highsnr_convergence() {
  Outcome o;
  const ExperimentConfig base = preset_config(Preset::Fig2A);
  std::vector<double> diffs;
  std::string detail;
  for (double dbm : {0.0, 10.0, 20.0, 30.0, 40.0}) {
    const OutageParams p(with_power(base.system_config(), dbm), base.r_target);
    diffs.push_back(std::abs(outage_pin_model_a_exact(p) - outage_pin_model_a_highsnr(p)));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%g dBm: %.3e", detail.empty() ? "" : ", ", dbm, diffs.back());
    detail += buf;
  }
  for (std::size_t i = 1; i < diffs.size(); ++i) o.pass = o.pass && diffs[i] <= diffs[i - 1];
  o.pass = o.pass && diffs.front() > diffs.back() && diffs.back() <= 1e-3;
  o.detail = detail;
  return o;
}

// 4. Conventional minus pinching high-SNR outage.
Outcome outage_gap_ordering() {
  Outcome o;
  double min_gap_a = 1.0;
  double min_gap_b = 1.0;
  for (const GridPoint& g : grid()) {
    const OutageParams a(with_phi_geometry(BlockageModel::ModelA, g.phi, g.d_w, g.d_l), g.r_target);
    const OutageParams b(with_phi_geometry(BlockageModel::ModelB, g.phi, g.d_w, g.d_l), g.r_target);
    min_gap_a = std::min(min_gap_a, outage_conv_model_a_highsnr(a) - outage_pin_model_a_highsnr(a));
    min_gap_b = std::min(min_gap_b, outage_conv_model_b_highsnr(b) - outage_pin_model_b_highsnr(b));
  }
  bool increasing = true;
  int sequences = 0;
  for (double phi : {0.01, 0.05, 0.1, 0.2, 0.5})
    for (double w : {2.0, 5.0, 10.0, 20.0}) {
      double prev = -1.0;
      for (double l : {5.0, 10.0, 20.0, 40.0, 80.0}) {
        const double gap =
            outage_gap_model_b(OutageParams(with_phi_geometry(BlockageModel::ModelB, phi, w, l), 7.0));
        increasing = increasing && gap > prev;
        prev = gap;
      }
      ++sequences;
    }
  o.pass = min_gap_a > 0.0 && min_gap_b > 0.0 && increasing;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "min gap model A %.3e, model B %.3e over 100 points; model-B gap increasing in D_L "
                "for %d/%d (phi, D_W) pairs",
                min_gap_a, min_gap_b, increasing ? sequences : 0, sequences);
  o.detail = buf;
  return o;
}

// 5. Two-user constrained simulation against the high-SNR rate.
Outcome two_user_rate_vs_simulation() {
  Outcome o;
  const SystemConfig base = preset_system(Preset::Fig4);
  std::string detail;
  for (double dbm : {30.0, 40.0}) {
    const SystemConfig cfg = with_power(base, dbm);
    const ErgodicEstimate e = estimate_ergodic(Scheme::PinD2, cfg, 100000, 4040);
    const double approx = ergodic_pin_two_user_highsnr(cfg);
    const double r = rel_err(e.per_user[0].value, approx);
    o.pass = o.pass && r <= 0.05;
    char buf[120];
    std::snprintf(buf, sizeof buf, "%s%g dBm: sim %.4f vs %.4f (%.2f%%)", detail.empty() ? "" : "; ",
                  dbm, e.per_user[0].value, approx, 100.0 * r);
    detail += buf;
  }
  o.detail = detail;
  return o;
}

// 6. Pinching gain over the conventional array grows without bound.
Outcome unbounded_gain() {
  Outcome o;
  const SystemConfig base = preset_system(Preset::Fig3A);
  constexpr std::uint64_t kTrials = 100000;
  std::vector<double> gaps;
  std::vector<double> gap_ci;
  std::string detail;
  for (double dbm : {10.0, 20.0, 30.0, 40.0}) {
    const SystemConfig cfg = with_power(base, dbm);
    const MetricEstimate pin = estimate_ergodic(Scheme::PinD2, cfg, kTrials, 606).sum;
    const MetricEstimate conv = estimate_ergodic(Scheme::Conv, cfg, kTrials, 607).sum;
    gaps.push_back(pin.value - conv.value);
    gap_ci.push_back(std::hypot(pin.ci_half_width, conv.ci_half_width));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%g dBm gap %.3f", detail.empty() ? "" : ", ", dbm, gaps.back());
    detail += buf;
  }
  for (std::size_t i = 1; i < gaps.size(); ++i)
    o.pass = o.pass && gaps[i] - gaps[i - 1] > std::hypot(gap_ci[i], gap_ci[i - 1]);

  const MetricEstimate c40 = estimate_ergodic(Scheme::Conv, with_power(base, 40.0), kTrials, 608).sum;
  const MetricEstimate c60 = estimate_ergodic(Scheme::Conv, with_power(base, 60.0), kTrials, 608).sum;
  const double rise = c60.value - c40.value;
  const double ci = std::hypot(c40.ci_half_width, c60.ci_half_width);
  o.pass = o.pass && rise < ci;
  char buf[120];
  std::snprintf(buf, sizeof buf, "; conv 60 dBm minus 40 dBm %.2e (combined CI %.2e)", rise, ci);
  o.detail = detail + buf;
  return o;
}

// 7. Zero-forcing precoder on unblocked channels.
Outcome zero_forcing() {
  Outcome o;
  double worst_leak = 0.0;
  double worst_power = 0.0;
  int zf_ok = 0;
  int d1_below = 0;
  int total = 0;
  RandomStream rng(707);
  for (int i = 0; i < 1000; ++i) {
    SystemParams sp = preset_system(i % 2 ? Preset::Fig3B : Preset::Fig3A).params();
    sp.tx_power = dbm_to_watts(10.0 + 10.0 * ((i / 2) % 4));
    const SystemConfig cfg(sp);
    const int users = cfg.num_users();
    const Placement pl = sample_placement(cfg, rng);
    const ChannelMatrix ch = build_channel_matrix(
        pl, BlockageState::all_clear(SystemKind::Pinching, users), cfg, SystemKind::Pinching);
    ++total;
    const auto gains = zero_forcing_gains(ch.h);
    if (!gains) continue;
    ++zf_ok;
    const double p = cfg.tx_power();
    const Eigen::MatrixXcd w = zero_forcing_precoder(ch.h, *gains) * std::sqrt(p);
    const Eigen::MatrixXcd eff = ch.h * w;
    for (int m = 0; m < users; ++m) {
      const double signal = std::norm(eff(m, m));
      double leak = 0.0;
      for (int k = 0; k < users; ++k)
        if (k != m) leak += std::norm(eff(m, k));
      worst_leak = std::max(worst_leak, leak / signal);
    }
    worst_power = std::max(worst_power, std::abs(w.squaredNorm() - p) / p);
    if (design1_rates(ch, cfg).sum() < design2_rates(ch, cfg).sum()) ++d1_below;
  }
  o.pass = zf_ok > 0 && worst_leak <= 1e-10 && worst_power <= 1e-12 && d1_below == 0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%d/%d realizations invertible; max interference/signal %.2e, max power error %.2e; "
                "Design I below Design II in %d",
                zf_ok, total, worst_leak, worst_power, d1_below);
  o.detail = buf;
  return o;
}

// 8. Difference of two uniform positions along the waveguide.
Outcome triangular_histogram() {
  Outcome o;
  const SystemConfig cfg = preset_system(Preset::Fig4);
  const double l = cfg.d_l();
  constexpr int kSamples = 1000000;
  constexpr int kBins = 50;
  std::vector<long> counts(kBins, 0);
  RandomStream rng(808);
  for (int i = 0; i < kSamples; ++i) {
    const Placement pl = sample_placement(cfg, rng);
    const double z = pl.user_positions[0].x - pl.user_positions[1].x;
    const int bin = std::min(kBins - 1, static_cast<int>((z + l) / (2.0 * l) * kBins));
    ++counts[bin];
  }
  double worst = 0.0;
  for (int b = 0; b < kBins; ++b) {
    const double lo = -l + 2.0 * l * b / kBins;
    const double hi = lo + 2.0 * l / kBins;
    const double prob = quad([l](double z) { return triangular_pdf(z, l); }, lo, hi);
    const double sigma = std::sqrt(kSamples * prob * (1.0 - prob));
    worst = std::max(worst, std::abs(counts[b] - kSamples * prob) / sigma);
  }
  o.pass = worst <= 4.0;
  char buf[100];
  std::snprintf(buf, sizeof buf, "%d samples, %d bins, worst bin %.2f sigma", kSamples, kBins, worst);
  o.detail = buf;
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 9. Byte-identical output for worker counts 1, 4 and 16.
Outcome determinism() {
  Outcome o;
  std::random_device rd;
  const auto dir = std::filesystem::temp_directory_path() / ("pinchsim_acc_" + std::to_string(rd()));
  std::filesystem::create_directories(dir);
  int compared = 0;
  for (Preset preset : {Preset::Fig2B, Preset::Fig3B, Preset::Fig4}) {
    for (OutputFormat format : {OutputFormat::Csv, OutputFormat::Json}) {
      ExperimentConfig cfg = preset_config(preset);
      cfg.run.n_trials = 20000;
      cfg.run.master_seed = 99;
      cfg.run.format = format;
      // Same path every time: the JSON header echoes run.output.
      cfg.run.output = (dir / "run.out").string();
      std::string reference;
      for (unsigned workers : {1u, 4u, 16u}) {
        run_experiment(cfg, workers);
        const std::string bytes = slurp(cfg.run.output);
        if (workers == 1)
          reference = bytes;
        else
          o.pass = o.pass && bytes == reference && !bytes.empty();
        ++compared;
      }
    }
  }
  std::error_code ec;
  std::filesystem::remove_all(dir, ec);
  o.detail = std::to_string(compared) + " runs over FIG2B/FIG3B/FIG4 in CSV and JSON";
  return o;
}

// 10. Waveguide attenuation barely moves the single-user rate.
Outcome waveguide_loss() {
  Outcome o;
  const ExperimentConfig base = preset_config(Preset::Fig1);
  double worst = 0.0;
  double worst_at = 0.0;
  for (std::size_t i = 0; i < base.run.axis_values.size(); ++i) {
    const double dbm = base.run.axis_values[i];
    const SystemConfig c1 = with_power(base.system_config(), dbm);
    const SystemConfig c2 = with_loss(c1, LossCase::CaseII);
    McOptions opts;
    opts.point_index = i;
    const double r1 = estimate_ergodic(Scheme::PinD2, c1, 100000, 1010, opts).sum.value;
    const double r2 = estimate_ergodic(Scheme::PinD2, c2, 100000, 1010, opts).sum.value;
    if (std::abs(r1 - r2) > worst) {
      worst = std::abs(r1 - r2);
      worst_at = dbm;
    }
  }
  o.pass = worst <= 0.5;
  char buf[100];
  std::snprintf(buf, sizeof buf, "max |case I - case II| = %.4f bits/s/Hz (at %g dBm)", worst, worst_at);
  o.detail = buf;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"closed forms vs quadrature", closed_forms_vs_quadrature},
      {"model-B outage vs simulation", model_b_outage_vs_simulation},
      {"model-A high-SNR convergence", model_a_highsnr_convergence},
      {"conventional vs pinching outage gap", outage_gap_ordering},
      {"two-user rate vs simulation", two_user_rate_vs_simulation},
      {"unbounded pinching gain", unbounded_gain},
      {"zero-forcing correctness", zero_forcing},
      {"triangular distance distribution", triangular_histogram},
      {"determinism across workers", determinism},
      {"waveguide-loss sensitivity", waveguide_loss},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("AC%-2d %s  %s: %s [%.1f s]\n", index, o.pass ? "PASS" : "FAIL", name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", index - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
