#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "pinch/analytics.hpp"
#include "pinch/config.hpp"

namespace pinch {

enum class Scheme { PinD1, PinD2, Conv };
enum class MetricKind { Outage, ErgodicPerUser, ErgodicSum };
enum class Provenance { Simulated, ClosedForm };
enum class SweepAxis { TxPowerDbm, DL, RTarget };

std::string_view to_string(Scheme scheme);
std::string_view to_string(MetricKind kind);
std::string_view to_string(Provenance provenance);
std::string_view to_string(SweepAxis axis);

struct MetricEstimate {
  double value = 0.0;
  double ci_half_width = 0.0;  // 3 sigma
  std::uint64_t n_trials = 0;
  MetricKind kind = MetricKind::Outage;
  Provenance provenance = Provenance::Simulated;

  bool operator==(const MetricEstimate&) const = default;
};

struct McOptions {
  /// Worker threads; 0 picks std::thread::hardware_concurrency(). Results do
  /// not depend on this value.
  unsigned workers = 0;
  /// Index of the sweep point; part of every trial's stream key.
  std::uint64_t point_index = 0;
  /// Variance-reduction mode: draw one placement for the whole run and
  /// resample only blockage per trial.
  bool fixed_placement = false;
};

/// Fraction of trials in which user 1's rate is at most the target rate.
/// Each trial draws a fresh placement and blockage state.
MetricEstimate estimate_outage(Scheme scheme, const OutageParams& p, std::uint64_t n_trials,
                               std::uint64_t master_seed, const McOptions& options = {});

struct ErgodicEstimate {
  std::vector<MetricEstimate> per_user;
  MetricEstimate sum;
};

ErgodicEstimate estimate_ergodic(Scheme scheme, const SystemConfig& cfg,
                                 std::uint64_t n_trials, std::uint64_t master_seed,
                                 const McOptions& options = {});

struct SweepRequest {
  SystemConfig cfg;
  Scheme scheme = Scheme::PinD2;
  SweepAxis axis = SweepAxis::TxPowerDbm;
  std::vector<double> axis_values;
  MetricKind metric = MetricKind::ErgodicSum;
  double r_target = 1.0;  // used by MetricKind::Outage only
  std::uint64_t n_trials = 10000;
  std::uint64_t master_seed = 1;
  McOptions options;  // point_index is assigned per axis value
};

struct SweepPoint {
  double axis_value = 0.0;
  /// Outage: one entry (user 1). ErgodicPerUser: one entry per user.
  /// ErgodicSum: one entry.
  std::vector<MetricEstimate> estimates;
};

/// Copy of cfg with the swept quantity set. RTarget leaves cfg unchanged.
SystemConfig apply_axis(const SystemConfig& cfg, SweepAxis axis, double value);

/// One estimate per axis value; point i uses point_index = i. Throws
/// std::invalid_argument for an empty or non-increasing axis.
std::vector<SweepPoint> sweep(const SweepRequest& request);

}  // namespace pinch
