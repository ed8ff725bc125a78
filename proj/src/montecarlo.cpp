#include "pinch/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>

#include "pinch/channel.hpp"
#include "pinch/scenario.hpp"
#include "pinch/transceiver.hpp"

namespace pinch {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::PinD1: return "PIN_D1";
    case Scheme::PinD2: return "PIN_D2";
    case Scheme::Conv: return "CONV";
  }
  return "?";
}

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::Outage: return "OUTAGE";
    case MetricKind::ErgodicPerUser: return "ERGODIC_PER_USER";
    case MetricKind::ErgodicSum: return "ERGODIC_SUM";
  }
  return "?";
}

std::string_view to_string(Provenance provenance) {
  return provenance == Provenance::Simulated ? "SIMULATED" : "CLOSED_FORM";
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::TxPowerDbm: return "TX_POWER_DBM";
    case SweepAxis::DL: return "D_L";
    case SweepAxis::RTarget: return "R_TARGET";
  }
  return "?";
}

namespace {

// Trials are grouped into fixed-size blocks. Workers claim whole blocks, each
// block is reduced sequentially, and blocks are merged in index order, so the
// result is the same for any number of workers.
constexpr std::uint64_t kBlockSize = 2048;

struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }

  void merge(const Moments& other) {
    if (other.count == 0.0) return;
    const double total = count + other.count;
    const double delta = other.mean - mean;
    mean += delta * other.count / total;
    m2 += other.m2 + delta * delta * count * other.count / total;
    count = total;
  }

  double variance() const { return count > 1.0 ? m2 / (count - 1.0) : 0.0; }
};

unsigned resolve_workers(unsigned requested, std::uint64_t blocks) {
  unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::uint64_t>(n, std::max<std::uint64_t>(blocks, 1)));
}

// Runs `trial(rng, out)` for every trial, where `out` has `width` slots, and
// returns per-slot moments.
template <typename TrialFn>
std::vector<Moments> run_trials(std::uint64_t n_trials, std::uint64_t master_seed,
                                const McOptions& options, std::size_t width, TrialFn trial) {
  if (n_trials == 0) throw std::invalid_argument("n_trials must be at least 1");
  const std::uint64_t blocks = (n_trials + kBlockSize - 1) / kBlockSize;
  std::vector<std::vector<Moments>> per_block(blocks, std::vector<Moments>(width));
  std::atomic<std::uint64_t> next{0};

  auto worker = [&]() {
    std::vector<double> out(width);
    for (std::uint64_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
      auto& acc = per_block[b];
      const std::uint64_t end = std::min(n_trials, (b + 1) * kBlockSize);
      for (std::uint64_t t = b * kBlockSize; t < end; ++t) {
        RandomStream rng = RandomStream::for_trial(master_seed, options.point_index, t);
        trial(rng, out);
        for (std::size_t i = 0; i < width; ++i) acc[i].add(out[i]);
      }
    }
  };

  const unsigned workers = resolve_workers(options.workers, blocks);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  }

  std::vector<Moments> total(width);
  for (const auto& block : per_block)
    for (std::size_t i = 0; i < width; ++i) total[i].merge(block[i]);
  return total;
}

std::optional<Placement> fixed_placement(const SystemConfig& cfg, std::uint64_t master_seed,
                                         const McOptions& options) {
  if (!options.fixed_placement) return std::nullopt;
  RandomStream rng = RandomStream::for_trial(master_seed, options.point_index,
                                             std::numeric_limits<std::uint64_t>::max());
  return sample_placement(cfg, rng);
}

RateVector trial_rates(Scheme scheme, const SystemConfig& cfg,
                       const std::optional<Placement>& fixed, RandomStream& rng) {
  const Placement placement = fixed ? *fixed : sample_placement(cfg, rng);
  if (scheme == Scheme::Conv) {
    const BlockageState blockage =
        sample_blockage(placement, cfg, SystemKind::Conventional, rng);
    return conventional_rates(placement, blockage, cfg);
  }
  const BlockageState blockage = sample_blockage(placement, cfg, SystemKind::Pinching, rng);
  const ChannelMatrix channel =
      build_channel_matrix(placement, blockage, cfg, SystemKind::Pinching);
  return scheme == Scheme::PinD1 ? design1_rates(channel, cfg) : design2_rates(channel, cfg);
}

MetricEstimate make_estimate(const Moments& m, MetricKind kind, std::uint64_t n) {
  MetricEstimate e;
  e.value = m.mean;
  e.n_trials = n;
  e.kind = kind;
  e.provenance = Provenance::Simulated;
  if (kind == MetricKind::Outage) {
    const double p = m.mean;
    e.ci_half_width = 3.0 * std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n));
  } else {
    e.ci_half_width = 3.0 * std::sqrt(m.variance() / static_cast<double>(n));
  }
  return e;
}

}  // namespace

MetricEstimate estimate_outage(Scheme scheme, const OutageParams& p, std::uint64_t n_trials,
                               std::uint64_t master_seed, const McOptions& options) {
  const SystemConfig& cfg = p.cfg();
  const double target = p.r_target();
  const auto fixed = fixed_placement(cfg, master_seed, options);
  const auto moments = run_trials(
      n_trials, master_seed, options, 1, [&](RandomStream& rng, std::vector<double>& out) {
        const RateVector r = trial_rates(scheme, cfg, fixed, rng);
        out[0] = r.rates[0] <= target ? 1.0 : 0.0;
      });
  return make_estimate(moments[0], MetricKind::Outage, n_trials);
}

ErgodicEstimate estimate_ergodic(Scheme scheme, const SystemConfig& cfg,
                                 std::uint64_t n_trials, std::uint64_t master_seed,
                                 const McOptions& options) {
  const std::size_t num = static_cast<std::size_t>(cfg.num_users());
  const auto fixed = fixed_placement(cfg, master_seed, options);
  const auto moments = run_trials(
      n_trials, master_seed, options, num + 1, [&](RandomStream& rng, std::vector<double>& out) {
        const RateVector r = trial_rates(scheme, cfg, fixed, rng);
        double sum = 0.0;
        for (std::size_t m = 0; m < num; ++m) {
          out[m] = r.rates[m];
          sum += r.rates[m];
        }
        out[num] = sum;
      });
  ErgodicEstimate result;
  for (std::size_t m = 0; m < num; ++m)
    result.per_user.push_back(make_estimate(moments[m], MetricKind::ErgodicPerUser, n_trials));
  result.sum = make_estimate(moments[num], MetricKind::ErgodicSum, n_trials);
  return result;
}

SystemConfig apply_axis(const SystemConfig& cfg, SweepAxis axis, double value) {
  SystemParams p = cfg.params();
  switch (axis) {
    case SweepAxis::TxPowerDbm: p.tx_power = dbm_to_watts(value); break;
    case SweepAxis::DL: p.d_l = value; break;
    case SweepAxis::RTarget: break;
  }
  return SystemConfig(p);
}

std::vector<SweepPoint> sweep(const SweepRequest& request) {
  const auto& values = request.axis_values;
  if (values.empty()) throw std::invalid_argument("sweep axis has no values");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1]))
      throw std::invalid_argument("sweep axis values must be strictly increasing");
  if (request.axis == SweepAxis::RTarget && request.metric != MetricKind::Outage)
    throw std::invalid_argument("an R_TARGET sweep only applies to the outage metric");

  std::vector<SweepPoint> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    McOptions options = request.options;
    options.point_index = i;
    const SystemConfig cfg = apply_axis(request.cfg, request.axis, values[i]);
    SweepPoint point{values[i], {}};
    if (request.metric == MetricKind::Outage) {
      const double target =
          request.axis == SweepAxis::RTarget ? values[i] : request.r_target;
      point.estimates.push_back(estimate_outage(request.scheme, OutageParams(cfg, target),
                                                request.n_trials, request.master_seed,
                                                options));
    } else {
      ErgodicEstimate e =
          estimate_ergodic(request.scheme, cfg, request.n_trials, request.master_seed, options);
      if (request.metric == MetricKind::ErgodicPerUser)
        point.estimates = std::move(e.per_user);
      else
        point.estimates.push_back(e.sum);
    }
    out.push_back(std::move(point));
  }
  return out;
}

}  // namespace pinch
