#include "pinch/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "pinch/analytics.hpp"

namespace pinch {

std::string_view to_string(Preset preset) {
  switch (preset) {
    case Preset::Fig1: return "FIG1";
    case Preset::Fig2A: return "FIG2A";
    case Preset::Fig2B: return "FIG2B";
    case Preset::Fig3A: return "FIG3A";
    case Preset::Fig3B: return "FIG3B";
    case Preset::Fig4: return "FIG4";
  }
  return "?";
}

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::Csv ? "CSV" : "JSON";
}

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <typename Enum, std::size_t N>
Enum parse_enum(const std::string& key, std::string_view text,
                const std::array<std::pair<std::string_view, Enum>, N>& table) {
  const std::string u = upper(text);
  for (const auto& [name, value] : table)
    if (u == name) return value;
  std::string allowed;
  for (const auto& [name, value] : table) allowed += (allowed.empty() ? "" : "|") + std::string(name);
  throw ConfigError(key, "unknown value '" + std::string(text) + "' (expected " + allowed + ")");
}

constexpr std::array<std::pair<std::string_view, Preset>, 6> kPresets{{
    {"FIG1", Preset::Fig1},
    {"FIG2A", Preset::Fig2A},
    {"FIG2B", Preset::Fig2B},
    {"FIG3A", Preset::Fig3A},
    {"FIG3B", Preset::Fig3B},
    {"FIG4", Preset::Fig4},
}};

constexpr std::array<std::pair<std::string_view, BlockageModel>, 4> kModels{{
    {"A", BlockageModel::ModelA},
    {"B", BlockageModel::ModelB},
    {"MODEL_A", BlockageModel::ModelA},
    {"MODEL_B", BlockageModel::ModelB},
}};

constexpr std::array<std::pair<std::string_view, LossCase>, 4> kLossCases{{
    {"I", LossCase::CaseI},
    {"II", LossCase::CaseII},
    {"CASE_I", LossCase::CaseI},
    {"CASE_II", LossCase::CaseII},
}};

constexpr std::array<std::pair<std::string_view, Scheme>, 3> kSchemes{{
    {"PIN_D1", Scheme::PinD1},
    {"PIN_D2", Scheme::PinD2},
    {"CONV", Scheme::Conv},
}};

constexpr std::array<std::pair<std::string_view, MetricKind>, 3> kMetrics{{
    {"OUTAGE", MetricKind::Outage},
    {"ERGODIC_PER_USER", MetricKind::ErgodicPerUser},
    {"ERGODIC_SUM", MetricKind::ErgodicSum},
}};

constexpr std::array<std::pair<std::string_view, SweepAxis>, 3> kAxes{{
    {"TX_POWER_DBM", SweepAxis::TxPowerDbm},
    {"D_L", SweepAxis::DL},
    {"R_TARGET", SweepAxis::RTarget},
}};

constexpr std::array<std::pair<std::string_view, OutputFormat>, 2> kFormats{{
    {"CSV", OutputFormat::Csv},
    {"JSON", OutputFormat::Json},
}};

constexpr std::array<std::pair<std::string_view, bool>, 2> kBools{{
    {"TRUE", true},
    {"FALSE", false},
}};

double parse_double(const std::string& key, std::string_view text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    throw ConfigError(key, "expected a finite number, got '" + std::string(text) + "'");
  return value;
}

std::uint64_t parse_uint(const std::string& key, std::string_view text) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw ConfigError(key, "expected a non-negative integer, got '" + std::string(text) + "'");
  return value;
}

double positive(const std::string& key, double v) {
  if (!(v > 0.0)) throw ConfigError(key, "must be positive");
  return v;
}

double non_negative(const std::string& key, double v) {
  if (!(v >= 0.0)) throw ConfigError(key, "must be non-negative");
  return v;
}

std::string fmt_double(double v) { return fmt::format("{}", v); }

template <typename Enum, std::size_t N>
std::string enum_name(Enum value, const std::array<std::pair<std::string_view, Enum>, N>& table) {
  for (const auto& [name, v] : table)
    if (v == value) return std::string(name);
  return "?";
}

struct KeySpec {
  std::string name;
  bool preset_owned;
  std::function<void(ExperimentConfig&, const std::string&, std::string_view)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

const std::vector<KeySpec>& key_specs() {
  using C = ExperimentConfig;
  using S = std::string_view;
  using K = const std::string&;
  static const std::vector<KeySpec> specs = {
      {"system.num_users", true,
       [](C& c, K k, S v) {
         const auto n = parse_uint(k, v);
         if (n < 1 || n > 64) throw ConfigError(k, "must be in [1, 64]");
         c.system.num_users = static_cast<int>(n);
       },
       [](const C& c) { return std::to_string(c.system.num_users); }},
      {"system.d_w", true, [](C& c, K k, S v) { c.system.d_w = positive(k, parse_double(k, v)); },
       [](const C& c) { return fmt_double(c.system.d_w); }},
      {"system.d_l", true, [](C& c, K k, S v) { c.system.d_l = positive(k, parse_double(k, v)); },
       [](const C& c) { return fmt_double(c.system.d_l); }},
      {"system.height", true,
       [](C& c, K k, S v) { c.system.height = positive(k, parse_double(k, v)); },
       [](const C& c) { return fmt_double(c.system.height); }},
      {"system.carrier_freq_hz", true,
       [](C& c, K k, S v) { c.system.carrier_freq = positive(k, parse_double(k, v)); },
       [](const C& c) { return fmt_double(c.system.carrier_freq); }},
      {"system.tx_power_dbm", true,
       [](C& c, K k, S v) { c.tx_power_dbm = parse_double(k, v); },
       [](const C& c) { return fmt_double(c.tx_power_dbm); }},
      {"system.noise_dbm", true, [](C& c, K k, S v) { c.noise_dbm = parse_double(k, v); },
       [](const C& c) { return fmt_double(c.noise_dbm); }},
      {"system.blockage_model", true,
       [](C& c, K k, S v) { c.system.blockage_model = parse_enum(k, v, kModels); },
       [](const C& c) { return std::string(to_string(c.system.blockage_model)); }},
      {"system.phi", true, [](C& c, K k, S v) { c.system.phi = non_negative(k, parse_double(k, v)); },
       [](const C& c) { return fmt_double(c.system.phi); }},
      {"system.loss_case", true,
       [](C& c, K k, S v) { c.system.loss_case = parse_enum(k, v, kLossCases); },
       [](const C& c) { return std::string(to_string(c.system.loss_case)); }},
      {"system.waveguide_loss_db_per_m", true,
       [](C& c, K k, S v) { c.system.waveguide_loss_db_per_m = non_negative(k, parse_double(k, v)); },
       [](const C& c) { return fmt_double(c.system.waveguide_loss_db_per_m); }},
      {"system.n_eff", true, [](C& c, K k, S v) { c.system.n_eff = positive(k, parse_double(k, v)); },
       [](const C& c) { return fmt_double(c.system.n_eff); }},
      {"system.constrain_under_waveguide", true,
       [](C& c, K k, S v) { c.system.constrain_under_waveguide = parse_enum(k, v, kBools); },
       [](const C& c) { return std::string(c.system.constrain_under_waveguide ? "true" : "false"); }},
      {"system.r_target", true, [](C& c, K k, S v) { c.r_target = positive(k, parse_double(k, v)); },
       [](const C& c) { return fmt_double(c.r_target); }},
      {"run.schemes", true,
       [](C& c, K k, S v) {
         c.run.schemes.clear();
         for (S item : split_list(v)) {
           const Scheme s = parse_enum(k, item, kSchemes);
           if (std::find(c.run.schemes.begin(), c.run.schemes.end(), s) != c.run.schemes.end())
             throw ConfigError(k, "scheme listed twice");
           c.run.schemes.push_back(s);
         }
       },
       [](const C& c) {
         std::string out;
         for (Scheme s : c.run.schemes) out += (out.empty() ? "" : ", ") + std::string(to_string(s));
         return out;
       }},
      {"run.metric", true, [](C& c, K k, S v) { c.run.metric = parse_enum(k, v, kMetrics); },
       [](const C& c) { return std::string(to_string(c.run.metric)); }},
      {"run.sweep_axis", true, [](C& c, K k, S v) { c.run.axis = parse_enum(k, v, kAxes); },
       [](const C& c) { return std::string(to_string(c.run.axis)); }},
      {"run.axis_values", true,
       [](C& c, K k, S v) {
         c.run.axis_values.clear();
         for (S item : split_list(v)) c.run.axis_values.push_back(parse_double(k, item));
       },
       [](const C& c) {
         std::string out;
         for (double x : c.run.axis_values) out += (out.empty() ? "" : ", ") + fmt_double(x);
         return out;
       }},
      {"run.n_trials", false,
       [](C& c, K k, S v) {
         c.run.n_trials = parse_uint(k, v);
         if (c.run.n_trials < 1) throw ConfigError(k, "must be at least 1");
       },
       [](const C& c) { return std::to_string(c.run.n_trials); }},
      {"run.master_seed", false, [](C& c, K k, S v) { c.run.master_seed = parse_uint(k, v); },
       [](const C& c) { return std::to_string(c.run.master_seed); }},
      {"run.output", false,
       [](C& c, K k, S v) {
         if (v.empty()) throw ConfigError(k, "must not be empty");
         c.run.output = std::string(v);
       },
       [](const C& c) { return c.run.output; }},
      {"run.format", false, [](C& c, K k, S v) { c.run.format = parse_enum(k, v, kFormats); },
       [](const C& c) { return std::string(to_string(c.run.format)); }},
      {"run.analytics", false, [](C& c, K k, S v) { c.run.analytics = parse_enum(k, v, kBools); },
       [](const C& c) { return std::string(c.run.analytics ? "true" : "false"); }},
      {"run.fixed_placement", false,
       [](C& c, K k, S v) { c.run.fixed_placement = parse_enum(k, v, kBools); },
       [](const C& c) { return std::string(c.run.fixed_placement ? "true" : "false"); }},
  };
  return specs;
}

const std::set<std::string> kRequiredWithoutPreset = {
    "system.num_users", "system.d_w",  "system.d_l",      "system.blockage_model",
    "system.phi",       "system.tx_power_dbm", "run.schemes", "run.metric",
    "run.sweep_axis",   "run.axis_values",
};

// Cross-field checks shared by the parser and programmatic construction.
void validate(const ExperimentConfig& c) {
  if (c.run.schemes.empty()) throw ConfigError("run.schemes", "needs at least one scheme");
  const auto& values = c.run.axis_values;
  if (values.empty()) throw ConfigError("run.axis_values", "needs at least one value");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1]))
      throw ConfigError("run.axis_values", "must be strictly increasing");
  if (c.run.axis != SweepAxis::TxPowerDbm && !(values.front() > 0.0))
    throw ConfigError("run.axis_values", "must be positive for this axis");
  if (c.run.axis == SweepAxis::RTarget && c.run.metric != MetricKind::Outage)
    throw ConfigError("run.sweep_axis", "R_TARGET can only be swept for OUTAGE");
  try {
    (void)c.system_config();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("system", e.what());
  }
}

void apply_preset_fields(ExperimentConfig& c, Preset preset) {
  const ExperimentConfig p = preset_config(preset);
  c.preset = preset;
  c.system = p.system;
  c.tx_power_dbm = p.tx_power_dbm;
  c.noise_dbm = p.noise_dbm;
  c.r_target = p.r_target;
  c.run.schemes = p.run.schemes;
  c.run.metric = p.run.metric;
  c.run.axis = p.run.axis;
  c.run.axis_values = p.run.axis_values;
}

}  // namespace

Preset parse_preset(std::string_view text) { return parse_enum("preset", text, kPresets); }

ExperimentConfig preset_config(Preset preset) {
  // Shared numerical-study constants: -90 dBm noise, d = 3 m, 28 GHz,
  // n_eff = 1.4, 0.08 dB/m.
  ExperimentConfig c;
  c.preset = preset;
  c.noise_dbm = -90.0;
  c.tx_power_dbm = 10.0;
  // Target rate for the outage figures: tau1 is about 2d at 10 dBm.
  c.r_target = 7.66;
  c.system = SystemParams{};
  c.system.height = 3.0;
  c.system.carrier_freq = 28e9;
  c.system.n_eff = 1.4;
  c.system.waveguide_loss_db_per_m = 0.08;
  c.system.d_w = 10.0;
  c.system.d_l = 40.0;
  c.system.phi = 0.1;
  c.system.blockage_model = BlockageModel::ModelA;
  c.system.loss_case = LossCase::CaseI;

  const std::vector<double> powers = {10, 15, 20, 25, 30, 35, 40};
  const std::vector<double> lengths = {10, 20, 40, 80};
  switch (preset) {
    case Preset::Fig1:
      c.system.num_users = 1;
      c.run.schemes = {Scheme::PinD2, Scheme::Conv};
      c.run.metric = MetricKind::ErgodicSum;
      c.run.axis = SweepAxis::TxPowerDbm;
      c.run.axis_values = powers;
      break;
    case Preset::Fig2A:
    case Preset::Fig2B:
      c.system.num_users = 1;
      c.system.loss_case = LossCase::CaseII;
      if (preset == Preset::Fig2B) {
        c.system.d_w = 5.0;
        c.system.blockage_model = BlockageModel::ModelB;
      }
      c.run.schemes = {Scheme::PinD2, Scheme::Conv};
      c.run.metric = MetricKind::Outage;
      c.run.axis = SweepAxis::DL;
      c.run.axis_values = lengths;
      break;
    case Preset::Fig3A:
    case Preset::Fig3B:
      c.system.num_users = preset == Preset::Fig3A ? 2 : 5;
      c.run.schemes = {Scheme::PinD1, Scheme::PinD2, Scheme::Conv};
      c.run.metric = MetricKind::ErgodicSum;
      c.run.axis = SweepAxis::TxPowerDbm;
      c.run.axis_values = powers;
      break;
    case Preset::Fig4:
      c.system.num_users = 2;
      c.system.blockage_model = BlockageModel::ModelB;
      c.system.constrain_under_waveguide = true;
      c.run.schemes = {Scheme::PinD2, Scheme::Conv};
      c.run.metric = MetricKind::ErgodicPerUser;
      c.run.axis = SweepAxis::TxPowerDbm;
      c.run.axis_values = powers;
      break;
  }
  c.system.tx_power = dbm_to_watts(c.tx_power_dbm);
  c.system.noise_power = dbm_to_watts(c.noise_dbm);
  c.run.output = "results.csv";
  return c;
}

ExperimentConfig parse_config(std::string_view document) {
  std::map<std::string, std::string> entries;
  std::optional<Preset> preset;

  int line_no = 0;
  std::istringstream in{std::string(document)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("", "line " + std::to_string(line_no) + ": empty key");

    if (key == "preset") {
      if (preset) throw ConfigError(key, "given more than once");
      preset = parse_preset(value);
      continue;
    }
    const auto& specs = key_specs();
    if (std::none_of(specs.begin(), specs.end(), [&](const KeySpec& s) { return s.name == key; }))
      throw ConfigError(key, "unknown key");
    if (!entries.emplace(key, value).second) throw ConfigError(key, "given more than once");
  }

  ExperimentConfig c;
  for (const KeySpec& spec : key_specs()) {
    const auto it = entries.find(spec.name);
    if (it != entries.end()) spec.set(c, spec.name, it->second);
  }

  if (preset) {
    apply_preset_fields(c, *preset);
  } else {
    for (const auto& key : kRequiredWithoutPreset)
      if (!entries.count(key)) throw ConfigError(key, "required key is missing");
    if (c.run.metric == MetricKind::Outage && c.run.axis != SweepAxis::RTarget &&
        !entries.count("system.r_target"))
      throw ConfigError("system.r_target", "required for OUTAGE");
  }

  c.system.tx_power = dbm_to_watts(c.tx_power_dbm);
  c.system.noise_power = dbm_to_watts(c.noise_dbm);
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string echo_config(const ExperimentConfig& cfg) {
  std::string out;
  if (cfg.preset) out += "preset = " + std::string(to_string(*cfg.preset)) + "\n";
  for (const KeySpec& spec : key_specs()) out += spec.name + " = " + spec.get(cfg) + "\n";
  return out;
}

namespace {

std::string metric_label(MetricKind kind, std::size_t index) {
  if (kind == MetricKind::ErgodicPerUser) return "ERGODIC_USER_" + std::to_string(index + 1);
  return std::string(to_string(kind));
}

void append_closed_form(std::vector<ResultRow>& rows, const ExperimentConfig& c, Scheme scheme,
                        double axis_value) {
  const SystemConfig cfg = apply_axis(c.system_config(), c.run.axis, axis_value);
  auto push = [&](std::string metric, double value) {
    ResultRow r;
    r.scheme = scheme;
    r.axis = c.run.axis;
    r.axis_value = axis_value;
    r.metric = std::move(metric);
    r.value = value;
    r.provenance = Provenance::ClosedForm;
    rows.push_back(std::move(r));
  };

  if (c.run.metric == MetricKind::Outage && cfg.num_users() == 1) {
    const double target = c.run.axis == SweepAxis::RTarget ? axis_value : c.r_target;
    const OutageParams p(cfg, target);
    const bool model_a = cfg.blockage_model() == BlockageModel::ModelA;
    if (scheme == Scheme::Conv) {
      push("OUTAGE_HIGH_SNR",
           model_a ? outage_conv_model_a_highsnr(p) : outage_conv_model_b_highsnr(p));
    } else {
      push("OUTAGE", model_a ? outage_pin_model_a_exact(p) : outage_pin_model_b_closed(p));
      push("OUTAGE_HIGH_SNR",
           model_a ? outage_pin_model_a_highsnr(p) : outage_pin_model_b_highsnr(p));
    }
  }
  if (c.run.metric == MetricKind::ErgodicPerUser && scheme == Scheme::PinD2 &&
      cfg.num_users() == 2 && cfg.blockage_model() == BlockageModel::ModelB &&
      cfg.params().constrain_under_waveguide) {
    push("ERGODIC_USER_1_HIGH_SNR", ergodic_pin_two_user_highsnr(cfg));
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::filesystem::path echo_path(const std::filesystem::path& output) {
  std::filesystem::path p = output;
  p.replace_extension(".cfg");
  if (p == output) p += ".echo";
  return p;
}

}  // namespace

std::vector<ResultRow> compute_rows(const ExperimentConfig& c, unsigned workers) {
  validate(c);
  std::vector<ResultRow> rows;
  for (Scheme scheme : c.run.schemes) {
    SweepRequest req{c.system_config(), {}, {}, {}, {}, {}, {}, {}, {}};
    req.scheme = scheme;
    req.axis = c.run.axis;
    req.axis_values = c.run.axis_values;
    req.metric = c.run.metric;
    req.r_target = c.r_target;
    req.n_trials = c.run.n_trials;
    req.master_seed = c.run.master_seed;
    req.options.workers = workers;
    req.options.fixed_placement = c.run.fixed_placement;
    for (const SweepPoint& point : sweep(req)) {
      for (std::size_t i = 0; i < point.estimates.size(); ++i) {
        const MetricEstimate& e = point.estimates[i];
        ResultRow r;
        r.scheme = scheme;
        r.axis = c.run.axis;
        r.axis_value = point.axis_value;
        r.metric = metric_label(c.run.metric, i);
        r.value = e.value;
        r.ci_half_width = e.ci_half_width;
        r.n_trials = e.n_trials;
        r.provenance = Provenance::Simulated;
        r.seed = c.run.master_seed;
        rows.push_back(std::move(r));
      }
    }
  }
  if (c.run.analytics)
    for (Scheme scheme : c.run.schemes)
      for (double v : c.run.axis_values) append_closed_form(rows, c, scheme, v);
  return rows;
}

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::string out = fmt::format("# pinchsim results schema_version={}\n", kResultsSchemaVersion);
  out += "scheme,axis_name,axis_value,metric,value,ci_half_width,n_trials,provenance,seed\n";
  for (const ResultRow& r : rows)
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", to_string(r.scheme), to_string(r.axis),
                       r.axis_value, r.metric, r.value, r.ci_half_width, r.n_trials,
                       to_string(r.provenance), r.seed);
  return out;
}

std::string format_json(const std::vector<ResultRow>& rows, const ExperimentConfig& cfg) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kResultsSchemaVersion;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  if (cfg.preset) config["preset"] = std::string(to_string(*cfg.preset));
  for (const KeySpec& spec : key_specs()) config[spec.name] = spec.get(cfg);
  doc["config"] = std::move(config);
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const ResultRow& r : rows) {
    list.push_back({{"scheme", to_string(r.scheme)},
                    {"axis_name", to_string(r.axis)},
                    {"axis_value", r.axis_value},
                    {"metric", r.metric},
                    {"value", r.value},
                    {"ci_half_width", r.ci_half_width},
                    {"n_trials", r.n_trials},
                    {"provenance", to_string(r.provenance)},
                    {"seed", r.seed}});
  }
  doc["rows"] = std::move(list);
  return doc.dump(2) + "\n";
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, unsigned workers) {
  std::vector<ResultRow> rows = compute_rows(cfg, workers);
  const std::filesystem::path output = cfg.run.output;
  write_file(output, cfg.run.format == OutputFormat::Csv ? format_csv(rows)
                                                         : format_json(rows, cfg));
  write_file(echo_path(output), echo_config(cfg));
  return rows;
}

namespace {

std::string figure_stem(Preset preset) {
  std::string s(to_string(preset));
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return s;
}

std::string gnuplot_stub(const std::string& title, SweepAxis axis,
                         const std::vector<std::pair<std::string, std::vector<ResultRow>>>& files) {
  std::string out = "# gnuplot script; columns: 3 = axis_value, 5 = value, 6 = ci_half_width\n";
  out += "set datafile separator ','\n";
  out += "set title '" + title + "'\n";
  out += "set xlabel '" + std::string(to_string(axis)) + "'\n";
  out += "set key outside\n";
  std::vector<std::string> series;
  for (const auto& [file, rows] : files) {
    std::set<std::tuple<std::string, std::string, std::string>> seen;
    for (const ResultRow& r : rows) {
      auto key = std::make_tuple(std::string(to_string(r.scheme)), r.metric,
                                 std::string(to_string(r.provenance)));
      if (!seen.insert(key).second) continue;
      const auto& [scheme, metric, prov] = key;
      const bool sim = r.provenance == Provenance::Simulated;
      series.push_back(fmt::format(
          "\"< awk -F, '$1==\\\"{0}\\\" && $4==\\\"{1}\\\" && $8==\\\"{2}\\\"' {3}\" "
          "using 3:5{4} with {5} title '{6} {0} {1} {2}'",
          scheme, metric, prov, file, sim ? ":6" : "", sim ? "yerrorlines" : "lines",
          file));
    }
  }
  out += "plot ";
  for (std::size_t i = 0; i < series.size(); ++i)
    out += (i ? ", \\\n     " : "") + series[i];
  out += "\n";
  return out;
}

}  // namespace

std::vector<std::filesystem::path> reproduce_figure(Preset preset,
                                                    const std::filesystem::path& out_dir,
                                                    const FigureOptions& options) {
  std::filesystem::create_directories(out_dir);
  const std::string stem = figure_stem(preset);
  const std::string ext = options.format == OutputFormat::Csv ? ".csv" : ".json";

  std::vector<std::pair<std::string, ExperimentConfig>> runs;
  ExperimentConfig base = preset_config(preset);
  if (options.n_trials) base.run.n_trials = *options.n_trials;
  if (options.master_seed) base.run.master_seed = *options.master_seed;
  base.run.format = options.format;
  if (preset == Preset::Fig1) {
    // Both loss cases; the case-II run is a derived config, not the preset.
    ExperimentConfig case2 = base;
    case2.preset.reset();
    case2.system.loss_case = LossCase::CaseII;
    runs.emplace_back(stem + "_case1" + ext, base);
    runs.emplace_back(stem + "_case2" + ext, case2);
  } else {
    runs.emplace_back(stem + ext, base);
  }

  std::vector<std::filesystem::path> written;
  std::vector<std::pair<std::string, std::vector<ResultRow>>> data;
  for (auto& [name, cfg] : runs) {
    cfg.run.output = (out_dir / name).string();
    data.emplace_back(name, run_experiment(cfg, options.workers));
    written.push_back(out_dir / name);
    written.push_back(echo_path(out_dir / name));
  }

  const std::filesystem::path script = out_dir / (stem + ".gp");
  std::string stub;
  if (options.format == OutputFormat::Csv) {
    stub = gnuplot_stub(std::string(to_string(preset)), base.run.axis, data);
  } else {
    stub = "# gnuplot reads the CSV output; rerun with --format csv to plot.\n";
  }
  write_file(script, stub);
  written.push_back(script);
  return written;
}

}  // namespace pinch
