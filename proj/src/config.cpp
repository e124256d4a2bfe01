#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "apilab/harness.hpp"

namespace apilab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* expected) {
  throw std::invalid_argument("key '" + key + "': expected " + expected + ", got '" + value + "'");
}

template <typename T>
T parse_number(const std::string& key, const std::string& value, const char* expected) {
  const std::string v = trim(value);
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) bad_value(key, value, expected);
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(d)) bad_value(key, value, "a finite number");
    return d;
  } catch (const std::logic_error&) {
    bad_value(key, value, "a finite number");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_value(key, value, "true or false");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  try {
    return parse_grid(value);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("key '" + key + "': " + e.what());
  }
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  const std::string t = trim(text);
  std::vector<double> out;
  if (t.empty()) return out;
  if (t.find(':') != std::string::npos) {
    std::stringstream ss(t);
    std::string part;
    std::vector<double> f;
    while (std::getline(ss, part, ':')) f.push_back(parse_double("grid", part));
    if (f.size() != 3 || !(f[2] > 0.0) || f[1] < f[0])
      throw std::invalid_argument("grid '" + t + "' must be from:to:step with step > 0 and to >= from");
    const int n = static_cast<int>(std::floor((f[1] - f[0]) / f[2] + 1e-9));
    for (int i = 0; i <= n; ++i) out.push_back(f[0] + i * f[2]);
    return out;
  }
  std::stringstream ss(t);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(parse_double("grid", part));
  return out;
}

void apply_config_value(ExperimentConfig& cfg, const std::string& key_raw, const std::string& value) {
  const std::string key = trim(key_raw);
  const std::string v = trim(value);
  auto i64 = [&] { return parse_number<long>(key, v, "an integer"); };
  auto u64 = [&] { return parse_number<std::uint64_t>(key, v, "a non-negative integer"); };
  auto i32 = [&] { return parse_number<int>(key, v, "an integer"); };
  try {
    if (key == "scenario") cfg.scenario = parse_scenario(v);
    else if (key == "code") cfg.code = v;
    else if (key == "gamma_db" || key == "snr_db") cfg.gamma_db = parse_list(key, v);
    else if (key == "rho") cfg.rho = parse_list(key, v);
    else if (key == "rho_est") cfg.rho_est = parse_list(key, v);
    else if (key == "k") cfg.k = i32();
    else if (key == "interleaver") cfg.interleaver = parse_interleaver_kind(v);
    else if (key == "interleaver_seed") cfg.interleaver_seed = u64();
    else if (key == "punctured") cfg.punctured = parse_bool(key, v);
    else if (key == "turbo_iterations") cfg.turbo_iterations = i32();
    else if (key == "min_bit_errors") cfg.stop.min_bit_errors = i64();
    else if (key == "min_frame_errors") cfg.stop.min_frame_errors = i64();
    else if (key == "max_bits") cfg.stop.max_bits = static_cast<long>(parse_double(key, v));
    else if (key == "seed" || key == "master_seed") cfg.master_seed = u64();
    else if (key == "workers") cfg.workers = i32();
    else if (key == "batch_frames") cfg.batch_frames = i32();
    else if (key == "fading") cfg.fading = parse_fading(v);
    else if (key == "jscd_scheme") cfg.jscd_scheme = v;
    else if (key == "outer_iterations") cfg.outer_iterations = i32();
    else if (key == "turbo_iters_per_pass") cfg.turbo_iters_per_pass = i32();
    else if (key == "oracle_rho") cfg.oracle_rho = parse_bool(key, v);
    else if (key == "target_ber") cfg.target_ber = parse_double(key, v);
    else throw std::invalid_argument("unknown key '" + key + "'");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    if (msg.rfind("key '", 0) == 0 || msg.rfind("unknown key", 0) == 0) throw;
    throw std::invalid_argument("key '" + key + "': " + msg);
  }
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    try {
      apply_config_value(base, line.substr(0, eq), line.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path.string());
  return parse_config(in, std::move(base));
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw std::invalid_argument("config field '" + field + "': " + why);
  };
  if (gamma_db.empty()) fail("gamma_db", "grid must not be empty");
  if (rho.empty()) fail("rho", "grid must not be empty");
  for (double r : rho)
    if (!(r >= 0.5 && r < 1.0)) fail("rho", "values must lie in [0.5, 1)");
  for (double r : rho_est)
    if (!(r >= 0.5 && r < 1.0)) fail("rho_est", "values must lie in [0.5, 1)");
  if (k < 2) fail("k", "must be >= 2");
  if (workers < 1) fail("workers", "must be >= 1");
  if (batch_frames < 0) fail("batch_frames", "must be >= 0");
  if (stop.min_bit_errors < 1) fail("min_bit_errors", "must be >= 1");
  if (stop.min_frame_errors < 0) fail("min_frame_errors", "must be >= 0");
  if (stop.max_bits < 1) fail("max_bits", "must be >= 1");
  if (turbo_iterations < 1) fail("turbo_iterations", "must be >= 1");
  switch (scenario) {
    case Scenario::conv:
      if (code != "nonrecursive" && code != "recursive") fail("code", "conv expects nonrecursive or recursive");
      break;
    case Scenario::turbo:
      if (punctured && k % 2 != 0) fail("k", "punctured turbo code needs an even k");
      break;
    case Scenario::jscd:
      if (k % 2 != 0) fail("k", "jscd needs an even k");
      if (jscd_scheme != "jscd" && jscd_scheme != "dsc") fail("jscd_scheme", "expected jscd or dsc");
      if (outer_iterations < 1) fail("outer_iterations", "must be >= 1");
      if (turbo_iters_per_pass < 1) fail("turbo_iters_per_pass", "must be >= 1");
      break;
    case Scenario::bounds:
      if (code != "uncoded" && code != "nonrecursive" && code != "recursive" && code != "random" && code != "turbo")
        fail("code", "bounds expects uncoded, nonrecursive, recursive, random or turbo");
      if (!(target_ber > 0.0 && target_ber < 0.5)) fail("target_ber", "must be in (0, 0.5)");
      break;
    case Scenario::uncoded:
      break;
  }
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::uncoded: return "uncoded";
    case Scenario::conv: return "conv";
    case Scenario::turbo: return "turbo";
    case Scenario::jscd: return "jscd";
    case Scenario::bounds: return "bounds";
  }
  return "?";
}

Scenario parse_scenario(const std::string& name) {
  for (Scenario s : {Scenario::uncoded, Scenario::conv, Scenario::turbo, Scenario::jscd, Scenario::bounds})
    if (to_string(s) == name) return s;
  throw std::invalid_argument("unknown scenario '" + name + "' (expected uncoded, conv, turbo, jscd or bounds)");
}

}  // namespace apilab
