#pragma once

// Run configuration: a flat `key = value` file with `#` comments, or the
// same keys as a JSON object. Keys prefixed with `y.` (or a nested "y"
// object in JSON) override the second factor of a 2d run.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gaplab/error.hpp"
#include "gaplab/gaplabel.hpp"
#include "gaplab/rational.hpp"
#include "gaplab/scheme.hpp"
#include "gaplab/system.hpp"
#include "json.hpp"

namespace gaplab {

/// Keys that describe one 1D system; these are the ones `y.` may override.
struct FactorConfig {
  std::string system = "quasicrystal";  // quasicrystal | periodic | free | shuffled
  std::string alpha = "golden";         // golden | silver | real in (0,1)
  std::string theta = "canonical";      // canonical | real in [0,1)
  std::string window = "canonical";     // canonical | w0,w1
  std::string pattern = "AB";
  std::string model = "onsite";  // onsite | offdiagonal
  std::optional<double> lambda;
  double t_a = 1;
  double t_b = 2;
  std::string boundary = "periodic";
  std::optional<double> spacing_a;
  std::optional<double> spacing_b;
  std::uint64_t seed = 0;
};

struct RunConfig {
  FactorConfig x;
  FactorConfig y;  // x with every y.* key applied
  std::optional<std::vector<std::size_t>> sizes;
  std::size_t size = 987;
  std::size_t length = 13;
  double origin = 0;
  int phases = 32;
  double tol_scale = 5;
  int coeff_bound = 50;
  double gap_factor = 10;
  int depth = 6;
  int grid_points = 1000;
  std::optional<double> e_min;
  std::optional<double> e_max;
  std::vector<std::string> values;
  std::size_t period = 2;
  std::string out = "out";
  int threads = 0;
  std::map<std::string, std::string> raw;  // every key as given, for the manifest echo
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline long double parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long double x = std::stold(v, &used);
    if (used != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' expects a number, got '" + v + "'");
  }
}

inline std::int64_t parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' expects an integer, got '" + v + "'");
  }
}

inline std::size_t parse_count(const std::string& key, const std::string& v) {
  const std::int64_t x = parse_int(key, v);
  if (x <= 0) throw ConfigError("config: key '" + key + "' must be positive");
  return static_cast<std::size_t>(x);
}

inline bool apply_factor_key(FactorConfig& f, const std::string& key, const std::string& v) {
  if (key == "system") f.system = v;
  else if (key == "alpha") f.alpha = v;
  else if (key == "theta") f.theta = v;
  else if (key == "window") f.window = v;
  else if (key == "pattern") f.pattern = v;
  else if (key == "model") f.model = v;
  else if (key == "lambda") f.lambda = static_cast<double>(parse_real(key, v));
  else if (key == "t_a") f.t_a = static_cast<double>(parse_real(key, v));
  else if (key == "t_b") f.t_b = static_cast<double>(parse_real(key, v));
  else if (key == "boundary") f.boundary = v;
  else if (key == "spacing_a") f.spacing_a = static_cast<double>(parse_real(key, v));
  else if (key == "spacing_b") f.spacing_b = static_cast<double>(parse_real(key, v));
  else if (key == "seed") f.seed = static_cast<std::uint64_t>(parse_int(key, v));
  else return false;
  return true;
}

inline void apply_key(RunConfig& c, const std::string& key, const std::string& v) {
  if (apply_factor_key(c.x, key, v)) return;
  if (key == "sizes") {
    std::vector<std::size_t> s;
    for (const auto& t : split_list(v)) s.push_back(parse_count(key, t));
    if (s.empty()) throw ConfigError("config: 'sizes' is empty");
    c.sizes = s;
  } else if (key == "size") c.size = parse_count(key, v);
  else if (key == "length") c.length = parse_count(key, v);
  else if (key == "origin") c.origin = static_cast<double>(parse_real(key, v));
  else if (key == "phases") c.phases = static_cast<int>(parse_int(key, v));
  else if (key == "tol_scale") c.tol_scale = static_cast<double>(parse_real(key, v));
  else if (key == "coeff_bound") c.coeff_bound = static_cast<int>(parse_int(key, v));
  else if (key == "gap_factor") c.gap_factor = static_cast<double>(parse_real(key, v));
  else if (key == "depth") c.depth = static_cast<int>(parse_int(key, v));
  else if (key == "grid_points") c.grid_points = static_cast<int>(parse_int(key, v));
  else if (key == "e_min") c.e_min = static_cast<double>(parse_real(key, v));
  else if (key == "e_max") c.e_max = static_cast<double>(parse_real(key, v));
  else if (key == "values") c.values = split_list(v);
  else if (key == "period") c.period = parse_count(key, v);
  else if (key == "out") c.out = v;
  else if (key == "threads") c.threads = static_cast<int>(parse_int(key, v));
  else throw ConfigError("config: unknown key '" + key + "'");
}

inline std::string json_scalar(const std::string& key, const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    return os.str();
  }
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : ",") + json_scalar(key, e);
    return s;
  }
  throw ConfigError("config: unsupported JSON value for key '" + key + "'");
}

}  // namespace detail

/// Applies ordered key/value pairs; y.* keys land on the second factor
/// after every plain key is in place.
inline RunConfig config_from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs) {
  RunConfig c;
  std::vector<std::pair<std::string, std::string>> y_keys;
  for (const auto& [key, value] : pairs) {
    if (c.raw.count(key)) throw ConfigError("config: duplicate key '" + key + "'");
    c.raw[key] = value;
    if (key.rfind("y.", 0) == 0)
      y_keys.emplace_back(key.substr(2), value);
    else
      detail::apply_key(c, key, value);
  }
  c.y = c.x;
  for (const auto& [key, value] : y_keys)
    if (!detail::apply_factor_key(c.y, key, value)) throw ConfigError("config: unknown key 'y." + key + "'");
  return c;
}

inline std::vector<std::pair<std::string, std::string>> parse_pairs(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> pairs;
  const std::string body = detail::trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    for (const auto& [key, value] : j.items()) {
      if (key == "y" && value.is_object()) {
        for (const auto& [k2, v2] : value.items()) pairs.emplace_back("y." + k2, detail::json_scalar(k2, v2));
      } else {
        pairs.emplace_back(key, detail::json_scalar(key, value));
      }
    }
    return pairs;
  }
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("config: line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(t.substr(0, eq));
    const std::string value = detail::trim(t.substr(eq + 1));
    if (key.empty()) throw ConfigError("config: line " + std::to_string(lineno) + ": empty key");
    pairs.emplace_back(key, value);
  }
  return pairs;
}

inline RunConfig parse_config(std::string_view text) { return config_from_pairs(parse_pairs(text)); }

inline std::string read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline long double resolve_alpha(const FactorConfig& f) {
  if (f.alpha == "golden") return golden_slope();
  if (f.alpha == "silver") return silver_slope();
  return detail::parse_real("alpha", f.alpha);
}

inline SystemKind resolve_kind(const std::string& s) {
  if (s == "quasicrystal") return SystemKind::quasicrystal;
  if (s == "periodic") return SystemKind::periodic;
  if (s == "free") return SystemKind::free;
  if (s == "shuffled") return SystemKind::shuffled;
  throw ConfigError("config: unknown system '" + s + "'");
}

inline CutProjectScheme resolve_scheme(const FactorConfig& f) {
  const long double a = resolve_alpha(f);
  if (!(a > 0 && a < 1)) throw ConfigError("config: alpha must lie in (0,1)");
  CutProjectScheme s = CutProjectScheme::sturmian(a, static_cast<double>(1.0L / a), 1.0);
  if (f.theta != "canonical") s.phase = detail::parse_real("theta", f.theta);
  if (f.window != "canonical") {
    const auto parts = detail::split_list(f.window);
    if (parts.size() != 2) throw ConfigError("config: window expects 'w0,w1'");
    const long double w0 = detail::parse_real("window", parts[0]);
    const long double w1 = detail::parse_real("window", parts[1]);
    s.window_start = frac(w0);
    s.window_length = w1 > w0 ? w1 - w0 : w1 + 1 - w0;
  }
  if (f.spacing_a) s.spacing_a = *f.spacing_a;
  if (f.spacing_b) s.spacing_b = *f.spacing_b;
  try {
    s.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return s;
}

/// default_lambda applies when the config leaves lambda unset.
inline SystemSpec resolve_system(const FactorConfig& f, double default_lambda = 2.0) {
  SystemSpec s;
  s.kind = resolve_kind(f.system);
  s.scheme = resolve_scheme(f);
  s.pattern = f.pattern;
  if (f.model == "onsite")
    s.model = OnsiteModel{f.lambda.value_or(default_lambda)};
  else if (f.model == "offdiagonal") {
    if (!(f.t_a > 0 && f.t_b > 0)) throw ConfigError("config: t_a and t_b must be positive");
    s.model = OffdiagonalModel{f.t_a, f.t_b};
  } else
    throw ConfigError("config: unknown model '" + f.model + "'");
  if (f.boundary == "open")
    s.boundary = Boundary::open;
  else if (f.boundary == "periodic")
    s.boundary = Boundary::periodic;
  else
    throw ConfigError("config: unknown boundary '" + f.boundary + "'");
  s.seed = f.seed;
  if (s.kind == SystemKind::periodic) {
    if (s.pattern.empty() || s.pattern.find_first_not_of("AB") != std::string::npos)
      throw ConfigError("config: pattern must be a nonempty string over A and B");
  }
  if ((s.kind == SystemKind::quasicrystal || s.kind == SystemKind::shuffled) && s.scheme.degenerate())
    throw ConfigError("config: alpha is rational to working precision; use system = periodic");
  return s;
}

/// Sizes a system can be built at: convergent denominators where the
/// word is an approximant, multiples of the period for periodic patterns.
inline void check_size(const SystemSpec& s, std::size_t q) {
  if (q < 2) throw ConfigError("config: sizes must be at least 2");
  try {
    (void)system_word(s, q);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

inline void check_common(const RunConfig& c) {
  if (c.phases < 0) throw ConfigError("config: phases must be non-negative");
  if (!(c.tol_scale > 0)) throw ConfigError("config: tol_scale must be positive");
  if (c.coeff_bound < 1) throw ConfigError("config: coeff_bound must be positive");
  if (!(c.gap_factor > 1)) throw ConfigError("config: gap_factor must exceed 1");
  if (c.depth < 1 || c.depth > 12) throw ConfigError("config: depth must lie in [1,12]");
  if (c.grid_points < 1) throw ConfigError("config: grid_points must be positive");
  if (c.e_min && c.e_max && !(*c.e_min < *c.e_max)) throw ConfigError("config: e_min must be below e_max");
  if (c.threads < 0) throw ConfigError("config: threads must be non-negative");
}

inline VerifyConfig make_verify_config(const RunConfig& c) {
  check_common(c);
  VerifyConfig v;
  v.system = resolve_system(c.x);
  v.sizes = c.sizes.value_or(std::vector<std::size_t>{377, 987});
  if (v.sizes.size() < 2) throw ConfigError("config: verify needs at least two sizes");
  for (auto q : v.sizes) check_size(v.system, q);
  v.phases = c.phases;
  v.tol_scale = c.tol_scale;
  v.coeff_bound = c.coeff_bound;
  v.gap_factor = c.gap_factor;
  v.depth = c.depth;
  v.threads = resolve_threads(c.threads);
  return v;
}

/// lambda defaults to 4 per factor and sizes to (55, 89).
inline Verify2DConfig make_verify2d_config(const RunConfig& c) {
  check_common(c);
  Verify2DConfig v;
  v.first = resolve_system(c.x, 4.0);
  v.second = resolve_system(c.y, 4.0);
  v.sizes = c.sizes.value_or(std::vector<std::size_t>{55, 89});
  if (v.sizes.size() < 2) throw ConfigError("config: verify2d needs at least two sizes");
  for (auto q : v.sizes) {
    check_size(v.first, q);
    check_size(v.second, q);
  }
  v.tol_scale = c.tol_scale;
  v.coeff_bound = c.coeff_bound;
  v.gap_factor = c.gap_factor;
  v.depth = c.depth;
  v.threads = resolve_threads(c.threads);
  return v;
}

/// "a/b" as an exact fraction, anything else as a real.
inline std::variant<Rational, double> parse_value(const std::string& s) {
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const auto num = detail::parse_int("values", s.substr(0, slash));
    const auto den = detail::parse_int("values", s.substr(slash + 1));
    if (den <= 0) throw ConfigError("config: value '" + s + "' needs a positive denominator");
    return Rational{num, den};
  }
  return static_cast<double>(detail::parse_real("values", s));
}

inline nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : c.raw) j[k] = v;
  return j;
}

}  // namespace gaplab
