#include "tgreg/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "tgreg/errors.hpp"

namespace tgreg {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || std::isnan(out))
    throw ConfigError(std::string(key), "cannot parse '" + std::string(v) + "' as a number");
  return out;
}

template <class Int>
Int to_int(std::string_view key, std::string_view v) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError(std::string(key), "cannot parse '" + std::string(v) + "' as an integer");
  return out;
}

void one_of(std::string_view key, const std::string& v, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (v == a) return;
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : "|") + std::string(a);
  throw ConfigError(std::string(key), "'" + v + "' is not one of " + list);
}

using Setter = std::function<void(RunConfig&, std::string_view key, std::string_view value)>;

template <class T>
Setter field_setter(T RunConfig::*field) {
  return [field](RunConfig& c, std::string_view key, std::string_view v) {
    if constexpr (std::is_same_v<T, double>) {
      c.*field = to_double(key, v);
    } else if constexpr (std::is_same_v<T, std::string>) {
      c.*field = std::string(v);
    } else {
      c.*field = to_int<T>(key, v);
    }
  };
}

const std::vector<std::pair<std::string, Setter>>& key_table() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"side", field_setter(&RunConfig::side)},
      {"sigma", field_setter(&RunConfig::sigma)},
      {"band", field_setter(&RunConfig::band)},
      {"image", field_setter(&RunConfig::image)},
      {"source_count", field_setter(&RunConfig::source_count)},
      {"seed", field_setter(&RunConfig::seed)},
      {"rho", field_setter(&RunConfig::rho)},
      {"method", field_setter(&RunConfig::method)},
      {"rule", field_setter(&RunConfig::rule)},
      {"lambda", field_setter(&RunConfig::lambda)},
      {"alpha", field_setter(&RunConfig::alpha)},
      {"k", field_setter(&RunConfig::k)},
      {"nu", field_setter(&RunConfig::nu)},
      {"spectral_bound", field_setter(&RunConfig::spectral_bound)},
      {"step", field_setter(&RunConfig::step)},
      {"tau", field_setter(&RunConfig::tau)},
      {"xmin", field_setter(&RunConfig::xmin)},
      {"ista_lambda", field_setter(&RunConfig::ista_lambda)},
      {"sparsity_tol", field_setter(&RunConfig::sparsity_tol)},
      {"stop", field_setter(&RunConfig::stop)},
      {"delta", field_setter(&RunConfig::delta)},
      {"eta", field_setter(&RunConfig::eta)},
      {"max_iters", field_setter(&RunConfig::max_iters)},
      {"delta_est", field_setter(&RunConfig::delta_est)},
      {"mdp_count", field_setter(&RunConfig::mdp_count)},
      {"mdp_spacing", field_setter(&RunConfig::mdp_spacing)},
      {"mdp_eta", field_setter(&RunConfig::mdp_eta)},
      {"select", field_setter(&RunConfig::select)},
      {"select_within", field_setter(&RunConfig::select_within)},
      {"compare_methods", field_setter(&RunConfig::compare_methods)},
      {"compare_rules", field_setter(&RunConfig::compare_rules)},
      {"compare_constraints", field_setter(&RunConfig::compare_constraints)},
      {"threads", field_setter(&RunConfig::threads)},
      {"out_image", field_setter(&RunConfig::out_image)},
      {"out_csv", field_setter(&RunConfig::out_csv)},
      {"out_dir", field_setter(&RunConfig::out_dir)},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, _] : key_table()) k.push_back(name);
    return k;
  }();
  return keys;
}

void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value) {
  for (const auto& [name, setter] : key_table()) {
    if (name == key) {
      setter(cfg, key, trim(value));
      return;
    }
  }
  throw ConfigError(std::string(key), "unknown key");
}

void validate_config(const RunConfig& c) {
  if (c.side == 0) throw ConfigError("side", "must be positive");
  if (!(c.sigma > 0.0)) throw ConfigError("sigma", "must be positive");
  if (c.band == 0 || c.band > c.side) throw ConfigError("band", "must satisfy 1 <= band <= side");
  one_of("image", c.image, {"sparse", "dense"});
  if (c.source_count == 0) throw ConfigError("source_count", "must be positive");
  if (!(c.rho > 0.0)) throw ConfigError("rho", "must be positive");
  one_of("method", c.method, {"tg", "landweber", "nu", "ista", "fista"});
  one_of("rule", c.rule, {"none", "lambda", "alpha", "topk", "mincombo", "maxcombo"});
  if (!(c.lambda >= 0.0)) throw ConfigError("lambda", "must be >= 0");
  if (!(c.alpha >= 0.0 && c.alpha <= 100.0)) throw ConfigError("alpha", "must lie in [0, 100]");
  if (!(c.nu > 0.0)) throw ConfigError("nu", "must be positive");
  if (!(c.spectral_bound > 0.0 && c.spectral_bound <= 1.0))
    throw ConfigError("spectral_bound", "must lie in (0, 1]");
  one_of("step", c.step, {"exact", "fixed"});
  if (!(c.tau >= 0.0)) throw ConfigError("tau", "must be >= 0 (0 selects a default)");
  if (std::isnan(c.xmin) || c.xmin == std::numeric_limits<double>::infinity())
    throw ConfigError("xmin", "must be finite or -inf");
  if (!(c.ista_lambda >= 0.0)) throw ConfigError("ista_lambda", "must be >= 0");
  if (!(c.sparsity_tol >= 0.0)) throw ConfigError("sparsity_tol", "must be >= 0");
  one_of("stop", c.stop, {"dp", "maxiter", "never"});
  if (!(c.delta >= 0.0)) throw ConfigError("delta", "must be >= 0 (0 uses the noise norm)");
  if (c.stop == "dp" && !(c.eta > 1.0))
    throw ConfigError("eta", "discrepancy principle requires eta > 1");
  if (c.max_iters < 1) throw ConfigError("max_iters", "must be >= 1");
  if (!(c.delta_est >= 0.0)) throw ConfigError("delta_est", "must be >= 0 (0 uses the noise norm)");
  if (c.mdp_count < 1) throw ConfigError("mdp_count", "must be >= 1");
  if (!(c.mdp_spacing > 0.0)) throw ConfigError("mdp_spacing", "must be positive");
  if (!(c.mdp_eta >= 1.0)) throw ConfigError("mdp_eta", "must be >= 1");
  one_of("select", c.select, {"none", "base", "sparsest"});
  if (!(c.select_within >= 0.0)) throw ConfigError("select_within", "must be >= 0");
  if (c.threads < 0) throw ConfigError("threads", "must be >= 0");
  if (split_list(c.compare_methods).empty()) throw ConfigError("compare_methods", "empty list");
  if (split_list(c.compare_rules).empty()) throw ConfigError("compare_rules", "empty list");
  if (split_list(c.compare_constraints).empty())
    throw ConfigError("compare_constraints", "empty list");
}

RunConfig parse_config(std::string_view text, std::vector<std::string>* warnings) {
  RunConfig cfg;
  std::map<std::string, int, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("", "line " + std::to_string(line_no) + ": missing key");

    if (auto it = seen.find(key); it != seen.end() && warnings) {
      warnings->push_back("duplicate key '" + std::string(key) + "' on line " +
                          std::to_string(line_no) + " overrides line " +
                          std::to_string(it->second));
    }
    set_config_value(cfg, key, value);
    seen[std::string(key)] = line_no;
  }
  validate_config(cfg);
  return cfg;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

}  // namespace tgreg
