#include "saalab/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

namespace saalab::cli {

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::runtime_error("config key '" + key + "': " + message), key_(std::move(key)) {}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

template <typename T>
std::optional<T> parse_number(const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
  return value;
}

double real_value(const std::string& key, const std::string& text) {
  const auto v = parse_number<double>(text);
  if (!v || !std::isfinite(*v)) throw ConfigError(key, "expected a real number, got '" + text + "'");
  return *v;
}

std::uint64_t uint_value(const std::string& key, const std::string& text) {
  const auto v = parse_number<std::uint64_t>(text);
  if (!v) throw ConfigError(key, "expected a nonnegative integer, got '" + text + "'");
  return *v;
}

Vector vector_value(const std::string& key, const std::string& text) {
  std::vector<double> values;
  for (const auto& item : split(text, ',')) values.push_back(real_value(key, item));
  return Vector(std::move(values));
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "problem", "initial", "mu",   "sigma", "epsilon", "eta",  "batch_size", "psi",
      "psi_coefficients", "checkpoints", "samples", "seed", "kind", "output", "fit_window"};
  return keys;
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    const auto v = parse_number<double>(item);
    if (!v) throw std::invalid_argument("expected a real number, got '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

RateWindow parse_window(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw std::invalid_argument("window must look like n_min:n_max");
  const auto lo = parse_number<std::uint64_t>(parts[0]);
  const auto hi = parse_number<std::uint64_t>(parts[1]);
  if (!lo || !hi || *lo > *hi) throw std::invalid_argument("window must look like n_min:n_max");
  return {*lo, *hi};
}

std::vector<std::uint64_t> default_checkpoints() {
  std::vector<std::uint64_t> cps;
  for (int k = 0; k <= 12; ++k) cps.push_back(std::uint64_t{1} << k);
  return cps;
}

Schedule ExperimentConfig::schedule() const { return Schedule(epsilon, eta, batch_sizes); }

TestFunction ExperimentConfig::psi() const {
  if (psi_id == "sin_sum") return TestFunction::sin_sum(initial.dim());
  Vector a = psi_coefficients.value_or(Vector(initial.dim(), 0.0));
  if (!psi_coefficients) a[0] = 1.0;
  return TestFunction::linear(std::move(a));
}

ExperimentConfig parse_config(std::istream& in) {
  std::map<std::string, std::string> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known_keys().contains(key)) throw ConfigError(key, "unknown key");
    if (value.empty()) throw ConfigError(key, "empty value");
    if (!entries.emplace(key, value).second) throw ConfigError(key, "duplicate key");
  }

  ExperimentConfig cfg;
  auto get = [&](const std::string& key) -> const std::string* {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };

  const std::string* problem = get("problem");
  if (!problem) throw ConfigError("problem", "missing required key");
  if (*problem != "rotation" && *problem != "quadratic") {
    throw ConfigError("problem", "expected rotation or quadratic, got '" + *problem + "'");
  }
  cfg.problem_id = *problem;

  if (const auto* v = get("mu")) cfg.problem_params.mu = vector_value("mu", *v);
  if (const auto* v = get("sigma")) {
    cfg.problem_params.sigma = real_value("sigma", *v);
    if (cfg.problem_params.sigma < 0.0) throw ConfigError("sigma", "must be >= 0");
  }
  const std::size_t dim = cfg.problem_id == "rotation" ? 2 : cfg.problem_params.mu.dim();

  const std::string* initial = get("initial");
  if (!initial) throw ConfigError("initial", "missing required key");
  cfg.initial = vector_value("initial", *initial);
  if (cfg.initial.dim() != dim) {
    throw ConfigError("initial", "expected " + std::to_string(dim) + " components");
  }

  if (const auto* v = get("epsilon")) cfg.epsilon = real_value("epsilon", *v);
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 0.5)) throw ConfigError("epsilon", "must lie in (0, 1/2)");
  if (const auto* v = get("eta")) cfg.eta = real_value("eta", *v);
  if (!(cfg.eta > 0.0)) throw ConfigError("eta", "must be > 0");

  if (const auto* v = get("batch_size")) {
    cfg.batch_sizes.clear();
    for (const auto& item : split(*v, ',')) {
      const auto m = uint_value("batch_size", item);
      if (m < 1 || m > UINT32_MAX) throw ConfigError("batch_size", "entries must lie in [1, 2^32)");
      cfg.batch_sizes.push_back(static_cast<std::uint32_t>(m));
    }
  }

  if (const auto* v = get("psi")) {
    if (*v != "sin_sum" && *v != "linear") {
      throw ConfigError("psi", "expected sin_sum or linear, got '" + *v + "'");
    }
    cfg.psi_id = *v;
  }
  if (const auto* v = get("psi_coefficients")) {
    if (cfg.psi_id != "linear") throw ConfigError("psi_coefficients", "only valid with psi = linear");
    cfg.psi_coefficients = vector_value("psi_coefficients", *v);
    if (cfg.psi_coefficients->dim() != dim) {
      throw ConfigError("psi_coefficients", "expected " + std::to_string(dim) + " components");
    }
  }

  if (const auto* v = get("checkpoints")) {
    for (const auto& item : split(*v, ',')) {
      cfg.checkpoints.push_back(uint_value("checkpoints", item));
    }
    for (std::size_t i = 1; i < cfg.checkpoints.size(); ++i) {
      if (cfg.checkpoints[i] <= cfg.checkpoints[i - 1]) {
        throw ConfigError("checkpoints", "must be sorted and unique");
      }
    }
  } else {
    cfg.checkpoints = default_checkpoints();
  }

  if (const auto* v = get("samples")) cfg.samples = uint_value("samples", *v);
  if (cfg.samples < 2) throw ConfigError("samples", "must be >= 2");
  if (const auto* v = get("seed")) cfg.seed = uint_value("seed", *v);

  if (const auto* v = get("kind")) {
    if (*v == "both") {
      cfg.kinds = {ErrorKind::weak, ErrorKind::strong};
    } else if (const auto k = parse_error_kind(*v)) {
      cfg.kinds = {*k};
    } else {
      throw ConfigError("kind", "expected weak, strong or both, got '" + *v + "'");
    }
  }
  if (const auto* v = get("output")) cfg.output_path = *v;
  if (const auto* v = get("fit_window")) {
    try {
      cfg.fit_window = parse_window(*v);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("fit_window", e.what());
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open '" + path + "'");
  return parse_config(in);
}

}  // namespace saalab::cli
