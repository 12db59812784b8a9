#include "tabkit/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace tabkit {

namespace {

const std::vector<std::string> kKnnMethods = {"q_knn", "p_knn", "tab_knn",
                                              "pooled_knn", "weighted_knn"};
const std::vector<std::string> kLassoMethods = {"q_lasso", "p_lasso", "tab_lasso",
                                                "pooled_lasso"};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid numeric value for key '" + key + "': " + value);
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer value for key '" + key + "': " + value);
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true") return true;
  if (value == "0" || value == "false") return false;
  throw ConfigError("invalid boolean value for key '" + key + "': " + value);
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const std::string& item : split(value, ','))
    out.push_back(parse_double(key, item));
  return out;
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

void apply_key_value(ExperimentConfig& config, const std::string& key,
                     const std::string& value) {
  if (key == "scenario") {
    if (value != "band" && value != "flip" && value != "logistic")
      throw ConfigError("invalid scenario: " + value);
    config.scenario = value;
  } else if (key == "grid") {
    config.grid = parse_list(key, value);
  } else if (key == "gamma") {
    config.gammas = parse_list(key, value);
  } else if (key == "methods") {
    config.methods = split(value, ',');
  } else if (key == "n_q") {
    config.n_q = static_cast<std::size_t>(parse_int(key, value));
  } else if (key == "n_p") {
    config.n_p = static_cast<std::size_t>(parse_int(key, value));
  } else if (key == "n_test") {
    config.n_test = static_cast<std::size_t>(parse_int(key, value));
  } else if (key == "reps") {
    config.reps = static_cast<int>(parse_int(key, value));
  } else if (key == "seed") {
    config.seed = static_cast<std::uint64_t>(parse_int(key, value));
  } else if (key == "metric") {
    if (value != "accuracy" && value != "agreement")
      throw ConfigError("invalid metric: " + value);
    config.metric = value;
  } else if (key == "out") {
    config.out = value;
  } else if (key == "tau") {
    config.tau = parse_double(key, value);
  } else if (key == "k_q") {
    config.k_q = static_cast<int>(parse_int(key, value));
  } else if (key == "k_p") {
    config.k_p = static_cast<int>(parse_int(key, value));
  } else if (key == "d") {
    config.d = static_cast<int>(parse_int(key, value));
  } else if (key == "s") {
    config.s = static_cast<int>(parse_int(key, value));
  } else if (key == "amp_q") {
    config.amp_q = parse_double(key, value);
  } else if (key == "amp_p") {
    config.amp_p = parse_double(key, value);
  } else if (key == "theory_params") {
    config.theory_params = parse_bool(key, value);
  } else if (key == "exact_angle") {
    config.exact_angle = parse_bool(key, value);
  } else {
    throw ConfigError("unknown configuration key: " + key);
  }
}

void apply_config_text(ExperimentConfig& config, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    const auto key_end = key.find_last_not_of(" \t");
    key = key.substr(0, key_end == std::string::npos ? 0 : key_end + 1);
    const auto value_start = value.find_first_not_of(" \t");
    value = value_start == std::string::npos ? "" : value.substr(value_start);
    apply_key_value(config, key, value);
  }
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig config;
  apply_config_text(config, text);
  return config;
}

void apply_config_file(ExperimentConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(config, buffer.str());
}

ExperimentConfig parse_config(const std::string& path) {
  ExperimentConfig config;
  apply_config_file(config, path);
  return config;
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "scenario=" << c.scenario << "\n";
  if (!c.grid.empty()) {
    out << "grid=";
    for (std::size_t i = 0; i < c.grid.size(); ++i)
      out << (i ? "," : "") << format_double(c.grid[i]);
    out << "\n";
  }
  if (!c.gammas.empty()) {
    out << "gamma=";
    for (std::size_t i = 0; i < c.gammas.size(); ++i)
      out << (i ? "," : "") << format_double(c.gammas[i]);
    out << "\n";
  }
  if (!c.methods.empty()) {
    out << "methods=";
    for (std::size_t i = 0; i < c.methods.size(); ++i)
      out << (i ? "," : "") << c.methods[i];
    out << "\n";
  }
  if (c.n_q) out << "n_q=" << c.n_q << "\n";
  if (c.n_p) out << "n_p=" << c.n_p << "\n";
  out << "n_test=" << c.n_test << "\n";
  out << "reps=" << c.reps << "\n";
  out << "seed=" << c.seed << "\n";
  if (!c.metric.empty()) out << "metric=" << c.metric << "\n";
  if (!c.out.empty()) out << "out=" << c.out << "\n";
  if (c.tau) out << "tau=" << format_double(*c.tau) << "\n";
  if (c.k_q) out << "k_q=" << *c.k_q << "\n";
  if (c.k_p) out << "k_p=" << *c.k_p << "\n";
  out << "d=" << c.d << "\n";
  out << "s=" << c.s << "\n";
  out << "amp_q=" << format_double(c.amp_q) << "\n";
  out << "amp_p=" << format_double(c.amp_p) << "\n";
  out << "theory_params=" << (c.theory_params ? 1 : 0) << "\n";
  out << "exact_angle=" << (c.exact_angle ? 1 : 0) << "\n";
  return out.str();
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.scenario == b.scenario && a.grid == b.grid && a.gammas == b.gammas &&
         a.methods == b.methods && a.n_q == b.n_q && a.n_p == b.n_p &&
         a.n_test == b.n_test && a.reps == b.reps && a.seed == b.seed &&
         a.metric == b.metric && a.out == b.out && a.tau == b.tau &&
         a.k_q == b.k_q && a.k_p == b.k_p && a.d == b.d && a.s == b.s &&
         a.amp_q == b.amp_q && a.amp_p == b.amp_p &&
         a.theory_params == b.theory_params && a.exact_angle == b.exact_angle;
}

ExperimentConfig resolve_defaults(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  const bool logistic = c.scenario == "logistic";
  if (c.grid.empty()) {
    if (c.scenario == "band")
      c.grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
    else if (c.scenario == "flip")
      c.grid = {0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4};
    else
      c.grid = {0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75};
  }
  if (c.gammas.empty()) c.gammas = logistic ? std::vector<double>{1.0}
                                            : std::vector<double>{0.5, 1.0};
  if (c.methods.empty()) c.methods = logistic ? kLassoMethods : kKnnMethods;
  if (c.n_q == 0) c.n_q = 200;
  if (c.n_p == 0) c.n_p = logistic ? 500 : 1000;
  if (c.metric.empty()) c.metric = logistic ? "accuracy" : "agreement";
  if (!logistic && !c.tau) c.tau = 0.05;

  const auto& allowed = logistic ? kLassoMethods : kKnnMethods;
  for (const auto& m : c.methods)
    if (std::find(allowed.begin(), allowed.end(), m) == allowed.end())
      throw ConfigError("method '" + m + "' is not valid for scenario '" +
                        c.scenario + "'");
  if (c.reps < 1) throw ConfigError("reps must be >= 1");
  if (c.n_test == 0) throw ConfigError("n_test must be positive");
  if (logistic && c.s >= c.d) throw ConfigError("logistic scenario requires s < d");
  for (double g : c.grid) {
    if (c.scenario == "flip" && (g < 0 || g >= 1))
      throw ConfigError("flip ratio values must lie in [0,1)");
    if (c.scenario == "band" && g < 0) throw ConfigError("band delta must be >= 0");
    if (logistic && (g < 0 || g > 3.14159265358979323846))
      throw ConfigError("logistic delta must lie in [0, pi]");
    if (logistic && !c.exact_angle && std::abs(g - 1.5707963267948966) < 1e-12)
      throw ConfigError("logistic delta = pi/2 needs exact_angle=1 (tan diverges)");
  }
  return c;
}

int thread_budget() {
  if (const char* env = std::getenv("TABKIT_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace tabkit
