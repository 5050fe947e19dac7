#include "dwbec/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"

namespace dwbec {

const char* command_name(Command c) {
  switch (c) {
    case Command::meanfield: return "meanfield";
    case Command::evolve: return "evolve";
    case Command::sweep: return "sweep";
    case Command::peaks: return "peaks";
    case Command::oracle_compare: return "oracle-compare";
  }
  return "?";
}

std::string usage_text() {
  return R"(usage: dwbec <command> [options]

commands:
  meanfield        classical population-difference trajectory
  evolve           concurrence and basis populations of the pseudo-spin model
  sweep            concurrence on an (omega, t) grid
  peaks            entanglement peak times and half widths
  oracle-compare   full Fock-space POD against the pseudo-spin model

options (also accepted as `key = value` lines in --config FILE):
  --kappa X        interspecies interaction            [20]
  --kappa-a X      self-interaction of A               [20]
  --kappa-b X      self-interaction of B               [20]
  --omega X|GRID   tunneling rate; sweep takes min:max:count  [1 | 0.5:2.0:61]
  --time GRID      time grid min:max:count             [0:200:2001]
  --na N --nb N    particle numbers (meanfield, oracle-compare)  [3 | 1]
  --dt X           meanfield step                      [1e-4]
  --t-end X        meanfield end time                  [10]
  --epsilon X      meanfield initial offset from full imbalance  [1e-3]
  --stride N       meanfield rows: keep every N-th step         [100]
  --n-peaks N      peaks to report                     [3]
  --t-max X        peaks scan window, 0 = automatic    [0]
  --threads N      sweep worker threads, 0 = OpenMP default      [0]
  -o, --output F   CSV path                            [<command>.csv]
)";
}

namespace {

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      "kappa", "kappa-a", "kappa-b", "omega",   "time",    "na",      "nb",     "dt",
      "t-end", "epsilon", "stride",  "n-peaks", "t-max",   "threads", "output"};
  return keys;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    throw ConfigError("malformed number for '" + key + "': \"" + text + "\"");
  return v;
}

long long parse_integer(const std::string& key, const std::string& text) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("malformed integer for '" + key + "': \"" + text + "\"");
  return v;
}

GridSpec parse_grid(const std::string& key, const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3 || text.back() == ':')
    throw ConfigError("expected min:max:count for '" + key + "', got \"" + text + "\"");
  const long long steps = parse_integer(key, parts[2]);
  if (steps < 2) throw ConfigError("grid '" + key + "' needs count >= 2, got \"" + text + "\"");
  return {parse_double(key, parts[0]), parse_double(key, parts[1]),
          static_cast<std::size_t>(steps)};
}

std::map<std::string, std::string> parse_file_text(const std::string& text,
                                                   const std::string& origin) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected `key = value`, got \"" +
                        line + "\"");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": unknown key \"" + key + "\"");
    if (value.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": missing value for \"" + key +
                        "\"");
    out[key] = value;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Command parse_command(const std::string& word) {
  for (Command c : {Command::meanfield, Command::evolve, Command::sweep, Command::peaks,
                    Command::oracle_compare})
    if (word == command_name(c)) return c;
  throw ConfigError("unknown command \"" + word + "\"", true);
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args,
                       const std::optional<std::string>& file_text) {
  if (args.empty()) throw ConfigError("no command given", true);
  if (args.front().starts_with("-")) {
    if (args.front() == "-h" || args.front() == "--help") throw ConfigError("help", true);
    throw ConfigError("missing required field 'command' before \"" + args.front() + "\"", true);
  }

  RunConfig cfg;
  cfg.command = parse_command(args.front());

  CLI::App app{"dwbec"};
  app.set_help_flag();
  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> flag_opts;
  for (const auto& key : known_keys()) {
    const std::string names = key == "output" ? "-o,--output" : "--" + key;
    flag_opts[key] = app.add_option(names, flag_values[key]);
  }
  std::string config_path;
  app.add_option("--config", config_path);

  std::vector<std::string> rest(args.begin() + 1, args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  std::map<std::string, std::string> values;
  if (file_text) {
    values = parse_file_text(*file_text, "<config>");
  } else if (!config_path.empty()) {
    values = parse_file_text(read_file(config_path), config_path);
  }
  for (const auto& [key, opt] : flag_opts)
    if (opt->count() > 0) values[key] = flag_values[key];

  auto num = [&](const char* key, double& dst) {
    if (auto it = values.find(key); it != values.end()) dst = parse_double(key, it->second);
  };
  auto integer = [&](const char* key, auto& dst) {
    if (auto it = values.find(key); it != values.end()) {
      const long long v = parse_integer(key, it->second);
      if (v < 0) throw ConfigError(std::string("'") + key + "' must be non-negative, got \"" +
                                   it->second + "\"");
      dst = static_cast<std::remove_reference_t<decltype(dst)>>(v);
    }
  };

  num("kappa", cfg.params.kappa);
  num("kappa-a", cfg.params.kappa_a);
  num("kappa-b", cfg.params.kappa_b);

  if (auto it = values.find("omega"); it != values.end()) {
    if (cfg.command == Command::sweep)
      cfg.omega_grid = parse_grid("omega", it->second);
    else
      cfg.params.omega = parse_double("omega", it->second);
  }
  if (auto it = values.find("time"); it != values.end())
    cfg.time_grid = parse_grid("time", it->second);

  if (cfg.command == Command::oracle_compare) {
    integer("na", cfg.oracle.n_a);
    integer("nb", cfg.oracle.n_b);
  } else {
    num("na", cfg.meanfield.n_a);
    num("nb", cfg.meanfield.n_b);
  }
  num("dt", cfg.meanfield.dt);
  num("t-end", cfg.meanfield.t_end);
  num("epsilon", cfg.meanfield.epsilon);
  integer("stride", cfg.meanfield.stride);
  integer("n-peaks", cfg.n_peaks);
  num("t-max", cfg.t_max);
  integer("threads", cfg.threads);

  if (auto it = values.find("output"); it != values.end())
    cfg.output_path = it->second;
  else
    cfg.output_path = std::string(command_name(cfg.command)) + ".csv";

  cfg.validate();
  return cfg;
}

void RunConfig::validate() const {
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  auto check_grid = [](const GridSpec& g, const char* name) {
    if (g.steps < 2) throw ConfigError(std::string("grid '") + name + "' needs count >= 2");
    if (!(g.max > g.min))
      throw ConfigError(std::string("grid '") + name + "' needs max > min");
  };
  check_grid(time_grid, "time");
  if (time_grid.min < 0.0) throw ConfigError("grid 'time' must start at t >= 0");
  if (command == Command::sweep) {
    check_grid(omega_grid, "omega");
    if (!(omega_grid.min > 0.0)) throw ConfigError("sweep needs omega min > 0");
  }
  if (command == Command::peaks) {
    if (!(params.omega > 0.0)) throw ConfigError("peaks needs omega > 0");
    if (!(params.kappa > 0.0)) throw ConfigError("peaks needs kappa > 0");
    if (n_peaks < 1) throw ConfigError("'n-peaks' must be >= 1");
    if (t_max < 0.0) throw ConfigError("'t-max' must be >= 0");
  }
  if (command == Command::meanfield) {
    if (!(meanfield.n_a > 0.0 && meanfield.n_b > 0.0))
      throw ConfigError("meanfield needs positive 'na' and 'nb'");
    if (!(meanfield.dt > 0.0)) throw ConfigError("'dt' must be > 0");
    if (!(meanfield.t_end > 0.0)) throw ConfigError("'t-end' must be > 0");
    if (!(meanfield.epsilon > 0.0 && meanfield.epsilon < 1.0))
      throw ConfigError("'epsilon' must lie in (0, 1)");
    if (meanfield.stride < 1) throw ConfigError("'stride' must be >= 1");
  }
  if (command == Command::oracle_compare && (oracle.n_a < 1 || oracle.n_b < 1))
    throw ConfigError("oracle-compare needs 'na' and 'nb' >= 1");
  if (output_path.empty()) throw ConfigError("missing required field 'output'");
}

std::string RunConfig::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "dwbec " << command_name(command) << " kappa=" << params.kappa
     << " kappa_a=" << params.kappa_a << " kappa_b=" << params.kappa_b;
  switch (command) {
    case Command::sweep:
      os << " omega=" << omega_grid.min << ":" << omega_grid.max << ":" << omega_grid.steps;
      break;
    default:
      os << " omega=" << params.omega;
  }
  if (command != Command::meanfield && command != Command::peaks)
    os << " time=" << time_grid.min << ":" << time_grid.max << ":" << time_grid.steps;
  if (command == Command::meanfield)
    os << " N_A=" << meanfield.n_a << " N_B=" << meanfield.n_b << " dt=" << meanfield.dt
       << " t_end=" << meanfield.t_end << " epsilon=" << meanfield.epsilon
       << " stride=" << meanfield.stride;
  if (command == Command::oracle_compare) os << " N_A=" << oracle.n_a << " N_B=" << oracle.n_b;
  if (command == Command::peaks) os << " n_peaks=" << n_peaks << " t_max=" << t_max;
  return os.str();
}

}  // namespace dwbec
