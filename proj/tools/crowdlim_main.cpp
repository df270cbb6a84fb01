// crowdlim command line: bound tables, figure data, Monte Carlo runs, and
// query pricing, with reproducible manifests next to every output file.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crowdlim/bounds.hpp"
#include "crowdlim/errors.hpp"
#include "crowdlim/pricing.hpp"
#include "crowdlim/sim_engine.hpp"

namespace {

using crowdlim::BoundQuery;
using crowdlim::DecoderKind;
using crowdlim::Figure2Params;
using crowdlim::Pmf;
using crowdlim::RateBound;
using crowdlim::SimConfig;
using crowdlim::SimulationReport;
using crowdlim::SkillPopulation;
using crowdlim::SourceModel;
using crowdlim::SweepAxis;
using crowdlim::ValidationError;
using crowdlim::WorkerModel;
using ordered_json = nlohmann::ordered_json;

constexpr const char* kToolName = "crowdlim";
constexpr const char* kToolVersion = "0.1.0";

struct OutputOptions {
  std::string out_path;  // empty: stdout, no manifest
  std::string format = "csv";
  int digits = 6;
};

std::string format_double(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", digits, value);
  return buffer;
}

// Shortest representation that parses back to the same double; used for
// manifests so a replay sees bit-identical parameters.
std::string exact_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

std::string rate_token(const RateBound& bound, int digits) {
  return bound.feasible ? format_double(bound.value, digits) : "inf";
}

ordered_json rate_json(const RateBound& bound) {
  if (!bound.feasible) return "inf";
  return bound.value;
}

double parse_double(const std::string& text, const std::string& field) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ValidationError(field + ": cannot parse '" + text + "' as a number");
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, sep)) parts.push_back(part);
  return parts;
}

// "a,b,c" or "start:stop:step" (inclusive stop, within a half-step slack).
std::vector<double> parse_grid(const std::string& spec, const std::string& field) {
  std::vector<double> grid;
  if (spec.find(':') != std::string::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw ValidationError(field + ": expected start:stop:step");
    const double start = parse_double(parts[0], field);
    const double stop = parse_double(parts[1], field);
    const double step = parse_double(parts[2], field);
    if (step <= 0) throw ValidationError(field + ": step must be positive");
    for (int i = 0;; ++i) {
      const double value = start + i * step;
      if (value > stop + step * 1e-9) break;
      grid.push_back(value);
    }
  } else {
    for (const auto& part : split(spec, ',')) {
      if (!part.empty()) grid.push_back(parse_double(part, field));
    }
  }
  if (grid.empty()) throw ValidationError(field + ": empty grid");
  return grid;
}

Pmf parse_pmf(const std::string& spec, const std::string& field) {
  std::vector<double> probs;
  for (const auto& part : split(spec, ',')) {
    if (!part.empty()) probs.push_back(parse_double(part, field));
  }
  return Pmf(probs);
}

// "epsilon:prob,epsilon:prob,..."
SkillPopulation parse_population(const std::string& spec) {
  std::vector<SkillPopulation::Level> levels;
  for (const auto& part : split(spec, ',')) {
    if (part.empty()) continue;
    const auto pair = split(part, ':');
    if (pair.size() != 2) {
      throw ValidationError("population: expected epsilon:prob pairs, got '" + part + "'");
    }
    levels.push_back({parse_double(pair[0], "population"), parse_double(pair[1], "population")});
  }
  return SkillPopulation(levels);
}

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += exact_double(values[i]);
  }
  return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string hex64(std::uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(value));
  return buffer;
}

// Writes the payload to stdout or to --out; file outputs get a sibling
// manifest that replays to the same bytes.
void emit(const std::string& payload, const OutputOptions& options, const std::string& subcommand,
          const std::vector<std::string>& resolved_args, std::optional<std::uint64_t> seed) {
  if (options.out_path.empty()) {
    std::cout << payload;
    return;
  }
  {
    std::ofstream file(options.out_path, std::ios::binary);
    if (!file) throw ValidationError("out: cannot open '" + options.out_path + "' for writing");
    file << payload;
  }
  ordered_json manifest;
  manifest["tool"] = kToolName;
  manifest["version"] = kToolVersion;
  manifest["subcommand"] = subcommand;
  manifest["args"] = resolved_args;
  if (seed) {
    manifest["seed"] = *seed;
  } else {
    manifest["seed"] = nullptr;
  }
  manifest["output"] = {{"path", options.out_path},
                        {"format", options.format},
                        {"bytes", payload.size()},
                        {"checksum_fnv1a64", hex64(fnv1a64(payload))}};
  std::ofstream manifest_file(options.out_path + ".manifest.json", std::ios::binary);
  if (!manifest_file) {
    throw ValidationError("out: cannot write manifest next to '" + options.out_path + "'");
  }
  manifest_file << manifest.dump(2) << '\n';
}

void add_output_options(CLI::App* cmd, OutputOptions& options) {
  cmd->add_option("--out", options.out_path, "Write to this file (plus a .manifest.json sibling)");
  cmd->add_option("--format", options.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--digits", options.digits, "Significant digits in csv output")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
}

// ---------------------------------------------------------------- bounds ---

struct BoundsArgs {
  std::string scenario;
  std::string source_spec;
  int n_labels = 2;
  int alphabet = 2;
  std::string population_spec;
  double hammer_prob = 0.0;
  bool hammer_set = false;
  std::string eps_grid = "0.005:0.495:0.005";
  OutputOptions out;
};

int run_bounds(const BoundsArgs& args) {
  const std::vector<double> grid = parse_grid(args.eps_grid, "eps-grid");
  const Pmf source =
      args.source_spec.empty() ? Pmf::uniform(args.n_labels) : parse_pmf(args.source_spec, "source");

  std::vector<std::pair<double, RateBound>> rows;
  if (args.scenario == "shc") {
    if (!args.hammer_set) {
      std::cerr << "bounds: scenario shc requires q (hammer probability)\n";
      return 2;
    }
    for (double eps : grid) {
      rows.emplace_back(eps, crowdlim::rmin_shc(args.hammer_prob, args.alphabet, eps));
    }
  } else {
    if (args.population_spec.empty()) {
      std::cerr << "bounds: scenario " << args.scenario << " requires population\n";
      return 2;
    }
    const SkillPopulation population = parse_population(args.population_spec);
    for (double eps : grid) {
      const BoundQuery query{source, args.alphabet, population, eps};
      rows.emplace_back(eps, args.scenario == "sl-uk" ? crowdlim::rmin_sl_uk(query)
                                                      : crowdlim::rmin_sl_cs(query));
    }
  }

  std::string payload;
  if (args.out.format == "csv") {
    payload = "epsilon_hat,rate_min,scenario\n";
    for (const auto& [eps, bound] : rows) {
      payload += format_double(eps, args.out.digits) + "," + rate_token(bound, args.out.digits) +
                 "," + args.scenario + "\n";
    }
  } else {
    ordered_json out = ordered_json::array();
    for (const auto& [eps, bound] : rows) {
      out.push_back({{"epsilon_hat", eps}, {"rate_min", rate_json(bound)}, {"scenario", args.scenario}});
    }
    payload = out.dump(2) + "\n";
  }

  std::vector<std::string> resolved{"bounds", "--scenario", args.scenario,
                                    "--M", std::to_string(args.alphabet),
                                    "--eps-grid", join_doubles(grid),
                                    "--format", args.out.format,
                                    "--digits", std::to_string(args.out.digits)};
  if (!args.source_spec.empty()) {
    resolved.insert(resolved.end(), {"--source", args.source_spec});
  } else {
    resolved.insert(resolved.end(), {"--N", std::to_string(args.n_labels)});
  }
  if (args.scenario == "shc") {
    resolved.insert(resolved.end(), {"--q", exact_double(args.hammer_prob)});
  } else {
    resolved.insert(resolved.end(), {"--population", args.population_spec});
  }
  emit(payload, args.out, "bounds", resolved, std::nullopt);
  return 0;
}

// --------------------------------------------------------------- figure2 ---

struct Figure2Args {
  double hammer_prob = 0.3;
  std::string k_spec = "2,3,4,5";
  std::string grid_spec = "0.005:0.495:0.005";
  int alphabet_override = 0;  // 0: derive from the largest k
  OutputOptions out;
};

int run_figure2(const Figure2Args& args) {
  Figure2Params params;
  params.hammer_prob = args.hammer_prob;
  params.k_list.clear();
  for (double k : parse_grid(args.k_spec, "k")) {
    if (k < 1 || k != std::floor(k)) throw ValidationError("k: arities must be positive integers");
    params.k_list.push_back(static_cast<int>(k));
  }
  params.error_grid = parse_grid(args.grid_spec, "grid");
  if (args.alphabet_override > 0) params.alphabet_override = args.alphabet_override;

  const auto rows = crowdlim::figure2_table(params);

  std::string payload;
  if (args.out.format == "csv") {
    payload = "curve,epsilon_hat,rate\n";
    for (const auto& row : rows) {
      payload += row.curve + "," + format_double(row.epsilon_hat, args.out.digits) + "," +
                 rate_token(row.rate, args.out.digits) + "\n";
    }
  } else {
    ordered_json out = ordered_json::array();
    for (const auto& row : rows) {
      out.push_back(
          {{"curve", row.curve}, {"epsilon_hat", row.epsilon_hat}, {"rate", rate_json(row.rate)}});
    }
    payload = out.dump(2) + "\n";
  }

  std::vector<std::string> resolved{"figure2",
                                    "--q", exact_double(params.hammer_prob),
                                    "--k", args.k_spec,
                                    "--grid", join_doubles(params.error_grid),
                                    "--format", args.out.format,
                                    "--digits", std::to_string(args.out.digits)};
  if (args.alphabet_override > 0) {
    resolved.insert(resolved.end(), {"--M", std::to_string(args.alphabet_override)});
  }
  emit(payload, args.out, "figure2", resolved, std::nullopt);
  return 0;
}

// -------------------------------------------------------------- simulate ---

struct SimulateArgs {
  std::string config_path;
  std::string decoder;
  std::string model;
  double hammer_prob = 0.0;
  bool hammer_set = false;
  std::string population_spec;
  double epsilon = -1.0;
  int k = 1;
  int r_prime = 1;
  std::uint64_t n_items = 50000;
  int trials = 8;
  std::uint64_t seed = 1;
  std::string source_spec;
  int n_labels = 2;
  std::string sweep_rprime;
  std::string sweep_q;
  std::string sweep_epsilon;
  bool check = false;
  OutputOptions out;
};

struct SimRow {
  std::size_t index;
  SimConfig cfg;
  SimulationReport report;
};

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

// Flat key=value config; values apply only where no flag was given, so the
// command line always wins.
void apply_config_file(const std::string& path, const CLI::App* cmd, SimulateArgs& args) {
  std::ifstream file(path);
  if (!file) throw ValidationError("config: cannot open '" + path + "'");

  const auto parse_u64 = [](const std::string& text, const std::string& field) {
    try {
      return static_cast<std::uint64_t>(std::stoull(text));
    } catch (const std::exception&) {
      throw ValidationError(field + ": cannot parse '" + text + "' as an integer");
    }
  };
  const auto parse_int = [&](const std::string& text, const std::string& field) {
    return static_cast<int>(parse_u64(text, field));
  };

  std::string line;
  int line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    const std::string entry = trim(line);
    if (entry.empty() || entry[0] == '#') continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config: line " + std::to_string(line_no) + " is not key=value");
    }
    const std::string key = trim(entry.substr(0, eq));
    const std::string value = trim(entry.substr(eq + 1));
    if (cmd->count("--" + key) > 0) continue;

    if (key == "decoder") {
      args.decoder = value;
    } else if (key == "model") {
      args.model = value;
    } else if (key == "q") {
      args.hammer_prob = parse_double(value, key);
      args.hammer_set = true;
    } else if (key == "population") {
      args.population_spec = value;
    } else if (key == "epsilon") {
      args.epsilon = parse_double(value, key);
    } else if (key == "k") {
      args.k = parse_int(value, key);
    } else if (key == "rprime") {
      args.r_prime = parse_int(value, key);
    } else if (key == "n-items") {
      args.n_items = parse_u64(value, key);
    } else if (key == "trials") {
      args.trials = parse_int(value, key);
    } else if (key == "seed") {
      args.seed = parse_u64(value, key);
    } else if (key == "source") {
      args.source_spec = value;
    } else if (key == "N") {
      args.n_labels = parse_int(value, key);
    } else if (key == "sweep-rprime") {
      args.sweep_rprime = value;
    } else if (key == "sweep-q") {
      args.sweep_q = value;
    } else if (key == "sweep-epsilon") {
      args.sweep_epsilon = value;
    } else if (key == "check") {
      args.check = value == "1" || value == "true";
    } else if (key == "out") {
      args.out.out_path = value;
    } else if (key == "format") {
      args.out.format = value;
    } else if (key == "digits") {
      args.out.digits = parse_int(value, key);
    } else {
      throw ValidationError("config: unknown key '" + key + "'");
    }
  }
}

std::string optional_field(const std::optional<double>& value, int digits) {
  return value ? format_double(*value, digits) : std::string();
}

ordered_json optional_json(const std::optional<double>& value) {
  if (value) return *value;
  return nullptr;
}

int run_simulate(const SimulateArgs& args) {
  if (args.decoder != "oracle" && args.decoder != "majority") {
    std::cerr << "simulate: decoder must be oracle or majority\n";
    return 2;
  }
  if (args.model != "shc" && args.model != "msc") {
    std::cerr << "simulate: model must be shc or msc\n";
    return 2;
  }

  SimConfig base;
  base.n_items = args.n_items;
  base.source = args.source_spec.empty()
                    ? SourceModel::uniform(args.n_labels)
                    : SourceModel{parse_pmf(args.source_spec, "source")};
  base.code_k = args.k;
  base.queries_per_item = args.r_prime;
  base.decoder = args.decoder == "oracle" ? DecoderKind::Oracle : DecoderKind::MajorityVote;
  base.seed = args.seed;
  base.n_trials = args.trials;

  std::string population_resolved;
  if (args.model == "shc") {
    if (!args.hammer_set) {
      std::cerr << "simulate: model shc requires q (hammer probability)\n";
      return 2;
    }
    base.workers = WorkerModel::shc(args.hammer_prob);
  } else {
    if (!args.population_spec.empty()) {
      base.workers = WorkerModel::msc(parse_population(args.population_spec));
      population_resolved = args.population_spec;
    } else if (args.epsilon >= 0.0) {
      base.workers = WorkerModel::msc(SkillPopulation::point_mass(args.epsilon));
      population_resolved = exact_double(args.epsilon) + ":1";
    } else {
      std::cerr << "simulate: model msc requires population or epsilon\n";
      return 2;
    }
  }

  const int sweep_flags = !args.sweep_rprime.empty() + !args.sweep_q.empty() +
                          !args.sweep_epsilon.empty();
  if (sweep_flags > 1) {
    std::cerr << "simulate: at most one sweep axis may be given\n";
    return 2;
  }
  if (args.check && args.decoder != "oracle") {
    std::cerr << "simulate: check requires the oracle decoder (no analytic prediction otherwise)\n";
    return 2;
  }
  if (args.check && args.trials < 2) {
    std::cerr << "simulate: check requires trials >= 2 to estimate sigma\n";
    return 2;
  }

  std::vector<SimRow> rows;
  std::vector<double> grid;
  std::string axis_flag;
  if (sweep_flags == 0) {
    SimulationReport report = crowdlim::run_simulation(base);
    rows.push_back({0, base, std::move(report)});
  } else {
    SweepAxis axis = SweepAxis::QueriesPerItem;
    if (!args.sweep_rprime.empty()) {
      grid = parse_grid(args.sweep_rprime, "sweep-rprime");
      axis = SweepAxis::QueriesPerItem;
      axis_flag = "--sweep-rprime";
    } else if (!args.sweep_q.empty()) {
      grid = parse_grid(args.sweep_q, "sweep-q");
      axis = SweepAxis::HammerProb;
      axis_flag = "--sweep-q";
    } else {
      grid = parse_grid(args.sweep_epsilon, "sweep-epsilon");
      axis = SweepAxis::WorkerError;
      axis_flag = "--sweep-epsilon";
    }
    const auto reports = crowdlim::sweep(base, axis, grid);
    for (std::size_t i = 0; i < reports.size(); ++i) {
      SimConfig cfg = base;
      cfg.seed = crowdlim::derive_seed(base.seed, i);
      if (axis == SweepAxis::QueriesPerItem) cfg.queries_per_item = static_cast<int>(grid[i]);
      if (axis == SweepAxis::HammerProb) cfg.workers.hammer_prob = grid[i];
      if (axis == SweepAxis::WorkerError) {
        cfg.workers.population = SkillPopulation::point_mass(grid[i]);
      }
      rows.push_back({i, cfg, reports[i]});
    }
  }

  const char* header =
      "index,decoder,model,k,rprime,rate,q,mean_skill,n_items,n_trials,n_decodings,"
      "filler_items,empirical_error,ci_halfwidth,analytic_prediction\n";
  std::string payload;
  if (args.out.format == "csv") {
    payload = header;
    for (const auto& row : rows) {
      const bool shc = row.cfg.workers.kind == WorkerModel::Kind::Shc;
      payload += std::to_string(row.index) + "," + args.decoder + "," + args.model + "," +
                 std::to_string(row.cfg.code_k) + "," + std::to_string(row.cfg.queries_per_item) +
                 "," + format_double(row.report.rate_used, args.out.digits) + "," +
                 (shc ? format_double(row.cfg.workers.hammer_prob, args.out.digits)
                      : std::string()) +
                 "," +
                 (shc ? std::string()
                      : format_double(row.cfg.workers.population->mean_skill(), args.out.digits)) +
                 "," + std::to_string(row.cfg.n_items) + "," + std::to_string(row.cfg.n_trials) +
                 "," + std::to_string(row.report.n_decodings) + "," +
                 std::to_string(row.report.filler_items) + "," +
                 format_double(row.report.empirical_error, args.out.digits) + "," +
                 optional_field(row.report.ci_halfwidth, args.out.digits) + "," +
                 optional_field(row.report.analytic_prediction, args.out.digits) + "\n";
    }
  } else {
    ordered_json out = ordered_json::array();
    for (const auto& row : rows) {
      const bool shc = row.cfg.workers.kind == WorkerModel::Kind::Shc;
      ordered_json entry;
      entry["index"] = row.index;
      entry["decoder"] = args.decoder;
      entry["model"] = args.model;
      entry["k"] = row.cfg.code_k;
      entry["rprime"] = row.cfg.queries_per_item;
      entry["rate"] = row.report.rate_used;
      entry["q"] = shc ? ordered_json(row.cfg.workers.hammer_prob) : ordered_json(nullptr);
      entry["mean_skill"] =
          shc ? ordered_json(nullptr) : ordered_json(row.cfg.workers.population->mean_skill());
      entry["n_items"] = row.cfg.n_items;
      entry["n_trials"] = row.cfg.n_trials;
      entry["n_decodings"] = row.report.n_decodings;
      entry["filler_items"] = row.report.filler_items;
      entry["empirical_error"] = row.report.empirical_error;
      entry["ci_halfwidth"] = optional_json(row.report.ci_halfwidth);
      entry["analytic_prediction"] = optional_json(row.report.analytic_prediction);
      out.push_back(entry);
    }
    payload = out.dump(2) + "\n";
  }

  std::vector<std::string> resolved{"simulate",
                                    "--decoder", args.decoder,
                                    "--model", args.model,
                                    "--k", std::to_string(args.k),
                                    "--rprime", std::to_string(args.r_prime),
                                    "--n-items", std::to_string(args.n_items),
                                    "--trials", std::to_string(args.trials),
                                    "--seed", std::to_string(args.seed),
                                    "--format", args.out.format,
                                    "--digits", std::to_string(args.out.digits)};
  if (!args.source_spec.empty()) {
    resolved.insert(resolved.end(), {"--source", args.source_spec});
  } else {
    resolved.insert(resolved.end(), {"--N", std::to_string(args.n_labels)});
  }
  if (args.model == "shc") {
    resolved.insert(resolved.end(), {"--q", exact_double(args.hammer_prob)});
  } else {
    resolved.insert(resolved.end(), {"--population", population_resolved});
  }
  if (!axis_flag.empty()) {
    resolved.insert(resolved.end(), {axis_flag, join_doubles(grid)});
  }
  emit(payload, args.out, "simulate", resolved, args.seed);

  if (args.check) {
    bool failed = false;
    for (const auto& row : rows) {
      const double sigma = row.report.std_error.value_or(0.0);
      const double deviation =
          std::abs(row.report.empirical_error - row.report.analytic_prediction.value_or(0.0));
      if (deviation > 4.0 * sigma) {
        std::cerr << "check: grid point " << row.index << " deviates by " << deviation
                  << " (4 sigma = " << 4.0 * sigma << ")\n";
        failed = true;
      }
    }
    if (failed) return 1;
  }
  return 0;
}

// ----------------------------------------------------------------- price ---

struct PriceArgs {
  int k1 = 0;
  int k2 = 0;
  double pi1 = 0.0;
  bool exact = false;
  double hammer_prob = 0.0;
  bool hammer_set = false;
  double eps = -1.0;
  OutputOptions out;
};

int run_price(const PriceArgs& args) {
  double result = 0.0;
  if (args.exact) {
    if (!args.hammer_set || args.eps < 0.0) {
      std::cerr << "price: exact mode requires q and eps\n";
      return 2;
    }
    result = crowdlim::price_threshold_exact(args.k1, args.k2, args.hammer_prob, args.eps, args.pi1);
  } else {
    result = crowdlim::price_threshold(args.k1, args.k2, args.pi1);
  }
  const std::string payload = format_double(result, args.out.digits) + "\n";

  std::vector<std::string> resolved{"price",
                                    "--k1", std::to_string(args.k1),
                                    "--k2", std::to_string(args.k2),
                                    "--pi1", exact_double(args.pi1),
                                    "--format", args.out.format,
                                    "--digits", std::to_string(args.out.digits)};
  if (args.exact) {
    resolved.push_back("--exact");
    resolved.insert(resolved.end(), {"--q", exact_double(args.hammer_prob)});
    resolved.insert(resolved.end(), {"--eps", exact_double(args.eps)});
  }
  emit(payload, args.out, "price", resolved, std::nullopt);
  return 0;
}

// ---------------------------------------------------------------- replay ---

int dispatch(std::vector<std::string> args);

struct ReplayArgs {
  std::string manifest_path;
  std::string out_path;
};

int run_replay(const ReplayArgs& args) {
  std::ifstream manifest_file(args.manifest_path);
  if (!manifest_file) {
    std::cerr << "replay: cannot open manifest '" << args.manifest_path << "'\n";
    return 2;
  }
  ordered_json manifest;
  try {
    manifest_file >> manifest;
  } catch (const std::exception& e) {
    std::cerr << "replay: bad manifest: " << e.what() << "\n";
    return 2;
  }
  if (!manifest.contains("args") || !manifest.contains("output")) {
    std::cerr << "replay: manifest is missing args/output\n";
    return 2;
  }
  std::vector<std::string> argv = manifest["args"].get<std::vector<std::string>>();
  const std::string out_path =
      args.out_path.empty() ? manifest["output"]["path"].get<std::string>() + ".replay"
                            : args.out_path;
  argv.insert(argv.end(), {"--out", out_path});
  const int code = dispatch(argv);
  if (code != 0) return code;

  std::ifstream replayed(out_path, std::ios::binary);
  std::stringstream buffer;
  buffer << replayed.rdbuf();
  const std::string checksum = hex64(fnv1a64(buffer.str()));
  const std::string expected = manifest["output"]["checksum_fnv1a64"].get<std::string>();
  if (checksum != expected) {
    std::cerr << "replay: checksum mismatch (manifest " << expected << ", replay " << checksum
              << ")\n";
    return 1;
  }
  std::cerr << "replay: output matches manifest checksum " << checksum << "\n";
  return 0;
}

// -------------------------------------------------------------- dispatch ---

int dispatch(std::vector<std::string> args) {
  CLI::App app{"Crowdsourcing budget-fidelity bounds and Monte Carlo validation"};
  app.name(kToolName);
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  int exit_code = 0;

  BoundsArgs bounds_args;
  CLI::App* bounds_cmd = app.add_subcommand("bounds", "Minimum-rate tables per scenario");
  bounds_cmd->add_option("--scenario", bounds_args.scenario, "sl-uk, sl-cs, or shc")
      ->required()
      ->check(CLI::IsMember({"sl-uk", "sl-cs", "shc"}));
  bounds_cmd->add_option("--source", bounds_args.source_spec, "Source pmf, e.g. 0.5,0.5");
  bounds_cmd->add_option("--N", bounds_args.n_labels, "Labels for a uniform source")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  bounds_cmd->add_option("--M", bounds_args.alphabet, "Response choices per query")
      ->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();
  bounds_cmd->add_option("--population", bounds_args.population_spec,
                         "Skill levels as epsilon:prob pairs");
  bounds_cmd->add_option("--q", bounds_args.hammer_prob, "Hammer probability (shc)")
      ->check(CLI::Range(0.0, 1.0));
  bounds_cmd->add_option("--eps-grid", bounds_args.eps_grid, "Targets: list or start:stop:step")
      ->capture_default_str();
  add_output_options(bounds_cmd, bounds_args.out);
  bounds_cmd->callback([&] {
    bounds_args.hammer_set = bounds_cmd->count("--q") > 0;
    exit_code = run_bounds(bounds_args);
  });

  Figure2Args figure2_args;
  CLI::App* figure2_cmd =
      app.add_subcommand("figure2", "Incidence-code thresholds vs the capacity limit");
  figure2_cmd->add_option("--q", figure2_args.hammer_prob, "Hammer probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  figure2_cmd->add_option("--k", figure2_args.k_spec, "Query arities, e.g. 2,3,4,5")
      ->capture_default_str();
  figure2_cmd->add_option("--grid", figure2_args.grid_spec, "Target grid: list or start:stop:step")
      ->capture_default_str();
  figure2_cmd->add_option("--M", figure2_args.alphabet_override,
                          "Response-alphabet override for the capacity curve")
      ->check(CLI::Range(2, 1 << 20));
  add_output_options(figure2_cmd, figure2_args.out);
  figure2_cmd->callback([&] { exit_code = run_figure2(figure2_args); });

  SimulateArgs simulate_args;
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo crowdsourcing runs");
  simulate_cmd->add_option("--config", simulate_args.config_path,
                           "Flat key=value config file; flags override");
  simulate_cmd->add_option("--decoder", simulate_args.decoder, "oracle or majority");
  simulate_cmd->add_option("--model", simulate_args.model, "shc or msc");
  simulate_cmd->add_option("--q", simulate_args.hammer_prob, "Hammer probability (shc)")
      ->check(CLI::Range(0.0, 1.0));
  simulate_cmd->add_option("--population", simulate_args.population_spec,
                           "Skill levels as epsilon:prob pairs (msc)");
  simulate_cmd->add_option("--epsilon", simulate_args.epsilon,
                           "Single skill level shorthand (msc)")
      ->check(CLI::Range(0.0, 1.0));
  simulate_cmd->add_option("--k", simulate_args.k, "Items per query")
      ->check(CLI::Range(1, 16))
      ->capture_default_str();
  simulate_cmd->add_option("--rprime", simulate_args.r_prime, "Queries covering each item")
      ->check(CLI::Range(1, 1 << 20))
      ->capture_default_str();
  simulate_cmd->add_option("--n-items", simulate_args.n_items, "Dataset size")
      ->capture_default_str();
  simulate_cmd->add_option("--trials", simulate_args.trials, "Monte Carlo repetitions")
      ->check(CLI::Range(1, 1 << 20))
      ->capture_default_str();
  simulate_cmd->add_option("--seed", simulate_args.seed, "Base seed")->capture_default_str();
  simulate_cmd->add_option("--source", simulate_args.source_spec, "Source pmf, e.g. 0.5,0.5");
  simulate_cmd->add_option("--N", simulate_args.n_labels, "Labels for a uniform source")
      ->check(CLI::Range(2, 64))
      ->capture_default_str();
  simulate_cmd->add_option("--sweep-rprime", simulate_args.sweep_rprime, "Grid of R' values");
  simulate_cmd->add_option("--sweep-q", simulate_args.sweep_q, "Grid of hammer probabilities");
  simulate_cmd->add_option("--sweep-epsilon", simulate_args.sweep_epsilon,
                           "Grid of single-level skill values");
  simulate_cmd->add_flag("--check", simulate_args.check,
                         "Exit 1 when |empirical - analytic| > 4 sigma");
  add_output_options(simulate_cmd, simulate_args.out);
  simulate_cmd->callback([&] {
    simulate_args.hammer_set = simulate_cmd->count("--q") > 0;
    if (!simulate_args.config_path.empty()) {
      apply_config_file(simulate_args.config_path, simulate_cmd, simulate_args);
    }
    exit_code = run_simulate(simulate_args);
  });

  PriceArgs price_args;
  CLI::App* price_cmd = app.add_subcommand("price", "Query-price thresholds between arities");
  price_cmd->add_option("--k1", price_args.k1, "Reference arity")->required();
  price_cmd->add_option("--k2", price_args.k2, "Candidate arity")->required();
  price_cmd->add_option("--pi1", price_args.pi1, "Price per k1-query")->required();
  price_cmd->add_flag("--exact", price_args.exact, "Use the exact rate ratio");
  price_cmd->add_option("--q", price_args.hammer_prob, "Hammer probability (exact mode)")
      ->check(CLI::Range(0.0, 1.0));
  price_cmd->add_option("--eps", price_args.eps, "Target error (exact mode)")
      ->check(CLI::Range(0.0, 1.0));
  add_output_options(price_cmd, price_args.out);
  price_cmd->callback([&] {
    price_args.hammer_set = price_cmd->count("--q") > 0;
    exit_code = run_price(price_args);
  });

  ReplayArgs replay_args;
  CLI::App* replay_cmd = app.add_subcommand("replay", "Re-run a manifest and verify its checksum");
  replay_cmd->add_option("manifest", replay_args.manifest_path, "Path to a .manifest.json file")
      ->required();
  replay_cmd->add_option("--out", replay_args.out_path, "Where to write the replayed output");
  replay_cmd->callback([&] { exit_code = run_replay(replay_args); });

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << kToolName << ": " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << kToolName << ": " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispatch(std::move(args));
}
