/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "qdiscord/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qdiscord/random.hpp"
#include "qdiscord/serialization.hpp"
#include "qdiscord/state_families.hpp"

namespace qdiscord {

namespace {

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

bool parse_bool(const std::string& v, bool& out) {
  if (v == "true" || v == "1" || v == "yes") {
    out = true;
    return true;
  }
  if (v == "false" || v == "0" || v == "no") {
    out = false;
    return true;
  }
  return false;
}

}  // namespace

std::string LevelSpec::token() const {
  std::string t = "k" + std::to_string(k);
  if (ppt_binding) t += "ppt";
  if (!bose) t += "nobose";
  return t;
}

LevelSpec LevelSpec::parse(const std::string& token) {
  if (token.size() < 2 || token[0] != 'k')
    throw std::invalid_argument("level token must look like k2, k1ppt, k3nobose: " + token);
  std::size_t pos = 1;
  while (pos < token.size() && std::isdigit(static_cast<unsigned char>(token[pos]))) ++pos;
  if (pos == 1) throw std::invalid_argument("level token has no k value: " + token);
  LevelSpec spec;
  spec.k = std::stol(token.substr(1, pos - 1));
  std::string rest = token.substr(pos);
  while (!rest.empty()) {
    if (rest.rfind("ppt", 0) == 0) {
      spec.ppt_binding = true;
      rest = rest.substr(3);
    } else if (rest.rfind("nobose", 0) == 0) {
      spec.bose = false;
      rest = rest.substr(6);
    } else {
      throw std::invalid_argument("unknown level suffix in token: " + token);
    }
  }
  return spec;
}

std::string ExperimentConfig::family_name() const {
  switch (family) {
    case Family::cqpair: return "cqpair";
    case Family::file: return "file";
    case Family::random: return "random";
  }
  return "?";
}

ExperimentConfig parse_config(std::istream& is) {
  ExperimentConfig c;
  c.levels.clear();
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      std::istringstream probe(line);
      std::string word;
      if (probe >> word)
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": expected `key = value`");
      continue;
    }
    auto trim = [](std::string s) {
      std::size_t b = s.find_first_not_of(" \t");
      std::size_t e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    auto bad = [&](const std::string& why) {
      return std::invalid_argument("config line " + std::to_string(lineno) + ": " + why);
    };
    try {
      if (key == "state.family") {
        if (value == "cqpair")
          c.family = ExperimentConfig::Family::cqpair;
        else if (value == "file")
          c.family = ExperimentConfig::Family::file;
        else if (value == "random")
          c.family = ExperimentConfig::Family::random;
        else
          throw bad("unknown family `" + value + "`");
      } else if (key == "state.theta_start") {
        c.theta_start = std::stod(value);
      } else if (key == "state.theta_stop") {
        c.theta_stop = std::stod(value);
      } else if (key == "state.theta_count") {
        c.theta_count = std::stoi(value);
      } else if (key == "state.path") {
        c.path = value;
      } else if (key == "state.seed") {
        c.seed = std::stoull(value);
      } else if (key == "state.dim_a") {
        c.dim_a = std::stol(value);
      } else if (key == "state.dim_b") {
        c.dim_b = std::stol(value);
      } else if (key == "state.rank") {
        c.rank = std::stol(value);
      } else if (key == "state.count") {
        c.count = std::stoi(value);
      } else if (key == "levels") {
        std::istringstream ls(value);
        std::string tok;
        while (ls >> tok) c.levels.push_back(LevelSpec::parse(tok));
      } else if (key == "oracles.discord") {
        if (!parse_bool(value, c.oracle_discord)) throw bad("expected a boolean");
      } else if (key == "oracles.eb_search") {
        if (!parse_bool(value, c.oracle_eb_search)) throw bad("expected a boolean");
      } else if (key == "oracles.eb_samples") {
        c.eb_samples = std::stoi(value);
      } else if (key == "oracles.polar") {
        c.sweep.polar = std::stoi(value);
      } else if (key == "oracles.azimuthal") {
        c.sweep.azimuthal = std::stoi(value);
      } else if (key == "oracles.refine") {
        c.sweep.refine = std::stoi(value);
      } else if (key == "oracles.outcomes") {
        c.sweep.outcomes = std::stoi(value);
      } else if (key == "oracles.seed") {
        c.sweep.seed = std::stoull(value);
      } else if (key == "output.prefix") {
        c.output_prefix = value;
      } else if (key == "solver.gap_tol") {
        c.gap_tol = std::stod(value);
      } else if (key == "solver.feas_tol") {
        c.feas_tol = std::stod(value);
      } else if (key == "workers") {
        c.workers = std::stoi(value);
      } else {
        throw bad("unknown key `" + key + "`");
      }
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception& e) {
      throw bad(std::string("cannot parse value `") + value + "`: " + e.what());
    }
  }
  return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config: " + path);
  return parse_config(is);
}

std::vector<std::string> validate(const ExperimentConfig& c) {
  std::vector<std::string> diags;
  constexpr double kHalfPi = 1.5707963267948966 + 1e-9;
  if (c.levels.empty()) diags.push_back("levels: at least one level is required");
  for (const LevelSpec& l : c.levels) {
    if (l.k < 1) diags.push_back("levels: k must be >= 1 (" + l.token() + ")");
    if (l.k == 1 && !l.ppt_binding)
      diags.push_back("levels: note k1 without ppt is trivially 0 (" + l.token() + ")");
  }
  if (c.family == ExperimentConfig::Family::cqpair) {
    if (c.theta_count < 1) diags.push_back("state.theta_count must be >= 1");
    if (c.theta_start < -1e-12 || c.theta_start > kHalfPi)
      diags.push_back("state.theta_start outside [0, pi/2]");
    if (c.theta_stop < -1e-12 || c.theta_stop > kHalfPi)
      diags.push_back("state.theta_stop outside [0, pi/2]");
    if (c.theta_stop < c.theta_start) diags.push_back("state.theta_stop < state.theta_start");
  } else if (c.family == ExperimentConfig::Family::file) {
    if (c.path.empty()) diags.push_back("state.path is required for the file family");
  } else {
    if (c.dim_a < 2) diags.push_back("state.dim_a must be >= 2");
    if (c.dim_b < 2) diags.push_back("state.dim_b must be >= 2");
    if (c.count < 1) diags.push_back("state.count must be >= 1");
    if (c.rank < 1 || c.rank > c.dim_a * c.dim_b)
      diags.push_back("state.rank must be in [1, dim_a*dim_b]");
  }
  if (c.eb_samples < 1) diags.push_back("oracles.eb_samples must be >= 1");
  try {
    c.sweep.validate();
  } catch (const std::exception& e) {
    diags.push_back(std::string("oracles: ") + e.what());
  }
  if (c.gap_tol <= 0 || c.feas_tol <= 0) diags.push_back("solver tolerances must be positive");
  if (c.workers < 0) diags.push_back("workers must be >= 0");
  if (c.output_prefix.empty()) diags.push_back("output.prefix is required");
  return diags;
}

namespace {

struct Task {
  std::size_t state_index;
  double param;
  int kind;  // 0 = level, 1 = discord oracle, 2 = EB oracle
  LevelSpec level;
};

int resolve_workers(const ExperimentConfig& c) {
  if (const char* env = std::getenv("QDISCORD_WORKERS")) {
    int w = std::atoi(env);
    if (w > 0) return w;
  }
  if (c.workers > 0) return c.workers;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::string config_echo(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "state.family = " << c.family_name() << "\n";
  switch (c.family) {
    case ExperimentConfig::Family::cqpair:
      os << "state.theta_start = " << format_double("%.17g", c.theta_start) << "\n"
         << "state.theta_stop = " << format_double("%.17g", c.theta_stop) << "\n"
         << "state.theta_count = " << c.theta_count << "\n";
      break;
    case ExperimentConfig::Family::file:
      os << "state.path = " << c.path << "\n";
      break;
    case ExperimentConfig::Family::random:
      os << "state.seed = " << c.seed << "\n"
         << "state.dim_a = " << c.dim_a << "\n"
         << "state.dim_b = " << c.dim_b << "\n"
         << "state.rank = " << c.rank << "\n"
         << "state.count = " << c.count << "\n";
      break;
  }
  os << "levels =";
  for (const LevelSpec& l : c.levels) os << ' ' << l.token();
  os << "\noracles.discord = " << (c.oracle_discord ? "true" : "false")
     << "\noracles.eb_search = " << (c.oracle_eb_search ? "true" : "false")
     << "\noracles.eb_samples = " << c.eb_samples << "\noracles.polar = " << c.sweep.polar
     << "\noracles.azimuthal = " << c.sweep.azimuthal << "\noracles.refine = " << c.sweep.refine
     << "\noracles.outcomes = " << c.sweep.outcomes << "\noracles.seed = " << c.sweep.seed
     << "\noutput.prefix = " << c.output_prefix
     << "\nsolver.gap_tol = " << format_double("%.17g", c.gap_tol)
     << "\nsolver.feas_tol = " << format_double("%.17g", c.feas_tol)
     << "\nworkers = " << c.workers << "\n";
  return os.str();
}

}  // namespace

int run_experiment(const ExperimentConfig& config, std::ostream& log) {
  std::vector<std::string> diags = validate(config);
  std::vector<std::string> hard;
  for (const std::string& d : diags)
    if (d.find("note ") == std::string::npos) hard.push_back(d);
  if (!hard.empty()) {
    for (const std::string& d : hard) log << "config error: " << d << "\n";
    return 1;
  }

  // Materialize the state list.
  std::vector<DensityMatrix> states;
  std::vector<double> params;
  try {
    switch (config.family) {
      case ExperimentConfig::Family::cqpair: {
        int n = config.theta_count;
        for (int i = 0; i < n; ++i) {
          double t = n == 1 ? config.theta_start
                            : config.theta_start +
                                  (config.theta_stop - config.theta_start) * i / (n - 1);
          states.push_back(cq_pure_pair_state(t));
          params.push_back(t);
        }
        break;
      }
      case ExperimentConfig::Family::file: {
        states.push_back(read_state(config.path));
        params.push_back(0.0);
        if (states.back().subsystems() != 2)
          throw std::runtime_error("file state must have exactly two subsystems");
        break;
      }
      case ExperimentConfig::Family::random: {
        for (int i = 0; i < config.count; ++i) {
          Rng rng(config.seed + static_cast<std::uint64_t>(i));
          states.push_back(random_density_matrix(config.dim_a * config.dim_b, config.rank, rng,
                                                 {config.dim_a, config.dim_b}));
          params.push_back(static_cast<double>(i));
        }
        break;
      }
    }
  } catch (const std::exception& e) {
    log << "config error: cannot build states: " << e.what() << "\n";
    return 1;
  }

  std::vector<Task> tasks;
  for (std::size_t s = 0; s < states.size(); ++s) {
    for (const LevelSpec& l : config.levels) tasks.push_back({s, params[s], 0, l});
    if (config.oracle_discord) tasks.push_back({s, params[s], 1, {}});
    if (config.oracle_eb_search) tasks.push_back({s, params[s], 2, {}});
  }

  std::vector<CsvRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<int> failures{0};

  auto worker = [&]() {
    while (true) {
      std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      const Task& task = tasks[t];
      CsvRow& row = rows[t];
      row.family = config.family_name();
      row.param = task.param;
      auto start = std::chrono::steady_clock::now();
      try {
        if (task.kind == 0) {
          HierarchyOptions opts;
          opts.k = task.level.k;
          opts.bose = task.level.bose;
          if (task.level.ppt_binding) opts.ppt_cuts = {PptCut::input_cut()};
          opts.solver.gap_tol = config.gap_tol;
          opts.solver.feas_tol = config.feas_tol;
          HierarchyResult r = discord_lower_bound(states[task.state_index], opts);
          row.k = static_cast<int>(task.level.k);
          row.bose = task.level.bose ? "1" : "0";
          row.ppt = task.level.ppt_binding ? PptCut::input_cut().label() : "none";
          row.status = sdp::to_string(r.status);
          row.gap = format_double("%.3e", r.gap);
          if (r.optimal()) {
            row.f_star = format_double("%.12g", r.f_star);
            row.d_bound = format_double("%.12g", r.d_bound);
          } else {
            failures.fetch_add(1);
          }
        } else if (task.kind == 1) {
          row.k = -1;
          double d = discord_bruteforce(states[task.state_index], config.sweep);
          row.d_bound = format_double("%.12g", d);
          row.status = "oracle";
        } else {
          row.k = 0;
          double f = eb_fidelity_search(states[task.state_index], config.eb_samples,
                                        config.sweep.seed + 7919 * task.state_index);
          row.f_star = format_double("%.12g", f);
          double fc = std::clamp(f, 1e-300, 1.0);
          row.d_bound = format_double("%.12g", -2.0 * std::log2(fc));
          row.status = "oracle";
        }
      } catch (const std::exception& e) {
        row.status = "error";
        row.gap = "";
        failures.fetch_add(1);
        std::ostringstream msg;
        msg << "row " << t << ": " << e.what() << "\n";
        std::cerr << msg.str();
      }
      auto stop = std::chrono::steady_clock::now();
      row.seconds = format_double(
          "%.3f", std::chrono::duration_cast<std::chrono::duration<double>>(stop - start).count());
    }
  };

  auto run_start = std::chrono::steady_clock::now();
  int nworkers = resolve_workers(config);
  {
    std::vector<std::thread> pool;
    for (int w = 1; w < nworkers; ++w) pool.emplace_back(worker);
    worker();
    for (std::thread& th : pool) th.join();
  }
  double total_seconds = std::chrono::duration_cast<std::chrono::duration<double>>(
                             std::chrono::steady_clock::now() - run_start)
                             .count();

  // Write artifacts.
  std::filesystem::path prefix(config.output_prefix);
  if (prefix.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(prefix.parent_path(), ec);
  }
  std::string csv_path = config.output_prefix + ".csv";
  std::ofstream csv(csv_path);
  if (!csv) {
    log << "config error: cannot write " << csv_path << "\n";
    return 1;
  }
  csv << kCsvHeader << "\n";
  for (const CsvRow& r : rows) {
    csv << r.family << ',' << format_double("%.12g", r.param) << ',' << r.k << ',' << r.bose << ','
        << r.ppt << ',' << r.f_star << ',' << r.d_bound << ',' << r.status << ',' << r.gap << ','
        << r.seconds << "\n";
  }
  csv.close();

  std::ofstream manifest(config.output_prefix + ".manifest.txt");
  manifest << "qdiscord " << kVersion << "\n"
           << "workers = " << nworkers << "\n"
           << "rows = " << rows.size() << "\n"
           << "failures = " << failures.load() << "\n"
           << "wall_seconds = " << format_double("%.3f", total_seconds) << "\n"
           << "--- config ---\n"
           << config_echo(config);
  manifest.close();

  log << "wrote " << csv_path << " (" << rows.size() << " rows, " << failures.load()
      << " failures, " << format_double("%.1f", total_seconds) << " s)\n";
  return failures.load() > 0 ? 2 : 0;
}

std::vector<CsvRow> read_csv(std::istream& is) {
  std::vector<CsvRow> rows;
  std::string line;
  int lineno = 0;
  if (!std::getline(is, line)) throw std::runtime_error("csv parse error at line 1: empty file");
  ++lineno;
  if (line != kCsvHeader)
    throw std::runtime_error("csv parse error at line 1: unexpected header");
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(pos));
        break;
      }
      fields.push_back(line.substr(pos, comma - pos));
      pos = comma + 1;
    }
    if (fields.size() != 10)
      throw std::runtime_error("csv parse error at line " + std::to_string(lineno) +
                               ": expected 10 fields, got " + std::to_string(fields.size()));
    CsvRow r;
    try {
      r.family = fields[0];
      r.param = std::stod(fields[1]);
      r.k = std::stoi(fields[2]);
      r.bose = fields[3];
      r.ppt = fields[4];
      r.f_star = fields[5];
      r.d_bound = fields[6];
      r.status = fields[7];
      r.gap = fields[8];
      r.seconds = fields[9];
    } catch (const std::exception&) {
      throw std::runtime_error("csv parse error at line " + std::to_string(lineno) +
                               ": malformed numeric field");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<CsvRow> read_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open csv: " + path);
  return read_csv(is);
}

std::vector<LevelSummary> summarize(const std::vector<CsvRow>& rows, double tol) {
  // Group rows by parameter, order each group's chain, and accumulate stats.
  struct Entry {
    const CsvRow* row;
    double d;
    bool has_d;
  };
  auto level_label = [](const CsvRow& r) -> std::string {
    if (r.k == -1) return "discord";
    if (r.k == 0) return "eb_search";
    std::string s = "k=" + std::to_string(r.k);
    if (r.bose == "0") s += " nobose";
    if (!r.ppt.empty() && r.ppt != "none") s += " ppt=" + r.ppt;
    return s;
  };
  auto chain_rank = [](const CsvRow& r) -> int {
    if (r.k == -1) return 1000000;           // brute discord tops the chain
    if (r.k == 0) return -1;                  // excluded from the chain
    bool ppt = !r.ppt.empty() && r.ppt != "none";
    return static_cast<int>(r.k) + (ppt ? 1000 : 0);
  };

  std::map<std::string, LevelSummary> table;
  std::map<std::string, std::vector<Entry>> by_param;
  for (const CsvRow& r : rows) {
    std::string label = level_label(r);
    LevelSummary& s = table[label];
    if (s.rows == 0) {
      s.label = label;
      s.d_min = std::numeric_limits<double>::infinity();
      s.d_max = -std::numeric_limits<double>::infinity();
    }
    ++s.rows;
    if (r.status != "optimal" && r.status != "oracle") ++s.not_optimal;
    Entry e{&r, 0.0, false};
    if (!r.d_bound.empty()) {
      e.d = std::stod(r.d_bound);
      e.has_d = true;
      s.d_min = std::min(s.d_min, e.d);
      s.d_max = std::max(s.d_max, e.d);
    }
    by_param[r.family + "/" + format_double("%.12g", r.param)].push_back(e);
  }

  for (auto& [param, entries] : by_param) {
    std::stable_sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
      return chain_rank(*a.row) < chain_rank(*b.row);
    });
    const Entry* prev = nullptr;
    for (const Entry& e : entries) {
      if (chain_rank(*e.row) < 0 || !e.has_d) continue;
      if (prev && prev->d > e.d + tol) ++table[level_label(*prev->row)].monotonicity_violations;
      prev = &e;
    }
  }

  std::vector<LevelSummary> out;
  for (auto& [label, s] : table) out.push_back(s);
  std::stable_sort(out.begin(), out.end(), [&](const LevelSummary& a, const LevelSummary& b) {
    auto key = [](const LevelSummary& s) {
      if (s.label == "discord") return 1000000;
      if (s.label == "eb_search") return 999999;
      int k = std::atoi(s.label.c_str() + 2);
      return k + (s.label.find("ppt=") != std::string::npos ? 1000 : 0);
    };
    return key(a) < key(b);
  });
  return out;
}

void print_summary(std::ostream& os, const std::vector<LevelSummary>& table) {
  os << "level              rows  !optimal  d_min          d_max          mono_violations\n";
  for (const LevelSummary& s : table) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-18s %5d %9d  %-14.8g %-14.8g %5d\n", s.label.c_str(), s.rows,
                  s.not_optimal, s.d_min, s.d_max, s.monotonicity_violations);
    os << buf;
  }
}

}  // namespace qdiscord
