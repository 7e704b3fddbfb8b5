#include "purif/entropy_series.hpp"
#include "purif/graph_oracle.hpp"
#include "purif/jack.hpp"
#include "purif/report.hpp"
#include "purif/scaling.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

using namespace purif;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// Thrown for bad argument combinations; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* kSeriesSupport =
    "supported series:\n"
    "  --obs S1            beta 1, --limit BR order <= 4, --limit FM order <= 2\n"
    "  --obs S2 / Sn --n k beta 1 or 2, --limit BR or FM, k >= 2, order up to the replica cap\n";

std::vector<std::string> g_argv;

std::string fmt_double(double v) { return fmt::format("{:.17g}", v); }

void write_text(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return json::parse(in);
}

void write_manifest(const fs::path& p, const json& config, std::uint64_t seed, const std::vector<std::string>& outputs,
                    double seconds) {
  RunManifest m;
  m.command_line = g_argv;
  m.config = config;
  m.seed = seed;
  m.outputs = outputs;
  m.wall_clock_seconds = seconds;
  write_text(p, m.to_json().dump(2) + "\n");
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ReplicaLimit parse_limit(const std::string& s) {
  if (s == "BR") return ReplicaLimit::BR;
  if (s == "FM") return ReplicaLimit::FM;
  throw UsageError("unknown limit '" + s + "' (BR, FM)");
}

// ---- series ----

struct SeriesArgs {
  std::string obs = "S2";
  int n = 2;
  int beta = 1;
  std::string limit = "BR";
  int order = 6;
  double x_min = 0.01, x_max = 0.3;
  int x_points = 30;
  std::string out_dir = ".";
  std::string config;
};

json series_config(const SeriesArgs& a) {
  return {{"obs", a.obs},     {"n", a.n},         {"beta", a.beta},     {"limit", a.limit},
          {"order", a.order}, {"x_min", a.x_min}, {"x_max", a.x_max}, {"x_points", a.x_points}};
}

int cmd_series(SeriesArgs a, const std::set<std::string>& given) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!a.config.empty()) {
    json j = read_json(a.config);
    if (j.contains("config")) j = j.at("config");
    auto take = [&](const char* key, auto& field) {
      if (j.contains(key) && !given.count(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    take("obs", a.obs);
    take("n", a.n);
    take("beta", a.beta);
    take("limit", a.limit);
    take("order", a.order);
    take("x_min", a.x_min);
    take("x_max", a.x_max);
    take("x_points", a.x_points);
  }
  if (a.obs == "S1") a.n = 1;
  else if (a.obs == "S2") a.n = 2;
  else if (a.obs != "Sn") throw UsageError(fmt::format("unknown observable '{}'\n{}", a.obs, kSeriesSupport));
  if (a.x_points < 2 || !(a.x_min > 0) || !(a.x_max > a.x_min)) throw UsageError("need 0 < x-min < x-max and x-points >= 2");
  const ReplicaLimit limit = parse_limit(a.limit);

  ScalingSeries s;
  try {
    s = a.n == 1 ? vn_series(limit, a.beta, a.order) : renyi_series(a.n, limit, a.beta, a.order);
  } catch (const std::invalid_argument& e) {
    throw UsageError(fmt::format("{}\n{}", e.what(), kSeriesSupport));
  } catch (const std::out_of_range& e) {
    throw UsageError(fmt::format("{}\n{}", e.what(), kSeriesSupport));
  }
  SeriesMeta meta{a.n == 1 ? "S1" : fmt::format("S{}", a.n), a.n, a.beta, a.limit, a.order};

  fmt::print("{} beta={} {} order {}\n", meta.observable, a.beta, a.limit, a.order);
  fmt::print("  ln x weight: {}\n", s.log_weight.to_string());
  if (!is_zero(s.const_log_weight))
    fmt::print("  constant log: {} * ln({})\n", to_string(s.const_log_weight), to_string(s.const_log_arg));
  for (std::size_t l = 0; l < s.terms.size(); ++l) fmt::print("  x^{}: {}\n", l, s.terms[l].to_string());

  const std::string stem = fmt::format("series_{}_beta{}_{}_o{}", meta.observable, a.beta, a.limit, a.order);
  const fs::path dir(a.out_dir);
  const auto json_path = (dir / (stem + ".json")).string();
  const auto csv_path = (dir / (stem + ".csv")).string();
  write_text(json_path, series_to_json(s, meta).dump(2) + "\n");
  std::string csv = "x,value\n";
  for (int i = 0; i < a.x_points; ++i) {
    const double x = a.x_min + (a.x_max - a.x_min) * i / (a.x_points - 1);
    csv += fmt_double(x) + "," + fmt_double(s.evaluate(x)) + "\n";
  }
  write_text(csv_path, csv);
  write_manifest(dir / (stem + ".manifest.json"), series_config(a), 0, {json_path, csv_path}, since(t0));
  return 0;
}

// ---- oracle ----

int cmd_oracle(int beta, int N, int order, const std::string& out_dir) {
  const auto t0 = std::chrono::steady_clock::now();
  if (beta != 1 && beta != 2) throw UsageError("oracle: beta must be 1 or 2");
  if (order < 0) throw UsageError("oracle: order must be non-negative");
  CommutantGraph g;
  try {
    g = build_graph(beta, N);
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  fmt::print("oracle beta={} N={} order {}: {} vertices\n", beta, N, order, g.size());
  json classes = json::array();
  bool ok = true;
  for (const auto& mu : partitions_of(N)) {
    const auto walk = walk_series(g, mu, order);
    const auto spec = moment_scaling(mu, ExactScalar(beta), order);
    json coeffs = json::array();
    for (const auto& c : walk.coefficients) coeffs.push_back(to_string(c));
    bool same = true;
    for (int l = 0; l <= order && same; ++l) {
      const CAE& sp = spec.terms[l];
      if (!sp.is_rational() || sp.rational != walk.coefficients[l]) {
        same = false;
        if (ok)
          fmt::print("MISMATCH class {} at x^{}: graph {} vs spectral {}\n", mu.to_string(), l,
                     to_string(walk.coefficients[l]), sp.to_string());
        ok = false;
      }
    }
    std::string line;
    for (const auto& c : walk.coefficients) line += (line.empty() ? "" : ", ") + to_string(c);
    fmt::print("  {:<16} {}  [{}]\n", mu.to_string(), same ? "ok" : "MISMATCH", line);
    classes.push_back({{"class", mu.to_string()}, {"coefficients", coeffs}, {"match", same}});
  }
  fmt::print("{}\n", ok ? "PASS" : "FAIL");
  const std::string stem = fmt::format("oracle_beta{}_N{}_o{}", beta, N, order);
  const fs::path dir(out_dir);
  const auto path = (dir / (stem + ".json")).string();
  write_text(path, json{{"beta", beta}, {"N", N}, {"order", order}, {"pass", ok}, {"classes", classes}}.dump(2) + "\n");
  write_manifest(dir / (stem + ".manifest.json"), {{"beta", beta}, {"N", N}, {"order", order}}, 0, {path}, since(t0));
  return ok ? 0 : kExitFail;
}

// ---- jack ----

int cmd_jack(int N, const std::string& alpha_text, const std::string& out) {
  const auto t0 = std::chrono::steady_clock::now();
  ExactScalar alpha;
  try {
    alpha = parse_rational(alpha_text);
  } catch (const std::exception&) {
    throw UsageError("jack: alpha must be a rational such as 2 or 1/2");
  }
  if (N < 1 || N > kMaxReplicaN) throw UsageError(fmt::format("jack: N must be in 1..{}", kMaxReplicaN));
  if (sgn(alpha) <= 0) throw UsageError("jack: alpha must be positive");
  auto table = jack_table(N, alpha);
  const std::string text = jack_table_to_json(*table);
  if (out.empty() || out == "-") {
    std::cout << text << "\n";
    return 0;
  }
  write_text(out, text + "\n");
  fmt::print("wrote {} ({} partitions)\n", out, table->partitions.size());
  write_manifest(out + ".manifest.json", {{"N", N}, {"alpha", to_string(alpha)}}, 0, {out}, since(t0));
  return 0;
}

// ---- simulate ----

struct SimulateArgs {
  std::optional<std::string> protocol, averaging;
  std::optional<int> beta, q, threads, dbm_seed_steps;
  std::optional<double> gamma, dt;
  std::optional<long> samples;
  std::optional<std::uint64_t> seed;
  std::vector<double> x_grid;
  bool extrapolate = false, paper_scale = false, random_qubit = false;
  std::string config, out_dir = ".", out;
};

int cmd_simulate(const SimulateArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  ProtocolConfig cfg = a.paper_scale ? paper_scale_config() : desk_scale_config();
  bool extrapolate = a.extrapolate;
  if (!a.config.empty()) {
    const json j = read_json(a.config);
    try {
      cfg = config_from_json(j, cfg);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    const json& c = j.contains("config") ? j.at("config") : j;
    if (c.contains("extrapolate")) extrapolate = extrapolate || c.at("extrapolate").get<bool>();
  }
  try {
    if (a.protocol) cfg.protocol = parse_protocol(*a.protocol);
    if (a.averaging) cfg.averaging = parse_averaging(*a.averaging);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (a.beta) cfg.beta = *a.beta;
  if (a.q) cfg.q = *a.q;
  if (a.gamma) cfg.gamma = *a.gamma;
  if (a.dt) cfg.dt = *a.dt;
  if (a.samples) cfg.samples = *a.samples;
  if (a.seed) cfg.seed = *a.seed;
  if (a.threads) cfg.threads = *a.threads;
  if (a.dbm_seed_steps) cfg.dbm_seed_steps = *a.dbm_seed_steps;
  if (a.random_qubit) cfg.random_qubit = true;
  if (!a.x_grid.empty()) cfg.x_grid = a.x_grid;
  try {
    cfg.validate();
    for (double x : cfg.x_grid) (void)steps_for_x(cfg, x);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  fmt::print(stderr, "simulate {} beta={} {} q={} samples={} seed={}{}\n", to_string(cfg.protocol), cfg.beta,
             to_string(cfg.averaging), cfg.q, cfg.samples, cfg.seed, extrapolate ? " (q and 2q)" : "");
  std::vector<SimulationRow> rows;
  if (extrapolate) {
    const auto run = run_extrapolated(cfg);
    ProtocolConfig big = cfg;
    big.q = 2 * cfg.q;
    rows = rows_from_estimates(cfg, run.at_q);
    for (auto& r : rows_from_estimates(big, run.at_2q)) rows.push_back(r);
    for (auto& r : rows_from_estimates(cfg, run.extrapolated, "-extrap")) rows.push_back(r);
  } else {
    rows = rows_from_estimates(cfg, run_ensemble(cfg));
  }
  for (const auto& r : rows)
    fmt::print("{:<11} q={:<4} x={:.5f} t={:<6} S1={:.5f}({:.5f}) S2={:.5f}({:.5f})\n", r.protocol, r.q, r.e.x_eff,
               r.e.t_steps, r.e.mean_S1, r.e.S1_err, r.e.mean_S2, r.e.S2_err);

  const std::string stem = fmt::format("sim_{}_beta{}_{}_q{}", to_string(cfg.protocol), cfg.beta,
                                       to_string(cfg.averaging), cfg.q);
  const fs::path csv_path = a.out.empty() ? fs::path(a.out_dir) / (stem + ".csv") : fs::path(a.out);
  std::ostringstream csv;
  write_simulation_csv(csv, rows);
  write_text(csv_path, csv.str());
  json conf = config_to_json(cfg);
  conf["extrapolate"] = extrapolate;
  fs::path manifest = csv_path;
  manifest.replace_extension(".manifest.json");
  write_manifest(manifest, conf, cfg.seed, {csv_path.string()}, since(t0));
  fmt::print(stderr, "wrote {} in {:.1f} s\n", csv_path.string(), since(t0));
  return 0;
}

// ---- compare ----

int cmd_compare(const std::string& series_path, const std::string& sim_path, std::vector<double> window,
                double threshold, bool raw, const std::string& out) {
  const auto t0 = std::chrono::steady_clock::now();
  if (window.size() != 2) throw UsageError("compare: --window takes lo,hi");
  const auto [series, meta] = series_from_json(read_json(series_path));
  std::ifstream in(sim_path);
  if (!in) throw UsageError("cannot open " + sim_path);
  ComparisonReport rep;
  try {
    rep = compare(series, meta, read_simulation_csv(in), window[0], window[1], threshold, raw);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::string table = rep.table();
  std::cout << table;
  if (!out.empty()) {
    fs::path txt = out;
    txt.replace_extension(".txt");
    write_text(out, rep.to_json().dump(2) + "\n");
    write_text(txt, table);
    fs::path manifest = out;
    manifest.replace_extension(".manifest.json");
    write_manifest(manifest,
                   {{"series", series_path}, {"sim", sim_path}, {"window", window}, {"threshold", threshold}, {"raw", raw}},
                   0, {out, txt.string()}, since(t0));
  }
  return rep.pass ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  g_argv.assign(argv, argv + argc);
  CLI::App app{"Purification dynamics: exact scaling series, graph oracle and Monte Carlo"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());

  SeriesArgs sa;
  auto* series = app.add_subcommand("series", "Small-x series of <S_n> in a replica limit");
  series->add_option("--obs", sa.obs, "S1, S2 or Sn")->capture_default_str();
  series->add_option("--n", sa.n, "Renyi index for --obs Sn")->capture_default_str();
  series->add_option("--beta", sa.beta, "1 (orthogonal) or 2 (unitary)")->capture_default_str();
  series->add_option("--limit", sa.limit, "BR (N -> 1) or FM (N -> 0)")->capture_default_str();
  series->add_option("--order", sa.order, "Highest power of x")->capture_default_str();
  series->add_option("--x-min", sa.x_min)->capture_default_str();
  series->add_option("--x-max", sa.x_max)->capture_default_str();
  series->add_option("--x-points", sa.x_points)->capture_default_str();
  series->add_option("--out-dir", sa.out_dir)->capture_default_str();
  series->add_option("--config", sa.config, "JSON config or manifest to replay");

  int o_beta = 1, o_N = 4, o_order = 8;
  std::string o_dir = ".";
  auto* oracle = app.add_subcommand("oracle", "Check spectral moments against walks on the commutant graph");
  oracle->add_option("--beta", o_beta)->capture_default_str();
  oracle->add_option("--N", o_N)->capture_default_str();
  oracle->add_option("--order", o_order)->capture_default_str();
  oracle->add_option("--out-dir", o_dir)->capture_default_str();

  int j_N = 4;
  std::string j_alpha = "2", j_out;
  auto* jack = app.add_subcommand("jack", "Dump the Jack table of degree N");
  jack->add_option("--N", j_N)->capture_default_str();
  jack->add_option("--alpha", j_alpha)->capture_default_str();
  jack->add_option("--out", j_out, "Output JSON file (stdout when omitted)");

  SimulateArgs si;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo ensemble of monitored trajectories");
  sim->add_option("--protocol", si.protocol, "RM, PO, DWM, WM or DBM");
  sim->add_option("--beta", si.beta);
  sim->add_option("--q", si.q);
  sim->add_option("--gamma", si.gamma);
  sim->add_option("--dt", si.dt);
  sim->add_option("--averaging", si.averaging, "BR or FM");
  sim->add_option("--samples", si.samples);
  sim->add_option("--seed", si.seed);
  sim->add_option("--x-grid", si.x_grid, "Comma separated scaling times")->delimiter(',');
  sim->add_option("--threads", si.threads, "0 uses every core");
  sim->add_option("--dbm-seed-steps", si.dbm_seed_steps);
  sim->add_flag("--random-qubit", si.random_qubit, "PO: measure a random qubit each step");
  sim->add_flag("--extrapolate", si.extrapolate, "Also run 2q and extrapolate 2 S(2q) - S(q)");
  sim->add_flag("--paper-scale", si.paper_scale, "q = 256 and 30000 samples as defaults");
  sim->add_option("--config", si.config, "JSON config or manifest to replay");
  sim->add_option("--out-dir", si.out_dir)->capture_default_str();
  sim->add_option("--out", si.out, "CSV path (overrides --out-dir)");

  std::string c_series, c_sim, c_out;
  std::vector<double> c_window = {0.05, 0.2};
  double c_threshold = 3;
  bool c_raw = false;
  auto* cmp = app.add_subcommand("compare", "z-scores of simulation rows against a series");
  cmp->add_option("--series", c_series)->required();
  cmp->add_option("--sim", c_sim)->required();
  cmp->add_option("--window", c_window, "lo,hi")->delimiter(',')->expected(2);
  cmp->add_option("--threshold", c_threshold)->capture_default_str();
  cmp->add_flag("--raw", c_raw, "Use finite-q rows even when extrapolated rows exist");
  cmp->add_option("--out", c_out, "Report JSON (a .txt table is written next to it)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*series) {
      std::set<std::string> given;
      for (const char* k : {"obs", "n", "beta", "limit", "order", "x_min", "x_max", "x_points"}) {
        std::string flag = std::string("--") + k;
        std::replace(flag.begin(), flag.end(), '_', '-');
        if (series->count(flag)) given.insert(k);
      }
      return cmd_series(sa, given);
    }
    if (*oracle) return cmd_oracle(o_beta, o_N, o_order, o_dir);
    if (*jack) return cmd_jack(j_N, j_alpha, j_out);
    if (*sim) return cmd_simulate(si);
    if (*cmp) return cmd_compare(c_series, c_sim, c_window, c_threshold, c_raw, c_out);
  } catch (const UsageError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const json::exception& e) {
    fmt::print(stderr, "error: bad JSON input: {}\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitFail;
  }
  return kExitUsage;
}
