#include "purif/report.hpp"

#include <Eigen/Core>
#include <fmt/format.h>
#include <gmp.h>
#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace purif {

using nlohmann::json;

namespace {

json cae_to_json(const CAE& c) {
  return {{"rational", to_string(c.rational)},
          {"gammaE", to_string(c.gammaE)},
          {"E1", to_string(c.E1)},
          {"text", c.to_string()},
          {"value", c.value()}};
}

CAE cae_from_json(const json& j) {
  return CAE::make(parse_rational(j.at("rational").get<std::string>()),
                   parse_rational(j.at("gammaE").get<std::string>()), parse_rational(j.at("E1").get<std::string>()));
}

std::string format_double(double v) { return std::isfinite(v) ? fmt::format("{:.17g}", v) : "nan"; }

double parse_double(const std::string& s) {
  if (s == "nan" || s == "NaN") return NAN;
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("csv: bad number '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

json series_to_json(const ScalingSeries& s, const SeriesMeta& meta) {
  json terms = json::array();
  for (const auto& t : s.terms) terms.push_back(cae_to_json(t));
  return {{"observable", meta.observable},
          {"n", meta.n},
          {"beta", meta.beta},
          {"replica_limit", meta.limit},
          {"order", meta.order},
          {"log_coeff", cae_to_json(s.log_weight)},
          {"const_log_weight", to_string(s.const_log_weight)},
          {"const_log_arg", to_string(s.const_log_arg)},
          {"coeffs", terms}};
}

std::pair<ScalingSeries, SeriesMeta> series_from_json(const json& j) {
  SeriesMeta m;
  m.observable = j.at("observable").get<std::string>();
  m.n = j.at("n").get<int>();
  m.beta = j.at("beta").get<int>();
  m.limit = j.at("replica_limit").get<std::string>();
  m.order = j.at("order").get<int>();
  ScalingSeries s;
  s.log_weight = cae_from_json(j.at("log_coeff"));
  s.const_log_weight = parse_rational(j.at("const_log_weight").get<std::string>());
  s.const_log_arg = parse_rational(j.at("const_log_arg").get<std::string>());
  for (const auto& t : j.at("coeffs")) s.terms.push_back(cae_from_json(t));
  return {s, m};
}

std::string simulation_csv_header() {
  return "protocol,beta,averaging,q,x,t_steps,S1,S1_err,S2,S2_err,S1_shifted,S2_shifted,flagged_fraction";
}

void write_simulation_csv(std::ostream& out, const std::vector<SimulationRow>& rows) {
  out << simulation_csv_header() << "\n";
  for (const auto& r : rows) {
    const auto& e = r.e;
    out << r.protocol << ',' << r.beta << ',' << r.averaging << ',' << r.q << ',' << format_double(e.x_eff) << ','
        << e.t_steps << ',' << format_double(e.mean_S1) << ',' << format_double(e.S1_err) << ','
        << format_double(e.mean_S2) << ',' << format_double(e.S2_err) << ',' << format_double(e.S1_shifted) << ','
        << format_double(e.S2_shifted) << ',' << format_double(e.flagged_fraction) << "\n";
  }
}

std::vector<SimulationRow> read_simulation_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != simulation_csv_header()) throw std::invalid_argument("csv: unexpected header '" + line + "'");
  std::vector<SimulationRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 13) throw std::invalid_argument(fmt::format("csv: line {} has {} fields, expected 13", lineno, f.size()));
    SimulationRow r;
    r.protocol = f[0];
    r.beta = std::stoi(f[1]);
    r.averaging = f[2];
    r.q = std::stoi(f[3]);
    r.e.x = r.e.x_eff = parse_double(f[4]);
    r.e.t_steps = std::stol(f[5]);
    r.e.mean_S1 = parse_double(f[6]);
    r.e.S1_err = parse_double(f[7]);
    r.e.mean_S2 = parse_double(f[8]);
    r.e.S2_err = parse_double(f[9]);
    r.e.S1_shifted = parse_double(f[10]);
    r.e.S2_shifted = parse_double(f[11]);
    r.e.flagged_fraction = parse_double(f[12]);
    rows.push_back(r);
  }
  return rows;
}

std::vector<SimulationRow> rows_from_estimates(const ProtocolConfig& cfg, const std::vector<EnsembleEstimate>& est,
                                               const std::string& suffix) {
  std::vector<SimulationRow> rows;
  for (const auto& e : est) rows.push_back({to_string(cfg.protocol) + suffix, cfg.beta, to_string(cfg.averaging), cfg.q, e});
  return rows;
}

json ComparisonReport::to_json() const {
  json r = json::array();
  for (const auto& row : rows)
    r.push_back({{"x", row.x},
                 {"t_steps", row.t_steps},
                 {"theory", row.theory},
                 {"sim", row.sim},
                 {"sigma", row.sigma},
                 {"z", row.z}});
  return {{"observable", observable}, {"beta", beta},         {"limit", limit},       {"window", {window_lo, window_hi}},
          {"threshold", threshold},   {"rows", r},            {"max_abs_z", max_abs_z}, {"pass", pass},
          {"warnings", warnings}};
}

std::string ComparisonReport::table() const {
  std::string s = fmt::format("{} beta={} {}  window [{}, {}]  threshold {}\n", observable, beta, limit, window_lo,
                              window_hi, threshold);
  s += fmt::format("{:>10} {:>6} {:>12} {:>12} {:>10} {:>8}\n", "x", "t", "theory", "sim", "sigma", "z");
  for (const auto& r : rows)
    s += fmt::format("{:>10.5f} {:>6} {:>12.6f} {:>12.6f} {:>10.6f} {:>8.2f}\n", r.x, r.t_steps, r.theory, r.sim, r.sigma,
                     r.z);
  s += fmt::format("max |z| = {:.2f}  {}\n", max_abs_z, pass ? "PASS" : "FAIL");
  for (const auto& w : warnings) s += "warning: " + w + "\n";
  return s;
}

ComparisonReport compare(const ScalingSeries& series, const SeriesMeta& meta, std::vector<SimulationRow> rows,
                         double lo, double hi, double threshold, bool use_raw) {
  if (!(lo < hi)) throw std::invalid_argument("compare: empty window");
  if (meta.observable != "S1" && meta.observable != "S2")
    throw std::invalid_argument("compare: simulations report S1 and S2 only, not " + meta.observable);
  const std::string want_avg = meta.limit;
  const bool any_extrap = std::any_of(rows.begin(), rows.end(), [](const SimulationRow& r) {
    return r.protocol.size() > 7 && r.protocol.compare(r.protocol.size() - 7, 7, "-extrap") == 0;
  });
  std::vector<SimulationRow> used;
  for (auto& r : rows) {
    if (r.beta != meta.beta)
      throw std::invalid_argument(fmt::format("compare: metadata mismatch, simulation beta {} vs series beta {}", r.beta,
                                              meta.beta));
    if (r.averaging != want_avg)
      throw std::invalid_argument(fmt::format("compare: metadata mismatch, simulation averaging {} vs series limit {}",
                                              r.averaging, meta.limit));
    const bool is_extrap = r.protocol.size() > 7 && r.protocol.compare(r.protocol.size() - 7, 7, "-extrap") == 0;
    if (any_extrap && !use_raw && !is_extrap) continue;
    if (use_raw && is_extrap) continue;
    used.push_back(r);
  }
  std::sort(used.begin(), used.end(), [](const SimulationRow& a, const SimulationRow& b) {
    return std::tie(a.e.x_eff, a.q, a.protocol) < std::tie(b.e.x_eff, b.q, b.protocol);
  });
  ComparisonReport rep;
  rep.observable = meta.observable;
  rep.beta = meta.beta;
  rep.limit = meta.limit;
  rep.window_lo = lo;
  rep.window_hi = hi;
  rep.threshold = threshold;
  for (const auto& r : used) {
    const double x = r.e.x_eff;
    const double slack = r.e.t_steps > 0 ? x / (2.0 * r.e.t_steps) : 0;
    if (x + slack < lo || x - slack > hi || !(x > 0)) continue;
    ComparisonRow c;
    c.x = x;
    c.t_steps = r.e.t_steps;
    c.theory = series.evaluate(x);
    c.sim = meta.observable == "S1" ? r.e.mean_S1 : r.e.mean_S2;
    c.sigma = meta.observable == "S1" ? r.e.S1_err : r.e.S2_err;
    c.z = (c.sim - c.theory) / c.sigma;
    rep.max_abs_z = std::max(rep.max_abs_z, std::abs(c.z));
    rep.rows.push_back(c);
  }
  rep.pass = !rep.rows.empty() && std::all_of(rep.rows.begin(), rep.rows.end(), [&](const ComparisonRow& c) {
    return std::isfinite(c.z) && std::abs(c.z) <= threshold;
  });
  if (rep.rows.empty()) rep.warnings.push_back("no simulation rows inside the window");
  if (hi > kSeriesTrustedUpTo)
    rep.warnings.push_back(fmt::format("series truncation window exceeded (upper edge {} > {})", hi, kSeriesTrustedUpTo));
  return rep;
}

json config_to_json(const ProtocolConfig& c) {
  return {{"protocol", to_string(c.protocol)},
          {"beta", c.beta},
          {"q", c.q},
          {"gamma", c.gamma},
          {"dt", c.dt},
          {"averaging", to_string(c.averaging)},
          {"samples", c.samples},
          {"x_grid", c.x_grid},
          {"seed", c.seed},
          {"random_qubit", c.random_qubit},
          {"dbm_seed_steps", c.dbm_seed_steps},
          {"threads", c.threads}};
}

ProtocolConfig config_from_json(const json& j, ProtocolConfig c) {
  if (j.contains("config") && j.at("config").is_object()) return config_from_json(j.at("config"), c);
  static const std::vector<std::string> known = {"protocol", "beta", "q", "gamma", "dt", "averaging",
                                                 "samples", "x_grid", "seed", "random_qubit", "dbm_seed_steps",
                                                 "threads", "extrapolate"};
  for (const auto& [k, v] : j.items())
    if (std::find(known.begin(), known.end(), k) == known.end()) throw std::invalid_argument("config: unknown key '" + k + "'");
  if (j.contains("protocol")) c.protocol = parse_protocol(j.at("protocol").get<std::string>());
  if (j.contains("beta")) c.beta = j.at("beta").get<int>();
  if (j.contains("q")) c.q = j.at("q").get<int>();
  if (j.contains("gamma")) c.gamma = j.at("gamma").get<double>();
  if (j.contains("dt")) c.dt = j.at("dt").get<double>();
  if (j.contains("averaging")) c.averaging = parse_averaging(j.at("averaging").get<std::string>());
  if (j.contains("samples")) c.samples = j.at("samples").get<long>();
  if (j.contains("x_grid")) c.x_grid = j.at("x_grid").get<std::vector<double>>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("random_qubit")) c.random_qubit = j.at("random_qubit").get<bool>();
  if (j.contains("dbm_seed_steps")) c.dbm_seed_steps = j.at("dbm_seed_steps").get<int>();
  if (j.contains("threads")) c.threads = j.at("threads").get<int>();
  return c;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256: digest failed");
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("sha256_file: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return sha256_hex(ss.str());
}

json RunManifest::to_json() const {
  std::vector<std::pair<std::string, std::string>> hashed;
  for (const auto& p : outputs) hashed.emplace_back(p, sha256_file(p));
  std::sort(hashed.begin(), hashed.end());
  std::string all;
  json files = json::array();
  for (const auto& [p, h] : hashed) {
    files.push_back({{"path", p}, {"sha256", h}});
    // File names only, so a replay into another directory hashes the same.
    all += std::filesystem::path(p).filename().string() + ' ' + h + '\n';
  }
  return {{"command_line", command_line},
          {"config", config},
          {"versions", version_string()},
          {"seed", seed},
          {"outputs", files},
          {"wall_clock_seconds", wall_clock_seconds},
          {"content_hash", sha256_hex(all)}};
}

std::string version_string() {
  return fmt::format("purif 1.0.0; gmp {}; eigen {}.{}.{}; fmt {}", gmp_version, EIGEN_WORLD_VERSION,
                     EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION, FMT_VERSION);
}

}  // namespace purif
