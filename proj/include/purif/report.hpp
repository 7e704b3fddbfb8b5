#pragma once

#include "purif/constants.hpp"
#include "purif/ensemble.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace purif {

struct SeriesMeta {
  // "S1" (von Neumann) or "S2" / "Sn" with n >= 2.
  std::string observable = "S2";
  int n = 2;
  int beta = 1;
  std::string limit = "BR";
  int order = 0;
};

nlohmann::json series_to_json(const ScalingSeries& s, const SeriesMeta& meta);
std::pair<ScalingSeries, SeriesMeta> series_from_json(const nlohmann::json& j);

// One CSV row of a simulation output.
struct SimulationRow {
  std::string protocol;
  int beta = 1;
  std::string averaging;
  int q = 0;
  EnsembleEstimate e;
};

std::string simulation_csv_header();
void write_simulation_csv(std::ostream& out, const std::vector<SimulationRow>& rows);
std::vector<SimulationRow> read_simulation_csv(std::istream& in);
std::vector<SimulationRow> rows_from_estimates(const ProtocolConfig& cfg, const std::vector<EnsembleEstimate>& est,
                                               const std::string& suffix = "");

struct ComparisonRow {
  double x = 0;
  long t_steps = 0;
  double theory = 0;
  double sim = 0;
  double sigma = 0;
  double z = 0;
};

struct ComparisonReport {
  std::string observable;
  int beta = 1;
  std::string limit;
  double window_lo = 0.05, window_hi = 0.2;
  double threshold = 3;
  std::vector<ComparisonRow> rows;
  double max_abs_z = 0;
  bool pass = false;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
  std::string table() const;
};

// Upper edge of the window inside which the truncated series is trusted.
inline constexpr double kSeriesTrustedUpTo = 0.2;

// Compares rows against the series. Rows with a '-extrap' protocol suffix are used when present
// (unless use_raw), otherwise the raw rows; rows are sorted by x first so input order is irrelevant.
// A row is inside the window when x, up to half a step of rounding (x / (2 t)), lies in it.
// Throws std::invalid_argument on observable, beta or averaging mismatch.
ComparisonReport compare(const ScalingSeries& series, const SeriesMeta& meta, std::vector<SimulationRow> rows,
                         double window_lo, double window_hi, double threshold, bool use_raw = false);

nlohmann::json config_to_json(const ProtocolConfig& cfg);
// Missing keys keep the defaults of base. Accepts a bare config or a run manifest holding one.
ProtocolConfig config_from_json(const nlohmann::json& j, ProtocolConfig base = {});

std::string sha256_hex(const std::string& data);
std::string sha256_file(const std::string& path);

struct RunManifest {
  std::vector<std::string> command_line;
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
  double wall_clock_seconds = 0;

  // Per-output SHA-256 and a content hash over the sorted (path, hash) list.
  nlohmann::json to_json() const;
};

std::string version_string();

}  // namespace purif
