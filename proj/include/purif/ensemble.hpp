#pragma once

#include "purif/protocols.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace purif {

struct ProtocolConfig {
  Protocol protocol = Protocol::RM;
  int beta = 1;
  int q = 64;
  // Measurement rate; DWM uses only the product gamma * dt.
  double gamma = 1.0;
  // Time step: 1 for RM/PO/DWM, the Euler step for WM/DBM.
  double dt = 1.0;
  Averaging averaging = Averaging::FM;
  long samples = 10000;
  std::vector<double> x_grid = {0.02, 0.05, 0.1, 0.15, 0.2, 0.3};
  std::uint64_t seed = 1;
  // PO only.
  bool random_qubit = false;
  // DBM only: unnormalized matrix steps taken before the eigenvalue flow.
  int dbm_seed_steps = 10;
  // 0 selects std::thread::hardware_concurrency().
  int threads = 0;

  // Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

ProtocolConfig desk_scale_config();
ProtocolConfig paper_scale_config();

// Steps per trajectory for scaling time x: round(x t_P / dt) with t_P = q dt (RM, PO with the
// effective q), q dt / f(gamma dt) (DWM), q / (4 gamma) (WM, DBM).
long steps_for_x(const ProtocolConfig& cfg, double x);
// Scaling time actually realized by t steps.
double x_for_steps(const ProtocolConfig& cfg, long t);

// Per-trajectory observables at every checkpoint, [trajectory][checkpoint].
struct TrajectoryEnsemble {
  ProtocolConfig config;
  std::vector<long> t_steps;
  std::vector<double> x_nominal;
  std::vector<double> x_eff;
  std::vector<std::vector<double>> S1, S2, log_weight;
  std::vector<std::vector<char>> flagged;

  long size() const { return static_cast<long>(S1.size()); }
};

TrajectoryEnsemble simulate(const ProtocolConfig& cfg);

struct EnsembleEstimate {
  double x = 0;
  double x_eff = 0;
  long t_steps = 0;
  double mean_S1 = 0, S1_err = 0;
  double mean_S2 = 0, S2_err = 0;
  // S1 - (1 - gamma_E) + ln x_eff and S2 + ln x_eff.
  double S1_shifted = 0, S2_shifted = 0;
  long n_samples = 0;
  double flagged_fraction = 0;
};

// True when BR is realized by reweighting with Tr rho_check rather than by outcome sampling.
bool reweighted_born(Protocol p);

struct WeightedMean {
  double mean = 0;
  double err = 0;
};
WeightedMean plain_mean(const std::vector<double>& v);
// Ratio estimator sum w v / sum w with w = exp(log_w); delta-method error.
WeightedMean reweighted_mean(const std::vector<double>& v, const std::vector<double>& log_w);

EnsembleEstimate estimate(const TrajectoryEnsemble& ens, std::size_t checkpoint);

inline constexpr double kMaxFlaggedFraction = 0.01;

// Simulation plus estimation at every grid point; throws if more than 1% of trajectories are flagged.
std::vector<EnsembleEstimate> run_ensemble(const ProtocolConfig& cfg);

// 2 E(2t) - E(t), requiring the same realized x.
EnsembleEstimate extrapolate(const EnsembleEstimate& e_t, const EnsembleEstimate& e_2t);

// Runs cfg at q and 2q (same x grid, so twice the steps) and extrapolates row by row.
struct ExtrapolatedRun {
  std::vector<EnsembleEstimate> at_q, at_2q, extrapolated;
};
ExtrapolatedRun run_extrapolated(const ProtocolConfig& cfg);

}  // namespace purif
