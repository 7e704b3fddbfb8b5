#include "purif/ensemble.hpp"

#include "purif/constants.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace purif {

void ProtocolConfig::validate() const {
  if (beta != 1 && beta != 2) throw std::invalid_argument("config: beta must be 1 or 2");
  if (protocol == Protocol::PO && beta != 1) throw std::invalid_argument("config: PO is beta = 1 by construction");
  if (q < 1) throw std::invalid_argument("config: q must be positive");
  if (protocol == Protocol::PO && (q < 2 || (q & (q - 1)) != 0))
    throw std::invalid_argument("config: PO needs q a power of two");
  if (!(dt > 0)) throw std::invalid_argument("config: dt must be positive");
  if (!(gamma > 0) && (protocol == Protocol::DWM || protocol == Protocol::WM || protocol == Protocol::DBM))
    throw std::invalid_argument("config: gamma must be positive");
  if (protocol == Protocol::DWM && !(dwm_purity_gain(gamma * dt) > 0))
    throw std::invalid_argument("config: f(gamma dt) must be positive");
  if (samples < 1) throw std::invalid_argument("config: samples must be positive");
  if (x_grid.empty()) throw std::invalid_argument("config: empty x grid");
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (!(x_grid[i] >= 0)) throw std::invalid_argument("config: x grid must be non-negative");
    if (i && !(x_grid[i] > x_grid[i - 1])) throw std::invalid_argument("config: x grid must be strictly ascending");
  }
  if (dbm_seed_steps < 1) throw std::invalid_argument("config: dbm_seed_steps must be positive");
  if (threads < 0) throw std::invalid_argument("config: threads must be non-negative");
}

ProtocolConfig desk_scale_config() { return ProtocolConfig{}; }

ProtocolConfig paper_scale_config() {
  ProtocolConfig c;
  c.q = 256;
  c.samples = 30000;
  return c;
}

namespace {

// Steps per unit of x.
double steps_per_x(const ProtocolConfig& cfg) {
  switch (cfg.protocol) {
    case Protocol::RM: return cfg.q;
    case Protocol::PO: return po_effective_q(cfg.q);
    case Protocol::DWM: return cfg.q / dwm_purity_gain(cfg.gamma * cfg.dt);
    case Protocol::WM:
    case Protocol::DBM: return cfg.q / (4 * cfg.gamma * cfg.dt);
  }
  return 0;
}

}  // namespace

long steps_for_x(const ProtocolConfig& cfg, double x) { return std::lround(x * steps_per_x(cfg)); }

double x_for_steps(const ProtocolConfig& cfg, long t) { return t / steps_per_x(cfg); }

bool reweighted_born(Protocol p) { return p == Protocol::RM || p == Protocol::DBM; }

namespace {

TrajectoryState initial_state(const ProtocolConfig& cfg) {
  switch (cfg.protocol) {
    case Protocol::RM: return TrajectoryState::rm_initial(cfg.q, cfg.beta);
    case Protocol::DWM: return TrajectoryState::spectrum_initial(cfg.q, cfg.beta);
    case Protocol::PO:
    case Protocol::WM:
    case Protocol::DBM: return TrajectoryState::density_initial(cfg.q, cfg.beta);
  }
  throw std::logic_error("initial_state");
}

void advance(const ProtocolConfig& cfg, TrajectoryState& s, Rng& rng) {
  switch (cfg.protocol) {
    case Protocol::RM: step_rm(s, rng); return;
    case Protocol::PO: step_po(s, {cfg.averaging, cfg.random_qubit}, rng); return;
    case Protocol::DWM: step_dwm(s, cfg.gamma * cfg.dt, cfg.averaging, rng); return;
    case Protocol::WM: step_wm_euler(s, cfg.gamma, cfg.dt, cfg.averaging, rng); return;
    case Protocol::DBM:
      if (s.steps < cfg.dbm_seed_steps) {
        step_unnormalized_matrix(s, cfg.gamma, cfg.dt, rng);
        if (s.steps == cfg.dbm_seed_steps) to_spectrum(s);
      } else {
        step_dbm(s, cfg.gamma, cfg.dt, rng);
      }
      return;
  }
}

// Tolerance on negative eigenvalues of dense states before a trajectory counts as broken.
constexpr double kNegativeTolerance = 1e-10;

}  // namespace

TrajectoryEnsemble simulate(const ProtocolConfig& cfg) {
  cfg.validate();
  TrajectoryEnsemble ens;
  ens.config = cfg;
  for (double x : cfg.x_grid) {
    ens.x_nominal.push_back(x);
    const long t = steps_for_x(cfg, x);
    ens.t_steps.push_back(t);
    ens.x_eff.push_back(x_for_steps(cfg, t));
  }
  for (std::size_t i = 1; i < ens.t_steps.size(); ++i)
    if (ens.t_steps[i] <= ens.t_steps[i - 1])
      throw std::invalid_argument(fmt::format("config: x = {} and x = {} round to the same step count {}", cfg.x_grid[i - 1],
                                              cfg.x_grid[i], ens.t_steps[i]));
  const std::size_t C = ens.t_steps.size();
  const long n = cfg.samples;
  ens.S1.assign(n, std::vector<double>(C));
  ens.S2 = ens.S1;
  ens.log_weight = ens.S1;
  ens.flagged.assign(n, std::vector<char>(C, 0));

  auto run_one = [&](long i) {
    Rng rng = make_stream(cfg.seed, static_cast<std::uint64_t>(i));
    TrajectoryState s = initial_state(cfg);
    std::size_t c = 0;
    while (c < C) {
      if (s.steps == ens.t_steps[c]) {
        bool bad = s.flagged;
        double s1 = NAN, s2 = NAN;
        if (!bad) {
          const Eigen::VectorXd raw = raw_spectrum(s);
          if (raw.minCoeff() < -kNegativeTolerance || !raw.allFinite()) {
            bad = s.flagged = true;
          } else {
            Eigen::VectorXd p = raw.cwiseMax(0.0);
            p /= p.sum();
            s1 = vn_entropy(p);
            s2 = renyi_entropy(p, 2);
          }
        }
        ens.S1[i][c] = s1;
        ens.S2[i][c] = s2;
        ens.log_weight[i][c] = s.log_trace;
        ens.flagged[i][c] = bad;
        ++c;
        continue;
      }
      if (s.flagged) {
        s.steps = ens.t_steps[c];
        continue;
      }
      advance(cfg, s, rng);
    }
  };

  int workers = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = static_cast<int>(std::clamp<long>(workers, 1, n));
  std::atomic<long> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (long i; (i = next.fetch_add(1)) < n;) {
      try {
        run_one(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return ens;
}

WeightedMean plain_mean(const std::vector<double>& v) {
  WeightedMean r;
  if (v.empty()) return {NAN, NAN};
  for (double a : v) r.mean += a;
  r.mean /= v.size();
  if (v.size() < 2) return {r.mean, NAN};
  double ss = 0;
  for (double a : v) ss += (a - r.mean) * (a - r.mean);
  r.err = std::sqrt(ss / (v.size() - 1) / v.size());
  return r;
}

WeightedMean reweighted_mean(const std::vector<double>& v, const std::vector<double>& log_w) {
  if (v.size() != log_w.size()) throw std::invalid_argument("reweighted_mean: size mismatch");
  if (v.empty()) return {NAN, NAN};
  const double top = *std::max_element(log_w.begin(), log_w.end());
  double W = 0, WV = 0;
  std::vector<double> w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    w[i] = std::exp(log_w[i] - top);
    W += w[i];
    WV += w[i] * v[i];
  }
  const double R = WV / W;
  double var = 0;
  for (std::size_t i = 0; i < v.size(); ++i) var += w[i] * w[i] * (v[i] - R) * (v[i] - R);
  return {R, std::sqrt(var) / W};
}

EnsembleEstimate estimate(const TrajectoryEnsemble& ens, std::size_t c) {
  if (c >= ens.t_steps.size()) throw std::out_of_range("estimate: checkpoint out of range");
  std::vector<double> s1, s2, lw;
  long bad = 0;
  for (long i = 0; i < ens.size(); ++i) {
    if (ens.flagged[i][c]) {
      ++bad;
      continue;
    }
    s1.push_back(ens.S1[i][c]);
    s2.push_back(ens.S2[i][c]);
    lw.push_back(ens.log_weight[i][c]);
  }
  const bool reweight = ens.config.averaging == Averaging::BR && reweighted_born(ens.config.protocol);
  const WeightedMean a = reweight ? reweighted_mean(s1, lw) : plain_mean(s1);
  const WeightedMean b = reweight ? reweighted_mean(s2, lw) : plain_mean(s2);
  EnsembleEstimate e;
  e.x = ens.x_nominal[c];
  e.x_eff = ens.x_eff[c];
  e.t_steps = ens.t_steps[c];
  e.mean_S1 = a.mean;
  e.S1_err = a.err;
  e.mean_S2 = b.mean;
  e.S2_err = b.err;
  const double lx = e.x_eff > 0 ? std::log(e.x_eff) : NAN;
  e.S1_shifted = e.mean_S1 - (1 - kEulerGamma) + lx;
  e.S2_shifted = e.mean_S2 + lx;
  e.n_samples = static_cast<long>(s1.size());
  e.flagged_fraction = ens.size() ? static_cast<double>(bad) / ens.size() : 0;
  return e;
}

std::vector<EnsembleEstimate> run_ensemble(const ProtocolConfig& cfg) {
  const TrajectoryEnsemble ens = simulate(cfg);
  std::vector<EnsembleEstimate> out;
  for (std::size_t c = 0; c < ens.t_steps.size(); ++c) {
    out.push_back(estimate(ens, c));
    if (out.back().flagged_fraction > kMaxFlaggedFraction)
      throw std::runtime_error(fmt::format("run_ensemble: {:.2f}% of trajectories flagged at x = {} (limit {}%)",
                                           100 * out.back().flagged_fraction, out.back().x, 100 * kMaxFlaggedFraction));
  }
  return out;
}

EnsembleEstimate extrapolate(const EnsembleEstimate& a, const EnsembleEstimate& b) {
  if (std::abs(a.x_eff - b.x_eff) > 1e-12 * std::max(1.0, std::abs(a.x_eff)))
    throw std::invalid_argument(fmt::format("extrapolate: realized x differ ({} vs {})", a.x_eff, b.x_eff));
  EnsembleEstimate e = b;
  e.x = a.x;
  auto mix = [](double u, double v) { return 2 * v - u; };
  auto err = [](double su, double sv) { return std::sqrt(4 * sv * sv + su * su); };
  e.mean_S1 = mix(a.mean_S1, b.mean_S1);
  e.mean_S2 = mix(a.mean_S2, b.mean_S2);
  e.S1_err = err(a.S1_err, b.S1_err);
  e.S2_err = err(a.S2_err, b.S2_err);
  e.S1_shifted = mix(a.S1_shifted, b.S1_shifted);
  e.S2_shifted = mix(a.S2_shifted, b.S2_shifted);
  e.n_samples = std::min(a.n_samples, b.n_samples);
  e.flagged_fraction = std::max(a.flagged_fraction, b.flagged_fraction);
  return e;
}

ExtrapolatedRun run_extrapolated(const ProtocolConfig& cfg) {
  ExtrapolatedRun r;
  r.at_q = run_ensemble(cfg);
  ProtocolConfig big = cfg;
  big.q = 2 * cfg.q;
  // Realized x of the first run, so the second run takes exactly twice the steps.
  big.x_grid.clear();
  for (const auto& e : r.at_q) big.x_grid.push_back(e.x_eff);
  big.seed = splitmix64(cfg.seed ^ 0x5bd1e995ULL);
  r.at_2q = run_ensemble(big);
  for (std::size_t i = 0; i < r.at_q.size(); ++i) {
    r.at_2q[i].x = r.at_q[i].x;
    r.extrapolated.push_back(extrapolate(r.at_q[i], r.at_2q[i]));
  }
  return r;
}

}  // namespace purif
