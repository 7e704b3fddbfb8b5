#pragma once

#include "purif/sampling.hpp"

#include <string>

namespace purif {

enum class Protocol { RM, PO, DWM, WM, DBM };
enum class Averaging { BR, FM };

std::string to_string(Protocol p);
std::string to_string(Averaging a);
Protocol parse_protocol(const std::string& s);
Averaging parse_averaging(const std::string& s);

// One trajectory. Which representation is live depends on the protocol:
//   RM: factor (real or complex) with rho_check ~ M M^dagger;
//   PO, WM: dense normalized density matrix (real or complex);
//   DWM, DBM: normalized spectrum only.
struct TrajectoryState {
  int q = 1;
  int beta = 1;
  Eigen::MatrixXd real;
  Eigen::MatrixXcd cplx;
  Eigen::VectorXd spectrum;
  // log Tr rho_check accumulated over renormalizations.
  double log_trace = 0;
  bool flagged = false;
  long steps = 0;
  // True when real/cplx hold the RM factor M rather than rho itself.
  bool factor = false;

  static TrajectoryState rm_initial(int q, int beta);
  static TrajectoryState density_initial(int q, int beta);
  static TrajectoryState pure_initial(int q);
  static TrajectoryState spectrum_initial(int q, int beta);
};

// Eigenvalues of the normalized state (not clipped); for RM these are those of M M^dagger / Tr.
Eigen::VectorXd raw_spectrum(const TrajectoryState& s);
// Eigenvalues of the normalized state, clipped at zero and summing to 1.
Eigen::VectorXd normalized_spectrum(const TrajectoryState& s);

double vn_entropy(const Eigen::VectorXd& p);
double renyi_entropy(const Eigen::VectorXd& p, int n);
double purity(const Eigen::VectorXd& p);

// Steps between QR re-orthogonalizations of the Ginibre product.
inline constexpr int kReorthogonalizeEvery = 32;

void step_rm(TrajectoryState& s, Rng& rng);

struct PoOptions {
  Averaging averaging = Averaging::BR;
  bool random_qubit = false;
};
// q must be a power of two; the measured projector has rank q/2.
void step_po(TrajectoryState& s, const PoOptions& opt, Rng& rng);
// (1/q_u - 1/q_tot)^{-1} with q_u = q_tot / 2.
double po_effective_q(int q_tot);

// f(u) = 1/2 - J_1(8 sqrt u)/(8 sqrt u); purity gain per step is f/q.
double dwm_purity_gain(double gamma_dt);
// Solves f(u) = target for u on the first increasing branch.
double dwm_gamma_dt_for_gain(double target);
// Born probability of the outcome actually taken is returned.
double step_dwm(TrajectoryState& s, double gamma_dt, Averaging averaging, Rng& rng);

// Kraus: rho -> K rho K^dagger / Tr with K = (1 - G dt (1 + (2 - beta)/(beta q)) / 2) + sqrt(G) dO, where
//   dO is shifted by (4/beta) sqrt(G) dt rho / q under BR. Increments agree with the normalized
//   equations to O(dt) and positivity is exact.
// Literal: forward Euler of the normalized equations as written, with the FM drift
//   -G dt 8/(beta q) (rho^2 - rho Tr rho^2); negative eigenvalues appear once the smallest
//   eigenvalue falls below the O(G dt / q) noise floor.
enum class WmScheme { Kraus, Literal };
void step_wm_euler(TrajectoryState& s, double gamma, double dt, Averaging averaging, Rng& rng,
                   WmScheme scheme = WmScheme::Kraus);
// Kraus-form step of the unnormalized matrix, dr = -G dt (r - Tr r / q) + sqrt(G) {dO, r} to O(dt);
// used to lift the degenerate initial spectrum before the eigenvalue flow starts.
void step_unnormalized_matrix(TrajectoryState& s, double gamma, double dt, Rng& rng);

// Eigenvalue flow of rho_check:
// dy = (4G/q) dt sum y y'/(y - y') + sqrt(8G/(beta q)) y dB, integrated in log y.
// Drift-implicit Euler: the repulsion is evaluated at the new point, which keeps levels ordered.
// If the implicit solve fails the step is halved through the Brownian bridge (up to max_halvings
// times) and the trajectory is flagged when that does not help.
void step_dbm(TrajectoryState& s, double gamma, double dt, Rng& rng, int max_halvings = 8);
// Replaces a dense state by its spectrum so that step_dbm can continue it; used after a few
// step_unnormalized_matrix steps have lifted the degenerate maximally mixed start.
// Flags the trajectory unless the spectrum is strictly positive and non-degenerate.
void to_spectrum(TrajectoryState& s);

}  // namespace purif
