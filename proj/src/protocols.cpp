#include "purif/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace purif {

std::string to_string(Protocol p) {
  switch (p) {
    case Protocol::RM: return "RM";
    case Protocol::PO: return "PO";
    case Protocol::DWM: return "DWM";
    case Protocol::WM: return "WM";
    case Protocol::DBM: return "DBM";
  }
  return "?";
}

std::string to_string(Averaging a) { return a == Averaging::BR ? "BR" : "FM"; }

Protocol parse_protocol(const std::string& s) {
  for (Protocol p : {Protocol::RM, Protocol::PO, Protocol::DWM, Protocol::WM, Protocol::DBM})
    if (to_string(p) == s) return p;
  throw std::invalid_argument("unknown protocol '" + s + "' (RM, PO, DWM, WM, DBM)");
}

Averaging parse_averaging(const std::string& s) {
  if (s == "BR") return Averaging::BR;
  if (s == "FM") return Averaging::FM;
  throw std::invalid_argument("unknown averaging '" + s + "' (BR, FM)");
}

namespace {

void check_beta(int beta) {
  if (beta != 1 && beta != 2) throw std::invalid_argument("beta must be 1 or 2");
}

}  // namespace

TrajectoryState TrajectoryState::rm_initial(int q, int beta) {
  check_beta(beta);
  TrajectoryState s;
  s.q = q;
  s.beta = beta;
  s.factor = true;
  const double a = 1.0 / std::sqrt(static_cast<double>(q));
  if (beta == 1) s.real = Eigen::MatrixXd::Identity(q, q) * a;
  else s.cplx = Eigen::MatrixXcd::Identity(q, q) * a;
  return s;
}

TrajectoryState TrajectoryState::density_initial(int q, int beta) {
  check_beta(beta);
  TrajectoryState s;
  s.q = q;
  s.beta = beta;
  if (beta == 1) s.real = Eigen::MatrixXd::Identity(q, q) / q;
  else s.cplx = Eigen::MatrixXcd::Identity(q, q) / static_cast<double>(q);
  return s;
}

TrajectoryState TrajectoryState::pure_initial(int q) {
  TrajectoryState s;
  s.q = q;
  s.real = Eigen::MatrixXd::Zero(q, q);
  s.real(0, 0) = 1;
  return s;
}

TrajectoryState TrajectoryState::spectrum_initial(int q, int beta) {
  check_beta(beta);
  TrajectoryState s;
  s.q = q;
  s.beta = beta;
  s.spectrum = Eigen::VectorXd::Constant(q, 1.0 / q);
  return s;
}

Eigen::VectorXd raw_spectrum(const TrajectoryState& s) {
  Eigen::VectorXd ev;
  if (s.spectrum.size() > 0) {
    ev = s.spectrum;
  } else if (s.real.size() > 0) {
    Eigen::MatrixXd rho = s.factor ? Eigen::MatrixXd(s.real * s.real.transpose()) : s.real;
    ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(rho, Eigen::EigenvaluesOnly).eigenvalues();
  } else if (s.cplx.size() > 0) {
    Eigen::MatrixXcd rho = s.factor ? Eigen::MatrixXcd(s.cplx * s.cplx.adjoint()) : s.cplx;
    ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(rho, Eigen::EigenvaluesOnly).eigenvalues();
  } else {
    throw std::logic_error("raw_spectrum: empty state");
  }
  return ev / ev.sum();
}

Eigen::VectorXd normalized_spectrum(const TrajectoryState& s) {
  Eigen::VectorXd p = raw_spectrum(s).cwiseMax(0.0);
  return p / p.sum();
}

double vn_entropy(const Eigen::VectorXd& p) {
  double h = 0;
  for (double y : p)
    if (y >= 1e-300) h -= y * std::log(y);
  return h;
}

double renyi_entropy(const Eigen::VectorXd& p, int n) {
  if (n == 1) return vn_entropy(p);
  if (n < 1) throw std::invalid_argument("renyi_entropy: n >= 1 required");
  double t = 0;
  for (double y : p) t += std::pow(y, n);
  return std::log(t) / (1 - n);
}

double purity(const Eigen::VectorXd& p) { return p.squaredNorm(); }

// ---- RM ----

void step_rm(TrajectoryState& s, Rng& rng) {
  if (!s.factor) throw std::logic_error("step_rm: state is not an RM factor");
  ++s.steps;
  const bool reorth = s.steps % kReorthogonalizeEvery == 0;
  if (s.beta == 1) {
    s.real = ginibre_real(s.q, rng) * s.real;
    const double t = s.real.squaredNorm();
    s.real /= std::sqrt(t);
    s.log_trace += std::log(t);
    // M M^T is invariant under M -> M Q; with M^T = Q R this is M -> R^T.
    if (reorth) {
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(s.real.transpose());
      s.real = qr.matrixQR().triangularView<Eigen::Upper>().toDenseMatrix().transpose();
    }
  } else {
    s.cplx = ginibre_complex(s.q, rng) * s.cplx;
    const double t = s.cplx.squaredNorm();
    s.cplx /= std::sqrt(t);
    s.log_trace += std::log(t);
    if (reorth) {
      Eigen::HouseholderQR<Eigen::MatrixXcd> qr(s.cplx.adjoint());
      s.cplx = qr.matrixQR().triangularView<Eigen::Upper>().toDenseMatrix().adjoint();
    }
  }
}

// ---- PO ----

double po_effective_q(int q_tot) {
  const double qu = q_tot / 2.0;
  return 1.0 / (1.0 / qu - 1.0 / q_tot);
}

void step_po(TrajectoryState& s, const PoOptions& opt, Rng& rng) {
  const int q = s.q;
  if (q < 2 || (q & (q - 1)) != 0) throw std::invalid_argument("step_po: q must be a power of two");
  if (s.real.size() == 0 || s.factor) throw std::logic_error("step_po: dense real density matrix required");
  ++s.steps;
  const Eigen::MatrixXd O = haar_orthogonal(q, rng);
  s.real = O * s.real * O.transpose();
  int bit = 0;
  if (opt.random_qubit) {
    int nq = 0;
    while ((1 << nq) < q) ++nq;
    bit = std::uniform_int_distribution<int>(0, nq - 1)(rng);
  }
  double p0 = 0;
  for (int i = 0; i < q; ++i)
    if (((i >> bit) & 1) == 0) p0 += s.real(i, i);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int outcome = opt.averaging == Averaging::BR ? (u(rng) < p0 ? 0 : 1) : (u(rng) < 0.5 ? 0 : 1);
  const double p = outcome == 0 ? p0 : 1 - p0;
  if (p < 1e-14) {
    s.flagged = true;
    return;
  }
  for (int i = 0; i < q; ++i)
    if (((i >> bit) & 1) != outcome) {
      s.real.row(i).setZero();
      s.real.col(i).setZero();
    }
  const Eigen::MatrixXd sym = (s.real + s.real.transpose()) / (2 * s.real.trace());
  s.real = sym;
}

// ---- DWM ----

double dwm_purity_gain(double gamma_dt) {
  if (gamma_dt < 0) throw std::invalid_argument("dwm_purity_gain: gamma_dt >= 0 required");
  const double z = 8 * std::sqrt(gamma_dt);
  if (z < 1e-4) return 4 * gamma_dt - 8 * gamma_dt * gamma_dt;  // series: z^2/16 - z^4/768
  return 0.5 - std::cyl_bessel_j(1.0, z) / z;
}

double dwm_gamma_dt_for_gain(double target) {
  // J_1(z)/z decreases on (0, j_{2,1}); j_{2,1} ~ 5.1356 is the first zero of J_2.
  const double zmax = 5.135622301840683;
  const double umax = zmax * zmax / 64;
  if (!(target > 0) || target >= dwm_purity_gain(umax))
    throw std::out_of_range("dwm_gamma_dt_for_gain: target outside the monotone range of f");
  double lo = 0, hi = umax;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = (lo + hi) / 2;
    (dwm_purity_gain(mid) < target ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

namespace {

template <class Mat>
double dwm_apply(TrajectoryState& s, const Mat& U, const Eigen::VectorXd& lam, double gamma_dt, Averaging averaging,
                 Rng& rng) {
  const int q = s.q;
  const double a = std::sqrt(gamma_dt);
  const double quarter = std::numbers::pi / 4;
  Eigen::VectorXd dp(q), dm(q);
  for (int i = 0; i < q; ++i) {
    dp(i) = std::cos(a * lam(i) + quarter);
    dm(i) = std::cos(a * lam(i) - quarter);
  }
  const Eigen::VectorXd& r = s.spectrum;
  // B = U diag(r) U^dagger, the state in the eigenbasis of O.
  Mat C = U * r.cwiseSqrt().asDiagonal();
  Eigen::VectorXd bdiag = C.rowwise().squaredNorm();
  const double pp = dp.cwiseAbs2().dot(bdiag);
  const double pm = 1 - pp;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const bool plus = averaging == Averaging::BR ? u(rng) < pp : u(rng) < 0.5;
  const Eigen::VectorXd& d = plus ? dp : dm;
  const double p = plus ? pp : pm;
  if (p < 1e-300) {
    s.flagged = true;
    return p;
  }
  C = d.asDiagonal() * C;
  // Nonzero eigenvalues of C C^dagger are those of C^dagger C.
  Mat G = C.adjoint() * C;
  Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Mat>(G, Eigen::EigenvaluesOnly).eigenvalues();
  ev = ev.cwiseMax(0.0);
  s.spectrum = ev / ev.sum();
  return p;
}

}  // namespace

double step_dwm(TrajectoryState& s, double gamma_dt, Averaging averaging, Rng& rng) {
  if (s.spectrum.size() != s.q) throw std::logic_error("step_dwm: spectrum state required");
  ++s.steps;
  const Eigen::VectorXd lam = gaussian_ensemble_eigenvalues(s.q, s.beta, rng);
  const auto& r = s.spectrum;
  if (r.maxCoeff() - r.minCoeff() <= 1e-15 * r.maxCoeff()) {
    // Unitarily invariant state: the eigenvector frame of O is irrelevant.
    const double a = std::sqrt(gamma_dt);
    Eigen::VectorXd dp(s.q);
    for (int i = 0; i < s.q; ++i) dp(i) = std::cos(a * lam(i) + std::numbers::pi / 4);
    Eigen::VectorXd d2 = dp.cwiseAbs2();
    const double pp = d2.dot(r);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const bool plus = averaging == Averaging::BR ? u(rng) < pp : u(rng) < 0.5;
    if (!plus) d2 = Eigen::VectorXd::Ones(s.q) - d2;
    const double p = plus ? pp : 1 - pp;
    Eigen::VectorXd next = d2.cwiseProduct(r);
    s.spectrum = next / next.sum();
    return p;
  }
  if (s.beta == 1) return dwm_apply(s, haar_orthogonal(s.q, rng), lam, gamma_dt, averaging, rng);
  return dwm_apply(s, haar_unitary(s.q, rng), lam, gamma_dt, averaging, rng);
}

// ---- WM ----

namespace {

template <class Mat>
Mat gaussian_increment(int q, double dt, Rng& rng);

template <>
Eigen::MatrixXd gaussian_increment<Eigen::MatrixXd>(int q, double dt, Rng& rng) {
  return goe_matrix(q, rng, std::sqrt(dt));
}

template <>
Eigen::MatrixXcd gaussian_increment<Eigen::MatrixXcd>(int q, double dt, Rng& rng) {
  return gue_matrix(q, rng, std::sqrt(dt));
}

template <class Mat>
void wm_update(Mat& rho, int beta, double gamma, double dt, Averaging averaging, WmScheme scheme, Rng& rng) {
  const int q = static_cast<int>(rho.rows());
  Mat dO = gaussian_increment<Mat>(q, dt, rng);
  const Mat I = Mat::Identity(q, q);
  if (scheme == WmScheme::Kraus) {
    if (averaging == Averaging::BR) dO += (4.0 / beta) * std::sqrt(gamma) * dt / q * rho;
    const double c = (2.0 - beta) / beta;
    const Mat K = (1 - gamma * dt * (1 + c / q) / 2) * I + std::sqrt(gamma) * dO;
    Mat next = K * rho * K.adjoint();
    rho = (next + next.adjoint()) / 2;
    rho /= std::real(rho.trace());
    return;
  }
  const Mat odr = dO * rho;
  const double mean_o = std::real(odr.trace());
  Mat next = rho - gamma * dt * (rho - I / static_cast<double>(q));
  next += std::sqrt(gamma) * (odr + odr.adjoint() - 2 * mean_o * rho);
  if (averaging == Averaging::FM) {
    const Mat rho2 = rho * rho;
    const double pur = std::real(rho2.trace());
    next -= gamma * dt * (8.0 / (beta * q)) * (rho2 - pur * rho);
  }
  rho = (next + next.adjoint()) / 2;
  rho /= std::real(rho.trace());
}

template <class Mat>
double unnormalized_update(Mat& rho, int beta, double gamma, double dt, Rng& rng) {
  const int q = static_cast<int>(rho.rows());
  const Mat dO = gaussian_increment<Mat>(q, dt, rng);
  const double c = (2.0 - beta) / beta;
  const Mat K = (1 - gamma * dt * (1 + c / q) / 2) * Mat::Identity(q, q) + std::sqrt(gamma) * dO;
  Mat next = K * rho * K.adjoint();
  next = ((next + next.adjoint()) / 2).eval();
  const double t = std::real(next.trace());
  rho = next / t;
  return std::log(t);
}

}  // namespace

void step_wm_euler(TrajectoryState& s, double gamma, double dt, Averaging averaging, Rng& rng, WmScheme scheme) {
  if (s.factor) throw std::logic_error("step_wm_euler: density matrix state required");
  ++s.steps;
  if (s.beta == 1) wm_update(s.real, 1, gamma, dt, averaging, scheme, rng);
  else wm_update(s.cplx, 2, gamma, dt, averaging, scheme, rng);
}

void step_unnormalized_matrix(TrajectoryState& s, double gamma, double dt, Rng& rng) {
  if (s.factor) throw std::logic_error("step_unnormalized_matrix: density matrix state required");
  ++s.steps;
  const double lt = s.beta == 1 ? unnormalized_update(s.real, 1, gamma, dt, rng) : unnormalized_update(s.cplx, 2, gamma, dt, rng);
  if (!std::isfinite(lt)) s.flagged = true;
  else s.log_trace += lt;
}

// ---- DBM ----

namespace {

struct DbmWork {
  double a, bdrift, sigma;
};

bool strictly_decreasing(const Eigen::VectorXd& w) {
  for (int i = 1; i < w.size(); ++i)
    if (!(w(i) < w(i - 1))) return false;
  return true;
}

// Drift F of w = log y (sorted decreasing) is the gradient of the concave potential
//   Psi(w) = a sum_{i<j} [ln(1 - e^{-(w_i - w_j)}) - w_j] - bdrift sum_i w_i,
// so the implicit step w' = rhs + h F(w') is the unique ordered root of
// g(w') = w' - rhs - h F(w'), whose Jacobian I - h dF is a positive definite Laplacian shift.
void implicit_residual(const Eigen::VectorXd& w, const Eigen::VectorXd& rhs, double h, const DbmWork& c,
                       Eigen::VectorXd& g, Eigen::MatrixXd& H) {
  const int q = static_cast<int>(w.size());
  const Eigen::VectorXd y = (w.array() - w(0)).exp();
  Eigen::VectorXd F = Eigen::VectorXd::Constant(q, -c.bdrift);
  H.setIdentity(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j) {
      // r = y_j / (y_i - y_j) = 1 / (e^{w_i - w_j} - 1), and dr/dw_i = -(r + r^2).
      const double r = y(j) / (y(i) - y(j));
      F(i) += c.a * r;
      F(j) -= c.a * (1.0 + r);
      const double k = h * c.a * (r + r * r);
      H(i, i) += k;
      H(j, j) += k;
      H(i, j) -= k;
      H(j, i) -= k;
    }
  g = w - rhs - h * F;
}

bool dbm_implicit_step(Eigen::VectorXd& w, double h, const Eigen::VectorXd& dB, const DbmWork& c) {
  const Eigen::VectorXd rhs = w + c.sigma * dB;
  Eigen::VectorXd g, gt;
  Eigen::MatrixXd H, Ht;
  // Start from the explicit Euler point when it is still ordered.
  implicit_residual(w, rhs, h, c, g, H);
  Eigen::VectorXd x = rhs + (w - rhs - g);
  if (!strictly_decreasing(x)) x = w;
  implicit_residual(x, rhs, h, c, g, H);
  double norm = g.norm();
  for (int it = 0; it < 60; ++it) {
    if (g.cwiseAbs().maxCoeff() < 1e-12 * (1 + x.cwiseAbs().maxCoeff())) {
      w = x;
      return true;
    }
    const Eigen::VectorXd step = -H.llt().solve(g);
    for (double t = 1;; t /= 2) {
      if (t < 1e-12) return false;
      Eigen::VectorXd trial = x + t * step;
      if (!strictly_decreasing(trial)) continue;
      implicit_residual(trial, rhs, h, c, gt, Ht);
      const double nt = gt.norm();
      if (std::isfinite(nt) && nt <= (1 - 1e-4 * t) * norm) {
        x.swap(trial);
        g.swap(gt);
        H.swap(Ht);
        norm = nt;
        break;
      }
    }
  }
  return false;
}

// Advances w over dt with Brownian increment dB; when the implicit solve fails the segment is split
// in two with the midpoint drawn from the Brownian bridge, so the path of B is refined, not resampled.
bool dbm_advance(Eigen::VectorXd& w, double dt, const Eigen::VectorXd& dB, const DbmWork& c, Rng& rng, int depth) {
  if (dbm_implicit_step(w, dt, dB, c)) return true;
  if (depth == 0) return false;
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::VectorXd first(w.size());
  for (int i = 0; i < w.size(); ++i) first(i) = dB(i) / 2 + std::sqrt(dt / 4) * n(rng);
  const Eigen::VectorXd second = dB - first;
  return dbm_advance(w, dt / 2, first, c, rng, depth - 1) && dbm_advance(w, dt / 2, second, c, rng, depth - 1);
}

}  // namespace

void step_dbm(TrajectoryState& s, double gamma, double dt, Rng& rng, int max_halvings) {
  const int q = s.q;
  if (s.spectrum.size() != q) throw std::logic_error("step_dbm: spectrum state required");
  ++s.steps;
  if (s.flagged) return;
  Eigen::VectorXd y = s.spectrum;
  std::sort(y.data(), y.data() + q, std::greater<double>());
  if (!(y(q - 1) > 0) || (q > 1 && !strictly_decreasing(y))) {
    s.flagged = true;
    return;
  }
  Eigen::VectorXd w = y.array().log();
  const DbmWork c{4 * gamma / q, 4 * gamma / (s.beta * q), std::sqrt(8 * gamma / (s.beta * q))};
  std::normal_distribution<double> n(0.0, std::sqrt(dt));
  Eigen::VectorXd dB(q);
  for (int i = 0; i < q; ++i) dB(i) = n(rng);
  if (!dbm_advance(w, dt, dB, c, rng, max_halvings)) {
    s.flagged = true;
    return;
  }
  const double shift = w.maxCoeff();
  y = (w.array() - shift).exp();
  const double total = y.sum();
  s.log_trace += shift + std::log(total) - std::log(s.spectrum.sum());
  s.spectrum = y / total;
}

void to_spectrum(TrajectoryState& s) {
  Eigen::VectorXd y = raw_spectrum(s);
  std::sort(y.data(), y.data() + y.size(), std::greater<double>());
  if (!(y(y.size() - 1) > 0) || !strictly_decreasing(y)) s.flagged = true;
  s.spectrum = y;
  s.real.resize(0, 0);
  s.cplx.resize(0, 0);
  s.factor = false;
}

}  // namespace purif
