#include "purif/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace purif {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng make_stream(std::uint64_t master_seed, std::uint64_t index) {
  std::seed_seq seq{splitmix64(master_seed), splitmix64(master_seed ^ splitmix64(index + 1)), splitmix64(index)};
  return Rng(seq);
}

namespace {

Eigen::MatrixXd gaussian(int rows, int cols, double sd, Rng& rng) {
  std::normal_distribution<double> n(0.0, sd);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = n(rng);
  return m;
}

}  // namespace

Eigen::MatrixXd ginibre_real(int q, Rng& rng) { return gaussian(q, q, 1.0 / std::sqrt(q), rng); }

Eigen::MatrixXcd ginibre_complex(int q, Rng& rng) {
  const double sd = 1.0 / std::sqrt(2.0 * q);
  Eigen::MatrixXd re = gaussian(q, q, sd, rng);
  Eigen::MatrixXd im = gaussian(q, q, sd, rng);
  Eigen::MatrixXcd m(q, q);
  m.real() = re;
  m.imag() = im;
  return m;
}

Eigen::MatrixXd haar_orthogonal(int n, Rng& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian(n, n, 1.0, rng));
  Eigen::MatrixXd Q = qr.householderQ();
  const auto& R = qr.matrixQR();
  for (int j = 0; j < n; ++j)
    if (R(j, j) < 0) Q.col(j) = -Q.col(j);
  return Q;
}

Eigen::MatrixXcd haar_unitary(int n, Rng& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre_complex(n, rng));
  Eigen::MatrixXcd Q = qr.householderQ();
  const auto& R = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(R(j, j));
    if (a > 0) Q.col(j) *= R(j, j) / a;
  }
  return Q;
}

Eigen::MatrixXd goe_matrix(int q, Rng& rng, double scale) {
  Eigen::MatrixXd a = gaussian(q, q, scale / std::sqrt(2.0 * q), rng);
  return a + a.transpose();
}

Eigen::MatrixXcd gue_matrix(int q, Rng& rng, double scale) {
  Eigen::MatrixXcd g = ginibre_complex(q, rng) * (scale / std::sqrt(2.0));
  return g + g.adjoint();
}

Eigen::VectorXd gaussian_ensemble_eigenvalues(int q, int beta, Rng& rng) {
  if (beta != 1 && beta != 2) throw std::invalid_argument("gaussian_ensemble_eigenvalues: beta must be 1 or 2");
  const double bq = static_cast<double>(beta) * q;
  std::normal_distribution<double> n(0.0, std::sqrt(2.0 / bq));
  Eigen::VectorXd diag(q);
  Eigen::VectorXd sub(std::max(q - 1, 0));
  for (int i = 0; i < q; ++i) diag(i) = n(rng);
  for (int i = 1; i < q; ++i) {
    std::chi_squared_distribution<double> chi2(static_cast<double>(beta) * (q - i));
    sub(i - 1) = std::sqrt(chi2(rng) / bq);
  }
  if (q == 1) return diag;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace purif
