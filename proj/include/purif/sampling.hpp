#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>

namespace purif {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
// Independent stream for trajectory `index` under a master seed.
Rng make_stream(std::uint64_t master_seed, std::uint64_t index);

// Entries N(0, 1/q).
Eigen::MatrixXd ginibre_real(int q, Rng& rng);
// Real and imaginary parts N(0, 1/(2q)) each.
Eigen::MatrixXcd ginibre_complex(int q, Rng& rng);

// QR of a Gaussian matrix with R's diagonal made positive.
Eigen::MatrixXd haar_orthogonal(int n, Rng& rng);
Eigen::MatrixXcd haar_unitary(int n, Rng& rng);

// Gaussian ensemble with density ~ exp(-q beta Tr(o o^T) / 4):
// real symmetric, off-diagonal variance 1/q, diagonal 2/q (beta = 1), or Hermitian with
// E|o_ij|^2 = 1/q and diagonal variance 1/q (beta = 2). scale multiplies every entry.
Eigen::MatrixXd goe_matrix(int q, Rng& rng, double scale = 1.0);
Eigen::MatrixXcd gue_matrix(int q, Rng& rng, double scale = 1.0);

// Eigenvalues of the same ensemble through the tridiagonal beta-Hermite model.
Eigen::VectorXd gaussian_ensemble_eigenvalues(int q, int beta, Rng& rng);

}  // namespace purif
