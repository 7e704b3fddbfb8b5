#pragma once

#include "purif/exact.hpp"

#include <string>
#include <vector>

namespace purif {

// sum_{i,j} c[i][j] N^i k^j.
struct BivariatePolynomial {
  std::vector<std::vector<ExactScalar>> c;

  ExactScalar evaluate(const ExactScalar& N, const ExactScalar& k) const;
  // d/dk at k = 0, as a function of N.
  ExactScalar dk_at_zero(const ExactScalar& N) const;
  BivariatePolynomial scaled(const ExactScalar& factor) const;
  std::string to_string() const;
};

struct GridPoint {
  int N = 0;
  int k = 0;
  ExactScalar value;
};

// Exact fit of a polynomial of degree <= degree in each variable through the points.
// Throws std::runtime_error when the system is singular or inconsistent.
BivariatePolynomial fit_bivariate(const std::vector<GridPoint>& points, int degree);

struct Interpolation {
  int n = 2;
  int j = 0;  // power of x after the minimal-path prefactor
  int beta = 1;
  int degree = 0;
  BivariatePolynomial poly;
  int grid_points = 0;
  int check_points = 0;
  int max_N_checked = 0;
  std::vector<GridPoint> mismatches;

  bool consistent() const { return mismatches.empty(); }
};

// Interpolates b_j(N, k), the normalized coefficient of x^{(n-1)k + j}, on the grid
// k = 0..j, N = n j .. (n+1) j, then checks every other point with n k <= N <= check_max_N
// (default: the top of the grid). Degree in N and in k is j.
Interpolation interpolate_normalized(int n, int j, int beta, int check_max_N = -1);

// a_{N,n,k,l} as a polynomial: b_l (n+1)^l for beta = 1, b_{2l} (n+1)^l for beta = 2.
Interpolation interpolate_c(int n, int l, int beta, int check_max_N = -1);

// Largest j whose grid fits under the replica cap.
int max_reachable_order(int n);

}  // namespace purif
