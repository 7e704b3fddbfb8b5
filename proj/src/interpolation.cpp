#include "purif/interpolation.hpp"

#include "purif/scaling.hpp"

#include <fmt/format.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace purif {

ExactScalar BivariatePolynomial::evaluate(const ExactScalar& N, const ExactScalar& k) const {
  ExactScalar total = 0;
  ExactScalar Ni = 1;
  for (const auto& row : c) {
    ExactScalar kj = 1;
    for (const auto& x : row) {
      if (!is_zero(x)) total += x * Ni * kj;
      kj *= k;
    }
    Ni *= N;
  }
  return total;
}

ExactScalar BivariatePolynomial::dk_at_zero(const ExactScalar& N) const {
  ExactScalar total = 0;
  ExactScalar Ni = 1;
  for (const auto& row : c) {
    if (row.size() > 1) total += row[1] * Ni;
    Ni *= N;
  }
  return total;
}

BivariatePolynomial BivariatePolynomial::scaled(const ExactScalar& factor) const {
  BivariatePolynomial p = *this;
  for (auto& row : p.c)
    for (auto& x : row) x *= factor;
  return p;
}

std::string BivariatePolynomial::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c[i].size(); ++j) {
      if (is_zero(c[i][j])) continue;
      if (!s.empty()) s += " + ";
      s += "(" + purif::to_string(c[i][j]) + ")";
      if (i) s += fmt::format(" N^{}", i);
      if (j) s += fmt::format(" k^{}", j);
    }
  return s.empty() ? "0" : s;
}

BivariatePolynomial fit_bivariate(const std::vector<GridPoint>& points, int degree) {
  const int D = degree + 1;
  const int U = D * D;
  const int R = static_cast<int>(points.size());
  if (R < U) throw std::runtime_error("fit_bivariate: fewer points than unknowns");
  // Augmented rows [N^i k^j | value], unknown index i*D + j.
  std::vector<std::vector<ExactScalar>> m(R, std::vector<ExactScalar>(U + 1));
  for (int r = 0; r < R; ++r) {
    ExactScalar Ni = 1;
    for (int i = 0; i < D; ++i) {
      ExactScalar kj = 1;
      for (int j = 0; j < D; ++j) {
        m[r][i * D + j] = Ni * kj;
        kj *= points[r].k;
      }
      Ni *= points[r].N;
    }
    m[r][U] = points[r].value;
  }
  int row = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < U && row < R; ++col) {
    int p = row;
    while (p < R && is_zero(m[p][col])) ++p;
    if (p == R) throw std::runtime_error("fit_bivariate: singular grid");
    std::swap(m[p], m[row]);
    const ExactScalar inv = 1 / m[row][col];
    for (int c = col; c <= U; ++c) m[row][c] *= inv;
    for (int r = 0; r < R; ++r) {
      if (r == row || is_zero(m[r][col])) continue;
      const ExactScalar f = m[r][col];
      for (int c = col; c <= U; ++c) m[r][c] -= f * m[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (int r = row; r < R; ++r)
    if (!is_zero(m[r][U])) throw std::runtime_error("fit_bivariate: points are not fitted by a polynomial of this degree");
  BivariatePolynomial poly;
  poly.c.assign(D, std::vector<ExactScalar>(D, 0));
  for (int r = 0; r < row; ++r) poly.c[pivot_col[r] / D][pivot_col[r] % D] = m[r][U];
  return poly;
}

int max_reachable_order(int n) { return kMaxReplicaN / (n + 1); }

Interpolation interpolate_normalized(int n, int j, int beta, int check_max_N) {
  if (n < 2) throw std::invalid_argument("interpolate: n >= 2 required");
  if (j < 0) throw std::invalid_argument("interpolate: order must be non-negative");
  const int top = (n + 1) * std::max(j, 1);
  if (top > kMaxReplicaN)
    throw std::out_of_range(fmt::format("interpolate: grid needs N = {} above the cap {}; maximum reachable order is {}", top,
                                        kMaxReplicaN, max_reachable_order(n)));
  if (check_max_N < 0) check_max_N = top;
  check_max_N = std::min(check_max_N, kMaxReplicaN);

  static std::mutex mutex;
  static std::map<std::tuple<int, int, int, int>, Interpolation> cache;
  const auto key = std::make_tuple(n, j, beta, check_max_N);
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  Interpolation out;
  out.n = n;
  out.j = j;
  out.beta = beta;
  out.degree = j;
  const int start = n * std::max(j, 1);
  std::vector<GridPoint> grid;
  for (int N = start; N <= start + j; ++N) {
    auto b = normalized_moment_data(beta, N, n, j);
    for (int k = 0; k <= j; ++k) grid.push_back({N, k, b[k][j]});
  }
  out.poly = fit_bivariate(grid, j);
  out.grid_points = static_cast<int>(grid.size());
  for (int N = 1; N <= check_max_N; ++N) {
    auto b = normalized_moment_data(beta, N, n, j);
    for (int k = 0; n * k <= N; ++k) {
      if (N >= start && N <= start + j && k <= j) continue;
      ++out.check_points;
      if (out.poly.evaluate(N, k) != b[k][j]) out.mismatches.push_back({N, k, b[k][j]});
    }
    out.max_N_checked = N;
  }
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(key, out);
  return out;
}

Interpolation interpolate_c(int n, int l, int beta, int check_max_N) {
  Interpolation r = interpolate_normalized(n, beta == 1 ? l : 2 * l, beta, check_max_N);
  r.poly = r.poly.scaled(power(ExactScalar(n + 1), l));
  for (auto& m : r.mismatches) m.value *= power(ExactScalar(n + 1), l);
  return r;
}

}  // namespace purif
