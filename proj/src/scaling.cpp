#include "purif/scaling.hpp"

#include "purif/characters.hpp"
#include "purif/jack.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace purif {

ExactScalar nu(const Partition& lambda, const ExactScalar& beta) {
  if (sgn(beta) <= 0) throw std::invalid_argument("nu: beta must be positive");
  ExactScalar rows = 0;
  for (int p : lambda.parts()) rows += p * p;
  ExactScalar cols = 0;
  const Partition conj = lambda.conjugate();
  for (int p : conj.parts()) cols += p * p;
  const ExactScalar N = lambda.weight();
  return rows / beta - cols / 2 + (rational(1, 2) - 1 / beta) * N;
}

void ExpSum::add(const ExactScalar& rate, const ExactScalar& weight) {
  if (is_zero(weight)) return;
  auto [it, inserted] = terms.emplace(rate, weight);
  if (!inserted) {
    it->second += weight;
    if (is_zero(it->second)) terms.erase(it);
  }
}

std::vector<ExactScalar> ExpSum::series(int order) const {
  std::vector<ExactScalar> out(order + 1, 0);
  for (const auto& [r, w] : terms) {
    ExactScalar t = w;
    for (int m = 0; m <= order; ++m) {
      out[m] += t;
      t *= r;
      t /= m + 1;
    }
  }
  return out;
}

double ExpSum::evaluate(double x) const {
  double s = 0;
  for (const auto& [r, w] : terms) s += to_double(w) * std::exp(to_double(r) * x);
  return s;
}

ExpSum spectral_moment(const Partition& mu, const ExactScalar& beta) {
  const int N = mu.weight();
  if (N < 1) throw std::invalid_argument("spectral_moment: empty partition");
  if (N > kMaxReplicaN) throw std::out_of_range("spectral_moment: N above the table cap");
  ExpSum s;
  if (beta == 2) {
    // gamma^lambda_mu(1) = d^lambda chi^lambda(mu) / N!
    const ExactScalar nf(factorial(N));
    for (const auto& lambda : partitions_of(N)) {
      BigInt chi = character(lambda, mu);
      if (sgn(chi) == 0) continue;
      s.add(nu(lambda, beta), ExactScalar(lambda.dimension() * chi) / nf);
    }
    return s;
  }
  auto table = jack_table(N, 2 / beta);
  const int m = table->idx(mu);
  for (std::size_t l = 0; l < table->partitions.size(); ++l) s.add(nu(table->partitions[l], beta), table->gamma[l][m]);
  return s;
}

ScalingSeries moment_scaling(const Partition& mu, const ExactScalar& beta, int x_order) {
  ScalingSeries out;
  for (auto& c : spectral_moment(mu, beta).series(x_order)) out.terms.emplace_back(c);
  return out;
}

ExpSum moment_finite_q(const Partition& mu, const ExactScalar& beta, long q) {
  const int N = mu.weight();
  if (q < N) throw std::invalid_argument("moment_finite_q: q >= N required");
  auto table = jack_table(N, 2 / beta);
  const int m = table->idx(mu);
  const ExactScalar qq(q);
  ExpSum s;
  for (std::size_t l = 0; l < table->partitions.size(); ++l) {
    const Partition& lambda = table->partitions[l];
    ExactScalar eps = 0;
    for (int j = 1; j <= lambda.length(); ++j) {
      const ExactScalar lj = lambda[j - 1];
      eps -= lj * (lj + beta / 2 * (qq + 1 - 2 * j));
    }
    const ExactScalar rate = -(ExactScalar(N) * (beta / 2 * (qq - 1) + 1) + eps) / beta;
    s.add(rate, table->gamma[l][m] * table->evaluate_at_inverse_q(lambda, q));
  }
  return s;
}

ExactScalar minimal_path_weight(int n) {
  if (n < 1) throw std::invalid_argument("minimal_path_weight: n >= 1 required");
  return power(ExactScalar(n), n - 2) / ExactScalar(factorial(n - 1));
}

std::vector<std::vector<ExactScalar>> normalized_moment_data(int beta, int N, int n, int max_j) {
  if (beta != 1 && beta != 2) throw std::invalid_argument("normalized_moment_data: beta must be 1 or 2");
  if (n < 2 || N < 1) throw std::invalid_argument("normalized_moment_data: n >= 2 and N >= 1 required");
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, std::vector<std::vector<ExactScalar>>> cache;
  const auto key = std::make_tuple(beta, N, n);
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end() && static_cast<int>(it->second[0].size()) > max_j) return it->second;
  }
  std::filesystem::path file;
  if (const char* dir = std::getenv("PURIF_CACHE_DIR"); dir && *dir) {
    file = std::filesystem::path(dir) / fmt::format("moments_beta{}_N{}_n{}.json", beta, N, n);
    if (std::filesystem::exists(file)) {
      std::ifstream in(file);
      const auto j = nlohmann::json::parse(in);
      std::vector<std::vector<ExactScalar>> b;
      for (const auto& row : j.at("b")) {
        std::vector<ExactScalar> r;
        for (const auto& v : row) r.push_back(parse_rational(v.get<std::string>()));
        b.push_back(std::move(r));
      }
      if (!b.empty() && static_cast<int>(b[0].size()) > max_j) {
        for (auto& r : b) r.resize(max_j + 1);
        std::lock_guard<std::mutex> lock(mutex);
        auto& slot = cache[key];
        if (slot.empty() || slot[0].size() < b[0].size()) slot = b;
        return b;
      }
    }
  }
  const ExactScalar c = minimal_path_weight(n);
  std::vector<std::vector<ExactScalar>> b;
  for (int k = 0; n * k <= N; ++k) {
    const int shift = (n - 1) * k;
    auto coeffs = spectral_moment(Partition::cycle_class(N, n, k), beta).series(shift + max_j);
    const ExactScalar ck = power(c, k);
    std::vector<ExactScalar> row(max_j + 1);
    for (int j = 0; j <= max_j; ++j) row[j] = coeffs[shift + j] / ck;
    for (int j = 0; j < shift; ++j)
      if (!is_zero(coeffs[j])) throw std::logic_error("normalized_moment_data: nonzero coefficient below minimal path length");
    b.push_back(std::move(row));
  }
  if (!file.empty()) {
    nlohmann::json j;
    j["b"] = nlohmann::json::array();
    for (const auto& row : b) {
      nlohmann::json r = nlohmann::json::array();
      for (const auto& v : row) r.push_back(to_string(v));
      j["b"].push_back(r);
    }
    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
    std::ofstream(file) << j.dump();
  }
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[key];
  if (slot.empty() || slot[0].size() < b[0].size()) slot = b;
  return b;
}

ExactScalar a_coefficient(int N, int n, int k, int l, int beta) {
  if (k < 0 || n * k > N) throw std::invalid_argument("a_coefficient: n k <= N required");
  const int j = beta == 1 ? l : 2 * l;
  const auto b = normalized_moment_data(beta, N, n, j);
  return b[k][j] * power(ExactScalar(n + 1), l);
}

}  // namespace purif
