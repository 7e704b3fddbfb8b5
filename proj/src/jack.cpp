#include "purif/jack.hpp"

#include "purif/pairing.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace purif {

int JackTable::idx(const Partition& lambda) const {
  auto it = index.find(lambda);
  if (it == index.end()) throw std::invalid_argument("JackTable: partition " + lambda.to_string() + " not of degree N");
  return it->second;
}

const ExactScalar& JackTable::theta_at(const Partition& lambda, const Partition& mu) const {
  return theta[idx(lambda)][idx(mu)];
}

const ExactScalar& JackTable::gamma_at(const Partition& lambda, const Partition& mu) const {
  return gamma[idx(lambda)][idx(mu)];
}

SymFunc JackTable::jack_power_sum(const Partition& lambda) const {
  SymFunc f{Basis::power_sum, 1, N, {}};
  const auto& row = theta[idx(lambda)];
  for (std::size_t m = 0; m < row.size(); ++m)
    if (!is_zero(row[m])) f.coeffs[partitions[m]] = row[m];
  return f;
}

SymFunc JackTable::jack_monomial(const Partition& lambda) const { return to_monomial(jack_power_sum(lambda)); }

ExactScalar JackTable::evaluate_at_inverse_q(const Partition& lambda, long q) const {
  if (q < 1) throw std::invalid_argument("evaluate_at_inverse_q: q >= 1 required");
  const auto& row = theta[idx(lambda)];
  ExactScalar total = 0;
  const ExactScalar qq(q);
  for (std::size_t m = 0; m < row.size(); ++m)
    if (!is_zero(row[m])) total += row[m] * power(qq, partitions[m].length() - N);
  return total;
}

namespace {

void fill_gamma_and_norms(JackTable& t) {
  const int P = static_cast<int>(t.partitions.size());
  t.gamma.assign(P, std::vector<ExactScalar>(P, 0));
  t.norms.assign(P, 0);
  for (int l = 0; l < P; ++l) {
    const Partition& lambda = t.partitions[l];
    ExactScalar c1 = c_constant(lambda, t.alpha, 1);
    ExactScalar ca = c_constant(lambda, t.alpha, t.alpha);
    t.norms[l] = c1 * ca;
    for (int m = 0; m < P; ++m) {
      const Partition& mu = t.partitions[m];
      if (is_zero(t.theta[l][m])) continue;
      t.gamma[l][m] = t.theta[l][m] * ExactScalar(mu.z()) * power(t.alpha, mu.length()) / t.norms[l];
    }
  }
}

}  // namespace

JackTable build_jack_table(int N, const ExactScalar& alpha, const JackBuildOptions& options) {
  if (N < 1) throw std::invalid_argument("jack_table: N >= 1 required");
  if (sgn(alpha) <= 0) throw std::invalid_argument("jack_table: alpha must be positive");
  auto tr = power_monomial_transition(N);
  JackTable t;
  t.N = N;
  t.alpha = alpha;
  t.partitions = tr->partitions;
  t.index = tr->index;
  const int P = static_cast<int>(t.partitions.size());

  std::vector<ExactScalar> weight(P);
  for (int r = 0; r < P; ++r) weight[r] = ExactScalar(t.partitions[r].z()) * power(alpha, t.partitions[r].length());

  // Gram-Schmidt in increasing order: (1^N) is last in reverse-lex order.
  t.theta.assign(P, std::vector<ExactScalar>(P, 0));
  std::vector<std::vector<ExactScalar>> weighted(P);  // J_j * weight, for inner products
  std::vector<ExactScalar> sq(P);                     // <J_j, J_j>
  for (int i = P - 1; i >= 0; --i) {
    const auto& m_i = tr->m_to_p[i];
    std::vector<ExactScalar> v = m_i;
    for (int j = P - 1; j > i; --j) {
      ExactScalar ip = 0;
      for (int r = 0; r <= i; ++r)
        if (!is_zero(m_i[r]) && !is_zero(weighted[j][r])) ip += m_i[r] * weighted[j][r];
      if (is_zero(ip)) continue;
      ip /= sq[j];
      for (int r = 0; r < P; ++r)
        if (!is_zero(t.theta[j][r])) v[r] -= ip * t.theta[j][r];
    }
    const ExactScalar scale = c_constant(t.partitions[i], alpha, 1);
    for (auto& x : v) x *= scale;
    weighted[i].resize(P);
    ExactScalar norm = 0;
    for (int r = 0; r < P; ++r) {
      weighted[i][r] = v[r] * weight[r];
      norm += v[r] * weighted[i][r];
    }
    sq[i] = norm;
    t.theta[i] = std::move(v);
  }
  fill_gamma_and_norms(t);

  for (int l = 0; l < P; ++l) {
    if (sq[l] != t.norms[l])
      throw std::logic_error("jack_table: norm of J" + t.partitions[l].to_string() + " differs from c(l,a,1)c(l,a,a)");
    if (t.theta[l][P - 1] != 1) throw std::logic_error("jack_table: theta at (1^N) is not 1");
  }

  if (options.full_verification) {
    for (int a = 0; a < P; ++a)
      for (int b = 0; b < a; ++b) {
        ExactScalar ip = 0;
        for (int r = 0; r < P; ++r) ip += t.theta[b][r] * weighted[a][r];
        if (!is_zero(ip)) throw std::logic_error("jack_table: orthogonality violated");
      }
    for (int l = 0; l < P; ++l) {
      SymFunc m = t.jack_monomial(t.partitions[l]);
      for (const auto& [mu, c] : m.coeffs)
        if (!t.partitions[l].dominates(mu)) throw std::logic_error("jack_table: triangularity violated");
      if (m.coeff(t.partitions[l]) != c_constant(t.partitions[l], alpha, 1))
        throw std::logic_error("jack_table: leading coefficient differs from c(l,a,1)");
    }
  }
  return t;
}

std::string jack_table_to_json(const JackTable& table) {
  nlohmann::json j;
  j["N"] = table.N;
  j["alpha"] = to_string(table.alpha);
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& p : table.partitions) parts.push_back(p.parts());
  j["partitions"] = parts;
  nlohmann::json theta = nlohmann::json::object();
  for (std::size_t l = 0; l < table.partitions.size(); ++l) {
    nlohmann::json row = nlohmann::json::object();
    for (std::size_t m = 0; m < table.partitions.size(); ++m)
      if (!is_zero(table.theta[l][m])) row[table.partitions[m].to_string()] = to_string(table.theta[l][m]);
    theta[table.partitions[l].to_string()] = row;
  }
  j["theta"] = theta;
  return j.dump(1);
}

JackTable jack_table_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  JackTable t;
  t.N = j.at("N").get<int>();
  t.alpha = parse_rational(j.at("alpha").get<std::string>());
  t.partitions = partitions_of(t.N);
  const int P = static_cast<int>(t.partitions.size());
  for (int i = 0; i < P; ++i) t.index[t.partitions[i]] = i;
  t.theta.assign(P, std::vector<ExactScalar>(P, 0));
  const auto& theta = j.at("theta");
  for (int l = 0; l < P; ++l) {
    const auto& row = theta.at(t.partitions[l].to_string());
    for (int m = 0; m < P; ++m) {
      auto key = t.partitions[m].to_string();
      if (row.contains(key)) t.theta[l][m] = parse_rational(row.at(key).get<std::string>());
    }
  }
  fill_gamma_and_norms(t);
  return t;
}

std::shared_ptr<const JackTable> jack_table(int N, const ExactScalar& alpha) {
  static std::mutex mutex;
  static std::map<std::pair<int, std::string>, std::shared_ptr<const JackTable>> cache;
  const auto key = std::make_pair(N, to_string(alpha));
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::shared_ptr<const JackTable> table;
  std::filesystem::path file;
  if (const char* dir = std::getenv("PURIF_CACHE_DIR"); dir && *dir) {
    std::string a = to_string(alpha);
    for (char& c : a)
      if (c == '/') c = '_';
    file = std::filesystem::path(dir) / ("jack_N" + std::to_string(N) + "_alpha" + a + ".json");
    if (std::filesystem::exists(file)) {
      std::ifstream in(file);
      std::stringstream ss;
      ss << in.rdbuf();
      table = std::make_shared<const JackTable>(jack_table_from_json(ss.str()));
    }
  }
  if (!table) {
    table = std::make_shared<const JackTable>(build_jack_table(N, alpha));
    if (!file.empty()) {
      std::filesystem::create_directories(file.parent_path());
      std::ofstream(file) << jack_table_to_json(*table);
    }
  }
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(key, table);
  return table;
}

ExactScalar theta_single_row(const Partition& lambda, const ExactScalar& alpha) {
  const int N = lambda.weight();
  if (N == 0) return 1;
  ExactScalar r = power(alpha, N - 1) * ExactScalar(factorial(static_cast<unsigned>(lambda[0] - 1)));
  for (int i = 2; i <= lambda.length(); ++i) r *= pochhammer(-ExactScalar(i - 1) / alpha, static_cast<unsigned>(lambda[i - 1]));
  return r;
}

ExactScalar zonal_spherical(const Partition& lambda, const Partition& mu) {
  if (lambda.weight() != mu.weight()) throw std::invalid_argument("zonal_spherical: weight mismatch");
  auto t = jack_table(lambda.weight(), 2);
  return t->gamma_at(lambda, mu) * ExactScalar(pairing_count(lambda.weight())) / ExactScalar(lambda.doubled().dimension());
}

SymFunc jack_to_power_sum(const SymFunc& f, const JackTable& table) {
  if (f.basis == Basis::power_sum) return f;
  if (f.basis == Basis::monomial) return to_power_sum(f);
  if (f.alpha != table.alpha || f.degree != table.N) throw std::invalid_argument("jack_to_power_sum: table mismatch");
  SymFunc g{Basis::power_sum, 1, f.degree, {}};
  for (const auto& [lambda, a] : f.coeffs) {
    const auto& row = table.theta[table.idx(lambda)];
    for (std::size_t m = 0; m < row.size(); ++m)
      if (!is_zero(row[m])) g.coeffs[table.partitions[m]] += a * row[m];
  }
  g.prune();
  return g;
}

}  // namespace purif
