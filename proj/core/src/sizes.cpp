#include "ufavg/sizes.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "ufavg/random.hpp"

namespace ufavg {

namespace {
__extension__ typedef unsigned __int128 u128;
}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t universal_set_size(int d, int t) {
  if (d < 1 || t < 0) throw std::invalid_argument("universal_set_size: need d >= 1, t >= 0");
  const auto dd = static_cast<std::uint64_t>(d);
  return binomial(dd * dd + static_cast<std::uint64_t>(t) - 1, static_cast<std::uint64_t>(t));
}

std::uint64_t lower_bound_t2(int d) {
  if (d < 1) throw std::invalid_argument("lower_bound_t2: need d >= 1");
  const auto dd = static_cast<std::uint64_t>(d);
  return dd * dd * dd * dd - 2 * dd * dd + 2;
}

std::uint64_t weyl_dimension(const std::vector<int>& highest_weight) {
  // Π_{i<j} (λ_i - λ_j + j - i) / (j - i), kept exact as a reduced fraction.
  auto gcd = [](u128 a, u128 b) {
    while (b != 0) {
      const u128 r = a % b;
      a = b;
      b = r;
    }
    return a;
  };
  u128 num = 1;
  u128 den = 1;
  const std::size_t n = highest_weight.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const long long diff = static_cast<long long>(highest_weight[i]) - highest_weight[j] +
                             static_cast<long long>(j - i);
      if (diff <= 0) throw std::invalid_argument("weyl_dimension: weight is not dominant");
      num *= static_cast<u128>(diff);
      den *= static_cast<u128>(j - i);
      const u128 g = gcd(num, den);
      num /= g;
      den /= g;
    }
  }
  if (den != 1) throw std::logic_error("weyl_dimension: non-integral result");
  return static_cast<std::uint64_t>(num);
}

namespace {

std::vector<std::vector<int>> partitions(int n, int max_parts) {
  std::vector<std::vector<int>> out;
  if (n == 0) {
    out.push_back({});
    return out;
  }
  for (const auto& diagram : enumerate_diagrams(n, max_parts)) out.push_back(diagram.rows);
  return out;
}

}  // namespace

std::uint64_t mixed_span_dimension(int d, int r, int s) {
  if (d < 1 || r < 0 || s < 0) throw std::invalid_argument("mixed_span_dimension: bad arguments");
  std::uint64_t total = 0;
  for (int j = 0; j <= std::min(r, s); ++j) {
    for (const auto& alpha : partitions(r - j, d)) {
      for (const auto& beta : partitions(s - j, d)) {
        if (static_cast<int>(alpha.size() + beta.size()) > d) continue;
        std::vector<int> weight(static_cast<std::size_t>(d), 0);
        for (std::size_t i = 0; i < alpha.size(); ++i) weight[i] = alpha[i];
        for (std::size_t i = 0; i < beta.size(); ++i) weight[static_cast<std::size_t>(d) - 1 - i] = -beta[i];
        const std::uint64_t dim = weyl_dimension(weight);
        total += dim * dim;
      }
    }
  }
  return total;
}

std::size_t operator_span_dim(int d, int r, int s, std::size_t samples, std::uint64_t seed,
                              const TolerancePolicy& policy) {
  if (d < 1 || r < 0 || s < 0) throw std::invalid_argument("operator_span_dim: bad arguments");
  std::size_t side = 1;
  for (int i = 0; i < r + s; ++i) side *= static_cast<std::size_t>(d);
  if (side > 64) throw std::invalid_argument("operator_span_dim: d^(r+s) must not exceed 64");
  const std::size_t length = side * side;
  if (samples < 2 * length) {
    throw std::invalid_argument("operator_span_dim: need at least 2·d^(2(r+s)) samples");
  }

  std::vector<ComplexMatrix> vecs;
  vecs.reserve(samples);
  std::size_t rank = 0;
  int stable_batches = 0;
  bool grew_last = true;
  std::size_t drawn = 0;
  while (drawn < samples) {
    const std::size_t batch_end = std::min(samples, drawn + length);
    for (; drawn < batch_end; ++drawn) {
      Engine rng = substream(seed, drawn);
      const ComplexMatrix u = haar_unitary(static_cast<std::size_t>(d), rng);
      const ComplexMatrix op = kron(kron_power(u, r), kron_power(conjugate(u), s));
      vecs.push_back(vectorize(op));
    }
    const std::size_t next = numerical_rank(vecs, policy);
    grew_last = next != rank;
    stable_batches = grew_last ? 0 : stable_batches + 1;
    rank = next;
    if (stable_batches >= 3 || rank == length) return rank;
  }
  if (grew_last) {
    throw InsufficientSamplesError("operator_span_dim: rank still growing after " + std::to_string(samples) +
                                   " samples");
  }
  return rank;
}

std::uint64_t sector_term_count(const SchurBasis& basis) {
  std::uint64_t total = 0;
  for (const auto& sector : basis.sectors) total += sector.dim_irrep * sector.dim_irrep;
  return total;
}

std::vector<SizeRow> emit_table() {
  struct Cited {
    int d, t;
    std::uint64_t known_unitary;
    std::optional<std::uint64_t> known_sl;
  };
  static const Cited cited[] = {
      {2, 2, 12, 1296},   {2, 3, 24, 6336},   {2, 5, 60, 54000},  {3, 2, 72, {}},
      {3, 3, 360, {}},    {5, 2, 600, {}},    {6, 2, 2520, {}},   {7, 2, 2352, {}},
      {8, 2, 20160, {}},  {9, 2, 12960, {}},  {10, 2, 95040, {}},
  };
  std::vector<SizeRow> rows;
  for (const auto& c : cited) {
    SizeRow row;
    row.d = c.d;
    row.t = c.t;
    row.universal = universal_set_size(c.d, c.t);
    if (c.t == 2) {
      row.bound = lower_bound_t2(c.d);
      row.bound_source = "closed-form";
    } else {
      row.bound = mixed_span_dimension(c.d, (c.t + 1) / 2, c.t / 2);
      row.bound_source = "weyl-dimension";
    }
    row.known_unitary = c.known_unitary;
    row.known_sl = c.known_sl;
    rows.push_back(row);
  }
  return rows;
}

double t2_size_ratio(int d) {
  return static_cast<double>(universal_set_size(d, 2)) / static_cast<double>(lower_bound_t2(d));
}

std::string size_table_csv(const std::vector<SizeRow>& rows) {
  std::ostringstream os;
  os << "d,t,universal,bound,known_unitary,known_sl,bound_source,known_source\n";
  for (const auto& r : rows) {
    os << r.d << ',' << r.t << ',' << r.universal << ',' << r.bound << ',';
    if (r.known_unitary) os << *r.known_unitary;
    os << ',';
    if (r.known_sl) os << *r.known_sl;
    os << ',' << r.bound_source << ',' << r.known_source << '\n';
  }
  return os.str();
}

}  // namespace ufavg
