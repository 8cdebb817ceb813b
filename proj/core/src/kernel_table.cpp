#include "cavrcs/kernel_table.hpp"

#include "cavrcs/oscillatory.hpp"
#include "cavrcs/threading.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace cavrcs {

namespace {
constexpr double pi = std::numbers::pi;
}

KernelTransformTable build_kernel_table(double kappa0, double radius, int Q1, int Q2, double s1,
                                        double s2, double regime_threshold, int threads) {
  if (!(radius > 0.0) || Q1 < 0 || Q2 < 0 || !(s1 > 0.0) || !(s2 > 0.0))
    throw std::invalid_argument("build_kernel_table: bad grid parameters");
  KernelTransformTable t;
  t.Q1 = Q1;
  t.Q2 = Q2;
  t.freq_step1 = s1;
  t.freq_step2 = s2;
  t.kappa0 = kappa0;
  t.radius = radius;
  const int n2 = 2 * Q2 + 1;
  t.values.assign(static_cast<size_t>(2 * Q1 + 1) * n2, {});

  // Values depend on |j| only through c = 2 pi sqrt((j1 s1)^2 + (j2 s2)^2);
  // compute one quadrant and mirror, deduplicating repeated radii.
  struct Key {
    long long a, b;
    bool operator==(const Key& o) const { return a == o.a && b == o.b; }
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      return std::hash<long long>()(k.a * 1'000'003LL + k.b);
    }
  };
  // Key on the unordered squared index pair when the steps coincide, else on
  // the ordered pair.
  const bool iso = s1 == s2;
  std::unordered_map<Key, std::complex<double>, KeyHash> memo;
  memo.reserve(static_cast<size_t>(Q1 + 1) * (Q2 + 1));

  std::vector<std::pair<int, int>> quadrant;
  quadrant.reserve(static_cast<size_t>(Q1 + 1) * (Q2 + 1));
  for (int j1 = 0; j1 <= Q1; ++j1)
    for (int j2 = 0; j2 <= Q2; ++j2) quadrant.emplace_back(j1, j2);

  std::vector<std::complex<double>> qvals(quadrant.size());
  struct Pending {
    size_t idx;
    Key key;
  };
  std::vector<Pending> unique_jobs;
  for (size_t i = 0; i < quadrant.size(); ++i) {
    auto [j1, j2] = quadrant[i];
    long long a = static_cast<long long>(j1) * j1, b = static_cast<long long>(j2) * j2;
    Key key = iso ? Key{std::min(a, b), std::max(a, b)} : Key{a, b};
    if (memo.emplace(key, std::complex<double>{}).second) unique_jobs.push_back({i, key});
  }
  std::vector<std::complex<double>> unique_vals(unique_jobs.size());
  parallel_for(static_cast<int>(unique_jobs.size()), threads, [&](int u) {
    auto [j1, j2] = quadrant[unique_jobs[u].idx];
    const double c = 2.0 * pi * std::hypot(j1 * s1, j2 * s2);
    unique_vals[u] =
        bessel_osc_integral(radius, c, kappa0, regime_threshold) / (4.0 * pi);
  });
  for (size_t u = 0; u < unique_jobs.size(); ++u) memo[unique_jobs[u].key] = unique_vals[u];
  for (size_t i = 0; i < quadrant.size(); ++i) {
    auto [j1, j2] = quadrant[i];
    long long a = static_cast<long long>(j1) * j1, b = static_cast<long long>(j2) * j2;
    Key key = iso ? Key{std::min(a, b), std::max(a, b)} : Key{a, b};
    qvals[i] = memo.at(key);
  }

  for (size_t i = 0; i < quadrant.size(); ++i) {
    auto [j1, j2] = quadrant[i];
    const std::complex<double> v = qvals[i];
    for (int u1 : {-j1, j1})
      for (int u2 : {-j2, j2})
        t.values[static_cast<size_t>(u1 + Q1) * n2 + (u2 + Q2)] = v;
  }
  return t;
}

KernelTransformTable kernel_transform_table(double kappa0, double a, int grid,
                                            double regime_threshold) {
  if (grid < 2 || grid % 2 != 0)
    throw std::invalid_argument("kernel_transform_table: grid must be a positive even integer");
  const int Q = grid / 2;
  return build_kernel_table(kappa0, std::sqrt(2.0) * a, Q, Q, 1.0, 1.0, regime_threshold);
}

} // namespace cavrcs
