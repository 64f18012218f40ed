#include <vskx/nodes.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include <vskx/error.hpp>

namespace vskx {

namespace {

void require_interval(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::Domain, "node interval requires finite a < b");
  }
}

void require_count(Index n, Index min_n) {
  if (n < min_n) {
    throw Error(ErrorKind::Domain, "node count must be at least " + std::to_string(min_n));
  }
}

double radical_inverse_base2(std::uint64_t i) {
  double result = 0.0;
  double scale = 0.5;
  while (i != 0) {
    if (i & 1U) result += scale;
    i >>= 1U;
    scale *= 0.5;
  }
  return result;
}

NodeSet sorted(VecX points, Distribution distribution, std::uint64_t seed = 0) {
  std::sort(points.begin(), points.end());
  return NodeSet{std::move(points), distribution, seed};
}

}  // namespace

std::string to_string(Distribution d) {
  switch (d) {
    case Distribution::Halton: return "halton";
    case Distribution::Chebyshev: return "chebyshev";
    case Distribution::Random: return "random";
    case Distribution::Uniform: return "uniform";
  }
  return "unknown";
}

std::optional<Distribution> parse_distribution(std::string_view name) {
  for (auto d : {Distribution::Halton, Distribution::Chebyshev, Distribution::Random,
                 Distribution::Uniform}) {
    if (name == to_string(d)) return d;
  }
  return std::nullopt;
}

NodeSet halton(Index n, double a, double b) {
  require_count(n, 1);
  require_interval(a, b);
  VecX x(n);
  for (Index i = 0; i < n; ++i) {
    x(i) = a + (b - a) * radical_inverse_base2(static_cast<std::uint64_t>(i + 1));
  }
  return sorted(std::move(x), Distribution::Halton);
}

NodeSet chebyshev(Index n, double a, double b) {
  require_count(n, 2);
  require_interval(a, b);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  VecX x(n);
  for (Index k = 0; k < n; ++k) {
    x(k) = mid + half * std::cos(static_cast<double>(k) * std::numbers::pi /
                                 static_cast<double>(n - 1));
  }
  // cos(k pi/(n-1)) is not exact at the ends and the middle.
  x(0) = b;
  x(n - 1) = a;
  if (n % 2 == 1) x(n / 2) = mid;
  return sorted(std::move(x), Distribution::Chebyshev);
}

NodeSet chebyshev_gauss(Index n, double a, double b) {
  require_count(n, 1);
  require_interval(a, b);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  VecX x(n);
  for (Index k = 0; k < n; ++k) {
    x(k) = mid + half * std::cos(static_cast<double>(2 * k + 1) * std::numbers::pi /
                                 static_cast<double>(2 * n));
  }
  return sorted(std::move(x), Distribution::Chebyshev);
}

NodeSet random_uniform(Index n, double a, double b, std::uint64_t seed) {
  require_count(n, 1);
  require_interval(a, b);
  std::mt19937_64 gen(seed);
  std::set<double> seen;
  VecX x(n);
  Index filled = 0;
  while (filled < n) {
    const double u = static_cast<double>(gen() >> 11U) * 0x1.0p-53;
    const double v = a + (b - a) * u;
    if (!(v > a && v < b) || !seen.insert(v).second) continue;
    x(filled++) = v;
  }
  return sorted(std::move(x), Distribution::Random, seed);
}

NodeSet equispaced(Index n, double a, double b) {
  require_count(n, 2);
  require_interval(a, b);
  VecX x(n);
  const double h = (b - a) / static_cast<double>(n - 1);
  for (Index k = 0; k < n; ++k) {
    x(k) = a + static_cast<double>(k) * h;
  }
  x(n - 1) = b;
  return NodeSet{std::move(x), Distribution::Uniform, 0};
}

}  // namespace vskx
