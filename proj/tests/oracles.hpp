#pragma once

// Test-only reference computations. Each one reaches its answer by a route
// that does not go through the library code it is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "torus_xray/spectral.hpp"
#include "torus_xray/tensor.hpp"

namespace oracle {

using Complex = std::complex<double>;
using IntVector = std::vector<std::int64_t>;
constexpr double two_pi = 2.0 * std::numbers::pi;

inline std::int64_t euclid_gcd(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const std::int64_t r = a % b;
    a = b;
    b = r;
  }
  return a;
}

inline std::int64_t gcd_of(const IntVector& v) {
  std::int64_t g = 0;
  for (auto x : v) g = euclid_gcd(g, x);
  return g;
}

// Lists every vector in [-bound, bound]^n in lexicographic order.
inline std::vector<IntVector> cube(int n, int bound) {
  std::vector<IntVector> out{IntVector{}};
  for (int axis = 0; axis < n; ++axis) {
    std::vector<IntVector> next;
    for (const auto& prefix : out) {
      for (int x = -bound; x <= bound; ++x) {
        auto v = prefix;
        v.push_back(x);
        next.push_back(std::move(v));
      }
    }
    out = std::move(next);
  }
  return out;
}

inline bool first_nonzero_positive(const IntVector& v) {
  for (auto x : v) {
    if (x != 0) return x > 0;
  }
  return false;
}

// Smallest sign-normalized v (lexicographic) with sup-norm <= bound and k.v = 0.
inline IntVector smallest_orthogonal(const IntVector& k, int bound) {
  for (const auto& v : cube(static_cast<int>(k.size()), bound)) {
    if (!first_nonzero_positive(v)) continue;
    std::int64_t s = 0;
    for (std::size_t i = 0; i < k.size(); ++i) s += k[i] * v[i];
    if (s == 0) return v;
  }
  return {};
}

// Direct summation in reverse key order with std::exp and no periodic reduction.
inline Complex direct_sum(const torus_xray::TrigPolynomial& f, const std::vector<double>& x) {
  Complex sum = 0.0;
  const auto& coeffs = f.coefficients();
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    double phase = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) phase += static_cast<double>(it->first[i]) * x[i];
    sum += it->second * std::exp(Complex(0.0, two_pi * phase));
  }
  return sum;
}

// Position after time t of a point bouncing inside [0, 1/2]^n, simulated wall
// by wall.
inline std::vector<double> bounce(std::vector<double> x, std::vector<double> v, double t) {
  constexpr double wall = 0.5;
  double remaining = t;
  for (int guard = 0; guard < 100000 && remaining > 0.0; ++guard) {
    double hit = remaining;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (v[i] > 0.0) hit = std::min(hit, (wall - x[i]) / v[i]);
      if (v[i] < 0.0) hit = std::min(hit, x[i] / -v[i]);
    }
    hit = std::max(hit, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += v[i] * hit;
    remaining -= hit;
    if (remaining <= 0.0) break;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (v[i] > 0.0 && x[i] >= wall - 1e-15) {
        x[i] = wall;
        v[i] = -v[i];
      } else if (v[i] < 0.0 && x[i] <= 1e-15) {
        x[i] = 0.0;
        v[i] = -v[i];
      }
    }
  }
  return x;
}

// (k.v) * Q(v), coefficient by coefficient.
inline torus_xray::HomogeneousPolynomial times_linear_form(const torus_xray::HomogeneousPolynomial& q,
                                                           const IntVector& k) {
  torus_xray::HomogeneousPolynomial out(q.dimension(), q.degree() + 1);
  for (const auto& [alpha, c] : q.coefficients()) {
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (k[i] == 0) continue;
      auto beta = alpha;
      ++beta[i];
      out.add_term(beta, static_cast<double>(k[i]) * c);
    }
  }
  return out;
}

// f(x, v) summed over all n^m ordered index tuples, reading the symmetric
// component through the sorted index.
inline Complex tensor_value(const torus_xray::SymmetricTensorField& f, const std::vector<double>& x,
                            const std::vector<double>& v) {
  const int n = f.dimension();
  const int m = f.order();
  Complex sum = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  for (;;) {
    double weight = 1.0;
    for (int i : idx) weight *= v[static_cast<std::size_t>(i)];
    auto sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    const auto it = f.components().find(sorted);
    if (it != f.components().end() && weight != 0.0) sum += weight * direct_sum(it->second, x);
    int p = m - 1;
    while (p >= 0 && idx[static_cast<std::size_t>(p)] == n - 1) {
      idx[static_cast<std::size_t>(p)] = 0;
      --p;
    }
    if (p < 0) break;
    ++idx[static_cast<std::size_t>(p)];
  }
  return sum;
}

// int_0^1 f(x + t v, v) dt by the M-node rectangle rule.
inline Complex tensor_line_integral(const torus_xray::SymmetricTensorField& f, const std::vector<double>& x,
                                    const IntVector& v, int nodes) {
  const std::vector<double> vd(v.begin(), v.end());
  Complex sum = 0.0;
  for (int j = 0; j < nodes; ++j) {
    std::vector<double> p = x;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += vd[i] * j / nodes;
    sum += tensor_value(f, p, vd);
  }
  return sum / static_cast<double>(nodes);
}

inline std::vector<double> random_point(std::mt19937_64& rng, int n, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> x(static_cast<std::size_t>(n));
  for (auto& xi : x) xi = dist(rng);
  return x;
}

inline torus_xray::HomogeneousPolynomial random_polynomial(std::mt19937_64& rng, int n, int degree) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  torus_xray::HomogeneousPolynomial p(n, degree);
  for (const auto& alpha : torus_xray::monomial_exponents(n, degree)) p.add_term(alpha, {dist(rng), dist(rng)});
  return p;
}

inline IntVector random_nonzero(std::mt19937_64& rng, int n, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  for (;;) {
    IntVector k(static_cast<std::size_t>(n));
    for (auto& x : k) x = dist(rng);
    if (std::any_of(k.begin(), k.end(), [](auto x) { return x != 0; })) return k;
  }
}

}  // namespace oracle
