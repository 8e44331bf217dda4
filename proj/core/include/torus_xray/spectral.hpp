#pragma once

// Band-limited function calculus on T^n = R^n / Z^n.
//
// Convention: e_k(x) = exp(2 pi i k.x), f(x) = sum_k fhat(k) e_k(x), and
// fhat(k) = int f(x) e_{-k}(x) dx. Every derivative factor downstream is
// 2 pi i k_j.

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "torus_xray/lattice.hpp"

namespace torus_xray {

using Complex = std::complex<double>;

/// Finite Fourier series on T^n with all modes inside the sup-norm ball of
/// radius band(). Absent modes are zero; stored zeros are allowed and compare
/// equal to absent ones.
class TrigPolynomial {
 public:
  using CoefficientMap = std::map<FrequencyVector, Complex>;

  TrigPolynomial(int dimension, int band);
  TrigPolynomial(int dimension, int band, CoefficientMap coefficients);

  static TrigPolynomial character(std::span<const std::int64_t> k, Complex c = 1.0);

  int dimension() const noexcept { return dimension_; }
  int band() const noexcept { return band_; }
  const CoefficientMap& coefficients() const noexcept { return coefficients_; }

  Complex coefficient(std::span<const std::int64_t> k) const;
  /// Throws if k lies outside the band or has the wrong dimension.
  void set_coefficient(FrequencyVector k, Complex value);
  void add_to_coefficient(FrequencyVector k, Complex value);

  TrigPolynomial with_band(int band) const;
  /// Drops stored coefficients with |c| <= threshold.
  TrigPolynomial pruned(double threshold = 0.0) const;

  TrigPolynomial& operator+=(const TrigPolynomial& other);
  TrigPolynomial& operator-=(const TrigPolynomial& other);
  TrigPolynomial& operator*=(Complex scale);

  friend TrigPolynomial operator+(TrigPolynomial a, const TrigPolynomial& b) { return a += b; }
  friend TrigPolynomial operator-(TrigPolynomial a, const TrigPolynomial& b) { return a -= b; }
  friend TrigPolynomial operator*(Complex s, TrigPolynomial a) { return a *= s; }
  friend TrigPolynomial operator*(TrigPolynomial a, Complex s) { return a *= s; }

 private:
  void check_frequency(std::span<const std::int64_t> k) const;

  int dimension_;
  int band_;
  CoefficientMap coefficients_;
};

/// max_k |a(k) - b(k)| with absent modes read as zero.
double max_coefficient_difference(const TrigPolynomial& a, const TrigPolynomial& b);
double max_coefficient_magnitude(const TrigPolynomial& f);

/// Samples on the grid {0, 1/N, ..., (N-1)/N}^n, row-major with the first axis
/// varying slowest.
class GridFunction {
 public:
  GridFunction(int dimension, int resolution);
  GridFunction(int dimension, int resolution, std::vector<Complex> samples);

  int dimension() const noexcept { return dimension_; }
  int resolution() const noexcept { return resolution_; }
  const std::vector<Complex>& samples() const noexcept { return samples_; }
  std::vector<Complex>& samples() noexcept { return samples_; }

  std::size_t flat_index(std::span<const std::int64_t> index) const;
  std::vector<std::int64_t> multi_index(std::size_t flat) const;
  Complex at(std::span<const std::int64_t> index) const { return samples_[flat_index(index)]; }

 private:
  int dimension_;
  int resolution_;
  std::vector<Complex> samples_;
};

Complex evaluate(const TrigPolynomial& f, std::span<const double> x);

/// Samples f on the N-point grid. Requires N >= 2K+1.
GridFunction to_grid(const TrigPolynomial& f, int resolution);

/// Discrete Fourier coefficients fhat(k) = N^-n sum_j g(j/N) e_{-k}(j/N) for
/// |k|_inf <= band. Requires N >= 2K+1.
TrigPolynomial from_grid(const GridFunction& g, int band);

/// Product-Fejer mean: each coefficient scaled by prod_j max(0, 1 - |k_j|/N).
/// The result has band N-1.
TrigPolynomial fejer_reconstruct(const TrigPolynomial& coefficients, int order);
double fejer_weight(std::span<const std::int64_t> k, int order);

/// sqrt(sum_k (1+|k|^2)^s |fhat(k)|^2), summed in canonical key order.
double sobolev_norm(const TrigPolynomial& f, double s);

enum class PhantomKind { random_complex, random_real, separable_bump };

PhantomKind parse_phantom_kind(std::string_view name);
std::string_view to_string(PhantomKind kind);

/// Deterministic test functions. random_real has Hermitian-symmetric
/// coefficients; separable_bump is a normalized product of one-dimensional
/// Fejer kernels of order K+1 (peak value 1) centred at a seed-derived point.
TrigPolynomial make_phantom(int dimension, int band, PhantomKind kind, std::uint64_t seed);

}  // namespace torus_xray
