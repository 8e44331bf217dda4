#include "torus_xray/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "torus_xray/error.hpp"

namespace torus_xray {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::size_t ipow(std::size_t base, int exponent) {
  std::size_t r = 1;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

// Table of exp(sign * 2 pi i * m * j / N) for m in [-K, K], j in [0, N).
// Exponents are reduced mod N first so the table is exact for roots of unity.
std::vector<Complex> twiddles(int band, int resolution, double sign) {
  const auto width = static_cast<std::size_t>(2 * band + 1);
  std::vector<Complex> table(width * static_cast<std::size_t>(resolution));
  for (int m = -band; m <= band; ++m) {
    for (int j = 0; j < resolution; ++j) {
      const long long phase = ((static_cast<long long>(m) * j) % resolution + resolution) % resolution;
      const double angle = sign * two_pi * static_cast<double>(phase) / resolution;
      table[static_cast<std::size_t>(m + band) * static_cast<std::size_t>(resolution) +
            static_cast<std::size_t>(j)] = std::polar(1.0, angle);
    }
  }
  return table;
}

// Applies a one-dimensional linear map along `axis` of a dense row-major
// array. `shape` gives the extent of every axis; the extent along `axis`
// changes from in_len to out_len. matrix is out_len x in_len, row-major.
std::vector<Complex> apply_along_axis(const std::vector<Complex>& data,
                                      std::vector<std::size_t>& shape, std::size_t axis,
                                      std::size_t out_len, const std::vector<Complex>& matrix) {
  const std::size_t in_len = shape[axis];
  std::size_t outer = 1;
  for (std::size_t a = 0; a < axis; ++a) outer *= shape[a];
  std::size_t inner = 1;
  for (std::size_t a = axis + 1; a < shape.size(); ++a) inner *= shape[a];

  std::vector<Complex> out(outer * out_len * inner);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t p = 0; p < out_len; ++p) {
      const Complex* row = &matrix[p * in_len];
      for (std::size_t i = 0; i < inner; ++i) {
        Complex acc = 0.0;
        for (std::size_t q = 0; q < in_len; ++q) {
          acc += row[q] * data[(o * in_len + q) * inner + i];
        }
        out[(o * out_len + p) * inner + i] = acc;
      }
    }
  }
  shape[axis] = out_len;
  return out;
}

}  // namespace

// ---- TrigPolynomial -------------------------------------------------------

TrigPolynomial::TrigPolynomial(int dimension, int band) : dimension_(dimension), band_(band) {
  if (dimension < 1) throw Error(ErrorCode::invalid_argument, "dimension must be positive");
  if (band < 0) throw Error(ErrorCode::invalid_argument, "band must be nonnegative");
}

TrigPolynomial::TrigPolynomial(int dimension, int band, CoefficientMap coefficients)
    : TrigPolynomial(dimension, band) {
  for (const auto& [k, c] : coefficients) check_frequency(k);
  coefficients_ = std::move(coefficients);
}

TrigPolynomial TrigPolynomial::character(std::span<const std::int64_t> k, Complex c) {
  TrigPolynomial f(static_cast<int>(k.size()), static_cast<int>(sup_norm(k)));
  f.set_coefficient(FrequencyVector(k.begin(), k.end()), c);
  return f;
}

void TrigPolynomial::check_frequency(std::span<const std::int64_t> k) const {
  if (static_cast<int>(k.size()) != dimension_) {
    throw Error(ErrorCode::dimension_mismatch, "frequency has wrong dimension");
  }
  if (sup_norm(k) > band_) {
    throw Error(ErrorCode::invalid_argument, "frequency outside the band",
                FrequencyVector(k.begin(), k.end()));
  }
}

Complex TrigPolynomial::coefficient(std::span<const std::int64_t> k) const {
  if (static_cast<int>(k.size()) != dimension_) {
    throw Error(ErrorCode::dimension_mismatch, "frequency has wrong dimension");
  }
  const auto it = coefficients_.find(FrequencyVector(k.begin(), k.end()));
  return it == coefficients_.end() ? Complex{} : it->second;
}

void TrigPolynomial::set_coefficient(FrequencyVector k, Complex value) {
  check_frequency(k);
  coefficients_[std::move(k)] = value;
}

void TrigPolynomial::add_to_coefficient(FrequencyVector k, Complex value) {
  check_frequency(k);
  coefficients_[std::move(k)] += value;
}

TrigPolynomial TrigPolynomial::with_band(int band) const {
  TrigPolynomial out(dimension_, band);
  for (const auto& [k, c] : coefficients_) {
    if (sup_norm(k) <= band) out.coefficients_.emplace(k, c);
  }
  return out;
}

TrigPolynomial TrigPolynomial::pruned(double threshold) const {
  TrigPolynomial out(dimension_, band_);
  for (const auto& [k, c] : coefficients_) {
    if (std::abs(c) > threshold) out.coefficients_.emplace(k, c);
  }
  return out;
}

TrigPolynomial& TrigPolynomial::operator+=(const TrigPolynomial& other) {
  if (other.dimension_ != dimension_) {
    throw Error(ErrorCode::dimension_mismatch, "adding polynomials of different dimension");
  }
  band_ = std::max(band_, other.band_);
  for (const auto& [k, c] : other.coefficients_) coefficients_[k] += c;
  return *this;
}

TrigPolynomial& TrigPolynomial::operator-=(const TrigPolynomial& other) {
  if (other.dimension_ != dimension_) {
    throw Error(ErrorCode::dimension_mismatch, "subtracting polynomials of different dimension");
  }
  band_ = std::max(band_, other.band_);
  for (const auto& [k, c] : other.coefficients_) coefficients_[k] -= c;
  return *this;
}

TrigPolynomial& TrigPolynomial::operator*=(Complex scale) {
  for (auto& [k, c] : coefficients_) c *= scale;
  return *this;
}

double max_coefficient_difference(const TrigPolynomial& a, const TrigPolynomial& b) {
  if (a.dimension() != b.dimension()) {
    throw Error(ErrorCode::dimension_mismatch, "comparing polynomials of different dimension");
  }
  double m = 0.0;
  for (const auto& [k, c] : a.coefficients()) m = std::max(m, std::abs(c - b.coefficient(k)));
  for (const auto& [k, c] : b.coefficients()) {
    if (!a.coefficients().contains(k)) m = std::max(m, std::abs(c));
  }
  return m;
}

double max_coefficient_magnitude(const TrigPolynomial& f) {
  double m = 0.0;
  for (const auto& [k, c] : f.coefficients()) m = std::max(m, std::abs(c));
  return m;
}

// ---- GridFunction ---------------------------------------------------------

GridFunction::GridFunction(int dimension, int resolution)
    : dimension_(dimension), resolution_(resolution) {
  if (dimension < 1) throw Error(ErrorCode::invalid_argument, "dimension must be positive");
  if (resolution < 1) throw Error(ErrorCode::invalid_argument, "grid resolution must be positive");
  samples_.assign(ipow(static_cast<std::size_t>(resolution), dimension), Complex{});
}

GridFunction::GridFunction(int dimension, int resolution, std::vector<Complex> samples)
    : GridFunction(dimension, resolution) {
  if (samples.size() != samples_.size()) {
    throw Error(ErrorCode::dimension_mismatch, "sample count does not match N^n");
  }
  samples_ = std::move(samples);
}

std::size_t GridFunction::flat_index(std::span<const std::int64_t> index) const {
  if (static_cast<int>(index.size()) != dimension_) {
    throw Error(ErrorCode::dimension_mismatch, "grid index has wrong dimension");
  }
  std::size_t flat = 0;
  for (auto i : index) {
    const auto wrapped = ((i % resolution_) + resolution_) % resolution_;
    flat = flat * static_cast<std::size_t>(resolution_) + static_cast<std::size_t>(wrapped);
  }
  return flat;
}

std::vector<std::int64_t> GridFunction::multi_index(std::size_t flat) const {
  std::vector<std::int64_t> index(static_cast<std::size_t>(dimension_));
  for (int a = dimension_ - 1; a >= 0; --a) {
    index[static_cast<std::size_t>(a)] = static_cast<std::int64_t>(flat % static_cast<std::size_t>(resolution_));
    flat /= static_cast<std::size_t>(resolution_);
  }
  return index;
}

// ---- transforms -----------------------------------------------------------

Complex evaluate(const TrigPolynomial& f, std::span<const double> x) {
  if (static_cast<int>(x.size()) != f.dimension()) {
    throw Error(ErrorCode::dimension_mismatch, "evaluation point has wrong dimension");
  }
  // Reduce each coordinate mod 1 before forming phases so large shifts do not
  // cost accuracy.
  std::vector<double> reduced(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) reduced[i] = x[i] - std::floor(x[i]);
  Complex sum = 0.0;
  for (const auto& [k, c] : f.coefficients()) {
    double phase = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) phase += static_cast<double>(k[i]) * reduced[i];
    phase -= std::floor(phase);
    sum += c * std::polar(1.0, two_pi * phase);
  }
  return sum;
}

GridFunction to_grid(const TrigPolynomial& f, int resolution) {
  const int n = f.dimension();
  const int band = f.band();
  if (resolution < 2 * band + 1) {
    throw Error(ErrorCode::aliasing, "grid resolution N must satisfy N >= 2K+1");
  }
  const auto width = static_cast<std::size_t>(2 * band + 1);
  std::vector<std::size_t> shape(static_cast<std::size_t>(n), width);
  std::vector<Complex> dense(ipow(width, n), Complex{});
  for (const auto& [k, c] : f.coefficients()) {
    std::size_t flat = 0;
    for (auto ki : k) flat = flat * width + static_cast<std::size_t>(ki + band);
    dense[flat] = c;
  }
  // matrix[j][m] = exp(+2 pi i m j / N)
  const auto table = twiddles(band, resolution, +1.0);
  const auto N = static_cast<std::size_t>(resolution);
  std::vector<Complex> matrix(N * width);
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t m = 0; m < width; ++m) matrix[j * width + m] = table[m * N + j];
  }
  for (std::size_t axis = 0; axis < shape.size(); ++axis) {
    dense = apply_along_axis(dense, shape, axis, N, matrix);
  }
  return GridFunction(n, resolution, std::move(dense));
}

TrigPolynomial from_grid(const GridFunction& g, int band) {
  const int n = g.dimension();
  const int resolution = g.resolution();
  if (band < 0) throw Error(ErrorCode::invalid_argument, "band must be nonnegative");
  if (resolution < 2 * band + 1) {
    throw Error(ErrorCode::aliasing, "grid resolution N must satisfy N >= 2K+1");
  }
  const auto width = static_cast<std::size_t>(2 * band + 1);
  const auto N = static_cast<std::size_t>(resolution);
  // matrix[m][j] = exp(-2 pi i m j / N) / N
  auto matrix = twiddles(band, resolution, -1.0);
  for (auto& z : matrix) z /= static_cast<double>(resolution);

  std::vector<std::size_t> shape(static_cast<std::size_t>(n), N);
  std::vector<Complex> dense = g.samples();
  for (std::size_t axis = 0; axis < shape.size(); ++axis) {
    dense = apply_along_axis(dense, shape, axis, width, matrix);
  }
  TrigPolynomial::CoefficientMap coeffs;
  const auto modes = frequency_box(n, band);
  for (std::size_t i = 0; i < modes.size(); ++i) coeffs.emplace(modes[i], dense[i]);
  return TrigPolynomial(n, band, std::move(coeffs));
}

double fejer_weight(std::span<const std::int64_t> k, int order) {
  double w = 1.0;
  for (auto ki : k) {
    w *= std::max(0.0, 1.0 - static_cast<double>(std::llabs(ki)) / order);
  }
  return w;
}

TrigPolynomial fejer_reconstruct(const TrigPolynomial& coefficients, int order) {
  if (order < 1) throw Error(ErrorCode::invalid_argument, "Fejer order N must be >= 1");
  TrigPolynomial out(coefficients.dimension(), order - 1);
  for (const auto& [k, c] : coefficients.coefficients()) {
    if (sup_norm(k) >= order) continue;
    out.set_coefficient(k, c * fejer_weight(k, order));
  }
  return out;
}

double sobolev_norm(const TrigPolynomial& f, double s) {
  double sum = 0.0;
  for (const auto& [k, c] : f.coefficients()) {
    double k2 = 0.0;
    for (auto ki : k) k2 += static_cast<double>(ki) * static_cast<double>(ki);
    sum += std::pow(1.0 + k2, s) * std::norm(c);
  }
  return std::sqrt(sum);
}

// ---- phantoms -------------------------------------------------------------

PhantomKind parse_phantom_kind(std::string_view name) {
  if (name == "random-complex") return PhantomKind::random_complex;
  if (name == "random-real") return PhantomKind::random_real;
  if (name == "separable-bump") return PhantomKind::separable_bump;
  throw Error(ErrorCode::invalid_argument, "unknown phantom kind '" + std::string(name) + "'");
}

std::string_view to_string(PhantomKind kind) {
  switch (kind) {
    case PhantomKind::random_complex: return "random-complex";
    case PhantomKind::random_real: return "random-real";
    case PhantomKind::separable_bump: return "separable-bump";
  }
  return "unknown";
}

TrigPolynomial make_phantom(int dimension, int band, PhantomKind kind, std::uint64_t seed) {
  TrigPolynomial f(dimension, band);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const auto modes = frequency_box(dimension, band);

  switch (kind) {
    case PhantomKind::random_complex:
      for (const auto& k : modes) {
        const double re = unit(rng);
        const double im = unit(rng);
        f.set_coefficient(k, {re, im});
      }
      break;
    case PhantomKind::random_real:
      for (const auto& k : modes) {
        if (is_zero(k)) {
          f.set_coefficient(k, unit(rng));
          continue;
        }
        if (sign_normalized(k) != k) continue;
        const double re = unit(rng);
        const double im = unit(rng);
        FrequencyVector minus_k = k;
        for (auto& x : minus_k) x = -x;
        f.set_coefficient(k, {re, im});
        f.set_coefficient(minus_k, {re, -im});
      }
      break;
    case PhantomKind::separable_bump: {
      std::uniform_real_distribution<double> centre_dist(0.0, 1.0);
      std::vector<double> centre(static_cast<std::size_t>(dimension));
      for (auto& c : centre) c = centre_dist(rng);
      const double order = band + 1.0;
      for (const auto& k : modes) {
        Complex c = 1.0;
        for (std::size_t j = 0; j < k.size(); ++j) {
          const double weight = (1.0 - static_cast<double>(std::llabs(k[j])) / order) / order;
          c *= weight * std::polar(1.0, -two_pi * static_cast<double>(k[j]) * centre[j]);
        }
        f.set_coefficient(k, c);
      }
      break;
    }
  }
  return f;
}

}  // namespace torus_xray
