#include "torus_xray/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>

#include "torus_xray/error.hpp"
#include "torus_xray/parallel.hpp"

namespace torus_xray {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
const Complex two_pi_i{0.0, two_pi};

using Matrix = std::vector<std::vector<double>>;

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

void append_sorted(int dimension, int order, int lowest, MultiIndex& prefix,
                   std::vector<MultiIndex>& out) {
  if (static_cast<int>(prefix.size()) == order) {
    out.push_back(prefix);
    return;
  }
  for (int i = lowest; i < dimension; ++i) {
    prefix.push_back(i);
    append_sorted(dimension, order, i, prefix, out);
    prefix.pop_back();
  }
}

TrigPolynomial partial_derivative(const TrigPolynomial& g, std::size_t axis) {
  TrigPolynomial out(g.dimension(), g.band());
  for (const auto& [k, c] : g.coefficients()) {
    out.set_coefficient(k, two_pi_i * static_cast<double>(k[axis]) * c);
  }
  return out;
}

// Re-expresses p(v) in new variables w through v_i = sum_j change[i][j] w_j.
HomogeneousPolynomial substitute(const HomogeneousPolynomial& p, const Matrix& change) {
  const int n = p.dimension();
  HomogeneousPolynomial out(n, p.degree());
  for (const auto& [alpha, c] : p.coefficients()) {
    std::map<Exponent, Complex> acc{{Exponent(static_cast<std::size_t>(n), 0), c}};
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      for (int power = 0; power < alpha[i]; ++power) {
        std::map<Exponent, Complex> next;
        for (const auto& [beta, d] : acc) {
          for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
            if (change[i][j] == 0.0) continue;
            Exponent gamma = beta;
            ++gamma[j];
            next[gamma] += d * change[i][j];
          }
        }
        acc = std::move(next);
      }
    }
    for (auto& [beta, d] : acc) out.add_term(beta, d);
  }
  return out;
}

// Orthonormal rows; row 0 is k/|k|, the rest completed by Gram-Schmidt over
// the standard basis, always taking the candidate with the largest residual.
Matrix frame_for(std::span<const std::int64_t> k) {
  const std::size_t n = k.size();
  Matrix frame;
  std::vector<double> first(k.begin(), k.end());
  double norm = 0.0;
  for (double x : first) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : first) x /= norm;
  frame.push_back(first);

  std::vector<bool> used(n, false);
  auto residual_of = [&](std::size_t axis) {
    std::vector<double> r(n, 0.0);
    r[axis] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : frame) {
        double proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += q[i] * r[i];
        for (std::size_t i = 0; i < n; ++i) r[i] -= proj * q[i];
      }
    }
    return r;
  };
  while (frame.size() < n) {
    std::size_t best = n;
    double best_norm = -1.0;
    std::vector<double> best_residual;
    for (std::size_t axis = 0; axis < n; ++axis) {
      if (used[axis]) continue;
      auto r = residual_of(axis);
      double rn = 0.0;
      for (double x : r) rn += x * x;
      if (rn > best_norm) {
        best_norm = rn;
        best = axis;
        best_residual = std::move(r);
      }
    }
    used[best] = true;
    const double rn = std::sqrt(best_norm);
    for (double& x : best_residual) x /= rn;
    frame.push_back(std::move(best_residual));
  }
  return frame;
}

}  // namespace

// ---- multi-index bookkeeping ---------------------------------------------

double multinomial(std::span<const int> exponent) {
  int total = 0;
  double denom = 1.0;
  for (int a : exponent) {
    total += a;
    denom *= factorial(a);
  }
  return factorial(total) / denom;
}

Exponent exponent_of(const MultiIndex& index, int dimension) {
  Exponent alpha(static_cast<std::size_t>(dimension), 0);
  for (int i : index) {
    if (i < 0 || i >= dimension) throw Error(ErrorCode::invalid_argument, "tensor index out of range");
    ++alpha[static_cast<std::size_t>(i)];
  }
  return alpha;
}

MultiIndex index_of(const Exponent& exponent) {
  MultiIndex index;
  for (std::size_t i = 0; i < exponent.size(); ++i) {
    for (int a = 0; a < exponent[i]; ++a) index.push_back(static_cast<int>(i));
  }
  return index;
}

std::vector<MultiIndex> sorted_indices(int dimension, int order) {
  if (order < 0) throw Error(ErrorCode::invalid_argument, "tensor order must be nonnegative");
  std::vector<MultiIndex> out;
  MultiIndex prefix;
  append_sorted(dimension, order, 0, prefix, out);
  return out;
}

std::vector<Exponent> monomial_exponents(int dimension, int degree) {
  std::vector<Exponent> out;
  for (const auto& index : sorted_indices(dimension, degree)) out.push_back(exponent_of(index, dimension));
  std::sort(out.begin(), out.end());
  return out;
}

// ---- HomogeneousPolynomial ------------------------------------------------

HomogeneousPolynomial::HomogeneousPolynomial(int dimension, int degree)
    : dimension_(dimension), degree_(degree) {
  if (dimension < 1) throw Error(ErrorCode::invalid_argument, "dimension must be positive");
  if (degree < 0) throw Error(ErrorCode::invalid_argument, "degree must be nonnegative");
}

HomogeneousPolynomial::HomogeneousPolynomial(int dimension, int degree, CoefficientMap coefficients)
    : HomogeneousPolynomial(dimension, degree) {
  for (auto& [alpha, c] : coefficients) add_term(alpha, c);
}

Complex HomogeneousPolynomial::coefficient(const Exponent& alpha) const {
  const auto it = coefficients_.find(alpha);
  return it == coefficients_.end() ? Complex{} : it->second;
}

void HomogeneousPolynomial::add_term(Exponent alpha, Complex value) {
  if (static_cast<int>(alpha.size()) != dimension_) {
    throw Error(ErrorCode::dimension_mismatch, "monomial exponent has wrong dimension");
  }
  int total = 0;
  for (int a : alpha) {
    if (a < 0) throw Error(ErrorCode::invalid_argument, "negative monomial exponent");
    total += a;
  }
  if (total != degree_) {
    throw Error(ErrorCode::invalid_argument, "monomial degree does not match polynomial degree");
  }
  coefficients_[std::move(alpha)] += value;
}

double HomogeneousPolynomial::max_coefficient_magnitude() const {
  double m = 0.0;
  for (const auto& [alpha, c] : coefficients_) m = std::max(m, std::abs(c));
  return m;
}

Complex evaluate_polynomial(const HomogeneousPolynomial& p, std::span<const double> v) {
  if (static_cast<int>(v.size()) != p.dimension()) {
    throw Error(ErrorCode::dimension_mismatch, "evaluation point has wrong dimension");
  }
  Complex sum = 0.0;
  for (const auto& [alpha, c] : p.coefficients()) {
    double monomial = 1.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) monomial *= std::pow(v[i], alpha[i]);
    sum += c * monomial;
  }
  return sum;
}

double max_coefficient_difference(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
  double m = 0.0;
  for (const auto& [alpha, c] : a.coefficients()) m = std::max(m, std::abs(c - b.coefficient(alpha)));
  for (const auto& [alpha, c] : b.coefficients()) {
    if (!a.coefficients().contains(alpha)) m = std::max(m, std::abs(c));
  }
  return m;
}

HomogeneousPolynomial divide_by_linear_form(const HomogeneousPolynomial& p,
                                            std::span<const std::int64_t> k, double tol) {
  const int n = p.dimension();
  if (static_cast<int>(k.size()) != n) {
    throw Error(ErrorCode::dimension_mismatch, "frequency and polynomial differ in dimension");
  }
  if (is_zero(k)) throw Error(ErrorCode::invalid_argument, "cannot divide by k.v with k = 0");
  if (p.degree() < 1) {
    throw Error(ErrorCode::invalid_argument, "division by a linear form needs degree >= 1");
  }

  const Matrix frame = frame_for(k);
  const auto un = static_cast<std::size_t>(n);
  // Frame coordinates w = frame * v, so v_i = sum_j frame[j][i] w_j.
  Matrix to_frame(un, std::vector<double>(un));
  for (std::size_t i = 0; i < un; ++i) {
    for (std::size_t j = 0; j < un; ++j) to_frame[i][j] = frame[j][i];
  }
  const HomogeneousPolynomial in_frame = substitute(p, to_frame);

  // Monomials without w_0 = v_par are P restricted to k-perp; they must vanish.
  const double scale = in_frame.max_coefficient_magnitude();
  double residual = 0.0;
  for (const auto& [alpha, c] : in_frame.coefficients()) {
    if (alpha[0] == 0) residual = std::max(residual, std::abs(c));
  }
  if (residual > tol * scale) {
    throw Error(ErrorCode::not_in_kernel, "polynomial does not vanish on the hyperplane k.v = 0",
                residual);
  }

  double knorm = 0.0;
  for (auto x : k) knorm += static_cast<double>(x) * static_cast<double>(x);
  knorm = std::sqrt(knorm);

  HomogeneousPolynomial quotient_in_frame(n, p.degree() - 1);
  for (const auto& [alpha, c] : in_frame.coefficients()) {
    if (alpha[0] == 0) continue;
    Exponent lowered = alpha;
    --lowered[0];
    quotient_in_frame.add_term(std::move(lowered), c / knorm);
  }
  // Back to standard coordinates: w_j = sum_i frame[j][i] v_i.
  return substitute(quotient_in_frame, frame);
}

// ---- SymmetricTensorField -------------------------------------------------

SymmetricTensorField::SymmetricTensorField(int dimension, int order, int band)
    : dimension_(dimension), order_(order), band_(band) {
  if (dimension < 1) throw Error(ErrorCode::invalid_argument, "dimension must be positive");
  if (order < 0) throw Error(ErrorCode::invalid_argument, "tensor order must be nonnegative");
  if (band < 0) throw Error(ErrorCode::invalid_argument, "band must be nonnegative");
}

SymmetricTensorField::SymmetricTensorField(int dimension, int order, int band, ComponentMap components)
    : SymmetricTensorField(dimension, order, band) {
  for (auto& [index, values] : components) set_component(index, std::move(values));
}

void SymmetricTensorField::check_index(const MultiIndex& index) const {
  if (static_cast<int>(index.size()) != order_) {
    throw Error(ErrorCode::dimension_mismatch, "multi-index length differs from tensor order");
  }
  if (!std::is_sorted(index.begin(), index.end())) {
    throw Error(ErrorCode::invalid_argument, "symmetric tensor components use sorted multi-indices");
  }
  for (int i : index) {
    if (i < 0 || i >= dimension_) throw Error(ErrorCode::invalid_argument, "tensor index out of range");
  }
}

TrigPolynomial SymmetricTensorField::component(const MultiIndex& index) const {
  check_index(index);
  const auto it = components_.find(index);
  return it == components_.end() ? TrigPolynomial(dimension_, band_) : it->second;
}

void SymmetricTensorField::set_component(MultiIndex index, TrigPolynomial values) {
  check_index(index);
  if (values.dimension() != dimension_) {
    throw Error(ErrorCode::dimension_mismatch, "component has wrong dimension");
  }
  if (values.band() > band_) throw Error(ErrorCode::invalid_argument, "component band exceeds field band");
  components_.insert_or_assign(std::move(index), std::move(values));
}

std::vector<FrequencyVector> SymmetricTensorField::support() const {
  std::set<FrequencyVector> keys;
  for (const auto& [index, values] : components_) {
    for (const auto& [k, c] : values.coefficients()) keys.insert(k);
  }
  return {keys.begin(), keys.end()};
}

SymmetricTensorField symmetrize(int dimension, int order, const UnsortedComponents& components) {
  int band = 0;
  for (const auto& [index, values] : components) {
    if (static_cast<int>(index.size()) != order) {
      throw Error(ErrorCode::dimension_mismatch, "multi-index length differs from tensor order");
    }
    if (values.dimension() != dimension) {
      throw Error(ErrorCode::dimension_mismatch, "component has wrong dimension");
    }
    band = std::max(band, values.band());
  }
  std::map<MultiIndex, TrigPolynomial> sums;
  for (const auto& [index, values] : components) {
    MultiIndex sorted = index;
    std::sort(sorted.begin(), sorted.end());
    auto [it, inserted] = sums.try_emplace(sorted, dimension, band);
    it->second += values;
  }
  SymmetricTensorField out(dimension, order, band);
  for (auto& [index, sum] : sums) {
    const double arrangements = multinomial(exponent_of(index, dimension));
    out.set_component(index, (1.0 / arrangements) * sum.with_band(band));
  }
  return out;
}

SymmetricTensorField gradient(const SymmetricTensorField& h) {
  const int n = h.dimension();
  const int order = h.order() + 1;
  SymmetricTensorField out(n, order, h.band());
  // (sigma nabla h)_L = (1/m) sum_p d_{L_p} h_{L without slot p}.
  for (const auto& target : sorted_indices(n, order)) {
    TrigPolynomial sum(n, h.band());
    for (std::size_t p = 0; p < target.size(); ++p) {
      MultiIndex rest = target;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
      sum += partial_derivative(h.component(rest), static_cast<std::size_t>(target[p]));
    }
    out.set_component(target, (1.0 / order) * sum);
  }
  return out;
}

HomogeneousPolynomial symbol_at(const SymmetricTensorField& f, std::span<const std::int64_t> k) {
  HomogeneousPolynomial p(f.dimension(), f.order());
  for (const auto& [index, values] : f.components()) {
    const Complex c = values.coefficient(k);
    if (c == Complex{}) continue;
    const Exponent alpha = exponent_of(index, f.dimension());
    p.add_term(alpha, multinomial(alpha) * c);
  }
  return p;
}

SymmetricTensorField field_from_symbols(int dimension, int order, int band,
                                        const std::map<FrequencyVector, HomogeneousPolynomial>& symbols) {
  std::map<MultiIndex, TrigPolynomial> components;
  for (const auto& index : sorted_indices(dimension, order)) components.emplace(index, TrigPolynomial(dimension, band));
  for (const auto& [k, p] : symbols) {
    if (p.degree() != order || p.dimension() != dimension) {
      throw Error(ErrorCode::dimension_mismatch, "symbol shape does not match the tensor field");
    }
    for (const auto& [alpha, c] : p.coefficients()) {
      components.at(index_of(alpha)).add_to_coefficient(k, c / multinomial(alpha));
    }
  }
  return SymmetricTensorField(dimension, order, band, std::move(components));
}

Complex evaluate(const SymmetricTensorField& f, std::span<const double> x, std::span<const double> v) {
  if (static_cast<int>(v.size()) != f.dimension()) {
    throw Error(ErrorCode::dimension_mismatch, "tangent vector has wrong dimension");
  }
  Complex sum = 0.0;
  for (const auto& [index, values] : f.components()) {
    double weight = multinomial(exponent_of(index, f.dimension()));
    for (int i : index) weight *= v[static_cast<std::size_t>(i)];
    if (weight == 0.0) continue;
    sum += weight * evaluate(values, x);
  }
  return sum;
}

TrigPolynomial tensor_xray_forward(const SymmetricTensorField& f, const Direction& v) {
  if (static_cast<int>(v.dimension()) != f.dimension()) {
    throw Error(ErrorCode::dimension_mismatch, "direction and tensor field differ in dimension");
  }
  const std::vector<double> vd(v.entries().begin(), v.entries().end());
  TrigPolynomial out(f.dimension(), f.band());
  for (const auto& k : f.support()) {
    if (dot(k, v.entries()) != 0) continue;
    out.set_coefficient(k, evaluate_polynomial(symbol_at(f, k), vd));
  }
  return out;
}

SymmetricTensorField solenoidal_decompose(const SymmetricTensorField& f, double tol) {
  if (f.order() < 1) throw Error(ErrorCode::invalid_argument, "solenoidal decomposition needs order >= 1");
  const int n = f.dimension();
  const auto support = f.support();

  std::vector<HomogeneousPolynomial> symbols;
  symbols.reserve(support.size());
  double scale = 0.0;
  for (const auto& k : support) {
    symbols.push_back(symbol_at(f, k));
    scale = std::max(scale, symbols.back().max_coefficient_magnitude());
  }

  std::vector<std::optional<HomogeneousPolynomial>> quotients(support.size());
  parallel_for(support.size(), [&](std::size_t i) {
    const auto& k = support[i];
    if (is_zero(k)) {
      if (symbols[i].max_coefficient_magnitude() > tol * scale) {
        throw Error(ErrorCode::not_solenoidal, "mean value of the tensor field is nonzero", k);
      }
      return;
    }
    try {
      auto g = divide_by_linear_form(symbols[i], k, tol);
      // sigma nabla h has symbol 2 pi i (k.v) h(k, v).
      HomogeneousPolynomial h(n, f.order() - 1);
      for (const auto& [alpha, c] : g.coefficients()) h.add_term(alpha, c / two_pi_i);
      quotients[i] = std::move(h);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::not_in_kernel) throw;
      throw Error(ErrorCode::not_solenoidal, "symbol does not vanish on k-perp", k);
    }
  });

  std::map<FrequencyVector, HomogeneousPolynomial> by_frequency;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (quotients[i]) by_frequency.emplace(support[i], std::move(*quotients[i]));
  }
  return field_from_symbols(n, f.order() - 1, f.band(), by_frequency);
}

std::pair<std::size_t, std::size_t> kernel_dimension_bruteforce(int dimension, int order,
                                                                std::span<const std::int64_t> k) {
  if (static_cast<int>(k.size()) != dimension) {
    throw Error(ErrorCode::dimension_mismatch, "frequency has wrong dimension");
  }
  if (is_zero(k)) throw Error(ErrorCode::invalid_argument, "kernel oracle requires k != 0");
  if (order < 1) throw Error(ErrorCode::invalid_argument, "kernel oracle requires order >= 1");

  const auto monomials = monomial_exponents(dimension, order);
  const int bound = order * (static_cast<int>(sup_norm(k)) + 1) + 1;

  std::vector<IntVector> evaluation;
  for (const auto& v : frequency_box(dimension, bound)) {
    if (dot(v, k) != 0 || is_zero(v)) continue;
    IntVector row;
    row.reserve(monomials.size());
    for (const auto& alpha : monomials) {
      std::int64_t m = 1;
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        for (int a = 0; a < alpha[i]; ++a) m *= v[i];
      }
      row.push_back(m);
    }
    evaluation.push_back(std::move(row));
  }
  const std::size_t kernel_dim = monomials.size() - integer_rank(evaluation);

  std::map<Exponent, std::size_t> column;
  for (std::size_t c = 0; c < monomials.size(); ++c) column.emplace(monomials[c], c);
  std::vector<IntVector> image;
  for (const auto& beta : monomial_exponents(dimension, order - 1)) {
    IntVector row(monomials.size(), 0);
    for (std::size_t i = 0; i < k.size(); ++i) {
      Exponent alpha = beta;
      ++alpha[i];
      row[column.at(alpha)] += k[i];
    }
    image.push_back(std::move(row));
  }
  const std::size_t image_dim = integer_rank(image);
  return {kernel_dim, image_dim};
}

double sobolev_norm(const SymmetricTensorField& f, double s) {
  double sum = 0.0;
  for (const auto& [index, values] : f.components()) {
    const double norm = sobolev_norm(values, s);
    sum += multinomial(exponent_of(index, f.dimension())) * norm * norm;
  }
  return std::sqrt(sum);
}

double max_component_difference(const SymmetricTensorField& a, const SymmetricTensorField& b) {
  if (a.dimension() != b.dimension() || a.order() != b.order()) {
    throw Error(ErrorCode::dimension_mismatch, "comparing tensor fields of different shape");
  }
  double m = 0.0;
  for (const auto& index : sorted_indices(a.dimension(), a.order())) {
    m = std::max(m, max_coefficient_difference(a.component(index), b.component(index)));
  }
  return m;
}

double max_coefficient_magnitude(const SymmetricTensorField& f) {
  double m = 0.0;
  for (const auto& [index, values] : f.components()) m = std::max(m, max_coefficient_magnitude(values));
  return m;
}

SymmetricTensorField make_tensor_phantom(int dimension, int order, int band, std::uint64_t seed) {
  SymmetricTensorField out(dimension, order, band);
  std::uint64_t slot = 0;
  for (const auto& index : sorted_indices(dimension, order)) {
    ++slot;
    out.set_component(index, make_phantom(dimension, band, PhantomKind::random_complex,
                                          seed * 0x9E3779B97F4A7C15ULL + slot));
  }
  return out;
}

SymmetricTensorField make_potential_phantom(int dimension, int order, int band, std::uint64_t seed) {
  const auto raw = make_tensor_phantom(dimension, order, band, seed);
  SymmetricTensorField out(dimension, order, band);
  const FrequencyVector zero(static_cast<std::size_t>(dimension), 0);
  for (const auto& [index, values] : raw.components()) {
    auto centred = values;
    centred.set_coefficient(zero, 0.0);
    out.set_component(index, centred.pruned());
  }
  return out;
}

}  // namespace torus_xray
