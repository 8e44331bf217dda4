#pragma once

// Symmetric m-tensor fields on T^n and the tensor X-ray transform
//
//   R^m f(x, v) = int_0^1 f_{i_1...i_m}(x + t v) v^{i_1} ... v^{i_m} dt.
//
// At a fixed frequency k a symmetric m-tensor is the same thing as a
// homogeneous degree-m polynomial in v (its "symbol"); the two storage forms
// differ by multinomial multiplicities, converted only by symbol_at() and
// field_from_symbols().
//
// Indices are 0-based: component (0, 1) of a 2-tensor on T^2 is f_{12}.

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "torus_xray/lattice.hpp"
#include "torus_xray/spectral.hpp"

namespace torus_xray {

// Sorted list of m tensor slots, each in [0, n).
using MultiIndex = std::vector<int>;
// Monomial exponent alpha in n variables, |alpha| = degree.
using Exponent = std::vector<int>;

/// m! / (alpha_1! ... alpha_n!): number of distinct index orderings that
/// collapse onto the monomial v^alpha.
double multinomial(std::span<const int> exponent);
Exponent exponent_of(const MultiIndex& index, int dimension);
MultiIndex index_of(const Exponent& exponent);
/// All sorted multi-indices of length `order` with entries in [0, n).
std::vector<MultiIndex> sorted_indices(int dimension, int order);
std::vector<Exponent> monomial_exponents(int dimension, int degree);

class HomogeneousPolynomial {
 public:
  using CoefficientMap = std::map<Exponent, Complex>;

  HomogeneousPolynomial(int dimension, int degree);
  HomogeneousPolynomial(int dimension, int degree, CoefficientMap coefficients);

  int dimension() const noexcept { return dimension_; }
  int degree() const noexcept { return degree_; }
  const CoefficientMap& coefficients() const noexcept { return coefficients_; }

  Complex coefficient(const Exponent& alpha) const;
  void add_term(Exponent alpha, Complex value);
  double max_coefficient_magnitude() const;

 private:
  int dimension_;
  int degree_;
  CoefficientMap coefficients_;
};

Complex evaluate_polynomial(const HomogeneousPolynomial& p, std::span<const double> v);
double max_coefficient_difference(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b);

inline constexpr double default_division_tolerance = 1e-9;

/// Returns G of degree m-1 with P(v) = (k.v) G(v). P is re-expressed in an
/// orthonormal frame whose first axis is k/|k|; the part free of that axis
/// must be below tol times the largest frame coefficient, otherwise
/// Error(not_in_kernel) reports the residual.
HomogeneousPolynomial divide_by_linear_form(const HomogeneousPolynomial& p,
                                            std::span<const std::int64_t> k,
                                            double tol = default_division_tolerance);

/// Symmetric tensor field stored on sorted multi-indices only.
class SymmetricTensorField {
 public:
  using ComponentMap = std::map<MultiIndex, TrigPolynomial>;

  SymmetricTensorField(int dimension, int order, int band);
  SymmetricTensorField(int dimension, int order, int band, ComponentMap components);

  int dimension() const noexcept { return dimension_; }
  int order() const noexcept { return order_; }
  int band() const noexcept { return band_; }
  const ComponentMap& components() const noexcept { return components_; }

  /// Zero polynomial for components that are not stored.
  TrigPolynomial component(const MultiIndex& index) const;
  void set_component(MultiIndex index, TrigPolynomial values);

  /// Union of the frequencies stored in any component, sorted.
  std::vector<FrequencyVector> support() const;

 private:
  void check_index(const MultiIndex& index) const;

  int dimension_;
  int order_;
  int band_;
  ComponentMap components_;
};

using UnsortedComponents = std::map<std::vector<int>, TrigPolynomial>;

/// sigma f at sorted J = average of f over all index orderings of J, with
/// missing orderings counted as zero.
SymmetricTensorField symmetrize(int dimension, int order, const UnsortedComponents& components);

/// sigma(nabla h) with the flat connection: derivative factor 2 pi i k_j.
SymmetricTensorField gradient(const SymmetricTensorField& h);

/// fhat(k, .) as a homogeneous polynomial of degree m.
HomogeneousPolynomial symbol_at(const SymmetricTensorField& f, std::span<const std::int64_t> k);

/// Inverse of symbol_at over a set of frequencies.
SymmetricTensorField field_from_symbols(int dimension, int order, int band,
                                        const std::map<FrequencyVector, HomogeneousPolynomial>& symbols);

/// f(x, v) = f_{i_1..i_m}(x) v^{i_1} ... v^{i_m}.
Complex evaluate(const SymmetricTensorField& f, std::span<const double> x, std::span<const double> v);

/// Coefficient at k is [k.v == 0] fhat(k, v).
TrigPolynomial tensor_xray_forward(const SymmetricTensorField& f, const Direction& v);

/// Finds symmetric h of order m-1 with sigma(nabla h) = f. Throws
/// Error(not_solenoidal) naming the first frequency whose symbol does not
/// vanish on k-perp (k = 0 included).
SymmetricTensorField solenoidal_decompose(const SymmetricTensorField& f,
                                          double tol = default_division_tolerance);

/// Exact-rank oracle at one frequency: (dim of degree-m polynomials vanishing
/// on the lattice points of k-perp within sup-norm B, dim of (k.v) * degree
/// m-1 polynomials), with B = m (|k|_inf + 1) + 1.
std::pair<std::size_t, std::size_t> kernel_dimension_bruteforce(int dimension, int order,
                                                                std::span<const std::int64_t> k);

/// sqrt(sum over all (unsorted) index tuples of |f_I|_{H^s}^2).
double sobolev_norm(const SymmetricTensorField& f, double s);

double max_component_difference(const SymmetricTensorField& a, const SymmetricTensorField& b);
double max_coefficient_magnitude(const SymmetricTensorField& f);

/// Random complex components on every sorted index, deterministic in seed.
SymmetricTensorField make_tensor_phantom(int dimension, int order, int band, std::uint64_t seed);

/// Same as make_tensor_phantom but with fhat(0) = 0 in every component, the
/// normalisation solenoidal_decompose returns.
SymmetricTensorField make_potential_phantom(int dimension, int order, int band, std::uint64_t seed);

}  // namespace torus_xray
