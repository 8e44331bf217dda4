#pragma once

// The d-plane Radon transform R_d on T^n, viewed as a family of functions on
// T^n indexed by direction tuples A:
//
//   R_d f(x, A) = int_{[0,1]^d} f(x + t_1 v_1 + ... + t_d v_d) dt.
//
// On characters R_d e_k(., A) = e_k * prod_{v in A} [k.v == 0], so every
// operation here is a mode-by-mode integer test.

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "torus_xray/lattice.hpp"
#include "torus_xray/spectral.hpp"

namespace torus_xray {

/// R_d f stored per direction tuple. Entries are kept in canonical tuple order.
class RadonData {
 public:
  using EntryMap = std::map<DirectionTuple, TrigPolynomial>;

  RadonData(int dimension, int plane_dimension, int band);

  int dimension() const noexcept { return dimension_; }
  int plane_dimension() const noexcept { return plane_dimension_; }
  int band() const noexcept { return band_; }
  const EntryMap& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  /// Inserts or replaces the entry for A. Validates dimensions and band.
  void set(const DirectionTuple& tuple, TrigPolynomial values);
  bool erase(const DirectionTuple& tuple) { return entries_.erase(tuple) > 0; }
  const TrigPolynomial* find(const DirectionTuple& tuple) const;

 private:
  int dimension_;
  int plane_dimension_;
  int band_;
  EntryMap entries_;
};

/// Fourier-slice forward map: keeps fhat(k) where k is orthogonal to every
/// vector of A and zeroes the rest.
TrigPolynomial forward_spectral(const TrigPolynomial& f, const DirectionTuple& tuple);

/// Composite rectangle rule with M nodes per axis on [0,1]^d. Exact to
/// roundoff once M exceeds the largest |k.v| among the modes of f.
Complex forward_quadrature(const TrigPolynomial& f, std::span<const double> x,
                           const DirectionTuple& tuple, int nodes);

/// Smallest node count for which forward_quadrature is exact on f.
int quadrature_exactness_bound(const TrigPolynomial& f, const DirectionTuple& tuple);

RadonData forward_all(const TrigPolynomial& f, const std::vector<DirectionTuple>& tuples);

/// {orthogonal_tuple(k, d) : |k|_inf <= K}, de-duplicated and sorted.
std::vector<DirectionTuple> default_acquisition_set(int dimension, int plane_dimension, int band);

/// Reads fhat(k) for every |k|_inf <= K off the first stored tuple orthogonal
/// to k. Throws Error(incomplete_data) naming the first uncovered k.
TrigPolynomial invert(const RadonData& data, int band);

struct RangeConflict {
  enum class Kind {
    off_slice,     // F(k, A) != 0 although some v in A has k.v != 0
    disagreement,  // two tuples orthogonal to k carry different values
  };
  Kind kind;
  FrequencyVector k;
  DirectionTuple tuple;
  // For disagreement, the first orthogonal tuple that set the reference value.
  std::optional<DirectionTuple> reference;
  double magnitude;
};

struct RangeReport {
  bool consistent = true;
  TrigPolynomial witness;
  std::vector<RangeConflict> conflicts;
};

inline constexpr double default_range_tolerance = 1e-9;

/// Checks whether data lies in the range of R_d (up to tol, absolute on
/// coefficients) and, if so, assembles the preimage from the common values.
RangeReport validate_range(const RadonData& data, double tol = default_range_tolerance);

/// sqrt(sum_k (1+|k|^2)^s max_A |F(k, A)|^2) over the stored tuples. Equals
/// sobolev_norm(f, s) whenever the tuples cover every mode of f.
double stability_norm(const RadonData& data, double s);

}  // namespace torus_xray
