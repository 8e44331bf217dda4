#pragma once

// Integer-lattice combinatorics on Z^n: directions, primitivity, exact rank,
// enumeration of direction tuples and orthogonal tuples for a frequency.

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace torus_xray {

using IntVector = std::vector<std::int64_t>;

// Index of a Fourier mode e_k(x) = exp(2 pi i k.x) on T^n.
using FrequencyVector = IntVector;

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b);
std::int64_t sup_norm(std::span<const std::int64_t> v);
bool is_zero(std::span<const std::int64_t> v);

// Flips the sign so that the first nonzero entry is positive.
IntVector sign_normalized(IntVector v);

/// A nonzero integer vector, i.e. an element of Z^n \ {0}.
class Direction {
 public:
  /// Throws Error(invalid_direction) for the zero vector or an empty vector.
  explicit Direction(IntVector entries);

  std::size_t dimension() const noexcept { return entries_.size(); }
  const IntVector& entries() const noexcept { return entries_; }
  std::int64_t operator[](std::size_t i) const { return entries_[i]; }

  Direction sign_normalized() const;

  friend auto operator<=>(const Direction&, const Direction&) = default;
  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  IntVector entries_;
};

/// An unordered set of d linearly independent directions in Z^n with
/// 1 <= d < n. Stored sign-normalized and sorted lexicographically, so two
/// tuples spanning the same vectors up to sign compare equal.
class DirectionTuple {
 public:
  explicit DirectionTuple(std::vector<Direction> vectors);
  explicit DirectionTuple(const std::vector<IntVector>& vectors);

  std::size_t dimension() const noexcept { return vectors_.front().dimension(); }
  std::size_t size() const noexcept { return vectors_.size(); }
  const std::vector<Direction>& vectors() const noexcept { return vectors_; }
  auto begin() const noexcept { return vectors_.begin(); }
  auto end() const noexcept { return vectors_.end(); }

  // k.v == 0 for every v in the tuple.
  bool is_orthogonal_to(std::span<const std::int64_t> k) const;
  std::int64_t max_sup_norm() const;

  std::vector<IntVector> as_vectors() const;

  friend auto operator<=>(const DirectionTuple&, const DirectionTuple&) = default;
  friend bool operator==(const DirectionTuple&, const DirectionTuple&) = default;

 private:
  std::vector<Direction> vectors_;
};

/// gcd of the entries equals 1. Throws for the zero vector.
bool is_primitive(std::span<const std::int64_t> v);
inline bool is_primitive(const Direction& v) { return is_primitive(v.entries()); }

/// Rank of an integer matrix (rows given), computed by fraction-free
/// elimination in exact integer arithmetic. Throws on ragged rows or on
/// intermediate overflow.
std::size_t integer_rank(const std::vector<IntVector>& rows);

/// True iff the rows are linearly independent over Q. Throws
/// dimension_mismatch on ragged input and invalid_direction on a zero row.
bool linearly_independent(const std::vector<IntVector>& vectors);

/// Every direction tuple whose vectors have sup-norm <= max_norm, each
/// exactly once, in canonical order. max_norm <= 0 yields an empty list.
std::vector<DirectionTuple> enumerate_tuples(int n, int d, int max_norm);

/// A tuple of d vectors orthogonal to k, taken from an integer basis of the
/// kernel lattice {v : k.v = 0}. For k = 0 the first d standard basis vectors.
DirectionTuple orthogonal_tuple(std::span<const std::int64_t> k, int d);

/// Integer basis (n-1 vectors) of {v in Z^n : k.v = 0}, k != 0, obtained by
/// unimodular column reduction of k.
std::vector<IntVector> kernel_lattice_basis(std::span<const std::int64_t> k);

/// All frequencies with sup-norm <= band in dimension n, in lexicographic order.
std::vector<FrequencyVector> frequency_box(int n, int band);

}  // namespace torus_xray
