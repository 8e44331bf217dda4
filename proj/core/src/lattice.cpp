#include "torus_xray/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

#include "torus_xray/error.hpp"

namespace torus_xray {
namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorCode::invalid_argument, "integer overflow in exact elimination");
  }
  return out;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_sub_overflow(a, b, &out)) {
    throw Error(ErrorCode::invalid_argument, "integer overflow in exact elimination");
  }
  return out;
}

void reduce_by_content(IntVector& row) {
  std::int64_t g = 0;
  for (auto x : row) g = std::gcd(g, x);
  if (g > 1) {
    for (auto& x : row) x /= g;
  }
}

void check_same_dimension(const std::vector<IntVector>& rows) {
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) {
      throw Error(ErrorCode::dimension_mismatch, "vectors of different dimension");
    }
  }
}

}  // namespace

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::dimension_mismatch, "dot product of vectors of different dimension");
  }
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::int64_t sup_norm(std::span<const std::int64_t> v) {
  std::int64_t m = 0;
  for (auto x : v) m = std::max<std::int64_t>(m, std::llabs(x));
  return m;
}

bool is_zero(std::span<const std::int64_t> v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

IntVector sign_normalized(IntVector v) {
  for (auto x : v) {
    if (x == 0) continue;
    if (x < 0) {
      for (auto& y : v) y = -y;
    }
    break;
  }
  return v;
}

Direction::Direction(IntVector entries) : entries_(std::move(entries)) {
  if (entries_.empty() || is_zero(entries_)) {
    throw Error(ErrorCode::invalid_direction, "direction must be a nonzero integer vector");
  }
}

Direction Direction::sign_normalized() const {
  return Direction(torus_xray::sign_normalized(entries_));
}

DirectionTuple::DirectionTuple(std::vector<Direction> vectors) {
  if (vectors.empty()) {
    throw Error(ErrorCode::invalid_argument, "direction tuple must contain at least one vector");
  }
  const std::size_t n = vectors.front().dimension();
  for (const auto& v : vectors) {
    if (v.dimension() != n) {
      throw Error(ErrorCode::dimension_mismatch, "direction tuple mixes dimensions");
    }
  }
  if (vectors.size() >= n) {
    throw Error(ErrorCode::invalid_argument,
                "direction tuple needs fewer vectors than the dimension");
  }
  vectors_.reserve(vectors.size());
  for (const auto& v : vectors) vectors_.push_back(v.sign_normalized());
  std::sort(vectors_.begin(), vectors_.end());
  if (std::adjacent_find(vectors_.begin(), vectors_.end()) != vectors_.end()) {
    throw Error(ErrorCode::invalid_argument, "direction tuple contains a repeated vector");
  }
  if (!linearly_independent(as_vectors())) {
    throw Error(ErrorCode::invalid_argument, "direction tuple is linearly dependent");
  }
}

DirectionTuple::DirectionTuple(const std::vector<IntVector>& vectors)
    : DirectionTuple([&] {
        std::vector<Direction> dirs;
        dirs.reserve(vectors.size());
        for (const auto& v : vectors) dirs.emplace_back(v);
        return dirs;
      }()) {}

bool DirectionTuple::is_orthogonal_to(std::span<const std::int64_t> k) const {
  return std::all_of(vectors_.begin(), vectors_.end(),
                     [&](const Direction& v) { return dot(v.entries(), k) == 0; });
}

std::int64_t DirectionTuple::max_sup_norm() const {
  std::int64_t m = 0;
  for (const auto& v : vectors_) m = std::max(m, sup_norm(v.entries()));
  return m;
}

std::vector<IntVector> DirectionTuple::as_vectors() const {
  std::vector<IntVector> out;
  out.reserve(vectors_.size());
  for (const auto& v : vectors_) out.push_back(v.entries());
  return out;
}

bool is_primitive(std::span<const std::int64_t> v) {
  if (v.empty() || is_zero(v)) {
    throw Error(ErrorCode::invalid_direction, "primitivity is undefined for the zero vector");
  }
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g == 1;
}

std::size_t integer_rank(const std::vector<IntVector>& rows_in) {
  if (rows_in.empty()) return 0;
  check_same_dimension(rows_in);
  std::vector<IntVector> rows = rows_in;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    // Pivot on the smallest nonzero magnitude to keep entries small.
    std::size_t pivot = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      if (pivot == rows.size() || std::llabs(rows[r][c]) < std::llabs(rows[pivot][c])) pivot = r;
    }
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const IntVector& p = rows[rank];
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const std::int64_t a = rows[r][c];
      if (a == 0) continue;
      const std::int64_t g = std::gcd(a, p[c]);
      const std::int64_t scale_row = p[c] / g;
      const std::int64_t scale_pivot = a / g;
      for (std::size_t j = c; j < cols; ++j) {
        rows[r][j] = checked_sub(checked_mul(rows[r][j], scale_row),
                                 checked_mul(p[j], scale_pivot));
      }
      reduce_by_content(rows[r]);
    }
    ++rank;
  }
  return rank;
}

bool linearly_independent(const std::vector<IntVector>& vectors) {
  if (vectors.empty()) return true;
  check_same_dimension(vectors);
  for (const auto& v : vectors) {
    if (is_zero(v)) throw Error(ErrorCode::invalid_direction, "zero vector in direction list");
  }
  if (vectors.size() > vectors.front().size()) return false;
  return integer_rank(vectors) == vectors.size();
}

std::vector<FrequencyVector> frequency_box(int n, int band) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "dimension must be positive");
  if (band < 0) return {};
  std::vector<FrequencyVector> out;
  FrequencyVector k(static_cast<std::size_t>(n), -band);
  for (;;) {
    out.push_back(k);
    int j = n - 1;
    while (j >= 0 && k[static_cast<std::size_t>(j)] == band) {
      k[static_cast<std::size_t>(j)] = -band;
      --j;
    }
    if (j < 0) break;
    ++k[static_cast<std::size_t>(j)];
  }
  return out;
}

std::vector<DirectionTuple> enumerate_tuples(int n, int d, int max_norm) {
  if (n < 2) throw Error(ErrorCode::invalid_argument, "dimension must be at least 2");
  if (d < 1 || d >= n) {
    throw Error(ErrorCode::invalid_argument, "tuple size d must satisfy 1 <= d < n");
  }
  if (max_norm <= 0) return {};

  // Representatives of Q modulo sign, sorted.
  std::vector<IntVector> reps;
  for (auto& v : frequency_box(n, max_norm)) {
    if (is_zero(v)) continue;
    if (sign_normalized(v) == v) reps.push_back(std::move(v));
  }
  std::sort(reps.begin(), reps.end());

  // Ascending index combinations produce sorted tuples in lexicographic order.
  std::vector<DirectionTuple> out;
  const std::size_t m = reps.size();
  const auto du = static_cast<std::size_t>(d);
  if (m < du) return out;
  std::vector<std::size_t> idx(du);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<IntVector> chosen(du);
  for (;;) {
    for (std::size_t i = 0; i < du; ++i) chosen[i] = reps[idx[i]];
    if (integer_rank(chosen) == du) out.emplace_back(chosen);
    std::size_t i = du;
    while (i > 0 && idx[i - 1] == m - du + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < du; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<IntVector> kernel_lattice_basis(std::span<const std::int64_t> k) {
  const std::size_t n = k.size();
  if (n < 2) throw Error(ErrorCode::invalid_argument, "dimension must be at least 2");
  if (is_zero(k)) throw Error(ErrorCode::invalid_argument, "kernel basis requires k != 0");

  // Columns of a unimodular matrix U, tracked alongside r = k U. Euclidean
  // column steps clear r[1..n-1]; the matching columns then span ker k.
  std::vector<IntVector> cols(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) cols[i][i] = 1;
  IntVector r(k.begin(), k.end());
  for (std::size_t j = 1; j < n; ++j) {
    while (r[j] != 0) {
      const std::int64_t q = r[0] / r[j];
      r[0] -= q * r[j];
      for (std::size_t i = 0; i < n; ++i) cols[0][i] -= q * cols[j][i];
      std::swap(r[0], r[j]);
      std::swap(cols[0], cols[j]);
    }
  }
  return {cols.begin() + 1, cols.end()};
}

DirectionTuple orthogonal_tuple(std::span<const std::int64_t> k, int d) {
  const auto n = static_cast<int>(k.size());
  if (n < 2) throw Error(ErrorCode::invalid_argument, "dimension must be at least 2");
  if (d < 1 || d >= n) {
    throw Error(ErrorCode::invalid_argument, "tuple size d must satisfy 1 <= d < n");
  }
  std::vector<IntVector> chosen;
  if (is_zero(k)) {
    for (int i = 0; i < d; ++i) {
      IntVector e(k.size(), 0);
      e[static_cast<std::size_t>(i)] = 1;
      chosen.push_back(std::move(e));
    }
  } else {
    auto basis = kernel_lattice_basis(k);
    chosen.assign(basis.begin(), basis.begin() + d);
  }
  return DirectionTuple(chosen);
}

}  // namespace torus_xray
