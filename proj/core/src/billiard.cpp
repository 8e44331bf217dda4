#include "torus_xray/billiard.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "torus_xray/error.hpp"
#include "torus_xray/parallel.hpp"

namespace torus_xray {
namespace {

std::size_t ipow(std::size_t base, int exponent) {
  std::size_t r = 1;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

// Signed representative of y mod 1 in [-1/2, 1/2].
double centred(double y) { return y - std::round(y); }

// All sign patterns in {+1, -1}^n, the identity first.
std::vector<std::vector<int>> sign_patterns(std::size_t n) {
  std::vector<std::vector<int>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<int> s(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) s[i] = -1;
    }
    out.push_back(std::move(s));
  }
  return out;
}

// Projection onto functions with g(Sx) = chi(S) g(x), chi(S) = prod_{i in slots} s_i.
// One value is computed per sign orbit and copied to every member, so the
// output is exactly symmetric. Averaging axis by axis in pairs makes the
// projection exactly idempotent: (a + a) / 2 == a in floating point.
TrigPolynomial parity_project(const TrigPolynomial& f, const std::vector<int>& slots) {
  const auto n = static_cast<std::size_t>(f.dimension());
  const auto patterns = sign_patterns(n);
  std::vector<double> chi(patterns.size(), 1.0);
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    for (int slot : slots) chi[p] *= patterns[p][static_cast<std::size_t>(slot)];
  }

  std::set<FrequencyVector> orbits;
  for (const auto& [k, c] : f.coefficients()) {
    FrequencyVector rep = k;
    for (auto& x : rep) x = std::llabs(x);
    orbits.insert(std::move(rep));
  }

  TrigPolynomial out(f.dimension(), f.band());
  std::vector<Complex> values(patterns.size());
  std::vector<FrequencyVector> members(patterns.size());
  for (const auto& rep : orbits) {
    for (std::size_t p = 0; p < patterns.size(); ++p) {
      members[p] = rep;
      for (std::size_t i = 0; i < n; ++i) members[p][i] *= patterns[p][i];
      values[p] = chi[p] * f.coefficient(members[p]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t bit = std::size_t{1} << i;
      for (std::size_t p = 0; p < patterns.size(); ++p) {
        if ((p & bit) == 0) values[p] = 0.5 * (values[p] + values[p | bit]);
      }
    }
    if (values[0] == Complex{}) continue;
    for (std::size_t p = 0; p < patterns.size(); ++p) out.set_coefficient(members[p], chi[p] * values[0]);
  }
  return out;
}

// Folds torus grid index j (resolution N) to a box grid index and the sign of
// the orthant it came from. Points on a wall report sign 0.
std::pair<std::int64_t, int> fold_index(std::int64_t j, int resolution) {
  const std::int64_t half = resolution / 2;
  if (j == 0 || j == half) return {j, 0};
  if (j < half) return {j, 1};
  return {resolution - j, -1};
}

}  // namespace

// ---- Box ------------------------------------------------------------------

Box::Box(std::vector<double> lengths) : lengths_(std::move(lengths)) {
  if (lengths_.empty()) throw Error(ErrorCode::invalid_argument, "box needs at least one side");
  for (double l : lengths_) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw Error(ErrorCode::invalid_argument, "box side lengths must be positive");
    }
  }
}

Box Box::unit(int dimension) {
  return Box(std::vector<double>(static_cast<std::size_t>(dimension), 0.5));
}

bool Box::contains(std::span<const double> x) const {
  if (x.size() != lengths_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0 && x[i] <= lengths_[i])) return false;
  }
  return true;
}

Ray normalize(const Box& box, std::span<const double> x, std::span<const double> v) {
  if (x.size() != box.dimension() || v.size() != box.dimension()) {
    throw Error(ErrorCode::dimension_mismatch, "point or direction does not match the box");
  }
  if (!box.contains(x)) throw Error(ErrorCode::invalid_argument, "point lies outside the box");
  Ray r{std::vector<double>(x.size()), std::vector<double>(v.size())};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double scale = 2.0 * box.lengths()[i];
    r.point[i] = x[i] / scale;
    r.direction[i] = v[i] / scale;
  }
  return r;
}

Ray denormalize(const Box& box, std::span<const double> x, std::span<const double> v) {
  if (x.size() != box.dimension() || v.size() != box.dimension()) {
    throw Error(ErrorCode::dimension_mismatch, "point or direction does not match the box");
  }
  Ray r{std::vector<double>(x.size()), std::vector<double>(v.size())};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double scale = 2.0 * box.lengths()[i];
    r.point[i] = x[i] * scale;
    r.direction[i] = v[i] * scale;
  }
  return r;
}

// ---- BoxGrid ----------------------------------------------------------------

BoxGrid::BoxGrid(int dimension, int torus_resolution)
    : dimension_(dimension), torus_resolution_(torus_resolution) {
  if (dimension < 1) throw Error(ErrorCode::invalid_argument, "dimension must be positive");
  if (torus_resolution < 2 || torus_resolution % 2 != 0) {
    throw Error(ErrorCode::invalid_argument, "box grids need an even torus resolution >= 2");
  }
  samples_.assign(ipow(static_cast<std::size_t>(points_per_axis()), dimension), Complex{});
}

BoxGrid::BoxGrid(int dimension, int torus_resolution, std::vector<Complex> samples)
    : BoxGrid(dimension, torus_resolution) {
  if (samples.size() != samples_.size()) {
    throw Error(ErrorCode::dimension_mismatch, "sample count does not match (N/2+1)^n");
  }
  samples_ = std::move(samples);
}

std::size_t BoxGrid::flat_index(std::span<const std::int64_t> index) const {
  if (static_cast<int>(index.size()) != dimension_) {
    throw Error(ErrorCode::dimension_mismatch, "box index has wrong dimension");
  }
  const auto p = static_cast<std::size_t>(points_per_axis());
  std::size_t flat = 0;
  for (auto i : index) {
    if (i < 0 || i >= static_cast<std::int64_t>(p)) {
      throw Error(ErrorCode::invalid_argument, "box index outside the grid");
    }
    flat = flat * p + static_cast<std::size_t>(i);
  }
  return flat;
}

std::vector<std::int64_t> BoxGrid::multi_index(std::size_t flat) const {
  const auto p = static_cast<std::size_t>(points_per_axis());
  std::vector<std::int64_t> index(static_cast<std::size_t>(dimension_));
  for (int a = dimension_ - 1; a >= 0; --a) {
    index[static_cast<std::size_t>(a)] = static_cast<std::int64_t>(flat % p);
    flat /= p;
  }
  return index;
}

int box_resolution_for_band(int band) { return 2 * band + 2; }

// ---- scalar unfolding -------------------------------------------------------

TrigPolynomial even_projection(const TrigPolynomial& f) { return parity_project(f, {}); }

bool is_even(const TrigPolynomial& f, double tol) {
  return max_coefficient_difference(f, even_projection(f)) <= tol;
}

BoxFunction::BoxFunction(const TrigPolynomial& even_extension, double tol)
    : representative_(even_projection(even_extension)) {
  const double gap = max_coefficient_difference(even_extension, representative_);
  if (gap > tol) {
    throw Error(ErrorCode::invalid_argument,
                "representative is not invariant under coordinate sign flips", gap);
  }
}

BoxGrid sample_box(const TrigPolynomial& f, int torus_resolution) {
  BoxGrid grid(f.dimension(), torus_resolution);
  std::vector<Complex> values(grid.samples().size());
  std::vector<double> x(static_cast<std::size_t>(f.dimension()));
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    const auto index = grid.multi_index(flat);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(index[i]) / torus_resolution;
    values[flat] = evaluate(f, x);
  }
  return BoxGrid(f.dimension(), torus_resolution, std::move(values));
}

BoxFunction unfold_scalar(const BoxGrid& samples, int band) {
  const int n = samples.dimension();
  const int N = samples.torus_resolution();
  if (N < 2 * band + 1) {
    throw Error(ErrorCode::aliasing, "box grid too coarse for the requested band");
  }
  GridFunction torus(n, N);
  auto& values = torus.samples();
  std::vector<std::int64_t> box_index(static_cast<std::size_t>(n));
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    const auto j = torus.multi_index(flat);
    for (std::size_t i = 0; i < j.size(); ++i) box_index[i] = fold_index(j[i], N).first;
    values[flat] = samples.at(box_index);
  }
  return BoxFunction(from_grid(torus, band), 1e-9);
}

// ---- trajectories -----------------------------------------------------------

std::vector<double> billiard_point(std::span<const double> x0, std::span<const double> v, double t) {
  if (x0.size() != v.size()) throw Error(ErrorCode::dimension_mismatch, "point and direction differ in dimension");
  std::vector<double> out(x0.size());
  for (std::size_t i = 0; i < x0.size(); ++i) out[i] = std::abs(centred(x0[i] + v[i] * t));
  return out;
}

std::vector<double> billiard_velocity(std::span<const double> x0, std::span<const double> v, double t) {
  if (x0.size() != v.size()) throw Error(ErrorCode::dimension_mismatch, "point and direction differ in dimension");
  std::vector<double> out(x0.size());
  for (std::size_t i = 0; i < x0.size(); ++i) {
    out[i] = centred(x0[i] + v[i] * t) < 0.0 ? -v[i] : v[i];
  }
  return out;
}

Complex broken_ray_forward(const TrigPolynomial& box_function, std::span<const double> x0,
                           const Direction& v, int nodes) {
  if (nodes < 1) throw Error(ErrorCode::invalid_argument, "quadrature needs at least one node");
  if (static_cast<int>(x0.size()) != box_function.dimension() ||
      static_cast<int>(v.dimension()) != box_function.dimension()) {
    throw Error(ErrorCode::dimension_mismatch, "trajectory and function differ in dimension");
  }
  const std::vector<double> vd(v.entries().begin(), v.entries().end());
  Complex sum = 0.0;
  for (int j = 0; j < nodes; ++j) {
    sum += evaluate(box_function, billiard_point(x0, vd, static_cast<double>(j) / nodes));
  }
  return sum / static_cast<double>(nodes);
}

Complex broken_ray_forward(const BoxFunction& f, std::span<const double> x0, const Direction& v,
                           int nodes) {
  return broken_ray_forward(f.representative(), x0, v, nodes);
}

int broken_ray_nodes_for_band(int band, const Direction& v) {
  std::int64_t l1 = 0;
  for (auto x : v.entries()) l1 += std::llabs(x);
  return static_cast<int>(band * l1) + 1;
}

BoxFunction broken_ray_invert(const RadonData& data, int band) {
  return BoxFunction(even_projection(invert(data, band)));
}

// ---- acquisition ------------------------------------------------------------

std::vector<BrokenRaySample> acquire_broken_rays(const BoxFunction& f, int band,
                                                 const std::vector<Direction>& directions) {
  const int n = f.dimension();
  const int N = box_resolution_for_band(band);
  const BoxGrid grid(n, N);

  std::set<IntVector> variants;
  for (const auto& u : directions) {
    if (static_cast<int>(u.dimension()) != n) {
      throw Error(ErrorCode::dimension_mismatch, "direction does not match the function");
    }
    for (const auto& s : sign_patterns(u.dimension())) {
      IntVector w = u.entries();
      for (std::size_t i = 0; i < w.size(); ++i) w[i] *= s[i];
      variants.insert(std::move(w));
    }
  }
  const std::vector<IntVector> dirs(variants.begin(), variants.end());
  const std::size_t points = grid.samples().size();

  std::vector<BrokenRaySample> out(dirs.size() * points);
  parallel_for(dirs.size(), [&](std::size_t a) {
    const Direction w(dirs[a]);
    const int nodes = broken_ray_nodes_for_band(band, w);
    for (std::size_t flat = 0; flat < points; ++flat) {
      const auto index = grid.multi_index(flat);
      std::vector<double> x(index.size());
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(index[i]) / N;
      auto& sample = out[a * points + flat];
      sample.value = broken_ray_forward(f, x, w, nodes);
      sample.start = std::move(x);
      sample.direction = dirs[a];
    }
  });
  return out;
}

RadonData radon_from_samples(const std::vector<BrokenRaySample>& samples, int dimension, int band,
                             const std::vector<Direction>& directions) {
  const int N = box_resolution_for_band(band);
  std::map<std::pair<IntVector, IntVector>, Complex> lookup;
  for (const auto& s : samples) {
    if (static_cast<int>(s.start.size()) != dimension || static_cast<int>(s.direction.size()) != dimension) {
      throw Error(ErrorCode::dimension_mismatch, "broken-ray sample has wrong dimension");
    }
    IntVector index(s.start.size());
    for (std::size_t i = 0; i < index.size(); ++i) {
      index[i] = static_cast<std::int64_t>(std::llround(s.start[i] * N));
    }
    lookup[{std::move(index), s.direction}] = s.value;
  }

  RadonData data(dimension, 1, band);
  for (const auto& u : directions) {
    GridFunction torus(dimension, N);
    auto& values = torus.samples();
    IntVector box_index(static_cast<std::size_t>(dimension));
    IntVector w(static_cast<std::size_t>(dimension));
    for (std::size_t flat = 0; flat < values.size(); ++flat) {
      const auto j = torus.multi_index(flat);
      for (std::size_t i = 0; i < j.size(); ++i) {
        const auto [b, sign] = fold_index(j[i], N);
        box_index[i] = b;
        w[i] = sign < 0 ? -u[i] : u[i];
      }
      const auto it = lookup.find({box_index, w});
      if (it == lookup.end()) {
        throw Error(ErrorCode::incomplete_data, "missing broken-ray sample for direction", w);
      }
      values[flat] = it->second;
    }
    data.set(DirectionTuple(std::vector<Direction>{u}), from_grid(torus, band));
  }
  return data;
}

// ---- tensors ----------------------------------------------------------------

SymmetricTensorField parity_projection(const SymmetricTensorField& f) {
  SymmetricTensorField out(f.dimension(), f.order(), f.band());
  for (const auto& [index, values] : f.components()) out.set_component(index, parity_project(values, index));
  return out;
}

SymmetricTensorField unfold_tensor(int dimension, int order, const std::map<MultiIndex, BoxGrid>& samples,
                                   int band) {
  SymmetricTensorField out(dimension, order, band);
  for (const auto& [index, grid] : samples) {
    if (grid.dimension() != dimension) {
      throw Error(ErrorCode::dimension_mismatch, "component grid has wrong dimension");
    }
    const int N = grid.torus_resolution();
    if (N < 2 * band + 1) throw Error(ErrorCode::aliasing, "box grid too coarse for the requested band");
    const Exponent parity = exponent_of(index, dimension);

    GridFunction torus(dimension, N);
    auto& values = torus.samples();
    std::vector<std::int64_t> box_index(static_cast<std::size_t>(dimension));
    for (std::size_t flat = 0; flat < values.size(); ++flat) {
      const auto j = torus.multi_index(flat);
      double factor = 1.0;
      for (std::size_t i = 0; i < j.size(); ++i) {
        const auto [b, sign] = fold_index(j[i], N);
        box_index[i] = b;
        if (parity[i] % 2 == 1) factor *= sign;
      }
      values[flat] = factor == 0.0 ? Complex{} : factor * grid.at(box_index);
    }
    out.set_component(index, parity_project(from_grid(torus, band), index));
  }
  return out;
}

Complex broken_ray_tensor_forward(const SymmetricTensorField& box_field, std::span<const double> x0,
                                  const Direction& v, int nodes) {
  if (nodes < 1) throw Error(ErrorCode::invalid_argument, "quadrature needs at least one node");
  const std::vector<double> vd(v.entries().begin(), v.entries().end());
  Complex sum = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double t = static_cast<double>(j) / nodes;
    sum += evaluate(box_field, billiard_point(x0, vd, t), billiard_velocity(x0, vd, t));
  }
  return sum / static_cast<double>(nodes);
}

}  // namespace torus_xray
