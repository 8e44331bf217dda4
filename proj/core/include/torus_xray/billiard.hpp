#pragma once

// Periodic broken-ray (billiard) transform on a rectangular box.
//
// After rescaling every side to 1/2 the box is Q = [0, 1/2]^n. The fold
// zeta(x) = (|x_1|, ..., |x_n|) on [-1/2, 1/2]^n = T^n maps straight torus
// geodesics onto billiard trajectories in Q, so integrating f over a billiard
// trajectory equals integrating the even extension f o zeta over a line on
// the torus. Everything below is built on that identity.

#include <map>
#include <span>
#include <vector>

#include "torus_xray/spectral.hpp"
#include "torus_xray/tensor.hpp"
#include "torus_xray/xray.hpp"

namespace torus_xray {

class Box {
 public:
  explicit Box(std::vector<double> lengths);
  /// The normalised box [0, 1/2]^n.
  static Box unit(int dimension);

  std::size_t dimension() const noexcept { return lengths_.size(); }
  const std::vector<double>& lengths() const noexcept { return lengths_; }
  bool contains(std::span<const double> x) const;

 private:
  std::vector<double> lengths_;
};

struct Ray {
  std::vector<double> point;
  std::vector<double> direction;
};

/// x_i -> x_i / (2 L_i), v_i -> v_i / (2 L_i). Throws if x is outside the box.
Ray normalize(const Box& box, std::span<const double> x, std::span<const double> v);
Ray denormalize(const Box& box, std::span<const double> x, std::span<const double> v);

/// Samples of a function on the box grid {0, 1/N, ..., 1/2}^n with N even,
/// i.e. N/2 + 1 points per axis including both walls. N is the resolution of
/// the torus grid the samples unfold onto.
class BoxGrid {
 public:
  BoxGrid(int dimension, int torus_resolution);
  BoxGrid(int dimension, int torus_resolution, std::vector<Complex> samples);

  int dimension() const noexcept { return dimension_; }
  int torus_resolution() const noexcept { return torus_resolution_; }
  int points_per_axis() const noexcept { return torus_resolution_ / 2 + 1; }
  const std::vector<Complex>& samples() const noexcept { return samples_; }

  std::size_t flat_index(std::span<const std::int64_t> index) const;
  std::vector<std::int64_t> multi_index(std::size_t flat) const;
  Complex at(std::span<const std::int64_t> index) const { return samples_[flat_index(index)]; }

 private:
  int dimension_;
  int torus_resolution_;
  std::vector<Complex> samples_;
};

/// Smallest even torus resolution that resolves band K (N >= 2K+1).
int box_resolution_for_band(int band);

/// Averages fhat over all coordinate sign flips of k (cosine-series part).
TrigPolynomial even_projection(const TrigPolynomial& f);
bool is_even(const TrigPolynomial& f, double tol);

/// A function on the normalised box, held as its even extension f o zeta on
/// the torus. The representative is exactly invariant under sign flips of k.
class BoxFunction {
 public:
  /// Throws invalid_argument if f is not even within tol; stores the exact
  /// even projection.
  explicit BoxFunction(const TrigPolynomial& even_extension, double tol = 1e-12);

  const TrigPolynomial& representative() const noexcept { return representative_; }
  int dimension() const noexcept { return representative_.dimension(); }
  int band() const noexcept { return representative_.band(); }

 private:
  TrigPolynomial representative_;
};

/// Restriction of a torus function to the box grid.
BoxGrid sample_box(const TrigPolynomial& f, int torus_resolution);

/// Even reflection of box samples across every wall, followed by from_grid.
/// Throws aliasing if the torus resolution cannot carry the band.
BoxFunction unfold_scalar(const BoxGrid& samples, int band);

/// zeta(x0 + v t): coordinatewise triangle-wave fold into [0, 1/2].
std::vector<double> billiard_point(std::span<const double> x0, std::span<const double> v, double t);
/// Velocity of the billiard trajectory at time t: v_i flipped where the
/// unfolded coordinate lies in the negative half of the torus.
std::vector<double> billiard_velocity(std::span<const double> x0, std::span<const double> v, double t);

/// Rectangle rule with M nodes for int_0^1 f(billiard_point(x0, v, t)) dt, with
/// f read through its torus representative restricted to the box.
Complex broken_ray_forward(const TrigPolynomial& box_function, std::span<const double> x0,
                           const Direction& v, int nodes);
Complex broken_ray_forward(const BoxFunction& f, std::span<const double> x0, const Direction& v,
                           int nodes);

/// Node count at which broken_ray_forward is exact for a band-K function.
int broken_ray_nodes_for_band(int band, const Direction& v);

/// xray::invert followed by the even projection.
BoxFunction broken_ray_invert(const RadonData& data, int band);

// ---- acquisition on the box --------------------------------------------

struct BrokenRaySample {
  std::vector<double> start;   // normalised box coordinates
  IntVector direction;
  Complex value;
};

/// Billiard integrals from every box-grid point (resolution
/// box_resolution_for_band(K)) along every sign variant of every given
/// direction. This is exactly the information radon_from_samples needs.
std::vector<BrokenRaySample> acquire_broken_rays(const BoxFunction& f, int band,
                                                 const std::vector<Direction>& directions);

/// Rebuilds R f~(., {u}) on the torus from billiard samples using
/// R f~(x, u) = R f~(zeta x, S_x u), then transforms to Fourier data. Throws
/// incomplete_data if a needed sample is missing.
RadonData radon_from_samples(const std::vector<BrokenRaySample>& samples, int dimension, int band,
                             const std::vector<Direction>& directions);

// ---- tensor fields ------------------------------------------------------

/// Per-component parity projection: component I is made even in coordinate j
/// when j occurs an even number of times in I, odd otherwise.
SymmetricTensorField parity_projection(const SymmetricTensorField& f);

/// Pull-back of a box tensor field under zeta. On the orthant with signs s,
/// component I picks up prod_p s_{I_p}; odd components vanish on the walls.
SymmetricTensorField unfold_tensor(int dimension, int order,
                                   const std::map<MultiIndex, BoxGrid>& samples, int band);

/// Rectangle rule for int_0^1 f(zeta(gamma(t)))(w(t), ..., w(t)) dt with w the
/// billiard velocity; f is read through its torus representative on the box.
Complex broken_ray_tensor_forward(const SymmetricTensorField& box_field, std::span<const double> x0,
                                  const Direction& v, int nodes);

}  // namespace torus_xray
