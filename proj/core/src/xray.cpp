#include "torus_xray/xray.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "torus_xray/error.hpp"
#include "torus_xray/parallel.hpp"

namespace torus_xray {

RadonData::RadonData(int dimension, int plane_dimension, int band)
    : dimension_(dimension), plane_dimension_(plane_dimension), band_(band) {
  if (dimension < 2) throw Error(ErrorCode::invalid_argument, "dimension must be at least 2");
  if (plane_dimension < 1 || plane_dimension >= dimension) {
    throw Error(ErrorCode::invalid_argument, "plane dimension d must satisfy 1 <= d < n");
  }
  if (band < 0) throw Error(ErrorCode::invalid_argument, "band must be nonnegative");
}

void RadonData::set(const DirectionTuple& tuple, TrigPolynomial values) {
  if (static_cast<int>(tuple.dimension()) != dimension_ ||
      static_cast<int>(tuple.size()) != plane_dimension_) {
    throw Error(ErrorCode::dimension_mismatch, "direction tuple does not match the data shape");
  }
  if (values.dimension() != dimension_) {
    throw Error(ErrorCode::dimension_mismatch, "entry has wrong dimension");
  }
  if (values.band() > band_) {
    throw Error(ErrorCode::invalid_argument, "entry band exceeds the data band");
  }
  entries_.insert_or_assign(tuple, std::move(values));
}

const TrigPolynomial* RadonData::find(const DirectionTuple& tuple) const {
  const auto it = entries_.find(tuple);
  return it == entries_.end() ? nullptr : &it->second;
}

TrigPolynomial forward_spectral(const TrigPolynomial& f, const DirectionTuple& tuple) {
  if (static_cast<int>(tuple.dimension()) != f.dimension()) {
    throw Error(ErrorCode::dimension_mismatch, "direction tuple and function differ in dimension");
  }
  TrigPolynomial out(f.dimension(), f.band());
  for (const auto& [k, c] : f.coefficients()) {
    if (tuple.is_orthogonal_to(k)) out.set_coefficient(k, c);
  }
  return out;
}

int quadrature_exactness_bound(const TrigPolynomial& f, const DirectionTuple& tuple) {
  std::int64_t worst = 0;
  for (const auto& [k, c] : f.coefficients()) {
    for (const auto& v : tuple) worst = std::max<std::int64_t>(worst, std::llabs(dot(k, v.entries())));
  }
  return static_cast<int>(worst) + 1;
}

Complex forward_quadrature(const TrigPolynomial& f, std::span<const double> x,
                           const DirectionTuple& tuple, int nodes) {
  if (nodes < 1) throw Error(ErrorCode::invalid_argument, "quadrature needs at least one node");
  const std::size_t n = static_cast<std::size_t>(f.dimension());
  if (x.size() != n || tuple.dimension() != n) {
    throw Error(ErrorCode::dimension_mismatch, "quadrature point or tuple has wrong dimension");
  }
  const std::size_t d = tuple.size();
  std::vector<int> idx(d, 0);
  std::vector<double> point(n);
  Complex sum = 0.0;
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) {
      double p = x[i];
      for (std::size_t a = 0; a < d; ++a) {
        p += static_cast<double>(idx[a]) / nodes * static_cast<double>(tuple.vectors()[a][i]);
      }
      point[i] = p;
    }
    sum += evaluate(f, point);
    std::size_t a = d;
    while (a > 0 && idx[a - 1] == nodes - 1) {
      idx[a - 1] = 0;
      --a;
    }
    if (a == 0) break;
    ++idx[a - 1];
  }
  return sum / std::pow(static_cast<double>(nodes), static_cast<double>(d));
}

RadonData forward_all(const TrigPolynomial& f, const std::vector<DirectionTuple>& tuples) {
  if (tuples.empty()) throw Error(ErrorCode::invalid_argument, "forward_all needs at least one tuple");
  const int d = static_cast<int>(tuples.front().size());
  std::vector<std::optional<TrigPolynomial>> slots(tuples.size());
  parallel_for(tuples.size(), [&](std::size_t i) { slots[i] = forward_spectral(f, tuples[i]); });
  RadonData data(f.dimension(), d, f.band());
  for (std::size_t i = 0; i < tuples.size(); ++i) data.set(tuples[i], std::move(*slots[i]));
  return data;
}

std::vector<DirectionTuple> default_acquisition_set(int dimension, int plane_dimension, int band) {
  std::set<DirectionTuple> unique;
  for (const auto& k : frequency_box(dimension, band)) {
    unique.insert(orthogonal_tuple(k, plane_dimension));
  }
  return {unique.begin(), unique.end()};
}

TrigPolynomial invert(const RadonData& data, int band) {
  const auto modes = frequency_box(data.dimension(), band);
  std::vector<Complex> values(modes.size());
  parallel_for(modes.size(), [&](std::size_t i) {
    const auto& k = modes[i];
    for (const auto& [tuple, entry] : data.entries()) {
      if (tuple.is_orthogonal_to(k)) {
        values[i] = entry.coefficient(k);
        return;
      }
    }
    throw Error(ErrorCode::incomplete_data, "no stored direction tuple is orthogonal", k);
  });
  TrigPolynomial::CoefficientMap coeffs;
  for (std::size_t i = 0; i < modes.size(); ++i) coeffs.emplace(modes[i], values[i]);
  return TrigPolynomial(data.dimension(), band, std::move(coeffs));
}

RangeReport validate_range(const RadonData& data, double tol) {
  RangeReport report{true, TrigPolynomial(data.dimension(), data.band()), {}};
  std::map<FrequencyVector, std::pair<Complex, const DirectionTuple*>> common;

  for (const auto& [tuple, entry] : data.entries()) {
    for (const auto& [k, c] : entry.coefficients()) {
      if (!tuple.is_orthogonal_to(k)) {
        if (std::abs(c) > tol) {
          report.conflicts.push_back(
              {RangeConflict::Kind::off_slice, k, tuple, std::nullopt, std::abs(c)});
        }
        continue;
      }
      const auto [it, inserted] = common.try_emplace(k, c, &tuple);
      if (!inserted && std::abs(it->second.first - c) > tol) {
        report.conflicts.push_back({RangeConflict::Kind::disagreement, k, tuple,
                                    *it->second.second, std::abs(it->second.first - c)});
      }
    }
  }
  // Orthogonal tuples that store no value for k carry an implicit zero.
  for (const auto& [k, value] : common) {
    if (std::abs(value.first) <= tol) continue;
    for (const auto& [tuple, entry] : data.entries()) {
      if (!tuple.is_orthogonal_to(k) || entry.coefficients().contains(k)) continue;
      report.conflicts.push_back({RangeConflict::Kind::disagreement, k, tuple,
                                  *value.second, std::abs(value.first)});
    }
  }

  report.consistent = report.conflicts.empty();
  if (report.consistent) {
    for (const auto& [k, value] : common) report.witness.set_coefficient(k, value.first);
  }
  return report;
}

double stability_norm(const RadonData& data, double s) {
  std::map<FrequencyVector, double> peak;
  for (const auto& [tuple, entry] : data.entries()) {
    for (const auto& [k, c] : entry.coefficients()) {
      auto& p = peak[k];
      p = std::max(p, std::abs(c));
    }
  }
  double sum = 0.0;
  for (const auto& [k, m] : peak) {
    double k2 = 0.0;
    for (auto ki : k) k2 += static_cast<double>(ki) * static_cast<double>(ki);
    sum += std::pow(1.0 + k2, s) * m * m;
  }
  return std::sqrt(sum);
}

}  // namespace torus_xray
