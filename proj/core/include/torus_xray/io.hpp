#pragma once

// File formats. JSON objects are written with sorted keys; coefficient and
// entry lists follow canonical key order, so equal values serialize to equal
// bytes.
//
//   TrigPolynomial       {"K": int, "coeffs": [{"im", "k": [ints], "re"}], "n": int}
//   RadonData            {"K", "d", "entries": [{"A": [[ints]...], "f": <poly>}], "n"}
//   SymmetricTensorField {"K", "components": [{"f": <poly>, "index": [ints]}], "m", "n"}
//   Box                  {"L": [floats]}
//   tuple list           {"tuples": [[[ints]...]...]}
//   GridFunction CSV     index_1,...,index_n,re,im
//   broken-ray CSV       x0_1,...,x0_n,v_1,...,v_n,re,im

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "torus_xray/billiard.hpp"
#include "torus_xray/spectral.hpp"
#include "torus_xray/tensor.hpp"
#include "torus_xray/xray.hpp"

namespace torus_xray::io {

std::string to_json(const TrigPolynomial& f);
std::string to_json(const RadonData& data);
std::string to_json(const SymmetricTensorField& f);
std::string to_json(const Box& box);
std::string to_json(const RangeReport& report);
std::string tuples_to_json(const std::vector<DirectionTuple>& tuples);

TrigPolynomial trig_polynomial_from_json(std::string_view text);
RadonData radon_data_from_json(std::string_view text);
SymmetricTensorField tensor_field_from_json(std::string_view text);
Box box_from_json(std::string_view text);
std::vector<DirectionTuple> tuples_from_json(std::string_view text);

std::string grid_to_csv(const GridFunction& g);
GridFunction grid_from_csv(std::string_view text);

/// With a box, starting points are written in physical coordinates; the
/// direction column always holds the integer direction of the normalised box.
std::string broken_rays_to_csv(const std::vector<BrokenRaySample>& samples,
                               const std::optional<Box>& box = std::nullopt);
std::vector<BrokenRaySample> broken_rays_from_csv(std::string_view text,
                                                  const std::optional<Box>& box = std::nullopt);

/// 17 significant digits, enough to parse back to the same double.
std::string format_double(double x);

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it over the target, so a
/// failed run never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace torus_xray::io
