#include "torus_xray/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "torus_xray/error.hpp"

namespace torus_xray::io {
namespace {

using json = nlohmann::json;

json poly_to_json(const TrigPolynomial& f) {
  json coeffs = json::array();
  for (const auto& [k, c] : f.coefficients()) {
    coeffs.push_back({{"k", k}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"n", f.dimension()}, {"K", f.band()}, {"coeffs", std::move(coeffs)}};
}

TrigPolynomial poly_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  const int band = j.at("K").get<int>();
  TrigPolynomial f(n, band);
  for (const auto& entry : j.at("coeffs")) {
    auto k = entry.at("k").get<FrequencyVector>();
    f.add_to_coefficient(std::move(k), {entry.at("re").get<double>(), entry.at("im").get<double>()});
  }
  return f;
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("malformed JSON: ") + e.what());
  }
}

template <typename Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("unexpected JSON layout: ") + e.what());
  }
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

double parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorCode::parse_error, "not a number: '" + s + "'");
  }
}

std::int64_t parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorCode::parse_error, "not an integer: '" + s + "'");
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_json(const TrigPolynomial& f) { return poly_to_json(f).dump(); }

std::string to_json(const RadonData& data) {
  json entries = json::array();
  for (const auto& [tuple, f] : data.entries()) {
    entries.push_back({{"A", tuple.as_vectors()}, {"f", poly_to_json(f)}});
  }
  return json{{"n", data.dimension()},
              {"d", data.plane_dimension()},
              {"K", data.band()},
              {"entries", std::move(entries)}}
      .dump();
}

std::string to_json(const SymmetricTensorField& f) {
  json components = json::array();
  for (const auto& [index, values] : f.components()) {
    components.push_back({{"index", index}, {"f", poly_to_json(values)}});
  }
  return json{{"n", f.dimension()}, {"m", f.order()}, {"K", f.band()}, {"components", std::move(components)}}
      .dump();
}

std::string to_json(const Box& box) { return json{{"L", box.lengths()}}.dump(); }

std::string to_json(const RangeReport& report) {
  json conflicts = json::array();
  for (const auto& c : report.conflicts) {
    json entry{{"kind", c.kind == RangeConflict::Kind::off_slice ? "off_slice" : "disagreement"},
               {"k", c.k},
               {"A", c.tuple.as_vectors()},
               {"magnitude", c.magnitude}};
    if (c.reference) entry["reference"] = c.reference->as_vectors();
    conflicts.push_back(std::move(entry));
  }
  json out{{"consistent", report.consistent}, {"conflicts", std::move(conflicts)}};
  if (report.consistent) out["witness"] = poly_to_json(report.witness);
  return out.dump();
}

std::string tuples_to_json(const std::vector<DirectionTuple>& tuples) {
  json list = json::array();
  for (const auto& t : tuples) list.push_back(t.as_vectors());
  return json{{"tuples", std::move(list)}}.dump();
}

TrigPolynomial trig_polynomial_from_json(std::string_view text) {
  const json j = parse(text);
  return guarded([&] { return poly_from_json(j); });
}

RadonData radon_data_from_json(std::string_view text) {
  const json j = parse(text);
  return guarded([&] {
    RadonData data(j.at("n").get<int>(), j.at("d").get<int>(), j.at("K").get<int>());
    for (const auto& entry : j.at("entries")) {
      data.set(DirectionTuple(entry.at("A").get<std::vector<IntVector>>()), poly_from_json(entry.at("f")));
    }
    return data;
  });
}

SymmetricTensorField tensor_field_from_json(std::string_view text) {
  const json j = parse(text);
  return guarded([&] {
    SymmetricTensorField f(j.at("n").get<int>(), j.at("m").get<int>(), j.at("K").get<int>());
    for (const auto& entry : j.at("components")) {
      f.set_component(entry.at("index").get<MultiIndex>(), poly_from_json(entry.at("f")));
    }
    return f;
  });
}

Box box_from_json(std::string_view text) {
  const json j = parse(text);
  return guarded([&] { return Box(j.at("L").get<std::vector<double>>()); });
}

std::vector<DirectionTuple> tuples_from_json(std::string_view text) {
  const json j = parse(text);
  return guarded([&] {
    std::vector<DirectionTuple> out;
    for (const auto& t : j.at("tuples")) out.emplace_back(t.get<std::vector<IntVector>>());
    return out;
  });
}

std::string grid_to_csv(const GridFunction& g) {
  std::string out;
  for (int i = 1; i <= g.dimension(); ++i) out += "index_" + std::to_string(i) + ",";
  out += "re,im\n";
  for (std::size_t flat = 0; flat < g.samples().size(); ++flat) {
    for (auto i : g.multi_index(flat)) out += std::to_string(i) + ",";
    const auto z = g.samples()[flat];
    out += format_double(z.real()) + "," + format_double(z.imag()) + "\n";
  }
  return out;
}

GridFunction grid_from_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw Error(ErrorCode::parse_error, "empty grid CSV");
  const auto header = split(lines.front(), ',');
  if (header.size() < 3 || header[header.size() - 2] != "re" || header.back() != "im") {
    throw Error(ErrorCode::parse_error, "grid CSV header must be index_1,...,index_n,re,im");
  }
  const int n = static_cast<int>(header.size()) - 2;
  const std::size_t rows = lines.size() - 1;
  int resolution = 1;
  while (true) {
    std::size_t total = 1;
    for (int a = 0; a < n; ++a) total *= static_cast<std::size_t>(resolution);
    if (total == rows) break;
    if (total > rows) throw Error(ErrorCode::parse_error, "grid CSV row count is not N^n");
    ++resolution;
  }
  GridFunction g(n, resolution);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = split(lines[r], ',');
    if (cells.size() != header.size()) throw Error(ErrorCode::parse_error, "grid CSV row has wrong width");
    std::vector<std::int64_t> index;
    for (int a = 0; a < n; ++a) index.push_back(parse_int(cells[static_cast<std::size_t>(a)]));
    g.samples()[g.flat_index(index)] = {parse_double(cells[cells.size() - 2]), parse_double(cells.back())};
  }
  return g;
}

std::string broken_rays_to_csv(const std::vector<BrokenRaySample>& samples, const std::optional<Box>& box) {
  if (samples.empty()) return {};
  const std::size_t n = samples.front().start.size();
  std::string out;
  for (std::size_t i = 1; i <= n; ++i) out += "x0_" + std::to_string(i) + ",";
  for (std::size_t i = 1; i <= n; ++i) out += "v_" + std::to_string(i) + ",";
  out += "re,im\n";
  for (const auto& s : samples) {
    std::vector<double> start = s.start;
    if (box) {
      const std::vector<double> dir(s.direction.begin(), s.direction.end());
      start = denormalize(*box, s.start, dir).point;
    }
    for (double x : start) out += format_double(x) + ",";
    for (auto v : s.direction) out += std::to_string(v) + ",";
    out += format_double(s.value.real()) + "," + format_double(s.value.imag()) + "\n";
  }
  return out;
}

std::vector<BrokenRaySample> broken_rays_from_csv(std::string_view text, const std::optional<Box>& box) {
  const auto lines = lines_of(text);
  if (lines.empty()) return {};
  const auto header = split(lines.front(), ',');
  if (header.size() < 4 || (header.size() - 2) % 2 != 0 || header.front() != "x0_1") {
    throw Error(ErrorCode::parse_error, "broken-ray CSV header must be x0_1,...,v_1,...,re,im");
  }
  const std::size_t n = (header.size() - 2) / 2;
  std::vector<BrokenRaySample> out;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = split(lines[r], ',');
    if (cells.size() != header.size()) throw Error(ErrorCode::parse_error, "broken-ray CSV row has wrong width");
    BrokenRaySample s;
    for (std::size_t i = 0; i < n; ++i) s.start.push_back(parse_double(cells[i]));
    for (std::size_t i = 0; i < n; ++i) s.direction.push_back(parse_int(cells[n + i]));
    s.value = {parse_double(cells[2 * n]), parse_double(cells[2 * n + 1])};
    if (box) {
      const std::vector<double> dir(s.direction.begin(), s.direction.end());
      s.start = normalize(*box, s.start, dir).point;
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::io_error, "failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::io_error, "cannot move output into place at '" + path.string() + "'");
  }
}

}  // namespace torus_xray::io
