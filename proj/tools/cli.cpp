#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "torus_xray/billiard.hpp"
#include "torus_xray/error.hpp"
#include "torus_xray/io.hpp"
#include "torus_xray/spectral.hpp"
#include "torus_xray/tensor.hpp"
#include "torus_xray/xray.hpp"

namespace torus_xray::cli {
namespace {

using json = nlohmann::json;

template <typename T>
const T& require(const std::optional<T>& value, const char* flag) {
  if (!value) throw Error(ErrorCode::invalid_argument, std::string("missing required flag --") + flag);
  return *value;
}

json config_echo(const RunConfig& c) {
  json j = json::object();
  auto put = [&](const char* key, const auto& opt) {
    if (opt) j[key] = *opt;
  };
  put("in", c.in);
  put("out", c.out);
  put("tuples", c.tuples);
  put("ref", c.ref);
  put("box", c.box);
  put("kind", c.kind);
  put("n", c.n);
  put("d", c.d);
  put("m", c.m);
  put("K", c.K);
  put("N", c.N);
  put("M", c.M);
  put("max_norm", c.max_norm);
  put("seed", c.seed);
  put("s", c.s);
  put("tol", c.tol);
  return j;
}

std::optional<Box> load_box(const RunConfig& c) {
  if (!c.box) return std::nullopt;
  return io::box_from_json(io::read_file(*c.box));
}

std::vector<Direction> directions_of(const std::vector<DirectionTuple>& tuples) {
  std::vector<Direction> out;
  for (const auto& t : tuples) {
    if (t.size() != 1) throw Error(ErrorCode::invalid_argument, "expected single-direction tuples");
    out.push_back(t.vectors().front());
  }
  return out;
}

json cmd_phantom(const RunConfig& c) {
  const int n = require(c.n, "n");
  const int band = require(c.K, "K");
  const std::uint64_t seed = c.seed.value_or(0);
  const auto& out = require(c.out, "out");
  if (c.m) {
    const std::string kind = c.kind.value_or("random");
    SymmetricTensorField f(n, *c.m, band);
    if (kind == "random") {
      f = make_tensor_phantom(n, *c.m, band, seed);
    } else if (kind == "gradient") {
      if (*c.m < 1) throw Error(ErrorCode::invalid_argument, "gradient phantoms need --m >= 1");
      f = gradient(make_potential_phantom(n, *c.m - 1, band, seed));
    } else {
      throw Error(ErrorCode::invalid_argument, "unknown tensor phantom kind '" + kind + "'");
    }
    io::write_file_atomic(out, io::to_json(f));
    return {{"components", f.components().size()}, {"l2_norm", sobolev_norm(f, 0.0)}};
  }
  const auto kind = parse_phantom_kind(c.kind.value_or("random-real"));
  const auto f = make_phantom(n, band, kind, seed);
  io::write_file_atomic(out, io::to_json(f));
  return {{"modes", f.coefficients().size()}, {"l2_norm", sobolev_norm(f, 0.0)}};
}

json cmd_forward(const RunConfig& c) {
  const auto f = io::trig_polynomial_from_json(io::read_file(require(c.in, "in")));
  const auto& out = require(c.out, "out");
  std::vector<DirectionTuple> tuples;
  if (c.tuples) {
    tuples = io::tuples_from_json(io::read_file(*c.tuples));
  } else {
    tuples = default_acquisition_set(f.dimension(), require(c.d, "d"), f.band());
  }
  const auto data = forward_all(f, tuples);
  io::write_file_atomic(out, io::to_json(data));
  return {{"tuples", tuples.size()}, {"l2_norm", sobolev_norm(f, 0.0)}};
}

json cmd_invert(const RunConfig& c) {
  const auto data = io::radon_data_from_json(io::read_file(require(c.in, "in")));
  const auto f = invert(data, c.K.value_or(data.band()));
  io::write_file_atomic(require(c.out, "out"), io::to_json(f));
  json summary{{"modes", f.coefficients().size()}, {"l2_norm", sobolev_norm(f, 0.0)}};
  if (c.ref) {
    const auto ref = io::trig_polynomial_from_json(io::read_file(*c.ref));
    summary["max_coeff_error"] = max_coefficient_difference(f, ref);
  }
  return summary;
}

json cmd_validate(const RunConfig& c) {
  const auto data = io::radon_data_from_json(io::read_file(require(c.in, "in")));
  const auto report = validate_range(data, c.tol.value_or(default_range_tolerance));
  if (c.out) io::write_file_atomic(*c.out, io::to_json(report));
  json summary{{"consistent", report.consistent}, {"conflicts", report.conflicts.size()}};
  if (!report.conflicts.empty()) {
    const auto& first = report.conflicts.front();
    summary["first_conflict"] = {{"k", first.k}, {"A", first.tuple.as_vectors()}, {"magnitude", first.magnitude}};
  }
  return summary;
}

json cmd_stability(const RunConfig& c) {
  const auto data = io::radon_data_from_json(io::read_file(require(c.in, "in")));
  const double s = c.s.value_or(0.0);
  const double norm = stability_norm(data, s);
  json summary{{"stability_norm", norm}};
  if (c.ref) {
    const auto ref = io::trig_polynomial_from_json(io::read_file(*c.ref));
    const double sob = sobolev_norm(ref, s);
    summary["sobolev_norm"] = sob;
    summary["relative_error"] = sob == 0.0 ? std::abs(norm) : std::abs(norm - sob) / sob;
  }
  if (c.out) io::write_file_atomic(*c.out, summary.dump());
  return summary;
}

json cmd_tensor_forward(const RunConfig& c) {
  const auto f = io::tensor_field_from_json(io::read_file(require(c.in, "in")));
  std::vector<DirectionTuple> tuples = c.tuples ? io::tuples_from_json(io::read_file(*c.tuples))
                                                : enumerate_tuples(f.dimension(), 1, c.max_norm.value_or(2));
  RadonData data(f.dimension(), 1, f.band());
  double peak = 0.0;
  for (const auto& v : directions_of(tuples)) {
    auto values = tensor_xray_forward(f, v);
    peak = std::max(peak, max_coefficient_magnitude(values));
    data.set(DirectionTuple(std::vector<Direction>{v}), std::move(values));
  }
  io::write_file_atomic(require(c.out, "out"), io::to_json(data));
  return {{"directions", tuples.size()}, {"max_abs_coefficient", peak}};
}

json cmd_tensor_decompose(const RunConfig& c) {
  const auto f = io::tensor_field_from_json(io::read_file(require(c.in, "in")));
  const auto h = solenoidal_decompose(f, c.tol.value_or(default_division_tolerance));
  io::write_file_atomic(require(c.out, "out"), io::to_json(h));
  return {{"order", h.order()},
          {"residual", max_component_difference(gradient(h), f)},
          {"h_norm", sobolev_norm(h, 0.0)}};
}

json cmd_broken_forward(const RunConfig& c) {
  const auto rep = io::trig_polynomial_from_json(io::read_file(require(c.in, "in")));
  const BoxFunction f(rep, c.tol.value_or(1e-12));
  const int band = f.band();
  std::vector<Direction> dirs;
  if (c.tuples) {
    dirs = directions_of(io::tuples_from_json(io::read_file(*c.tuples)));
  } else {
    dirs = directions_of(default_acquisition_set(f.dimension(), 1, band));
  }
  const auto samples = acquire_broken_rays(f, band, dirs);

  // Each sample is checked against the unfolded torus transform.
  double worst = 0.0;
  for (const auto& s : samples) {
    const DirectionTuple tuple(std::vector<IntVector>{s.direction});
    const auto slice = forward_spectral(f.representative(), tuple);
    worst = std::max(worst, std::abs(evaluate(slice, s.start) - s.value));
  }
  io::write_file_atomic(require(c.out, "out"), io::broken_rays_to_csv(samples, load_box(c)));
  return {{"samples", samples.size()}, {"directions", dirs.size()}, {"max_equivalence_error", worst}};
}

json cmd_broken_invert(const RunConfig& c) {
  const auto samples = io::broken_rays_from_csv(io::read_file(require(c.in, "in")), load_box(c));
  if (samples.empty()) throw Error(ErrorCode::invalid_argument, "no broken-ray samples in input");
  const int n = static_cast<int>(samples.front().start.size());
  const int band = require(c.K, "K");
  std::vector<Direction> dirs;
  if (c.tuples) {
    dirs = directions_of(io::tuples_from_json(io::read_file(*c.tuples)));
  } else {
    dirs = directions_of(default_acquisition_set(n, 1, band));
  }
  const auto data = radon_from_samples(samples, n, band, dirs);
  const auto f = broken_ray_invert(data, band);
  io::write_file_atomic(require(c.out, "out"), io::to_json(f.representative()));
  json summary{{"modes", f.representative().coefficients().size()}};
  if (c.ref) {
    const auto ref = io::trig_polynomial_from_json(io::read_file(*c.ref));
    summary["max_coeff_error"] = max_coefficient_difference(f.representative(), ref);
    const int grid = box_resolution_for_band(band);
    const auto a = sample_box(f.representative(), grid);
    const auto b = sample_box(ref, grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.samples().size(); ++i) {
      worst = std::max(worst, std::abs(a.samples()[i] - b.samples()[i]));
    }
    summary["max_box_grid_error"] = worst;
  }
  return summary;
}

json cmd_fejer(const RunConfig& c) {
  const auto f = io::trig_polynomial_from_json(io::read_file(require(c.in, "in")));
  const int order = require(c.N, "N");
  const int resolution = c.M.value_or(64);
  const auto mean = fejer_reconstruct(f, order);
  const int needed = 2 * std::max(mean.band(), f.band()) + 1;
  if (resolution < needed) {
    throw Error(ErrorCode::aliasing, "--M must be at least " + std::to_string(needed));
  }
  const auto approx = to_grid(mean, resolution);
  const auto exact = to_grid(f, resolution);
  double worst = 0.0;
  for (std::size_t i = 0; i < approx.samples().size(); ++i) {
    worst = std::max(worst, std::abs(approx.samples()[i] - exact.samples()[i]));
  }
  io::write_file_atomic(require(c.out, "out"), io::grid_to_csv(approx));
  return {{"sup_error", worst}, {"band", mean.band()}};
}

using Handler = json (*)(const RunConfig&);

struct Command {
  std::string name;
  Handler handler;
  std::string help;
};

const std::vector<Command>& handlers() {
  static const std::vector<Command> table{
      {"phantom", cmd_phantom, "write a seeded scalar (or, with --m, tensor) phantom as JSON"},
      {"forward", cmd_forward, "TrigPolynomial -> RadonData over the default or --tuples acquisition set"},
      {"invert", cmd_invert, "RadonData -> TrigPolynomial"},
      {"validate", cmd_validate, "range check of RadonData; --out writes the full report"},
      {"stability", cmd_stability, "data-side Sobolev norm for --s, compared with --ref"},
      {"tensor-forward", cmd_tensor_forward, "tensor X-ray transform along single directions"},
      {"tensor-decompose", cmd_tensor_decompose, "find h with symmetrized gradient equal to the input"},
      {"broken-forward", cmd_broken_forward, "billiard integrals of a box function, written as CSV"},
      {"broken-invert", cmd_broken_invert, "reconstruct a box function from billiard CSV samples"},
      {"fejer", cmd_fejer, "Fejer mean of order --N sampled on an --M grid, written as CSV"},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& c : handlers()) out.push_back(c.name);
    return out;
  }();
  return names;
}

int dispatch(const RunConfig& config, std::ostream& out) {
  const auto& table = handlers();
  const auto it = std::find_if(table.begin(), table.end(),
                               [&](const Command& entry) { return entry.name == config.command; });
  json summary{{"command", config.command}, {"config", config_echo(config)}};
  if (it == table.end()) {
    summary["error"] = {{"code", "invalid_argument"}, {"message", "unknown command"}};
    out << summary.dump() << '\n';
    return 2;
  }
  try {
    summary["result"] = it->handler(config);
    summary["ok"] = true;
    out << summary.dump() << '\n';
    return 0;
  } catch (const Error& e) {
    json error{{"code", to_string(e.code())}, {"message", e.what()}};
    if (e.frequency()) error["k"] = *e.frequency();
    if (e.residual()) error["residual"] = *e.residual();
    summary["ok"] = false;
    summary["error"] = std::move(error);
  } catch (const std::exception& e) {
    summary["ok"] = false;
    summary["error"] = {{"code", "internal"}, {"message", e.what()}};
  }
  out << summary.dump() << '\n';
  return 1;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Radon and X-ray transforms on the flat torus, tensor tomography and periodic broken rays"};
  app.require_subcommand(1);
  RunConfig config;

  auto add_flags = [&](CLI::App* sub) {
    sub->add_option("--in", config.in, "input file");
    sub->add_option("--out", config.out, "output file");
    sub->add_option("--tuples", config.tuples, "direction tuple list (JSON)");
    sub->add_option("--ref", config.ref, "reference TrigPolynomial for error reports");
    sub->add_option("--box", config.box, "box description JSON {\"L\": [...]}");
    sub->add_option("--kind", config.kind, "phantom kind");
    sub->add_option("--n", config.n, "torus dimension");
    sub->add_option("--d", config.d, "plane dimension");
    sub->add_option("--m", config.m, "tensor order");
    sub->add_option("--K", config.K, "band limit (sup-norm of frequencies)");
    sub->add_option("--N", config.N, "Fejer order");
    sub->add_option("--M", config.M, "grid resolution / quadrature nodes");
    sub->add_option("--max-norm", config.max_norm, "sup-norm bound for enumerated directions");
    sub->add_option("--seed", config.seed, "random seed");
    sub->add_option("--s", config.s, "Sobolev index");
    sub->add_option("--tol", config.tol, "tolerance");
  };
  for (const auto& c : handlers()) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_flags(sub);
    sub->callback([&config, name = c.name] { config.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    err << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return 2;
  }
  return dispatch(config, out);
}

}  // namespace torus_xray::cli
