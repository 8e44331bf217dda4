#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace torus_xray::cli {

struct RunConfig {
  std::string command;
  std::optional<std::string> in;
  std::optional<std::string> out;
  std::optional<std::string> tuples;
  std::optional<std::string> ref;
  std::optional<std::string> box;
  std::optional<std::string> kind;
  std::optional<int> n;
  std::optional<int> d;
  std::optional<int> m;
  std::optional<int> K;
  std::optional<int> N;
  std::optional<int> M;
  std::optional<int> max_norm;
  std::optional<std::uint64_t> seed;
  std::optional<double> s;
  std::optional<double> tol;
};

const std::vector<std::string>& command_names();

/// Runs one command. Prints a one-line JSON summary (or a one-line JSON error)
/// to `out` and returns the process exit status.
int dispatch(const RunConfig& config, std::ostream& out);

/// Parses argv with CLI11 and dispatches. Usage problems print help text to
/// `err` and return a nonzero status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace torus_xray::cli
