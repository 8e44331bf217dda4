#include <cstdlib>
#include <iostream>
#include <string>

#include "cli.hpp"
#include "torus_xray/parallel.hpp"

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("TORUS_XRAY_THREADS")) {
    try {
      torus_xray::set_thread_limit(static_cast<unsigned>(std::stoul(threads)));
    } catch (const std::exception&) {
      std::cerr << "ignoring malformed TORUS_XRAY_THREADS='" << threads << "'\n";
    }
  }
  return torus_xray::cli::run(argc, argv, std::cout, std::cerr);
}
