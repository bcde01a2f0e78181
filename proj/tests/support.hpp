#pragma once

// Shared fixtures and tolerance helpers for the test suites. Bundled network
// files are loaded from the source tree via compile definitions.

#include <cmath>
#include <string>

#include "oscprof/model.hpp"
#include "oscprof/network_io.hpp"

#ifndef OSCPROF_CONFIG_DIR
#error "OSCPROF_CONFIG_DIR must point at the bundled configs"
#endif
#ifndef OSCPROF_TEST_DATA_DIR
#error "OSCPROF_TEST_DATA_DIR must point at tests/data"
#endif

namespace testsup {

inline std::string config_path(const std::string& name) {
  return std::string(OSCPROF_CONFIG_DIR) + "/" + name;
}

inline std::string data_path(const std::string& name) {
  return std::string(OSCPROF_TEST_DATA_DIR) + "/" + name;
}

inline oscprof::Network pentilator() {
  return oscprof::load_network(config_path("pentilator.net"));
}

inline oscprof::Network hes7() {
  return oscprof::load_network(config_path("hes7.net"));
}

inline oscprof::Network repressilator() {
  return oscprof::load_network(config_path("repressilator3.net"));
}

inline double rel_err(double got, double want) {
  const double scale = std::max(std::abs(got), std::abs(want));
  return scale == 0.0 ? 0.0 : std::abs(got - want) / scale;
}

inline bool rel_close(double got, double want, double tol) {
  return rel_err(got, want) <= tol;
}

}  // namespace testsup
