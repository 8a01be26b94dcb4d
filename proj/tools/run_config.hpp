#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace cswp_cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SectionConfig {
  std::string kind = "square";  // square | circle | rectangle
  double a = 1.0;               // rectangle half-widths, mm
  double b = 0.5;
};

struct MaterialConfig {
  std::string kind = "svk";  // svk | neohooke | mooneyrivlin
  double lambda = 121.0;
  double mu = 80.0;
  double a10 = 40.0;
  double b10 = 30.0;
  double b01 = 10.0;
  double bulk = 174.34;
};

struct SweepConfig {
  bool proportional = false;
  int axis = 5;  // 0..5 = eps1, eps2, eps3, kappa1, kappa2, kappa3
  double from = 0.0;
  double to = 0.5;
  int samples = 11;
};

struct RunConfig {
  SectionConfig section;
  int degree = 3;
  int elements = 5;
  MaterialConfig material;
  std::array<double, 3> eps{0.0, 0.0, 0.0};
  std::array<double, 3> kappa{0.0, 0.0, 0.0};
  int steps = 1;
  std::string formulation = "pk2";  // pk2 | pk1
  double tolerance = 1e-10;
  int max_iterations = 20;
  int workers = 1;
  std::string out = "out";
  int grid = 21;
  SweepConfig sweep;
};

/// Throws ConfigError on malformed documents, unknown keys or invalid values.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);
void validate_config(const RunConfig& cfg);

/// eps1..kappa3 or a digit 0..5.
int parse_axis(const std::string& name);
std::string axis_name(int axis);

}  // namespace cswp_cli
