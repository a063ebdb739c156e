#pragma once

#include <string>

#include "polycs/coherent.hpp"
#include "polycs/measure.hpp"

namespace polycs {

// Fixed 17-significant-digit formatting; reports and tables are
// byte-identical across runs.
std::string format_double(double x);

// Header m,re_c,im_c,abs2, one row per basis index.
void write_coefficients_csv(const std::string& path, const StateVector& coeffs);

struct StateMetadata {
  std::string algebra;
  double j = 0.0;
  Complex eigenvalue{0.0, 0.0};
  int truncation = 0;
  double tail_bound = 0.0;
  double norm_log = 0.0;
};
void write_state_json(const std::string& path, const StateMetadata& meta);

void write_moment_report_json(const std::string& path,
                              const MomentReport& report);

}  // namespace polycs
