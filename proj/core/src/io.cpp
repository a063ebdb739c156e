#include "polycs/io.hpp"

#include <cstdio>
#include <fstream>

#include "polycs/errors.hpp"

namespace polycs {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  return out;
}

std::string vector_json(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += format_double(v[i]);
  }
  return s + "]";
}

}  // namespace

void write_coefficients_csv(const std::string& path,
                            const StateVector& coeffs) {
  std::ofstream out = open_out(path);
  out << "m,re_c,im_c,abs2\n";
  for (Eigen::Index m = 0; m < coeffs.size(); ++m)
    out << m << ',' << format_double(coeffs(m).real()) << ','
        << format_double(coeffs(m).imag()) << ','
        << format_double(std::norm(coeffs(m))) << '\n';
}

void write_state_json(const std::string& path, const StateMetadata& meta) {
  std::ofstream out = open_out(path);
  out << "{\n"
      << "  \"algebra\": \"" << meta.algebra << "\",\n"
      << "  \"j\": " << format_double(meta.j) << ",\n"
      << "  \"eigenvalue\": [" << format_double(meta.eigenvalue.real()) << ", "
      << format_double(meta.eigenvalue.imag()) << "],\n"
      << "  \"truncation\": " << meta.truncation << ",\n"
      << "  \"tail_bound\": " << format_double(meta.tail_bound) << ",\n"
      << "  \"norm_log\": " << format_double(meta.norm_log) << "\n"
      << "}\n";
}

void write_moment_report_json(const std::string& path,
                              const MomentReport& report) {
  std::ofstream out = open_out(path);
  std::string ns = "[";
  for (std::size_t i = 0; i < report.n.size(); ++i) {
    if (i) ns += ",";
    ns += std::to_string(report.n[i]);
  }
  ns += "]";
  out << "{\n"
      << "  \"n\": " << ns << ",\n"
      << "  \"computed\": " << vector_json(report.computed) << ",\n"
      << "  \"target\": " << vector_json(report.target) << ",\n"
      << "  \"rel_error\": " << vector_json(report.rel_error) << "\n"
      << "}\n";
}

}  // namespace polycs
