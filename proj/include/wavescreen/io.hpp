#pragma once

#include "wavescreen/coefficients.hpp"
#include "wavescreen/manifold.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace wavescreen {

/// Shortest text of 17 significant digits.
[[nodiscard]] std::string format_double(double v);

/// Header k1..kn,residual_k,residual_w,branch; one row per point.
void write_points_csv(std::ostream& os, std::span<const ManifoldPoint> points, int arity);

struct CoefficientRow {
  std::vector<double> ks;
  CoefficientValue value;
  std::string part;  // "total", "part1", "part2" or a kernel name
};

/// Header k1..kn,value,status,part.
void write_coefficients_csv(std::ostream& os, std::span<const CoefficientRow> rows, int arity);

/// Rows of comma-separated numbers. Blank lines and lines starting with a
/// letter or '#' (headers, comments) are skipped. Only the first `arity`
/// fields of each row are used. Throws ArgumentError on malformed numbers.
[[nodiscard]] std::vector<std::vector<double>> read_ks_csv(std::istream& is, int arity);

/// "k1,k2,k3[,k4]" -> numbers. Throws ArgumentError.
[[nodiscard]] std::vector<double> parse_number_list(const std::string& text);

}  // namespace wavescreen
