#include "wavescreen/io.hpp"

#include "wavescreen/errors.hpp"

#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace wavescreen {

std::string format_double(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

void write_points_csv(std::ostream& os, std::span<const ManifoldPoint> points, int arity) {
  for (int j = 1; j <= arity; ++j) os << 'k' << j << ',';
  os << "residual_k,residual_w,branch\n";
  for (const auto& p : points) {
    if (static_cast<int>(p.ks.size()) != arity) throw ArgumentError("point arity mismatch");
    for (double k : p.ks) os << format_double(k) << ',';
    os << format_double(p.residual_k) << ',' << format_double(p.residual_w) << ','
       << to_string(p.branch) << '\n';
  }
}

void write_coefficients_csv(std::ostream& os, std::span<const CoefficientRow> rows, int arity) {
  for (int j = 1; j <= arity; ++j) os << 'k' << j << ',';
  os << "value,status,part\n";
  for (const auto& r : rows) {
    for (double k : r.ks) os << format_double(k) << ',';
    os << format_double(r.value.value) << ',' << to_string(r.value.status) << ',' << r.part << '\n';
  }
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    if (first == std::string::npos) throw ArgumentError("empty field in list: " + text);
    const std::string t = field.substr(first, last - first + 1);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(t, &used));
      if (used != t.size()) throw ArgumentError("");
    } catch (const std::exception&) {
      throw ArgumentError("not a number: '" + t + "'");
    }
  }
  if (out.empty()) throw ArgumentError("empty number list");
  return out;
}

std::vector<std::vector<double>> read_ks_csv(std::istream& is, int arity) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const char c = line[first];
    if (c == '#' || std::isalpha(static_cast<unsigned char>(c))) continue;
    // keep only the leading numeric fields
    std::stringstream ss(line);
    std::string field, kept;
    for (int j = 0; j < arity && std::getline(ss, field, ','); ++j) kept += (j ? "," : "") + field;
    auto ks = parse_number_list(kept);
    if (static_cast<int>(ks.size()) != arity)
      throw ArgumentError("row has fewer than " + std::to_string(arity) + " numbers: " + line);
    rows.push_back(std::move(ks));
  }
  return rows;
}

}  // namespace wavescreen
