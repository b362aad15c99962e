#include "wavescreen/basis.hpp"

#include "wavescreen/errors.hpp"

#include <string>

namespace wavescreen {

std::string_view to_string(BasisKind kind) noexcept {
  return kind == BasisKind::chebyshev ? "chebyshev" : "monomial";
}

BasisKind basis_kind_from_string(std::string_view name) {
  if (name == "chebyshev") return BasisKind::chebyshev;
  if (name == "monomial") return BasisKind::monomial;
  throw ConfigError("unknown basis kind: " + std::string(name));
}

double to_unit(const Interval& iv, double k) noexcept {
  return (2.0 * k - iv.lo - iv.hi) / (iv.hi - iv.lo);
}

void eval_basis(BasisKind kind, int degree, double t, std::span<double> out) {
  out[0] = 1.0;
  if (degree == 0) return;
  out[1] = t;
  for (int d = 2; d <= degree; ++d) {
    const auto i = static_cast<std::size_t>(d);
    out[i] = kind == BasisKind::chebyshev ? 2.0 * t * out[i - 1] - out[i - 2] : t * out[i - 1];
  }
}

std::vector<double> monomial_to_chebyshev(const std::vector<double>& mono) {
  // Horner in the Chebyshev basis: c <- t*c + a_i with t*T_0 = T_1 and
  // t*T_j = (T_{j+1} + T_{j-1}) / 2.
  std::vector<double> c(mono.size(), 0.0);
  for (std::size_t i = mono.size(); i-- > 0;) {
    std::vector<double> next(mono.size(), 0.0);
    for (std::size_t j = 0; j + 1 < mono.size(); ++j) {
      if (c[j] == 0.0) continue;
      if (j == 0) {
        next[1] += c[0];
      } else {
        next[j + 1] += 0.5 * c[j];
        next[j - 1] += 0.5 * c[j];
      }
    }
    next[0] += mono[i];
    c = std::move(next);
  }
  return c;
}

std::vector<double> to_basis(const Polynomial& p, BasisKind kind, int degree, const Interval& iv) {
  if (p.degree() > degree)
    throw ArgumentError("relation of degree " + std::to_string(p.degree()) +
                        " does not fit a degree-" + std::to_string(degree) + " basis");
  // k = mid + half * t
  const double mid = 0.5 * (iv.lo + iv.hi), half = 0.5 * (iv.hi - iv.lo);
  auto mono = p.compose_affine(half, mid).coeffs();
  mono.resize(static_cast<std::size_t>(degree) + 1, 0.0);
  return kind == BasisKind::chebyshev ? monomial_to_chebyshev(mono) : mono;
}

}  // namespace wavescreen
