#pragma once

#include "wavescreen/manifold.hpp"
#include "wavescreen/polynomial.hpp"

#include <string_view>
#include <vector>

namespace wavescreen {

enum class BasisKind { chebyshev, monomial };

[[nodiscard]] std::string_view to_string(BasisKind kind) noexcept;
/// Throws ConfigError for anything but "chebyshev" / "monomial".
[[nodiscard]] BasisKind basis_kind_from_string(std::string_view name);

/// Polynomials of degree <= D in t = (2k - lo - hi) / (hi - lo), one interval
/// per unknown function.
struct FunctionBasis {
  BasisKind kind = BasisKind::chebyshev;
  int degree = 8;
  std::vector<Interval> intervals;
};

/// Maps k to [-1, 1] over the interval.
[[nodiscard]] double to_unit(const Interval& iv, double k) noexcept;

/// phi_0(t) .. phi_D(t) into `out` (size D+1).
void eval_basis(BasisKind kind, int degree, double t, std::span<double> out);

/// Coefficients (size D+1) of the polynomial p(k) in the basis over `iv`.
/// Throws ArgumentError when deg p > D.
[[nodiscard]] std::vector<double> to_basis(const Polynomial& p, BasisKind kind, int degree,
                                           const Interval& iv);

/// Chebyshev coefficients of a polynomial given in monomials of t.
[[nodiscard]] std::vector<double> monomial_to_chebyshev(const std::vector<double>& mono);

}  // namespace wavescreen
