#pragma once

#include <span>
#include <vector>

namespace wavescreen {

/// Dense real polynomial in the monomial basis, coeffs[d] multiplies x^d.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  [[nodiscard]] const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] double coeff(std::size_t d) const noexcept {
    return d < coeffs_.size() ? coeffs_[d] : 0.0;
  }
  /// Index of the highest nonzero coefficient; -1 for the zero polynomial.
  [[nodiscard]] int degree() const noexcept;
  [[nodiscard]] bool is_zero() const noexcept { return degree() < 0; }

  [[nodiscard]] double operator()(double x) const noexcept;
  [[nodiscard]] long double eval_extended(long double x) const noexcept;
  [[nodiscard]] double derivative_at(double x) const noexcept;

  /// p(a*x + b) expanded in x.
  [[nodiscard]] Polynomial compose_affine(double a, double b) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator*=(double s);
  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator*(Polynomial lhs, double s) { return lhs *= s; }

 private:
  std::vector<double> coeffs_;
};

/// Zero coefficients whose magnitude is below `rel_tol` times the matching
/// coefficient of `magnitude` (a polynomial built from absolute values of the
/// same inputs). Used to remove cancellation noise before root finding.
[[nodiscard]] Polynomial clean_cancellation(const Polynomial& p, const Polynomial& magnitude,
                                            double rel_tol);

struct RootOptions {
  double imag_tol = 1e-7;    // relative imaginary-part cutoff for "real" eigenvalues
  double merge_tol = 1e-9;   // roots closer than this are merged
  int newton_steps = 3;
};

/// Real roots in ascending order from the companion-matrix eigenvalues of the
/// polynomial after exact zero roots are deflated. Zero roots come back as
/// exactly 0.0. The zero polynomial has no roots (callers treat it separately).
[[nodiscard]] std::vector<double> real_roots(const Polynomial& p, const RootOptions& opts = {});

}  // namespace wavescreen
