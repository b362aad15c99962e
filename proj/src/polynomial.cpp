#include "wavescreen/polynomial.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace wavescreen {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

int Polynomial::degree() const noexcept {
  for (int d = static_cast<int>(coeffs_.size()) - 1; d >= 0; --d) {
    if (coeffs_[static_cast<std::size_t>(d)] != 0.0) return d;
  }
  return -1;
}

double Polynomial::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

long double Polynomial::eval_extended(long double x) const noexcept {
  long double acc = 0.0L;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::derivative_at(double x) const noexcept {
  double acc = 0.0;
  for (std::size_t d = coeffs_.size(); d-- > 1;) acc = acc * x + static_cast<double>(d) * coeffs_[d];
  return acc;
}

Polynomial Polynomial::compose_affine(double a, double b) const {
  // Horner in polynomial arithmetic: acc <- acc*(a x + b) + c_d
  std::vector<double> acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    std::vector<double> next(acc.size() + 1, 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i] += acc[i] * b;
      next[i + 1] += acc[i] * a;
    }
    next[0] += *it;
    acc = std::move(next);
  }
  return Polynomial(std::move(acc));
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

Polynomial clean_cancellation(const Polynomial& p, const Polynomial& magnitude, double rel_tol) {
  std::vector<double> out = p.coeffs();
  for (std::size_t d = 0; d < out.size(); ++d) {
    if (std::abs(out[d]) <= rel_tol * std::abs(magnitude.coeff(d))) out[d] = 0.0;
  }
  return Polynomial(std::move(out));
}

namespace {

double polish(const Polynomial& p, double x, int steps) {
  double best = x;
  double best_val = std::abs(p(x));
  for (int i = 0; i < steps && best_val > 0.0; ++i) {
    const double dp = p.derivative_at(x);
    if (dp == 0.0 || !std::isfinite(dp)) break;
    x -= p(x) / dp;
    const double v = std::abs(p(x));
    if (v < best_val) {
      best = x;
      best_val = v;
    }
  }
  return best;
}

}  // namespace

std::vector<double> real_roots(const Polynomial& p, const RootOptions& opts) {
  std::vector<double> roots;
  const int deg = p.degree();
  if (deg <= 0) return roots;

  const auto& c = p.coeffs();
  int low = 0;
  while (c[static_cast<std::size_t>(low)] == 0.0) ++low;
  if (low > 0) roots.push_back(0.0);

  const int n = deg - low;
  if (n == 1) {
    roots.push_back(-c[static_cast<std::size_t>(low)] / c[static_cast<std::size_t>(low + 1)]);
  } else if (n >= 2) {
    const double lead = c[static_cast<std::size_t>(deg)];
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<std::size_t>(low + i)] / lead;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    const Eigen::VectorXcd& ev = solver.eigenvalues();
    const Polynomial deflated(std::vector<double>(c.begin() + low, c.begin() + deg + 1));
    for (int i = 0; i < n; ++i) {
      const std::complex<double> z = ev(i);
      if (std::abs(z.imag()) <= opts.imag_tol * (1.0 + std::abs(z))) {
        roots.push_back(polish(deflated, z.real(), opts.newton_steps));
      }
    }
  }

  std::sort(roots.begin(), roots.end());
  std::vector<double> merged;
  for (double r : roots) {
    if (!merged.empty() && std::abs(r - merged.back()) < opts.merge_tol) continue;
    merged.push_back(r);
  }
  return merged;
}

}  // namespace wavescreen
