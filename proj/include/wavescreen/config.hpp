#pragma once

#include "wavescreen/basis.hpp"
#include "wavescreen/coefficients.hpp"
#include "wavescreen/degeneracy.hpp"
#include "wavescreen/manifold.hpp"

#include <cstdint>

namespace wavescreen {

/// Every tunable of an analysis run. Key names match the config-file keys.
struct AnalysisConfig {
  double tol_res = 1e-10;
  double merge_tol = 1e-9;
  double billiard_tol = 1e-9;
  double eps_den = 1e-8;
  double eps_num = 1e-10;
  double k_min = 1e-3;
  double domain_lo = -5.0;
  double domain_hi = 5.0;
  double rank_tol = 1e-8;
  double gap_factor = 1e3;
  BasisKind basis = BasisKind::chebyshev;
  int degree = 8;
  int points = 2000;
  int scan_points = 400;
  int max_attempts_factor = 200;
  int empty_probe_attempts = 2000;
  std::uint64_t seed = 1;

  [[nodiscard]] Interval domain() const noexcept { return {domain_lo, domain_hi}; }
  [[nodiscard]] ManifoldTolerances tolerances() const noexcept {
    return {tol_res, merge_tol, billiard_tol};
  }
  [[nodiscard]] GuardTolerances guard() const noexcept { return {eps_den, eps_num}; }
  [[nodiscard]] SamplingOptions sampling() const noexcept {
    SamplingOptions s;
    s.k_min = k_min;
    s.max_attempts_factor = max_attempts_factor;
    s.empty_probe_attempts = empty_probe_attempts;
    s.tol = tolerances();
    return s;
  }
  [[nodiscard]] DegeneracyOptions degeneracy(std::uint64_t run_seed) const noexcept {
    DegeneracyOptions d;
    d.basis = basis;
    d.degree = degree;
    d.points = points;
    d.seed = run_seed;
    d.domain = domain();
    d.sampling = sampling();
    d.rank.rank_tol = rank_tol;
    d.rank.gap_factor = gap_factor;
    return d;
  }
};

}  // namespace wavescreen
