#pragma once

#include "wavescreen/dispersion.hpp"
#include "wavescreen/process.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wavescreen {

struct Interval {
  double lo = -5.0;
  double hi = 5.0;
};

/// Which solution a manifold point came from: a sheet of a closed-form chart or
/// the index of a real root of the eliminated polynomial.
struct BranchTag {
  enum class Kind { plus, minus, root };
  Kind kind = Kind::root;
  int index = 0;
};

[[nodiscard]] std::string to_string(const BranchTag& tag);

struct ManifoldPoint {
  std::vector<double> ks;
  double residual_k = 0.0;
  double residual_w = 0.0;
  BranchTag branch;
};

struct ManifoldTolerances {
  double tol_res = 1e-10;
  double merge_tol = 1e-9;
  double billiard_tol = 1e-9;
};

/// Closed-form chart of the NLS-KdV four-wave manifold in (k2, k4):
///   k1 = (-k2^2 - k2 k4 - k4^2 + k4 - k2) / 2
///   k3 = (-k2^2 - k2 k4 - k4^2 + k2 - k4) / 2
[[nodiscard]] ManifoldPoint param_m3_nlskdv(double k2, double k4);

enum class Sheet { plus, minus };

/// Closed-form chart of the KdV-CKdV manifold k1 = k2+k3+k4, omega_1 = Omega_2 + omega_3 + Omega_4:
///   k1 =  (k2+k4)/2 +- sqrt(bracket / (3 alpha)) / 2
///   k3 = -(k2+k4)/2 +- sqrt(bracket / (3 alpha)) / 2
///   bracket = 4 beta - (k2^2+k4^2)(alpha - 4 gamma) - 2 k2 k4 (alpha + 2 gamma)
/// Same sign on both lines. Returns nullopt when bracket/(3 alpha) < 0.
/// Throws ArgumentError for alpha == 0 (use the generic solver there).
[[nodiscard]] std::optional<ManifoldPoint> param_m1_kdvckdv(double k2, double k4,
                                                            const SystemParams& params,
                                                            Sheet sheet);

struct ChartSolution {
  bool full_manifold = false;  // frequency constraint implied by the momentum constraint
  std::vector<ManifoldPoint> points;
};

/// Generic chart: fixes every wavenumber in `free_assignment` (0-based wave
/// index -> value), eliminates the lower unsolved index through the momentum
/// constraint and returns all real roots in the higher one.
[[nodiscard]] ChartSolution solve_chart(const ResonanceProcess& process, const WaveSystem& system,
                                        const std::map<int, double>& free_assignment,
                                        const ManifoldTolerances& tol = {});

enum class ChartSolver { closed_form_nlskdv_m3, closed_form_kdvckdv_m1, generic_poly };

[[nodiscard]] std::string to_string(ChartSolver solver);

struct ManifoldChart {
  ResonanceProcess process;
  WaveSystem system;
  std::vector<int> free_indices;  // 0-based
  std::vector<Interval> domain;   // one per free index
  ChartSolver solver = ChartSolver::generic_poly;
};

/// Picks the closed-form chart where one applies (free k2, k4), otherwise the
/// generic solver with the first free-index choice whose eliminated polynomial
/// is non-constant.
[[nodiscard]] ManifoldChart make_chart(const ResonanceProcess& process, const WaveSystem& system,
                                       Interval domain = {});

/// Generic chart with an explicit free-index choice.
[[nodiscard]] ManifoldChart make_generic_chart(const ResonanceProcess& process,
                                               const WaveSystem& system,
                                               std::vector<int> free_indices,
                                               Interval domain = {});

/// All points of the chart over one assignment of its free variables.
[[nodiscard]] ChartSolution solve_at(const ManifoldChart& chart, std::span<const double> free_values,
                                     const ManifoldTolerances& tol = {});

struct SamplingOptions {
  double k_min = 1e-3;        // points with any |k_j| < k_min are discarded
  bool all_negative = false;  // keep only points with every k_j < 0
  int max_attempts_factor = 200;
  int empty_probe_attempts = 2000;  // give up early if nothing qualifies by then (0 = never)
  ManifoldTolerances tol;
};

struct SampleResult {
  std::vector<ManifoldPoint> points;
  bool partial = false;  // fewer than requested after max attempts
  bool full_manifold = false;
  long attempts = 0;
};

/// Uniform draws of the free variables; deterministic for a fixed seed.
[[nodiscard]] SampleResult sample_manifold(const ManifoldChart& chart, int count,
                                           std::uint64_t seed, const SamplingOptions& opts = {});

/// True when the point pairs up as k_a = k_b, k_c = k_d over sign-opposite,
/// same-branch pairs.
[[nodiscard]] bool is_billiard_point(const ManifoldPoint& point, const ResonanceProcess& process,
                                     double tol = 1e-9);

/// Fraction of billiard points. Arity-4 processes only (ArgumentError otherwise).
[[nodiscard]] double detect_billiard(std::span<const ManifoldPoint> points,
                                     const ResonanceProcess& process, double tol = 1e-9);

}  // namespace wavescreen
