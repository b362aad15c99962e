#pragma once

#include "wavescreen/basis.hpp"
#include "wavescreen/manifold.hpp"
#include "wavescreen/process.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wavescreen {

enum class WebMode { web, tied };

[[nodiscard]] std::string_view to_string(WebMode mode) noexcept;
[[nodiscard]] WebMode web_mode_from_string(std::string_view name);

enum class DegeneracyVerdict {
  nondegenerate_rank2,
  degenerate_rank3_plus,
  billiard_infinite_rank,
  inconclusive,
};

[[nodiscard]] std::string_view to_string(DegeneracyVerdict v) noexcept;

/// Which sample columns feed each unknown function, and with which sign.
/// Web mode: function j reads k_j. Tied mode: function l reads every k_j on
/// branch l, weighted by sigma_j.
struct CollocationLayout {
  std::vector<std::vector<std::pair<int, double>>> uses;

  [[nodiscard]] int n_functions() const noexcept { return static_cast<int>(uses.size()); }
};

[[nodiscard]] CollocationLayout web_layout(int n_args);
[[nodiscard]] CollocationLayout tied_layout(const ResonanceProcess& process);

struct Collocation {
  Eigen::MatrixXd matrix;  // rows = samples, columns = n_functions * (D+1), mean-centered
  FunctionBasis basis;
  CollocationLayout layout;
};

/// Generic assembly from a sample matrix (rows = points, columns = arguments).
[[nodiscard]] Collocation build_collocation(const Eigen::MatrixXd& args,
                                            const CollocationLayout& layout, BasisKind kind,
                                            int degree);

/// Assembly from manifold points. Needs at least 4(D+1) points.
[[nodiscard]] Collocation build_collocation(std::span<const ManifoldPoint> points,
                                            const ResonanceProcess& process, BasisKind kind,
                                            int degree, WebMode mode);

/// A relation sum_f F_f(...) = 0 given as one polynomial (in k) per function.
struct KnownRelation {
  std::string name;
  std::vector<Polynomial> functions;
};

/// Momentum and frequency relations of a process in the given layout.
[[nodiscard]] std::vector<KnownRelation> known_relations(const ResonanceProcess& process,
                                                         const WaveSystem& system, WebMode mode);

struct KnownCheck {
  std::string name;
  double residual = 0.0;  // distance of the normalized relation from the numeric nullspace
  bool found = false;
};

struct AbelianRelation {
  std::vector<std::vector<double>> coefficients;  // per function, basis coefficients (D+1)
  double residual_norm = 0.0;                     // |A c| / sigma_max on normalized columns
};

struct RankOptions {
  double rank_tol = 1e-8;
  double gap_factor = 1e3;
  double known_tol = 1e-6;
};

struct ModeReport {
  WebMode mode = WebMode::tied;
  int degree = 0;
  int width = 0;
  std::vector<double> singular_values;  // descending, normalized columns
  int nullspace_dim = 0;
  int known_rank = 0;
  int n_beyond_known = 0;
  double gap = 0.0;
  std::vector<KnownCheck> known;
  std::vector<AbelianRelation> extra;
  DegeneracyVerdict verdict = DegeneracyVerdict::inconclusive;
};

/// Nullspace analysis of a collocation matrix. Throws ConsistencyError when the
/// spectrum has a clean gap but a known relation is missing from the nullspace.
[[nodiscard]] ModeReport rank_analyze(const Collocation& colloc,
                                      std::span<const KnownRelation> known,
                                      const RankOptions& opts = {});

struct DegeneracyOptions {
  BasisKind basis = BasisKind::chebyshev;
  int degree = 8;
  int points = 2000;
  std::uint64_t seed = 1;
  Interval domain{};
  SamplingOptions sampling{};
  RankOptions rank{};
  int billiard_min_points = 1000;
};

struct RankReport {
  DegeneracyVerdict verdict = DegeneracyVerdict::inconclusive;
  int n_beyond_known = 0;
  std::vector<double> singular_values;  // of the deciding mode
  std::string decided_by;               // "tied", "web", "billiard", "full_manifold", "sampling"
  std::optional<ModeReport> tied;
  std::optional<ModeReport> web;
  double billiard_fraction = 0.0;
  bool full_manifold = false;
  int n_points = 0;
  bool partial = false;
  std::string note;
};

/// Sample -> billiard check -> tied and web collocation -> rank analysis.
/// Degenerate if either mode finds a relation beyond the known ones (some
/// special cases only show up in web form); inconclusive if neither does and
/// either spectrum lacks a gap. Throws EmptyRegionError when the sampler finds
/// no point at all.
[[nodiscard]] RankReport degeneracy_verdict(const ResonanceProcess& process,
                                            const WaveSystem& system,
                                            const DegeneracyOptions& opts = {});

/// Same pipeline on an already built chart (e.g. an explicit generic chart).
[[nodiscard]] RankReport degeneracy_verdict(const ManifoldChart& chart,
                                            const DegeneracyOptions& opts = {});

/// Pipeline minus the sampling step, for callers that reuse the sample.
[[nodiscard]] RankReport degeneracy_from_sample(const ManifoldChart& chart,
                                                const SampleResult& sample,
                                                const DegeneracyOptions& opts = {});

/// Single-mode analysis of a manifold sample (used by the `rank` subcommand).
[[nodiscard]] ModeReport analyze_mode(std::span<const ManifoldPoint> points,
                                      const ResonanceProcess& process, const WaveSystem& system,
                                      WebMode mode, BasisKind basis, int degree,
                                      const RankOptions& opts = {});

}  // namespace wavescreen
