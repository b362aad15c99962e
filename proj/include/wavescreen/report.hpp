#pragma once

#include "wavescreen/config.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wavescreen {

enum class ManifoldStatus { empty, billiard, generic };
enum class CoefficientStatusOnManifold { vanishes_on_manifold, nonzero, not_available };
enum class Implication { none, blocks_complete_integrability, blocks_ist_solvability };
enum class OverallVerdict { nonintegrable, special_case_open, no_obstruction_found };

[[nodiscard]] std::string_view to_string(ManifoldStatus s) noexcept;
[[nodiscard]] std::string_view to_string(CoefficientStatusOnManifold s) noexcept;
[[nodiscard]] std::string_view to_string(Implication s) noexcept;
[[nodiscard]] std::string_view to_string(OverallVerdict s) noexcept;

struct CoefficientSummary {
  std::optional<KernelId> kernel;
  int evaluated = 0;
  int nonzero = 0;
  int poles = 0;
  double max_abs = 0.0;
};

struct ObstructionFinding {
  std::string process;
  ManifoldStatus manifold_status = ManifoldStatus::empty;
  CoefficientStatusOnManifold coefficient_status = CoefficientStatusOnManifold::not_available;
  CoefficientSummary coefficient;
  std::optional<RankReport> degeneracy;
  Implication implication = Implication::none;
  std::uint64_t seed = 0;
  int n_points = 0;
};

struct IntegrabilityReport {
  SystemId system = SystemId::NlsKdv;
  SystemParams params;
  SystemFlags flags;
  std::vector<ObstructionFinding> findings;
  OverallVerdict overall = OverallVerdict::no_obstruction_found;
  bool inconclusive = false;  // some finding has an inconclusive degeneracy verdict
};

/// Coefficient printed for a built-in process, if any.
[[nodiscard]] std::optional<KernelId> coefficient_for(std::string_view process_name);

/// Implication of one finding: a nonzero coefficient on a nonempty manifold
/// blocks complete integrability; if the manifold is also nondegenerate it
/// blocks IST solvability.
[[nodiscard]] Implication implication_of(ManifoldStatus manifold,
                                         CoefficientStatusOnManifold coefficient,
                                         const std::optional<RankReport>& degeneracy) noexcept;

[[nodiscard]] OverallVerdict overall_of(const SystemFlags& flags, double beta,
                                        const std::vector<ObstructionFinding>& findings) noexcept;

enum class AnalysisScope {
  all,             // every built-in process of the system
  verdict_inputs,  // only processes with a printed coefficient (the rest cannot move the verdict)
};

/// Full screening of a built-in system. Deterministic for a fixed config.
[[nodiscard]] IntegrabilityReport analyze(const WaveSystem& system, const AnalysisConfig& config,
                                          bool parallel = true,
                                          AnalysisScope scope = AnalysisScope::all);

/// One finding for a single process.
[[nodiscard]] ObstructionFinding analyze_process(const ResonanceProcess& process,
                                                 const WaveSystem& system,
                                                 const AnalysisConfig& config,
                                                 std::uint64_t seed);

/// Per-process seed, a fixed mix of the run seed and the process name.
[[nodiscard]] std::uint64_t process_seed(std::uint64_t run_seed, std::string_view process_name);

struct GridAxis {
  double lo = -2.0;
  double hi = 2.0;
  int n = 41;

  /// lo + (hi - lo) * i / (n - 1); exact at the ends.
  [[nodiscard]] double at(int i) const noexcept;
};

/// "LO:HI:N". Throws ConfigError.
[[nodiscard]] GridAxis parse_grid_axis(std::string_view text);

struct ScanResult {
  GridAxis alpha;
  GridAxis gamma;
  double beta = 1.0;
  std::vector<std::vector<OverallVerdict>> cells;  // [alpha index][gamma index]
  std::vector<std::vector<bool>> inconclusive;
};

/// Overall verdict of the KdV-CKdV system over an (alpha, gamma) grid; each cell
/// uses config.scan_points samples per manifold and AnalysisScope::verdict_inputs.
[[nodiscard]] ScanResult scan_params(const GridAxis& alpha, const GridAxis& gamma, double beta,
                                     const AnalysisConfig& config, int threads = 0);

/// True when every special_case_open cell lies within one grid step of
/// alpha = 0, gamma = 0 or alpha = gamma.
[[nodiscard]] bool special_cells_localized(const ScanResult& scan);

[[nodiscard]] nlohmann::json to_json(const RankReport& r);
[[nodiscard]] nlohmann::json to_json(const ModeReport& r);
[[nodiscard]] nlohmann::json to_json(const IntegrabilityReport& r, const AnalysisConfig& config);
[[nodiscard]] nlohmann::json to_json(const ScanResult& r, const AnalysisConfig& config);
[[nodiscard]] nlohmann::json to_json(const AnalysisConfig& config);

}  // namespace wavescreen
