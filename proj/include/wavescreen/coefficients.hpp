#pragma once

#include "wavescreen/dispersion.hpp"
#include "wavescreen/manifold.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wavescreen {

enum class KernelId {
  U_nls, V_nls, W_nls, U1_nls, U2_nls,
  V_ck, U_ck, A1_ck, B1_ck, B2_ck,
  T_nls, T1_nls, T2_nls,
  P1_ck, S1_ck, T1_ck,
};

[[nodiscard]] std::string_view to_string(KernelId id) noexcept;
/// Throws ArgumentError for unknown names.
[[nodiscard]] KernelId kernel_id_from_string(std::string_view name);
/// Number of wavenumbers the kernel takes (3 or 4).
[[nodiscard]] int kernel_arity(KernelId id) noexcept;
/// System the kernel belongs to.
[[nodiscard]] SystemId kernel_system(KernelId id) noexcept;

enum class CoefficientStatus { finite, removable_zero, pole };

[[nodiscard]] std::string_view to_string(CoefficientStatus s) noexcept;

struct CoefficientValue {
  double value = 0.0;  // NaN for poles
  CoefficientStatus status = CoefficientStatus::finite;

  [[nodiscard]] bool is_pole() const noexcept { return status == CoefficientStatus::pole; }
};

struct GuardTolerances {
  double eps_den = 1e-8;
  double eps_num = 1e-10;
};

/// num/den unless |den| < eps_den; then 0 (removable) if |num| < eps_num, else a pole.
[[nodiscard]] CoefficientValue guarded_ratio(double num, double den, const GuardTolerances& tol = {});

/// Same, with the denominator given as factors; each factor is guarded
/// separately so a vanishing factor is never hidden by a large one.
[[nodiscard]] CoefficientValue guarded_ratio(double num, std::span<const double> den_factors,
                                             const GuardTolerances& tol = {});

/// Sum of guarded terms: any pole poisons the sum.
[[nodiscard]] CoefficientValue sum_values(std::span<const CoefficientValue> terms);

/// theta(k) = 1 for k >= 0, else 0.
[[nodiscard]] constexpr double heaviside(double k) noexcept { return k >= 0.0 ? 1.0 : 0.0; }

/// Cubic kernels U_nls, V_nls, V_ck, U_ck at (k1, k2, k3).
[[nodiscard]] double kernel3(KernelId id, std::span<const double> ks, const SystemParams& params);

/// The constant quartic kernel W_nls = -alpha / (4 pi).
[[nodiscard]] double kernel_w_nls(const SystemParams& params) noexcept;

/// U1_nls, U2_nls, A1_ck, B1_ck, B2_ck. The caller supplies ks on the kernel's
/// linear constraint (k1-k2-k3 = 0; k1-k2+k3 = 0 for B1_ck); violations beyond
/// tol_res throw ArgumentError.
[[nodiscard]] CoefficientValue transform_kernel(KernelId id, std::span<const double> ks,
                                                const WaveSystem& system,
                                                const GuardTolerances& tol = {},
                                                double tol_res = 1e-10);

struct CoefficientBreakdown {
  CoefficientValue total;
  CoefficientValue part1;  // T1 (NLS) or P1 (CK)
  CoefficientValue part2;  // T2 (NLS) or S1 (CK)
  std::vector<CoefficientValue> terms;
  bool off_manifold = false;  // ks missed the manifold by more than tol_res
};

/// T = T1 + T2 on the NLS-KdV four-wave manifold, eight guarded terms.
[[nodiscard]] CoefficientBreakdown evaluate_t_nls(std::span<const double> ks,
                                                  const SystemParams& params,
                                                  const GuardTolerances& tol = {},
                                                  double tol_res = 1e-10);

/// T1 = P1 + S1 on the KdV-CKdV four-wave manifold k1 = k2+k3+k4.
[[nodiscard]] CoefficientBreakdown evaluate_t1_ck(std::span<const double> ks,
                                                  const SystemParams& params,
                                                  const GuardTolerances& tol = {},
                                                  double tol_res = 1e-10);

/// Any kernel by id; cubic kernels come back finite, composite ones guarded.
[[nodiscard]] CoefficientValue evaluate_coefficient(KernelId id, std::span<const double> ks,
                                                    const SystemParams& params,
                                                    const GuardTolerances& tol = {},
                                                    double tol_res = 1e-10);

// --- sign scans over parameter regions -------------------------------------

enum class SignVerdict { all_negative, all_positive, mixed };

[[nodiscard]] std::string_view to_string(SignVerdict v) noexcept;

/// Parameter box with an extra admissibility predicate (ordering constraints).
struct ParamRegion {
  std::string name;
  Interval alpha;
  Interval beta;
  Interval gamma;
  std::function<bool(const SystemParams&)> admits;
};

/// {alpha < 0, beta > 0, alpha < gamma < 0} with alpha in (-2, 0), beta in (0, 2].
[[nodiscard]] ParamRegion region_a1();
/// {alpha > 0, beta < 0, alpha > gamma > 0}, the mirror image of region_a1.
[[nodiscard]] ParamRegion region_a2();

struct SignScanOptions {
  Interval k_domain{-5.0, 0.0};  // for k2 and k4
  double k_min = 1e-3;
  int max_attempts_factor = 200;
  GuardTolerances guard;
  double tol_res = 1e-10;
};

struct SignScanResult {
  SignVerdict verdict = SignVerdict::mixed;
  double min_abs = 0.0;
  int valid = 0;
  int negative = 0;
  int positive = 0;
  int zero = 0;
  int poles = 0;
  long attempts = 0;
  bool partial = false;
};

/// Draws parameters from the region and (k2, k4) from the domain, keeps points
/// on the four-wave KdV-CKdV manifold with every k_j < 0 and records the sign of
/// P1_ck, S1_ck or T1_ck. Throws EmptyRegionError when no point qualifies.
[[nodiscard]] SignScanResult sign_scan(KernelId id, const ParamRegion& region, int samples,
                                       std::uint64_t seed, const SignScanOptions& opts = {});

}  // namespace wavescreen
