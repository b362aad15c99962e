#pragma once

#include "wavescreen/polynomial.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace wavescreen {

/// Wave branch of a two-branch system: the complex short wave (u) and the real
/// long wave (v).
enum class Branch { short_wave, long_wave };

[[nodiscard]] std::string_view to_string(Branch b) noexcept;

/// Real polynomial frequency law without constant term.
/// coeffs[d-1] multiplies k^d for d = 1..D.
class DispersionLaw {
 public:
  DispersionLaw() = default;
  explicit DispersionLaw(std::vector<double> coeffs_from_linear);

  [[nodiscard]] const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] int degree() const noexcept;
  /// Same law as a Polynomial with an explicit zero constant term.
  [[nodiscard]] Polynomial polynomial() const;

 private:
  std::vector<double> coeffs_;
};

[[nodiscard]] double eval_dispersion(const DispersionLaw& law, double k) noexcept;
[[nodiscard]] long double eval_dispersion_extended(const DispersionLaw& law, long double k) noexcept;

struct SystemParams {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
};

enum class SystemId { NlsKdv, KdvCkdv, Custom };

[[nodiscard]] std::string_view to_string(SystemId id) noexcept;
[[nodiscard]] SystemId system_id_from_string(std::string_view name);

/// Parameter lines singled out by the analysis. Computed with exact equality.
struct SystemFlags {
  bool uncoupled = false;     // beta == 0
  bool alpha_zero = false;    // KdvCkdv only
  bool gamma_zero = false;    // KdvCkdv only
  bool alpha_eq_gamma = false;  // KdvCkdv only

  [[nodiscard]] bool special_case() const noexcept {
    return alpha_zero || gamma_zero || alpha_eq_gamma;
  }
};

class WaveSystem {
 public:
  WaveSystem(SystemId id, SystemParams params, DispersionLaw short_law, DispersionLaw long_law);

  [[nodiscard]] SystemId id() const noexcept { return id_; }
  [[nodiscard]] const SystemParams& params() const noexcept { return params_; }
  [[nodiscard]] const SystemFlags& flags() const noexcept { return flags_; }
  [[nodiscard]] const DispersionLaw& law(Branch b) const noexcept {
    return b == Branch::short_wave ? short_ : long_;
  }
  [[nodiscard]] double frequency(Branch b, double k) const noexcept {
    return eval_dispersion(law(b), k);
  }

 private:
  SystemId id_;
  SystemParams params_;
  DispersionLaw short_;
  DispersionLaw long_;
  SystemFlags flags_;
};

/// Built-in systems: NlsKdv has omega = k^2, Omega = -k^3; KdvCkdv has
/// omega = 2 beta k - alpha k^3, Omega = beta k - gamma k^3.
/// Custom requires both laws; throws ConfigError otherwise.
[[nodiscard]] WaveSystem make_system(SystemId id, const SystemParams& params);
[[nodiscard]] WaveSystem make_custom_system(const SystemParams& params, DispersionLaw short_law,
                                            DispersionLaw long_law);

}  // namespace wavescreen
