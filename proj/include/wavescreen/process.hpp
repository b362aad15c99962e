#pragma once

#include "wavescreen/dispersion.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wavescreen {

struct Wave {
  int sigma = 1;  // +1 or -1
  Branch branch = Branch::short_wave;
};

/// One resonance manifold: sum sigma_j k_j = 0 and sum sigma_j omega^(l_j)(k_j) = 0.
struct ResonanceProcess {
  std::string name;
  std::vector<Wave> waves;

  [[nodiscard]] int arity() const noexcept { return static_cast<int>(waves.size()); }
};

/// Validates arity (3 or 4) and signs; throws ArgumentError.
void validate(const ResonanceProcess& process);

struct Mismatch {
  double dk = 0.0;
  double dw = 0.0;
};

/// Momentum and frequency residuals. Accumulates in extended precision.
[[nodiscard]] Mismatch mismatch(const ResonanceProcess& process, const WaveSystem& system,
                                std::span<const double> ks);

/// Built-in processes. Names:
///   nls-M1, nls-M2, nls-M3                 (NLS-KdV three- and four-wave)
///   ck-M1, ck-M2, ck-M3                    (KdV-CKdV three-wave)
///   ck-calM1 ... ck-calM5                  (KdV-CKdV four-wave)
///   quad4                                  (single-branch k1+k2=k3+k4 on the short branch)
[[nodiscard]] const ResonanceProcess& builtin_process(std::string_view name);
[[nodiscard]] std::vector<std::string> builtin_process_names();

/// Processes examined by the integrability analysis of a built-in system.
[[nodiscard]] std::vector<ResonanceProcess> processes_for(SystemId id);

/// System a built-in process belongs to (quad4 reports NlsKdv, whose short
/// branch is omega = k^2).
[[nodiscard]] SystemId system_of(const ResonanceProcess& process);

}  // namespace wavescreen
